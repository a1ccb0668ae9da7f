#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>

// Independent oracles and hand-rolled generators shared by the tests. Nothing
// here calls into the library's quadrature.

namespace oracle {

/// Jackson integral of x^n over [0, 1] summed directly as the geometric series
/// sum_k (1 - q) q^k q^{kn}, in long double.
inline double jackson_moment(double q, int n) {
  long double sum = 0.0L;
  long double qk = 1.0L;
  for (int k = 0; k < 4000 && qk > 1e-30L; ++k) {
    sum += (1.0L - q) * qk * std::pow(qk, n);
    qk *= q;
  }
  return static_cast<double>(sum);
}

/// Same moment from the closed form (1 - q)/(1 - q^{n+1}).
inline double jackson_moment_closed(double q, int n) {
  return (1.0 - q) / (1.0 - std::pow(q, n + 1));
}

/// Generic branch sum sum_k (t_k - t_{k+1}) f(t_k) for the affine map
/// t -> q t + w, iterated until the width vanishes, in long double.
template <class F>
double hahn_branch(double q, double w, double x, F&& f) {
  long double t = x;
  long double sum = 0.0L;
  for (int k = 0; k < 20000; ++k) {
    const long double next = q * t + w;
    const long double width = t - next;
    if (std::fabs(static_cast<double>(width)) < 1e-300) break;
    sum += width * f(static_cast<double>(t));
    if (std::fabs(static_cast<double>(width)) < 1e-22) break;
    t = next;
  }
  return static_cast<double>(sum);
}

}  // namespace oracle

namespace gen {

/// Small deterministic generator for property tests.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(engine_() >> 11) * 0x1.0p-53);
  }
  int integer(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool coin() { return (engine_() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

inline std::string number_text(Rng& rng) {
  const double v = std::round(rng.uniform(0.0, 50.0) * 100.0) / 100.0;
  std::string s = std::to_string(v);
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  return s;
}

/// Random text following the expression grammar.
inline std::string expression_text(Rng& rng, int depth) {
  static const char* unary[] = {"abs", "sgn", "exp", "log", "sin", "cos", "sqrt"};
  const int pick = depth <= 0 ? rng.integer(0, 1) : rng.integer(0, 7);
  switch (pick) {
    case 0: return number_text(rng);
    case 1: return "x";
    case 2: return "-" + expression_text(rng, depth - 1);
    case 3: {
      static const char ops[] = {'+', '-', '*', '/'};
      return expression_text(rng, depth - 1) + " " + ops[rng.integer(0, 3)] + " " +
             expression_text(rng, depth - 1);
    }
    case 4: return "(" + expression_text(rng, depth - 1) + ")^" + std::to_string(rng.integer(-3, 4));
    case 5: return std::string(unary[rng.integer(0, 6)]) + "(" + expression_text(rng, depth - 1) + ")";
    case 6: {
      std::string s = rng.coin() ? "min(" : "max(";
      const int n = rng.integer(2, 3);
      for (int i = 0; i < n; ++i) s += (i ? ", " : "") + expression_text(rng, depth - 1);
      return s + ")";
    }
    default: return "(" + expression_text(rng, depth - 1) + ")";
  }
}

/// Polynomial text in powers of (x - c) with two-decimal coefficients.
inline std::string polynomial_text(Rng& rng, double centre, int max_degree) {
  const int degree = rng.integer(0, max_degree);
  std::string c = std::to_string(centre);
  std::string s = std::to_string(std::round(rng.uniform(-2.0, 2.0) * 100.0) / 100.0);
  for (int k = 1; k <= degree; ++k) {
    const double coef = std::round(rng.uniform(-2.0, 2.0) * 100.0) / 100.0;
    s += " + " + std::to_string(coef) + "*(x - " + c + ")^" + std::to_string(k);
  }
  return s;
}

}  // namespace gen
