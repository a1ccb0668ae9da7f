#include "betacalc/random_cases.hpp"

#include <cmath>

namespace betacalc {

CaseRng::CaseRng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  engine_.seed(seq);
}

double CaseRng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double CaseRng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::uint64_t CaseRng::below(std::uint64_t n) { return n == 0 ? 0 : engine_() % n; }

bool CaseRng::coin() { return (engine_() >> 63) != 0; }

double rounded(double v) { return std::round(v * 100.0) / 100.0; }

BetaMap random_jackson(CaseRng& rng) { return BetaMap::jackson(rounded(rng.uniform(0.2, 0.85))); }

BetaMap random_map(CaseRng& rng) {
  if (rng.coin()) return random_jackson(rng);
  const double q = rounded(rng.uniform(0.2, 0.85));
  const double omega = rounded(rng.uniform(0.0, 1.0));
  return BetaMap::hahn(q, omega);
}

Expr random_polynomial(CaseRng& rng, double centre, int max_degree, int min_degree) {
  const int degree =
      min_degree + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_degree - min_degree) + 1));
  const Expr shifted = Expr::variable() - Expr::number(centre);
  Expr poly = Expr::number(rounded(rng.uniform(-2.0, 2.0)));
  for (int k = 1; k <= degree; ++k) {
    double c = rounded(rng.uniform(-2.0, 2.0));
    if (c == 0.0) c = 1.0;
    poly = poly + Expr::number(c) * (k == 1 ? shifted : Expr::power(shifted, k));
  }
  return poly;
}

Expr random_step(CaseRng& rng, double lo, double hi) {
  double alpha = rounded(rng.uniform(-2.0, 2.0));
  if (alpha == 0.0) alpha = 1.0;
  const double cut = rng.uniform(lo, hi);
  const Expr step = Expr::call(Func::sgn, {Expr::variable() - Expr::number(cut)});
  return Expr::number(alpha) * step + Expr::number(rounded(rng.uniform(-1.0, 1.0)));
}

Expr random_function(CaseRng& rng, double lo, double hi, double centre) {
  if (rng.below(4) == 0) return random_step(rng, lo, hi);
  return random_polynomial(rng, centre);
}

RandomCase random_case(std::uint64_t seed, std::uint64_t index, bool polynomials_only) {
  CaseRng rng(seed, index);
  RandomCase c{random_map(rng), 0.0, 0.0, {}, {}, {}};
  const double s0 = c.map.s0();
  c.a = s0 - rounded(rng.uniform(0.25, 2.0));
  c.b = s0 + rounded(rng.uniform(0.25, 2.0));
  if (polynomials_only) {
    c.f = random_polynomial(rng, s0);
    c.g = random_polynomial(rng, s0);
    c.u = random_polynomial(rng, s0);
  } else {
    c.f = random_function(rng, c.a, c.b, s0);
    c.g = random_function(rng, c.a, c.b, s0);
    c.u = random_function(rng, c.a, c.b, s0);
  }
  return c;
}

}  // namespace betacalc
