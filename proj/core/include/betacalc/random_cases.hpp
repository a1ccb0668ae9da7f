#pragma once

#include <cstdint>
#include <random>

#include "betacalc/beta_map.hpp"
#include "betacalc/expr.hpp"

namespace betacalc {

/// Per-case random stream seeded from (seed, index). Draws avoid the
/// implementation-defined standard distributions, so results agree across
/// platforms and across worker-thread layouts.
class CaseRng {
 public:
  CaseRng(std::uint64_t seed, std::uint64_t index);

  double uniform();                      // [0, 1)
  double uniform(double lo, double hi);  // [lo, hi)
  std::uint64_t below(std::uint64_t n);  // [0, n)
  bool coin();

 private:
  std::mt19937_64 engine_;
};

/// Coefficients rounded to two decimals.
double rounded(double v);

/// Random Jackson (half the time) or Hahn map with q in [0.2, 0.85] and
/// omega in [0, 1].
BetaMap random_map(CaseRng& rng);
BetaMap random_jackson(CaseRng& rng);

/// Polynomial of degree in [min_degree, max_degree] written in powers of
/// (x - centre).
Expr random_polynomial(CaseRng& rng, double centre, int max_degree = 3, int min_degree = 0);

/// alpha * sgn(x - cut) + shift with cut inside [lo, hi].
Expr random_step(CaseRng& rng, double lo, double hi);

/// Polynomial three times out of four, otherwise a step.
Expr random_function(CaseRng& rng, double lo, double hi, double centre);

struct RandomCase {
  BetaMap map;
  double a = 0.0;
  double b = 0.0;
  Expr f;
  Expr g;
  Expr u;
};

/// Random map, interval a < s0 < b with half-widths in [0.25, 2], and three
/// functions. With polynomials_only the functions are all polynomials.
RandomCase random_case(std::uint64_t seed, std::uint64_t index, bool polynomials_only = false);

}  // namespace betacalc
