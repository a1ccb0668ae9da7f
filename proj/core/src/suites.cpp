#include "betacalc/suites.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "betacalc/applications.hpp"
#include "betacalc/calculus.hpp"
#include "betacalc/error.hpp"
#include "betacalc/functionals.hpp"
#include "betacalc/random_cases.hpp"

namespace betacalc {

namespace {

struct SuiteName {
  Suite suite;
  std::string_view name;
};

constexpr SuiteName kNames[] = {
    {Suite::telescoping, "telescoping"}, {Suite::gruss, "gruss"},
    {Suite::pre_gruss, "pre-gruss"},     {Suite::functional, "functional"},
    {Suite::cauchy_schwarz, "cs"},       {Suite::holder, "holder"},
    {Suite::korkine, "korkine"},         {Suite::ftc, "ftc"},
    {Suite::ibp, "ibp"},                 {Suite::rs_identity, "rs-identity"},
    {Suite::rs_gruss, "rs-gruss"},       {Suite::rs_variants, "rs-variants"},
    {Suite::sharpness, "sharpness"},     {Suite::prob, "prob"},
};

std::string describe(const RandomCase& c) {
  return c.map.describe() + " on [" + std::to_string(c.a) + ", " + std::to_string(c.b) +
         "] f=" + to_string(c.f) + " g=" + to_string(c.g) + " u=" + to_string(c.u);
}

void run_telescoping(CaseOutcome& out, std::uint64_t seed, const TruncationConfig& cfg) {
  const RandomCase c = random_case(seed, out.index, true);
  out.description = describe(c);
  const IntegralResult r = integral(c.map, [](double) { return 1.0; }, c.a, c.b, cfg);
  auto rep = residual_report("telescoping", std::fabs(r.value - (c.b - c.a)), 1e-10);
  rep.diagnostics.absorb(r);
  out.reports.push_back(rep);
}

void run_chebyshev_family(Suite suite, CaseOutcome& out, std::uint64_t seed,
                          const TruncationConfig& cfg) {
  const RandomCase c = random_case(seed, out.index, suite == Suite::korkine);
  out.description = describe(c);
  switch (suite) {
    case Suite::gruss:
      out.reports.push_back(
          gruss_check(c.map, c.f, c.g, c.a, c.b, grid_bounds_pair(c.map, c.f, c.g, c.a, c.b, cfg), cfg));
      break;
    case Suite::pre_gruss: {
      auto [first, second] = pre_gruss_check(c.map, c.f, c.g, c.a, c.b,
                                             grid_bounds(c.map, c.f, c.a, c.b, cfg), cfg);
      out.reports.push_back(first);
      out.reports.push_back(second);
      break;
    }
    case Suite::functional:
      out.reports.push_back(functional_bound_check(
          c.map, c.f, c.g, c.a, c.b, grid_bounds(c.map, c.f, c.a, c.b, cfg), cfg));
      break;
    case Suite::cauchy_schwarz: {
      const ChebyshevResult fg = chebyshev(c.map, c.f, c.g, c.a, c.b, cfg);
      const ChebyshevResult ff = chebyshev(c.map, c.f, c.f, c.a, c.b, cfg);
      const ChebyshevResult gg = chebyshev(c.map, c.g, c.g, c.a, c.b, cfg);
      auto rep = make_report("cauchy-schwarz", fg.t_fg * fg.t_fg, ff.t_fg * gg.t_fg, {},
                             1e-9 * c.map.scale());
      for (const auto* r : {&fg, &ff, &gg}) {
        rep.diagnostics.absorb(r->diag_f);
        rep.diagnostics.absorb(r->diag_g);
        rep.diagnostics.absorb(r->diag_fg);
      }
      out.reports.push_back(rep);
      break;
    }
    case Suite::holder: {
      static constexpr double kExponents[] = {1.0, 1.5, 2.0, 3.0};
      out.reports.push_back(
          holder_check(c.map, c.f, c.g, c.a, c.b, kExponents[out.index % 4], cfg));
      break;
    }
    case Suite::korkine: {
      const ChebyshevResult direct = chebyshev(c.map, c.f, c.g, c.a, c.b, cfg);
      const double symmetric = korkine(c.map, c.f, c.g, c.a, c.b, cfg);
      auto rep = residual_report("korkine", std::fabs(symmetric - direct.t_fg),
                                 std::max(1e-10, 1e-7 * std::fabs(direct.t_fg)));
      rep.witness["t_fg"] = direct.t_fg;
      rep.witness["korkine"] = symmetric;
      out.reports.push_back(rep);
      break;
    }
    default:
      break;
  }
}

void run_calculus(Suite suite, CaseOutcome& out, std::uint64_t seed, const TruncationConfig& cfg) {
  RandomCase c = random_case(seed, out.index, true);
  const double tol = 1e-8 * c.map.scale();
  switch (suite) {
    case Suite::ftc: {
      // Every fifth case adds a jump of the first kind at s0.
      if (out.index % 5 == 4) {
        CaseRng rng(seed ^ 0xf7cULL, out.index);
        const double alpha = rounded(rng.uniform(0.5, 2.0));
        c.f = c.f + Expr::number(alpha) *
                        Expr::call(Func::sgn, {Expr::variable() - Expr::number(c.map.s0())});
      }
      out.description = describe(c);
      const OneSidedLimits lim = one_sided_limits(c.map, c.f, c.a, c.b, cfg);
      auto rep = residual_report("ftc", ftc_residual(c.map, c.f, c.a, c.b, cfg, lim.jump()), tol);
      rep.witness["jump_s0"] = lim.jump();
      out.reports.push_back(rep);
      break;
    }
    case Suite::ibp:
      out.description = describe(c);
      out.reports.push_back(residual_report("ibp", ibp_residual(c.map, c.f, c.g, c.a, c.b, cfg), tol));
      break;
    case Suite::rs_identity:
      out.description = describe(c);
      out.reports.push_back(residual_report(
          "rs-identity", rs_identity_residual(c.map, c.f, c.u, c.a, c.b, cfg), tol));
      break;
    default:
      break;
  }
}

void run_rs(Suite suite, CaseOutcome& out, std::uint64_t seed, const TruncationConfig& cfg) {
  RandomCase c = random_case(seed, out.index);
  CaseRng rng(seed ^ 0x5c5ULL, out.index);
  c.u = random_polynomial(rng, c.map.s0());
  if (suite == Suite::rs_gruss) {
    out.description = describe(c);
    BoundParams p = grid_bounds(c.map, c.f, c.a, c.b, cfg);
    p.L = beta_lipschitz_estimate(c.map, c.u, c.a, c.b, cfg);
    out.reports.push_back(rs_gruss_check(c.map, c.f, c.u, c.a, c.b, p, cfg));
    return;
  }
  const auto variant = static_cast<RsVariant>(out.index % 5);
  if (variant == RsVariant::nonneg_weight) c.u = c.u * c.u;
  if (variant == RsVariant::trapezoid) c.f = random_polynomial(rng, c.map.s0(), 3, 1);
  out.description = std::string(to_string(variant)) + ": " + describe(c);
  out.reports.push_back(rs_gruss_variant_check(c.map, c.f, c.u, c.a, c.b, variant, cfg));
}

void run_sharpness(CaseOutcome& out, std::uint64_t seed, const TruncationConfig& cfg) {
  CaseRng rng(seed, out.index);
  const BetaMap map = random_map(rng);
  const double c = rounded(rng.uniform(0.5, 3.0));
  const double a = map.s0() - c;
  const double b = map.s0() + c;
  out.description = map.describe() + " on [" + std::to_string(a) + ", " + std::to_string(b) + "]";
  auto [rs, gruss] = sharpness_demo(map, a, b, cfg);
  out.reports.push_back(rs);
  out.reports.push_back(gruss);
}

void run_prob(CaseOutcome& out, std::uint64_t seed, const TruncationConfig& cfg) {
  const RandomCase c = random_case(seed, out.index);
  out.description = describe(c);
  const BetaProbModel model = build_model(c.map, c.a, c.b, cfg);
  const double width = c.b - c.a;

  out.reports.push_back(residual_report(
      "prob:mass", std::fabs(model.total_mass() + model.mass_deficit - 1.0), 1e-12));

  CaseRng rng(seed ^ 0x9b0ULL, out.index);
  const Expr h = random_polynomial(rng, c.map.s0());
  const IntegralResult ih = integral(c.map, h, c.a, c.b, cfg);
  auto consistency = residual_report(
      "prob:expectation", std::fabs(expected_value(model, h) - ih.value / width),
      1e-9 * c.map.scale());
  consistency.diagnostics.absorb(ih);
  out.reports.push_back(consistency);

  const Window w = gruss_window(model, c.f, c.g);
  const double centre = 0.5 * (w.lower + w.upper);
  auto window = make_report("prob:gruss-window", std::fabs(w.expected_fg - centre),
                            0.5 * (w.upper - w.lower), {});
  window.witness["expected_fg"] = w.expected_fg;
  window.witness["lower"] = w.lower;
  window.witness["upper"] = w.upper;
  out.reports.push_back(window);

  if (c.map.kind() == MapKind::jackson) {
    const double closed = (c.a + c.b) / (1.0 + c.map.q());
    out.reports.push_back(
        residual_report("prob:jackson-mean", std::fabs(mean_point(model) - closed), 1e-10));
  }
}

}  // namespace

std::string_view to_string(Suite s) noexcept {
  for (const auto& n : kNames) {
    if (n.suite == s) return n.name;
  }
  return "?";
}

std::optional<Suite> parse_suite(std::string_view name) noexcept {
  for (const auto& n : kNames) {
    if (n.name == name) return n.suite;
  }
  return std::nullopt;
}

const std::vector<Suite>& all_suites() {
  static const std::vector<Suite> suites = [] {
    std::vector<Suite> v;
    for (const auto& n : kNames) v.push_back(n.suite);
    return v;
  }();
  return suites;
}

std::vector<InequalityReport> SuiteSummary::reports() const {
  std::vector<InequalityReport> all;
  for (const auto& o : outcomes) all.insert(all.end(), o.reports.begin(), o.reports.end());
  return all;
}

InequalityReport residual_report(std::string name, double residual, double allowed) {
  return make_report(std::move(name), residual, allowed, {}, 0.0);
}

CaseOutcome run_case(Suite suite, std::uint64_t seed, std::size_t index,
                     const TruncationConfig& cfg) {
  CaseOutcome out;
  out.index = index;
  try {
    switch (suite) {
      case Suite::telescoping: run_telescoping(out, seed, cfg); break;
      case Suite::gruss:
      case Suite::pre_gruss:
      case Suite::functional:
      case Suite::cauchy_schwarz:
      case Suite::holder:
      case Suite::korkine: run_chebyshev_family(suite, out, seed, cfg); break;
      case Suite::ftc:
      case Suite::ibp:
      case Suite::rs_identity: run_calculus(suite, out, seed, cfg); break;
      case Suite::rs_gruss:
      case Suite::rs_variants: run_rs(suite, out, seed, cfg); break;
      case Suite::sharpness: run_sharpness(out, seed, cfg); break;
      case Suite::prob: run_prob(out, seed, cfg); break;
    }
  } catch (const Error& e) {
    out.error = e.what();
  }
  return out;
}

SuiteSummary run_suite(Suite suite, const SuiteOptions& opts) {
  opts.cfg.validate();
  SuiteSummary s;
  s.suite = std::string(to_string(suite));
  s.cases = opts.cases;
  s.outcomes.resize(opts.cases);

  std::size_t threads = opts.threads == 0 ? std::thread::hardware_concurrency() : opts.threads;
  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(opts.cases, 1));
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < opts.cases; i = next++) {
      s.outcomes[i] = run_case(suite, opts.seed, i, opts.cfg);
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  bool first = true;
  for (const auto& o : s.outcomes) {
    if (o.error) ++s.skipped;
    for (const auto& r : o.reports) {
      if (!r.holds) ++s.failures;
      if (!r.diagnostics.converged) ++s.unconverged;
      s.max_lhs = std::max(s.max_lhs, r.lhs);
      const double rel = r.slack / (1.0 + std::fabs(r.rhs));
      if (first || rel < s.worst_relative_slack) {
        s.worst_relative_slack = rel;
        s.worst_case = o.index;
        first = false;
      }
    }
  }
  return s;
}

}  // namespace betacalc
