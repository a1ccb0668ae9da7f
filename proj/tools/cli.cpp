#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>

#include "betacalc/applications.hpp"
#include "betacalc/calculus.hpp"
#include "betacalc/error.hpp"
#include "betacalc/expr.hpp"
#include "betacalc/functionals.hpp"
#include "betacalc/suites.hpp"
#include "report_json.hpp"

#ifndef BETACALC_VERSION
#define BETACALC_VERSION "0.0.0"
#endif

namespace betacalc::cli {

namespace {

// Suites whose reports compare a residual against an allowance.
bool residual_suite(Suite s) {
  switch (s) {
    case Suite::telescoping:
    case Suite::korkine:
    case Suite::ftc:
    case Suite::ibp:
    case Suite::rs_identity: return true;
    default: return false;
  }
}

using nlohmann::json;

struct RunConfig {
  std::string map_kind = "jackson";
  double q = 0.5;
  double omega = 0.0;
  std::string map_expr;
  std::vector<double> probe;
  double a = 0.0;
  double b = 1.0;
  std::string f;
  std::string g;
  std::string u;
  std::string h;
  double p = 2.0;
  double t = 0.0;
  std::string variant = "continuous-u";
  std::string format = "text";
  std::uint64_t seed = 1;
  std::size_t cases = 100;
  std::size_t threads = 1;
  TruncationConfig cfg;
  bool trace = false;
  bool weights = false;
  std::string suite;

  bool has_a = false;
  bool has_b = false;
};

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

BetaMap make_map(const RunConfig& c) {
  if (c.map_kind == "jackson") return BetaMap::jackson(c.q);
  if (c.map_kind == "hahn") return BetaMap::hahn(c.q, c.omega);
  if (c.probe.size() != 2) {
    throw Error(ErrorCode::parameter_out_of_range,
                "parameter-out-of-range: --map custom needs --probe LO HI");
  }
  return BetaMap::custom(parse(c.map_expr), Interval{c.probe[0], c.probe[1]});
}

json config_echo(const std::string& command, const RunConfig& c) {
  json j = {{"command", command}, {"map", c.map_kind}};
  if (c.map_kind == "custom") {
    j["expr"] = c.map_expr;
    j["probe"] = c.probe;
  } else {
    j["q"] = c.q;
    if (c.map_kind == "hahn") j["omega"] = c.omega;
  }
  if (!c.suite.empty()) j["suite"] = c.suite;
  if (c.has_a) j["a"] = c.a;
  if (c.has_b) j["b"] = c.b;
  for (const auto& [key, value] : {std::pair{"f", &c.f}, {"g", &c.g}, {"u", &c.u}, {"h", &c.h}}) {
    if (!value->empty()) j[key] = *value;
  }
  j["p"] = c.p;
  j["variant"] = c.variant;
  j["seed"] = c.seed;
  j["cases"] = c.cases;
  j["term_tol"] = c.cfg.term_tol;
  j["gap_tol"] = c.cfg.gap_tol;
  j["consecutive_small"] = c.cfg.consecutive_small;
  j["k_max"] = c.cfg.k_max;
  return j;
}

int exit_for(const std::vector<InequalityReport>& reports) {
  bool unconverged = false;
  for (const auto& r : reports) {
    if (!r.holds) return exit_violated;
    unconverged = unconverged || !r.diagnostics.converged || r.diagnostics.nan_encountered;
  }
  return unconverged ? exit_not_converged : exit_ok;
}

void print_reports_text(std::ostream& out, const std::vector<InequalityReport>& reports,
                        bool failing_only = false) {
  for (const auto& r : reports) {
    if (failing_only && r.holds) continue;
    out << r.name << ": lhs=" << fmt(r.lhs) << " rhs=" << fmt(r.rhs) << " slack=" << fmt(r.slack)
        << (r.holds ? " holds" : " VIOLATED");
    if (!r.diagnostics.converged) out << " (not converged)";
    for (const auto& [k, v] : r.witness) out << ' ' << k << '=' << fmt(v);
    out << '\n';
  }
}

void print_reports_csv(std::ostream& out, const std::vector<InequalityReport>& reports) {
  out << "name,lhs,rhs,slack,holds,converged\n";
  for (const auto& r : reports) {
    out << r.name << ',' << fmt(r.lhs) << ',' << fmt(r.rhs) << ',' << fmt(r.slack) << ','
        << (r.holds ? "true" : "false") << ',' << (r.diagnostics.converged ? "true" : "false")
        << '\n';
  }
}

json base_document(const std::string& command, const RunConfig& c) {
  return {{"tool_version", BETACALC_VERSION},
          {"config_echo", config_echo(command, c)},
          {"reports", json::array()}};
}

json reports_json(const std::vector<InequalityReport>& reports) {
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(to_json(r));
  return arr;
}

int cmd_integrate(const RunConfig& c, std::ostream& out) {
  const BetaMap map = make_map(c);
  const Expr f = parse(c.f.empty() ? "1" : c.f);
  if (c.trace) {
    double partial = 0.0;
    out << "k,grid_point,term,partial_sum\n";
    const SeriesObserver observer = [&](std::size_t k, double x, double term) {
      partial += term;
      out << k << ',' << fmt(x) << ',' << fmt(term) << ',' << fmt(partial) << '\n';
    };
    const IntegralResult r = integral_traced(map, f, c.a, c.b, c.cfg, observer);
    return r.converged ? exit_ok : exit_not_converged;
  }
  const IntegralResult r = integral(map, f, c.a, c.b, c.cfg);
  if (c.format == "json") {
    json doc = base_document("integrate", c);
    doc["integral"] = {{"value", number_to_json(r.value)},
                       {"terms_a", r.terms_a},
                       {"terms_b", r.terms_b},
                       {"tail_estimate", number_to_json(r.tail_estimate)},
                       {"converged", r.converged},
                       {"nan_encountered", r.nan_encountered}};
    out << doc.dump(2) << '\n';
  } else if (c.format == "csv") {
    out << "value,terms_a,terms_b,tail_estimate,converged\n"
        << fmt(r.value) << ',' << r.terms_a << ',' << r.terms_b << ',' << fmt(r.tail_estimate)
        << ',' << (r.converged ? "true" : "false") << '\n';
  } else {
    out << "value = " << fmt(r.value) << "\nterms = " << r.terms_a << " (a) + " << r.terms_b
        << " (b)\ntail estimate = " << fmt(r.tail_estimate)
        << "\nconverged = " << (r.converged ? "yes" : "no") << '\n';
  }
  return r.converged ? exit_ok : exit_not_converged;
}

int cmd_derivative(const RunConfig& c, std::ostream& out) {
  const BetaMap map = make_map(c);
  const double d = beta_derivative(map, parse(c.f.empty() ? "x" : c.f), c.t);
  if (c.format == "json") {
    json doc = base_document("derivative", c);
    doc["derivative"] = {{"t", c.t}, {"value", number_to_json(d)}};
    out << doc.dump(2) << '\n';
  } else if (c.format == "csv") {
    out << "t,value\n" << fmt(c.t) << ',' << fmt(d) << '\n';
  } else {
    out << "D[f](" << fmt(c.t) << ") = " << fmt(d) << '\n';
  }
  return std::isfinite(d) ? exit_ok : exit_not_converged;
}

std::vector<InequalityReport> single_case(Suite suite, const RunConfig& c) {
  const BetaMap map = make_map(c);
  const TruncationConfig& cfg = c.cfg;
  const double a = c.a;
  const double b = c.b;
  if (suite == Suite::sharpness) {
    auto [rs, gr] = sharpness_demo(map, a, b, cfg);
    return {rs, gr};
  }
  if (c.f.empty()) {
    throw Error(ErrorCode::parameter_out_of_range,
                "parameter-out-of-range: a single-case check needs --f");
  }
  const Expr f = parse(c.f);
  const Expr g = parse(c.g.empty() ? c.f : c.g);
  const Expr u = parse(c.u.empty() ? "x" : c.u);
  const double scale = map.scale();
  switch (suite) {
    case Suite::telescoping: {
      const IntegralResult r = integral(map, [](double) { return 1.0; }, a, b, cfg);
      auto rep = residual_report("telescoping", std::fabs(r.value - (b - a)), 1e-10);
      rep.diagnostics.absorb(r);
      return {rep};
    }
    case Suite::gruss:
      return {gruss_check(map, f, g, a, b, grid_bounds_pair(map, f, g, a, b, cfg), cfg)};
    case Suite::pre_gruss: {
      auto [first, second] = pre_gruss_check(map, f, g, a, b, grid_bounds(map, f, a, b, cfg), cfg);
      return {first, second};
    }
    case Suite::functional:
      return {functional_bound_check(map, f, g, a, b, grid_bounds(map, f, a, b, cfg), cfg)};
    case Suite::cauchy_schwarz: {
      require_fixed_point_inside(map, a, b);
      const double tfg = chebyshev(map, f, g, a, b, cfg).t_fg;
      const double tff = chebyshev(map, f, f, a, b, cfg).t_fg;
      const double tgg = chebyshev(map, g, g, a, b, cfg).t_fg;
      return {make_report("cauchy-schwarz", tfg * tfg, tff * tgg, {}, 1e-9 * scale)};
    }
    case Suite::holder:
      return {holder_check(map, f, g, a, b, c.p, cfg)};
    case Suite::korkine: {
      const double direct = chebyshev(map, f, g, a, b, cfg).t_fg;
      const double symmetric = korkine(map, f, g, a, b, cfg);
      auto rep = residual_report("korkine", std::fabs(symmetric - direct),
                                 std::max(1e-10, 1e-7 * std::fabs(direct)));
      rep.witness["t_fg"] = direct;
      rep.witness["korkine"] = symmetric;
      return {rep};
    }
    case Suite::ftc: {
      const OneSidedLimits lim = one_sided_limits(map, f, a, b, cfg);
      auto rep = residual_report("ftc", ftc_residual(map, f, a, b, cfg, lim.jump()), 1e-8 * scale);
      rep.witness["jump_s0"] = lim.jump();
      return {rep};
    }
    case Suite::ibp:
      return {residual_report("ibp", ibp_residual(map, f, g, a, b, cfg), 1e-8 * scale)};
    case Suite::rs_identity:
      return {residual_report("rs-identity", rs_identity_residual(map, f, u, a, b, cfg),
                              1e-8 * scale)};
    case Suite::rs_gruss: {
      BoundParams params = grid_bounds(map, f, a, b, cfg);
      params.L = beta_lipschitz_estimate(map, u, a, b, cfg);
      return {rs_gruss_check(map, f, u, a, b, params, cfg)};
    }
    case Suite::rs_variants: {
      const auto variant = parse_rs_variant(c.variant);
      if (!variant) {
        throw Error(ErrorCode::parameter_out_of_range,
                    "parameter-out-of-range: unknown variant " + c.variant);
      }
      return {rs_gruss_variant_check(map, f, u, a, b, *variant, cfg)};
    }
    case Suite::prob: {
      const BetaProbModel model = build_model(map, a, b, cfg, {true});
      const Window w = gruss_window(model, f, g);
      auto rep = make_report("prob:gruss-window",
                             std::fabs(w.expected_fg - 0.5 * (w.lower + w.upper)),
                             0.5 * (w.upper - w.lower), {});
      rep.witness["expected_fg"] = w.expected_fg;
      rep.witness["lower"] = w.lower;
      rep.witness["upper"] = w.upper;
      return {rep};
    }
    case Suite::sharpness:
      break;
  }
  return {};
}

int cmd_check(const RunConfig& c, std::ostream& out) {
  const auto suite = parse_suite(c.suite);
  if (!suite) {
    throw Error(ErrorCode::parameter_out_of_range, "parameter-out-of-range: unknown suite " + c.suite);
  }
  const bool single = c.has_a || c.has_b;
  json doc = base_document("check", c);
  std::vector<InequalityReport> reports;
  std::optional<SuiteSummary> summary;
  if (single) {
    reports = single_case(*suite, c);
  } else {
    SuiteOptions opts;
    opts.seed = c.seed;
    opts.cases = c.cases;
    opts.threads = c.threads;
    opts.cfg = c.cfg;
    summary = run_suite(*suite, opts);
    reports = summary->reports();
  }

  if (c.format == "json") {
    doc["reports"] = reports_json(reports);
    if (summary) doc["summary"] = to_json(*summary);
    out << doc.dump(2) << '\n';
  } else if (c.format == "csv") {
    print_reports_csv(out, reports);
  } else if (summary) {
    out << "suite " << summary->suite << ": " << summary->cases << " cases, "
        << summary->failures << " violations, " << summary->skipped << " skipped, "
        << summary->unconverged << " unconverged\n"
        << (residual_suite(*suite) ? "max residual = " : "max lhs = ") << fmt(summary->max_lhs)
        << "\nworst relative slack = " << fmt(summary->worst_relative_slack) << " (case "
        << summary->worst_case << ")\n";
    print_reports_text(out, reports, true);
    for (const auto& o : summary->outcomes) {
      if (o.error) out << "skipped case " << o.index << ": " << *o.error << '\n';
    }
  } else {
    print_reports_text(out, reports);
  }
  return exit_for(reports);
}

int cmd_prob(const RunConfig& c, std::ostream& out) {
  const BetaMap map = make_map(c);
  const BetaProbModel model = build_model(map, c.a, c.b, c.cfg, {true});
  const double mean = mean_point(model);
  std::vector<InequalityReport> reports;
  std::optional<SandwichBounds> sandwich;
  if (!c.f.empty()) {
    const Expr f = parse(c.f);
    const Expr g = parse(c.g.empty() ? c.f : c.g);
    const Window w = gruss_window(model, f, g);
    auto window = make_report("gruss-window", std::fabs(w.expected_fg - 0.5 * (w.lower + w.upper)),
                              0.5 * (w.upper - w.lower), {});
    window.witness["expected_fg"] = w.expected_fg;
    window.witness["lower"] = w.lower;
    window.witness["upper"] = w.upper;
    reports.push_back(window);
    sandwich = hermite_hadamard_product_bounds(model, f, g);
    auto lower = make_report("hermite-hadamard:lower", sandwich->lower, sandwich->expected_fg, {});
    auto upper = make_report("hermite-hadamard:upper", sandwich->expected_fg, sandwich->upper, {});
    for (auto* r : {&lower, &upper}) {
      r->witness["convexity_spot_check"] = sandwich->convexity_spot_check ? 1.0 : 0.0;
      r->witness["lambda"] = sandwich->lambda;
      reports.push_back(*r);
    }
  }
  std::optional<double> eh;
  if (!c.h.empty()) eh = expected_value(model, parse(c.h));

  if (c.format == "json") {
    json doc = base_document("prob", c);
    doc["model"] = {{"total_mass", model.total_mass()},
                    {"mass_deficit", model.mass_deficit},
                    {"p_ab", mean},
                    {"points_a", model.points_a},
                    {"weights_a", model.weights_a},
                    {"points_b", model.points_b},
                    {"weights_b", model.weights_b}};
    if (eh) doc["model"]["expected_h"] = *eh;
    doc["reports"] = reports_json(reports);
    out << doc.dump(2) << '\n';
  } else if (c.format == "csv") {
    out << "side,k,point,weight\n";
    for (std::size_t k = 0; k < model.weights_a.size(); ++k) {
      out << "a," << k << ',' << fmt(model.points_a[k]) << ',' << fmt(model.weights_a[k]) << '\n';
    }
    for (std::size_t k = 0; k < model.weights_b.size(); ++k) {
      out << "b," << k << ',' << fmt(model.points_b[k]) << ',' << fmt(model.weights_b[k]) << '\n';
    }
  } else {
    out << "total mass = " << fmt(model.total_mass())
        << "\nmass deficit = " << fmt(model.mass_deficit) << "\np_ab = " << fmt(mean) << '\n';
    if (eh) out << "E[h] = " << fmt(*eh) << '\n';
    if (c.weights) {
      for (std::size_t k = 0; k < model.weights_a.size(); ++k) {
        out << "p_" << k << "(a) = " << fmt(model.weights_a[k]) << " at " << fmt(model.points_a[k]) << '\n';
      }
      for (std::size_t k = 0; k < model.weights_b.size(); ++k) {
        out << "p_" << k << "(b) = " << fmt(model.weights_b[k]) << " at " << fmt(model.points_b[k]) << '\n';
      }
    }
    print_reports_text(out, reports);
    if (sandwich && !sandwich->convexity_spot_check) {
      out << "warning: midpoint convexity spot check failed; the sandwich assumes convex f, g\n";
    }
  }
  return exit_for(reports);
}

int exit_for_error(const Error& e) {
  return e.code() == ErrorCode::tail_divergent ? exit_not_converged : exit_input_error;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"beta-calculus integrals, derivatives and inequality checks", "betacalc"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_version_flag("--version", BETACALC_VERSION);
  app.set_config("--config", "", "key=value configuration file")->envname("BETA_CALC_CONFIG");

  RunConfig c;
  app.add_option("--map", c.map_kind, "jackson, hahn or custom")
      ->check(CLI::IsMember({"jackson", "hahn", "custom"}));
  app.add_option("--q", c.q, "map parameter q");
  app.add_option("--omega", c.omega, "Hahn shift omega");
  app.add_option("--expr", c.map_expr, "custom map expression in x");
  app.add_option("--probe", c.probe, "probe interval LO HI for a custom map")->expected(2);
  auto* opt_a = app.add_option("--a", c.a, "left end point");
  auto* opt_b = app.add_option("--b", c.b, "right end point");
  app.add_option("--f", c.f, "function f(x)");
  app.add_option("--g", c.g, "function g(x), defaults to f");
  app.add_option("--u", c.u, "integrator u(x), defaults to x");
  app.add_option("--expect", c.h, "function whose expected value is printed by prob");
  app.add_option("--p", c.p, "Hoelder exponent");
  app.add_option("--t", c.t, "evaluation point for derivative");
  app.add_option("--variant", c.variant, "Riemann-Stieltjes variant");
  app.add_option("--format", c.format, "json, csv or text")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--seed", c.seed, "seed for randomized suites");
  app.add_option("--cases", c.cases, "number of randomized cases");
  app.add_option("--threads", c.threads, "worker threads (0 = all cores)");
  app.add_option("--term-tol", c.cfg.term_tol, "series term tolerance");
  app.add_option("--gap-tol", c.cfg.gap_tol, "orbit gap tolerance (relative)");
  app.add_option("--consecutive-small", c.cfg.consecutive_small, "small terms before stopping");
  app.add_option("--k-max", c.cfg.k_max, "maximum orbit length");

  auto* integrate = app.add_subcommand("integrate", "beta-integral of f over [a, b]");
  integrate->add_flag("--trace", c.trace, "emit the partial sums as CSV");
  auto* derivative = app.add_subcommand("derivative", "beta-derivative of f at t");
  auto* check = app.add_subcommand("check", "run an inequality or identity check");
  check->add_option("suite", c.suite, "suite name")->required();
  auto* prob = app.add_subcommand("prob", "discrete probability model on the grid");
  prob->add_flag("--weights", c.weights, "list every weight in text output");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_input_error;
  }
  c.has_a = opt_a->count() > 0;
  c.has_b = opt_b->count() > 0;

  try {
    if (*integrate) return cmd_integrate(c, out);
    if (*derivative) return cmd_derivative(c, out);
    if (*check) return cmd_check(c, out);
    if (*prob) return cmd_prob(c, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_for_error(e);
  }
  return exit_input_error;
}

}  // namespace betacalc::cli
