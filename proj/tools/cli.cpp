#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "ricker/bifurcate.hpp"
#include "ricker/csv.hpp"
#include "ricker/errors.hpp"
#include "ricker/lineig.hpp"
#include "ricker/semiconj.hpp"
#include "ricker/simulate.hpp"
#include "ricker/system.hpp"

namespace ricker::cli {
namespace {

using json = nlohmann::ordered_json;

constexpr const char* kVersion = "0.1.0";

const char* subcommand_name(Subcommand s) {
  switch (s) {
    case Subcommand::simulate: return "simulate";
    case Subcommand::eigenseq: return "eigenseq";
    case Subcommand::analyze: return "analyze";
    case Subcommand::bifurcate: return "bifurcate";
    case Subcommand::extinct: return "extinct";
  }
  return "?";
}

// JSON has no NaN/inf; emit null for those.
json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json num_array(std::span<const double> v) {
  json arr = json::array();
  for (double x : v) arr.push_back(num(x));
  return arr;
}

void require_readable(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw IoError("cannot read " + p.string());
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out_path) {
    write_file_atomic(*cfg.out_path, [&](std::ostream& f) { f << text; });
  } else {
    out << text;
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json meta(const RunConfig& cfg, json settings) {
  return json{{"tool", "ricker"},
              {"version", kVersion},
              {"subcommand", subcommand_name(cfg.subcommand)},
              {"settings", std::move(settings)}};
}

// ---------------------------------------------------------------------------
// simulate

std::string run_simulate(const RunConfig& cfg) {
  const RickerSystem sys = load_system(*cfg.system_file);
  const SimulateArgs& a = cfg.simulate;
  std::ostringstream os;

  if (a.form == "planar") {
    const PlanarOrbit orbit = iterate_planar(a.x0, a.y0, sys, a.steps);
    os << "n,x,y\n";
    for (std::size_t k = 0; k < orbit.size(); ++k) {
      os << k << ',' << format_real(orbit.states[k].x) << ',' << format_real(orbit.states[k].y)
         << '\n';
    }
    return os.str();
  }

  const auto sig2 = sys.sigma2.values();
  if (std::any_of(sig2.begin(), sig2.end(), [](double s) { return s != 0.0; })) {
    throw DomainError("the second-order and reduced forms need sigma2 = 0");
  }
  const FoldedParams fp = fold_second_order(sys);
  // Seeds are the first two planar x values; row n holds planar time n.
  const double x1 = step_planar(PlanarState{a.x0, a.y0}, sys, 0).x;
  std::vector<double> xs{a.x0};
  if (a.steps >= 1) xs = iterate_second_order(a.x0, x1, fp, a.steps - 1).states;

  if (a.form == "second") {
    os << "n,x\n";
    for (std::size_t k = 0; k < xs.size(); ++k) os << k << ',' << format_real(xs[k]) << '\n';
    return os.str();
  }

  if (!sys.c1.is_constant()) throw DomainError("the reduced form r = c1 x needs a constant c1");
  const ReducedParams rp = reduce(fp);
  const double c1 = sys.c1(0);
  std::vector<double> rs{c1 * a.x0};
  if (a.steps >= 1) rs = iterate_reduced(c1 * a.x0, c1 * x1, rp, a.steps - 1).states;
  os << "n,r\n";
  for (std::size_t k = 0; k < rs.size(); ++k) os << k << ',' << format_real(rs[k]) << '\n';
  return os.str();
}

// ---------------------------------------------------------------------------
// eigenseq

json alb_json(const AlbVerdict& v) {
  return json{{"holds", v.holds},
              {"lhs", num(v.lhs)},
              {"rhs", num(v.rhs)},
              {"inequality", v.inequality},
              {"delta_guard", v.delta_guard},
              {"theta_guard", v.theta_guard}};
}

json eigen_json(const EigenData& ed) {
  json j{{"period", ed.period},
         {"delta", num_array(ed.delta)},
         {"theta", num_array(ed.theta)},
         {"quadratic", {{"A", num(ed.quad.A)}, {"B", num(ed.quad.B)}, {"C", num(ed.quad.C)}}},
         {"r", num_array(ed.r)},
         {"periodicity_residual", num(ed.periodicity_residual)},
         {"product", num(ed.product)},
         {"product_direct", num(ed.product_direct)}};
  return j;
}

std::string run_eigenseq(const RunConfig& cfg) {
  const EigenArgs& a = cfg.eigen;
  const LinearCoeffs lc(PeriodicSeq(a.a), PeriodicSeq(a.b));
  const EigenData ed = eigensequence(lc, a.tol);
  json j = eigen_json(ed);
  const auto bs = lc.b.values();
  if (std::all_of(bs.begin(), bs.end(), [](double b) { return b > 0.0; })) {
    j["product_closed_form"] = num(product_closed_form(ed));
  }
  j["alb"] = alb_json(evaluate_alb(ed));
  if (ed.period <= 2) {
    j["p2"] = criterion_p2(lc.a_at(1), lc.a_at(2), lc.b_at(1), lc.b_at(2));
  }
  j["meta"] = meta(cfg, {{"a", a.a}, {"b", a.b}, {"tol", a.tol}, {"indexing", "a_1 is the first listed value"}});
  return dump(j);
}

// ---------------------------------------------------------------------------
// analyze

double need(const std::optional<double>& v, const char* flag) {
  if (!v) throw UsageError(std::string("this mode needs ") + flag);
  return *v;
}

json cycle_json(const CycleResult& cr) {
  json j{{"converged", cr.converged}, {"period", cr.period}, {"points", num_array(cr.points)}};
  if (cr.converged) {
    j["multiplier"] = num(cr.multiplier);
    j["stable"] = cr.stable();
    j["residual"] = num(cr.residual);
  }
  return j;
}

std::string run_analyze(const RunConfig& cfg) {
  const AnalyzeArgs& a = cfg.analyze;
  json j;
  json settings{{"mode", a.mode}};
  const bool two = a.mode == "twocycle";
  const std::size_t steps = a.steps.value_or(two ? 100000 : 1000);
  const double tol = a.tol.value_or(two ? 1e-6 : 1e-8);

  if (a.mode == "factorize") {
    const double d = need(a.d, "--d");
    const double rm1 = need(a.r_m1, "--rm1");
    const double r0 = need(a.r_0, "--r0");
    const FactorizationReport rep = verify_factorization(rm1, r0, d, steps);
    j = {{"d", d},
         {"t0", num(rep.state.t0)},
         {"t1", num(rep.state.t1)},
         {"on_invariant_curve", rep.on_curve},
         {"steps", rep.steps},
         {"t_product_residual", num(rep.t_product_residual)},
         {"composition_residual", num(rep.composition_residual)},
         {"step_residual", num(rep.step_residual)},
         {"orbit_residual", num(rep.orbit_residual)},
         {"odd_chain_residual", num(rep.odd_chain_residual)},
         {"even_chain_residual", num(rep.even_chain_residual)}};
    if (rep.on_curve) j["curve_residual"] = num(rep.curve_residual);
    settings["steps"] = steps;
  } else if (a.mode == "cycle") {
    const double d = need(a.d, "--d");
    double t0 = 0.0;
    double seed = 0.0;
    if (a.t0) {
      t0 = *a.t0;
      seed = a.r_m1.value_or(0.5 * d);
    } else {
      seed = need(a.r_m1, "--rm1 (or --t0)");
      t0 = compute_t0(seed, need(a.r_0, "--r0"));
    }
    const CycleOptions opt{a.transient, a.max_period, tol};
    const CycleResult cr = detect_cycle(MapConfig{d, t0}, seed, opt);
    const ShadowResult sh = shadow_cycle(cr, d, t0, opt);
    const FactorState fs = FactorState::from_t0(d, t0);
    j = {{"d", d},
         {"t0", num(t0)},
         {"t1", num(sh.t1)},
         {"on_invariant_curve", fs.on_invariant_curve()},
         {"f0_cycle", cycle_json(cr)},
         {"f1_cycle", cycle_json(sh.cycle)},
         {"multiplier_gap", num(sh.multiplier_gap)},
         {"degenerate", sh.degenerate}};
    if (!sh.warning.empty()) j["warning"] = sh.warning;
    if (cr.converged) {
      const LiftedCycle lc = lift_cycle(cr, d, t0);
      j["lifted"] = {{"period", lc.minimal_period},
                     {"points", num_array(lc.points)},
                     {"invariance_residual", num(lc.invariance_residual)}};
    }
    settings.update({{"transient", a.transient}, {"max_period", a.max_period}, {"tol", tol}});
  } else if (a.mode == "twocycle") {
    const double d = need(a.d, "--d");
    const TwoCycle tc =
        two_cycle_rmsa(d, need(a.r_m1, "--rm1"), need(a.r_0, "--r0"), TwoCycleOptions{steps, tol});
    j = {{"d", d},
         {"rho1", num(tc.rho1)},
         {"rho2", num(tc.rho2)},
         {"sum", num(tc.rho1 + tc.rho2)},
         {"sum_residual", num(tc.sum_residual)},
         {"degenerate", tc.degenerate},
         {"converged", tc.converged},
         {"steps", tc.steps},
         {"odd_error", num(tc.odd_error)},
         {"even_error", num(tc.even_error)},
         {"odd_limit_is_fixed_point_of_f0", tc.pairing_as_expected}};
    settings.update({{"max_steps", steps}, {"tol", tol}});
  } else if (a.mode == "period3") {
    const double d = need(a.d, "--d");
    const Period3Witness w = period3_witness(d, a.grid);
    j = {{"d", d}, {"found", w.found}};
    if (w.found) {
      j.update({{"bracket", {w.lo, w.hi}},
                {"point", num(w.point)},
                {"residual", num(w.residual)},
                {"fixed_gap", num(w.fixed_gap)}});
    }
    settings["grid"] = a.grid;
  } else if (a.mode == "embed") {
    const double c0 = need(a.c0, "--c0");
    const double c1 = need(a.c1, "--c1");
    const EmbedReport rep = embed_first_order(c0, c1, a.r_m1.value_or(1.0), steps);
    j = {{"c0", c0},
         {"c1", c1},
         {"d", rep.d},
         {"t0", num(rep.t0)},
         {"on_invariant_curve", rep.on_curve},
         {"max_residual", num(rep.max_residual)}};
    settings.update({{"steps", steps}, {"u0", a.r_m1.value_or(1.0)}});
  } else if (a.mode == "fixed") {
    const double d = need(a.d, "--d");
    double gamma = 0.0;
    if (a.t0) {
      gamma = *a.t0;
    } else {
      gamma = compute_t0(need(a.r_m1, "--rm1 (or --t0)"), need(a.r_0, "--r0"));
    }
    const FixedPointReport rep = fixed_points_dr(d, gamma);
    json derivs = json::array();
    for (double x : rep.roots) derivs.push_back(num(f_derivative(x, MapConfig{d, gamma})));
    j = {{"d", d},
         {"t", num(gamma)},
         {"fixed_points", num_array(rep.roots)},
         {"derivatives", derivs},
         {"uniqueness_proven", rep.uniqueness_proven}};
  } else {
    throw UsageError("unknown --mode " + a.mode);
  }
  j["meta"] = meta(cfg, settings);
  return dump(j);
}

// ---------------------------------------------------------------------------
// bifurcate

std::string run_bifurcate(const RunConfig& cfg, std::ostream& out) {
  const ScanSpec& s = cfg.scan;
  const std::vector<ScanRow> rows = run_scan(s);
  if (!cfg.out_path) {
    std::ostringstream os;
    write_csv(rows, os);
    return os.str();
  }
  emit_csv(rows, *cfg.out_path);

  std::map<std::string, std::size_t> counts;
  std::size_t overflow = 0;
  for (const ScanRow& r : rows) {
    if (r.overflow) {
      ++overflow;
      continue;
    }
    ++counts[r.period ? std::to_string(*r.period) : "aperiodic"];
  }
  const LiftCheck lc = check_lift_consistency(rows, s);
  json summary{{"rows", rows.size()},
               {"out", cfg.out_path->string()},
               {"period_counts", counts},
               {"overflow_rows", overflow},
               {"lift_check",
                {{"sampled", lc.sampled},
                 {"compared", lc.compared},
                 {"agreed", lc.agreed},
                 {"mismatches", lc.mismatches}}}};
  summary["meta"] = meta(cfg, {{"d", s.d},
                               {"rm1", s.r_m1},
                               {"r0_lo", s.r0_lo},
                               {"r0_hi", s.r0_hi},
                               {"grid", s.grid_n},
                               {"transient", s.transient},
                               {"keep", s.keep},
                               {"max_period", s.max_period},
                               {"tol", s.tol},
                               {"threads", scan_threads(s.threads)}});
  out << dump(summary);
  return {};
}

// ---------------------------------------------------------------------------
// extinct

std::string run_extinct(const RunConfig& cfg) {
  const RickerSystem sys = load_system(*cfg.system_file);
  const BextVerdict bv = check_bext(sys);
  const C0Report c0 = c0_report(sys);
  const char* criterion = bv.extinct ? "alb" : (c0.holds ? "c0" : "none");

  const auto as = bv.coeffs.a.values();
  const auto bs = bv.coeffs.b.values();
  json bext{{"holds", bv.extinct},
            {"b_below_one", bv.b_below_one},
            {"comparison_a", num_array(as)},
            {"comparison_b", num_array(bs)},
            {"alb", alb_json(bv.alb)}};
  if (bv.coeffs.period() <= 2) {
    bext["p2"] = criterion_p2(bv.coeffs.a_at(1), bv.coeffs.a_at(2), bv.coeffs.b_at(1),
                              bv.coeffs.b_at(2));
  }
  if (bv.eigen) bext["eigensequence"] = eigen_json(*bv.eigen);
  if (!bv.note.empty()) bext["note"] = bv.note;

  json j{{"extinct", bv.extinct || c0.holds},
         {"mean_sigma2", num(bv.mean_sigma2)},
         {"criterion", criterion},
         {"bext", bext},
         {"c0", {{"holds", c0.holds}, {"limsup", num(c0.limsup)}}}};
  j["meta"] = meta(cfg, {{"system", cfg.system_file->string()}, {"period", sys.period()}});
  return dump(j);
}

int report(std::ostream& err, const RunConfig* cfg, const char* kind, const std::string& msg,
           int code, std::optional<std::int64_t> index = std::nullopt) {
  json j{{"error", kind}, {"message", msg}, {"exit_code", code}};
  if (cfg) j["subcommand"] = subcommand_name(cfg->subcommand);
  if (index) j["index"] = *index;
  err << j.dump() << '\n';
  return code;
}

}  // namespace

// ---------------------------------------------------------------------------

RunConfig parse_args(const std::vector<std::string>& args) {
  RunConfig cfg;
  CLI::App app{"Planar stage-structured Ricker model: simulation, eigensequences, "
               "semiconjugate factorization, bifurcation scans and extinction checks.\n"
               "All rates and densities are dimensionless.",
               "ricker"};
  app.require_subcommand(1);
  std::string system_file;
  std::string out_file;

  auto* sim = app.add_subcommand("simulate", "Iterate a system from a JSON parameter file; CSV output");
  sim->add_option("--system", system_file, "parameter file (keys alpha, beta, sigma1, sigma2, c1, c2)")
      ->required();
  sim->add_option("--x0", cfg.simulate.x0, "initial stage-1 density")->capture_default_str();
  sim->add_option("--y0", cfg.simulate.y0, "initial stage-2 density")->capture_default_str();
  sim->add_option("--steps", cfg.simulate.steps, "number of steps; rows = steps + 1")
      ->capture_default_str();
  sim->add_option("--form", cfg.simulate.form,
                  "planar (n,x,y), second (n,x; needs sigma2 = 0) or reduced (n,r with r = c1 x; "
                  "needs sigma2 = 0, constant c1 and the matching condition)")
      ->check(CLI::IsMember({"planar", "second", "reduced"}))
      ->capture_default_str();
  sim->add_option("--out", out_file, "output CSV path (default: stdout)");

  auto* eig = app.add_subcommand("eigenseq", "Eigensequence of u_{n+1} = a_n u_n + b_n u_{n-1}; JSON output");
  eig->add_option("--a", cfg.eigen.a, "comma list a_1,...,a_p (non-negative)")
      ->delimiter(',')
      ->required();
  eig->add_option("--b", cfg.eigen.b, "comma list b_1,...,b_p (non-negative)")
      ->delimiter(',')
      ->required();
  eig->add_option("--tol", cfg.eigen.tol, "relative tolerance of the periodicity check")
      ->capture_default_str();
  eig->add_option("--out", out_file, "output JSON path (default: stdout)");

  AnalyzeArgs& an = cfg.analyze;
  auto* ana = app.add_subcommand(
      "analyze", "Analyses of r_{n+1} = r_{n-1} exp(d - r_{n-1} - r_n); JSON output");
  ana->add_option("--mode", an.mode,
                  "factorize | cycle | twocycle | period3 | embed | fixed")
      ->check(CLI::IsMember({"factorize", "cycle", "twocycle", "period3", "embed", "fixed"}))
      ->required();
  ana->add_option("--d", an.d, "exponent d (> 0)");
  ana->add_option("--rm1", an.r_m1, "seed r_{-1} (> 0); u_0 for --mode embed (default 1)");
  ana->add_option("--r0", an.r_0, "seed r_0 (> 0)");
  ana->add_option("--t0", an.t0, "invariant t0 directly (cycle, fixed); overrides the seeds");
  ana->add_option("--c0", an.c0, "first exponent of the alternating first-order map (embed)");
  ana->add_option("--c1", an.c1, "second exponent of the alternating first-order map (embed)");
  ana->add_option("--steps", an.steps, "orbit length (factorize, embed; default 1000) or step cap (twocycle; default 100000)");
  ana->add_option("--transient", an.transient, "discarded iterations before cycle detection")
      ->capture_default_str();
  ana->add_option("--max-period", an.max_period, "largest period searched")->capture_default_str();
  ana->add_option("--grid", an.grid, "grid points for the period-three sign-change search")
      ->capture_default_str();
  ana->add_option("--tol", an.tol, "cycle tolerance, relative (default 1e-8); two-cycle tolerance, absolute (default 1e-6)");
  ana->add_option("--out", out_file, "output JSON path (default: stdout)");

  ScanSpec& sc = cfg.scan;
  auto* bif = app.add_subcommand(
      "bifurcate", "Scan r_0 with r_{-1} fixed; CSV columns r0,t0,period,point_index,value");
  bif->add_option("--d", sc.d, "exponent d (> 0)")->required();
  bif->add_option("--rm1", sc.r_m1, "fixed seed r_{-1}")->required();
  bif->add_option("--r0-lo", sc.r0_lo, "lower end of the r_0 range")->required();
  bif->add_option("--r0-hi", sc.r0_hi, "upper end of the r_0 range")->required();
  bif->add_option("--grid", sc.grid_n, "number of r_0 values, ends included")->capture_default_str();
  bif->add_option("--transient", sc.transient, "discarded iterations per r_0")->capture_default_str();
  bif->add_option("--keep", sc.keep, "iterates kept per r_0")->capture_default_str();
  bif->add_option("--max-period", sc.max_period, "largest period classified")->capture_default_str();
  bif->add_option("--tol", sc.tol, "absolute tolerance of the period classifier")
      ->capture_default_str();
  bif->add_option("--threads", sc.threads, "worker threads (0: all cores; RICKER_THREADS caps)")
      ->capture_default_str();
  bif->add_option("--out", out_file,
                  "output CSV path; a JSON summary then goes to stdout (default: CSV to stdout)");

  auto* ext = app.add_subcommand(
      "extinct", "Extinction verdict for a parameter file (eigensequence and c0 tests); JSON output");
  ext->add_option("--system", system_file, "parameter file")->required();
  ext->add_option("--out", out_file, "output JSON path (default: stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const CLI::App* target = &app;
    for (const CLI::App* sub : app.get_subcommands()) target = sub;
    throw HelpRequested(target->help());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  if (*sim) cfg.subcommand = Subcommand::simulate, cfg.format = Format::csv;
  if (*eig) cfg.subcommand = Subcommand::eigenseq, cfg.format = Format::json;
  if (*ana) cfg.subcommand = Subcommand::analyze, cfg.format = Format::json;
  if (*bif) cfg.subcommand = Subcommand::bifurcate, cfg.format = Format::csv;
  if (*ext) cfg.subcommand = Subcommand::extinct, cfg.format = Format::json;

  if (!system_file.empty()) {
    cfg.system_file = system_file;
    require_readable(*cfg.system_file);
  }
  if (!out_file.empty()) cfg.out_path = out_file;

  if (cfg.subcommand == Subcommand::eigenseq && cfg.eigen.a.size() != cfg.eigen.b.size()) {
    throw UsageError("--a and --b need the same number of values");
  }
  if (cfg.subcommand == Subcommand::bifurcate) {
    try {
      cfg.scan.validate();
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
  }
  return cfg;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    std::string text;
    switch (cfg.subcommand) {
      case Subcommand::simulate: text = run_simulate(cfg); break;
      case Subcommand::eigenseq: text = run_eigenseq(cfg); break;
      case Subcommand::analyze: text = run_analyze(cfg); break;
      case Subcommand::bifurcate: {
        text = run_bifurcate(cfg, out);
        if (!cfg.out_path) out << text;
        return exit_code::ok;
      }
      case Subcommand::extinct: text = run_extinct(cfg); break;
    }
    emit(cfg, text, out);
    return exit_code::ok;
  } catch (const UsageError& e) {
    return report(err, &cfg, "usage", e.what(), exit_code::usage);
  } catch (const OverflowError& e) {
    return report(err, &cfg, "overflow", e.what(), exit_code::overflow, e.index());
  } catch (const IoError& e) {
    return report(err, &cfg, "io", e.what(), exit_code::io);
  } catch (const NumericalError& e) {
    return report(err, &cfg, "numerical", e.what(), exit_code::domain);
  } catch (const Error& e) {
    return report(err, &cfg, "domain", e.what(), exit_code::domain);
  }
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = parse_args(args);
  } catch (const HelpRequested& h) {
    out << h.what();
    return exit_code::ok;
  } catch (const UsageError& e) {
    return report(err, nullptr, "usage", e.what(), exit_code::usage);
  } catch (const IoError& e) {
    return report(err, nullptr, "io", e.what(), exit_code::io);
  }
  return run(cfg, out, err);
}

}  // namespace ricker::cli
