// Command-line front end: exponent calculus, hypergeometric evaluation,
// identity verification, simulation runs, functional traces, blowup-ODE
// scaling demos, and lifespan sweeps with fits.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dampedwave/blowup_ode.hpp"
#include "dampedwave/exponents.hpp"
#include "dampedwave/functionals.hpp"
#include "dampedwave/hypergeom.hpp"
#include "dampedwave/report_io.hpp"
#include "dampedwave/sweep.hpp"
#include "dampedwave/testfunc.hpp"
#include "dampedwave/wavesolver.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace dampedwave;

namespace {

struct GlobalOpts {
  std::string config_path;
  std::string output_dir;
  bool as_json = false;
  bool quiet = false;
  int threads = 1;
};

void print(const GlobalOpts& g, const std::string& line) {
  if (!g.quiet) std::cout << line << "\n";
}

void emit_json(const json& j) { std::cout << j.dump(2) << "\n"; }

json load_config(const GlobalOpts& g) {
  if (g.config_path.empty()) throw InvalidInput("missing --config <path>");
  return read_json_file(g.config_path);
}

int cmd_exponents(const GlobalOpts& g, int N, double mu, double p, double tol) {
  const ProblemClass pc{N, mu, p};
  pc.validate();
  json out;
  out["gamma"] = gamma_poly(N + mu, p);
  out["p_fujita"] = fujita_exponent(N);
  const StraussExponent p0 = strauss_exponent(N + mu);
  if (p0.is_finite()) {
    out["p_strauss"] = p0.value();
  } else {
    out["p_strauss"] = nullptr;
  }
  out["mu_star"] = mu_star(N);
  try {
    const AdmissibleSet s = admissible_set(pc);
    out["S_interval"] = {s.lo, s.hi};
    out["sup_S"] = s.sup_value;
    out["theta"] = theta_exponent(pc);
  } catch (const EmptySetError&) {
    out["S_interval"] = nullptr;
    out["sup_S"] = nullptr;
    out["theta"] = nullptr;
  }
  const Regime regime = classify_regime(pc, tol);
  out["regime"] = to_string(regime.tag);
  out["branch"] = to_string(regime.branch);

  if (g.as_json) {
    emit_json(out);
  } else {
    print(g, "gamma(N+mu; p) = " + out["gamma"].dump());
    print(g, "p_fujita       = " + out["p_fujita"].dump());
    print(g, "p_strauss      = " +
                 (out["p_strauss"].is_null() ? std::string("inf")
                                             : out["p_strauss"].dump()));
    print(g, "mu_star        = " + out["mu_star"].dump());
    print(g, "S_interval     = " + out["S_interval"].dump());
    print(g, "sup_S          = " + out["sup_S"].dump());
    print(g, "theta          = " + out["theta"].dump());
    print(g, "regime         = " + out["regime"].get<std::string>());
    print(g, "branch         = " + out["branch"].get<std::string>());
  }
  return 0;
}

int cmd_hyp2f1(const GlobalOpts& g, double a, double b, double c, double z,
               double tol, int max_terms, double z_split) {
  HypergeomParams params{a, b, c, tol, max_terms, z_split};
  const EvalResult res = hyp2f1(params, z);
  json out;
  out["value"] = res.value;
  out["method"] = res.method == EvalMethod::DirectSeries ? "DirectSeries"
                                                         : "TransformedSeries";
  out["terms_used"] = res.terms_used;
  out["truncation_estimate"] = res.truncation_estimate;
  out["b_perturbation"] = res.b_perturbation;
  out["ode_residual"] = (z > 0.0 && z < 1.0) ? json(ode_residual(params, z))
                                             : json(nullptr);
  if (g.as_json) {
    emit_json(out);
  } else {
    print(g, "F(a,b,c;z)    = " + out["value"].dump());
    print(g, "method        = " + out["method"].get<std::string>());
    print(g, "terms_used    = " + out["terms_used"].dump());
    print(g, "truncation    = " + out["truncation_estimate"].dump());
    print(g, "ode_residual  = " + out["ode_residual"].dump());
  }
  return 0;
}

int cmd_verify_identities(const GlobalOpts& g, double beta, double mu, int N,
                          int samples, unsigned seed) {
  const TestFunctionFamily fam{beta, mu, N};
  fam.validate();

  std::vector<double> grid;
  for (int k = 1; k <= 19; ++k) grid.push_back(0.05 * k);
  const double contiguous = check_contiguous_identity(fam, grid);

  const auto pts = sample_cone_points(samples, seed);
  const double tderiv = check_time_derivative_identity(fam, pts);

  const RectPatch patch;
  const double h = 2e-3;
  const double dual_h = check_dual_equation(fam, patch, h);
  const double dual_h2 = check_dual_equation(fam, patch, 0.5 * h);
  const double ratio = dual_h / dual_h2;

  json out;
  out["contiguous_max_err"] = contiguous;
  out["contiguous_pass"] = contiguous < 1e-8;
  out["time_derivative_max_rel_err"] = tderiv;
  out["time_derivative_pass"] = tderiv < 1e-7;
  out["dual_residual_h"] = dual_h;
  out["dual_residual_h_half"] = dual_h2;
  out["dual_richardson_ratio"] = ratio;
  out["dual_pass"] = ratio > 3.5 && ratio < 4.5;
  try {
    const BoundConstants bc = estimate_bound_constants(fam);
    out["bound_regime"] =
        bc.regime == BoundRegime::Bounded ? "bounded" : "cone-edge-growth";
    out["bound_c_lower"] = bc.c_lower;
    out["bound_c_upper"] = bc.c_upper;
  } catch (const WrongRegime&) {
    out["bound_regime"] = nullptr;
  }
  const bool all_pass = out["contiguous_pass"].get<bool>() &&
                        out["time_derivative_pass"].get<bool>() &&
                        out["dual_pass"].get<bool>();
  out["all_pass"] = all_pass;

  if (g.as_json) {
    emit_json(out);
  } else {
    print(g, "contiguous relation   max err = " + out["contiguous_max_err"].dump() +
                 (contiguous < 1e-8 ? "  [pass]" : "  [FAIL]"));
    print(g, "time derivative   max rel err = " +
                 out["time_derivative_max_rel_err"].dump() +
                 (tderiv < 1e-7 ? "  [pass]" : "  [FAIL]"));
    print(g, "dual equation residual ratio  = " + out["dual_richardson_ratio"].dump() +
                 (out["dual_pass"].get<bool>() ? "  [pass]" : "  [FAIL]"));
    print(g, "bound constants: " + out.value("bound_regime", std::string("n/a")) +
                 " c_lower=" + out.value("bound_c_lower", json(nullptr)).dump() +
                 " c_upper=" + out.value("bound_c_upper", json(nullptr)).dump());
  }
  return all_pass ? 0 : 2;
}

int cmd_simulate(const GlobalOpts& g) {
  const SimulateConfig cfg = SimulateConfig::from_json(load_config(g));
  const fs::path out_dir = g.output_dir.empty() ? fs::path("run") : fs::path(g.output_dir);

  const RadialGrid grid =
      RadialGrid::for_domain(cfg.mp.r0, cfg.T_max, cfg.base_dr());
  SolverOptions opt;
  opt.cfl = cfg.cfl;
  opt.snapshot_stride = cfg.snapshot_every;
  const IntegrationOutput out =
      integrate_full(cfg.mp, grid, cfg.T_max, cfg.blow_threshold, opt);
  write_run_directory(out_dir, cfg, grid, out.report, out.coarse_snapshots);

  print(g, "status     = " + to_string(out.report.status));
  print(g, "T_est      = " + format_double(out.report.T_est));
  print(g, "T_refined  = " + format_double(out.report.T_refined));
  print(g, "peak       = " + format_double(out.report.peak_amplitude));
  print(g, "report     -> " + (out_dir / "report.json").string());
  if (g.as_json) {
    json j;
    j["status"] = to_string(out.report.status);
    j["T_est"] = out.report.T_est;
    j["T_refined"] = out.report.T_refined;
    j["peak_amplitude"] = out.report.peak_amplitude;
    emit_json(j);
  }
  return out.report.status == RunStatus::Diverged ? 2 : 0;
}

int cmd_functionals(const GlobalOpts& g, const std::string& run_dir, double beta,
                    double q) {
  const RunDirectory run = load_run_directory(run_dir);
  if (run.snapshots.empty()) {
    throw InvalidInput("functionals: run has no snapshots.csv (set snapshot_every)");
  }
  const ModelParams& mp = run.cfg.mp;
  const TestFunctionFamily fam{beta, mp.pc.mu, mp.pc.N};
  fam.validate();

  FunctionalTrace trace = compute_G(run.snapshots, run.grid, fam, mp);
  compute_H_J(trace);
  const double kernel_gap = check_kernel_identity(trace);
  const PairingGapReport pairing =
      check_duhamel_identity(run.snapshots, run.grid, fam, mp, true);
  const DataMoments moments = compute_data_moments(mp, run.grid, fam);
  const double q_eff = q > mp.pc.p ? q : mp.pc.p + 1.0;
  const HolderBoundsReport holder =
      check_holder_bounds(run.snapshots, run.grid, mp, q_eff);

  const fs::path out_dir =
      g.output_dir.empty() ? fs::path(run_dir) : fs::path(g.output_dir);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("functionals: cannot create output dir: " + ec.message());

  std::string csv = "t,G,H,J\n";
  for (std::size_t k = 0; k < trace.times.size(); ++k) {
    csv += format_double(trace.times[k]) + "," + format_double(trace.G[k]) + "," +
           format_double(trace.H[k]) + "," + format_double(trace.J[k]) + "\n";
  }
  write_text_file(out_dir / "functionals.csv", csv);

  json rep;
  rep["beta"] = beta;
  rep["kernel_identity_gap"] = kernel_gap;
  rep["pairing_identity_gap"] = pairing.max_rel_gap;
  rep["pairing_identity_gap_t0"] = pairing.gap_t0;
  rep["E0"] = moments.E0;
  rep["E1"] = moments.E1;
  rep["q"] = q_eff;
  rep["c1_power"] = holder.defined ? json(holder.c1_power) : json(nullptr);
  rep["c1_log"] = holder.defined ? json(holder.c1_log) : json(nullptr);
  rep["holder_min_gap"] = holder.defined ? json(holder.holder_min_gap) : json(nullptr);
  write_text_file(out_dir / "identity_report.json", rep.dump(2) + "\n");

  if (g.as_json) emit_json(rep);
  print(g, "kernel identity gap  = " + format_double(kernel_gap));
  print(g, "pairing identity gap = " + format_double(pairing.max_rel_gap));
  print(g, "reports -> " + (out_dir / "identity_report.json").string());
  return 0;
}

int cmd_blowup_ode(const GlobalOpts& g, const std::string& which, double p,
                   const std::string& eps_range, double C, double c,
                   double sigma0) {
  BlowupOdeProblem prob;
  if (which == "i") {
    prob.kind = OdeCase::PowerI;
    prob.c = c;
  } else if (which == "ii") {
    prob.kind = OdeCase::LogII;
  } else {
    throw InvalidInput("blowup-ode: --case must be i or ii");
  }
  prob.p = p;
  prob.C = C;
  if (sigma0 > 0.0) prob.sigma0 = sigma0;

  // a:b:n, log-spaced
  double lo = 0.0, hi = 0.0;
  int n = 0;
  if (std::sscanf(eps_range.c_str(), "%lf:%lf:%d", &lo, &hi, &n) != 3 || n < 2 ||
      !(lo > 0.0) || !(hi > lo)) {
    throw InvalidInput("blowup-ode: --eps-range must be lo:hi:n with 0 < lo < hi");
  }
  std::vector<double> eps(n);
  for (int i = 0; i < n; ++i) {
    eps[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  }

  const OdeScalingFit fit = blowup_ode_demo(prob, eps);
  json out;
  out["case"] = which;
  out["p"] = p;
  out["slope"] = fit.slope;
  out["expected_slope"] = fit.expected_slope;
  out["intercept"] = fit.intercept;
  out["r_squared"] = fit.r_squared;
  out["eps"] = fit.eps;
  out["sigma_star"] = fit.sigma_star;
  if (g.as_json) {
    emit_json(out);
  } else {
    print(g, "fitted slope   = " + format_double(fit.slope));
    print(g, "expected slope = " + format_double(fit.expected_slope));
    print(g, "r_squared      = " + format_double(fit.r_squared));
  }
  return 0;
}

SweepConfig sweep_config_from_json(const json& j, const GlobalOpts& g) {
  SweepConfig cfg;
  try {
    cfg.mp_template.pc.N = j.at("N").get<int>();
    cfg.mp_template.pc.mu = j.at("mu").get<double>();
    cfg.mp_template.pc.p = j.at("p").get<double>();
    cfg.mp_template.r0 = j.value("r0", 0.5);
    cfg.mp_template.amp_f = j.value("amp_f", 1.0);
    cfg.mp_template.amp_g = j.value("amp_g", 1.0);
    cfg.mp_template.eps = 1.0;
    cfg.eps_values = j.at("eps_values").get<std::vector<double>>();
    cfg.dr = j.value("dr", 0.0);
    cfg.cfl = j.value("cfl", 0.9);
    cfg.blow_threshold = j.value("blow_threshold", 1e6);
    cfg.T_cap = j.at("T_cap").get<double>();
    cfg.grid_levels = j.value("grid_levels", 2);
    cfg.seed = j.value("seed", 12345u);
    cfg.threads = g.threads > 1 ? g.threads : j.value("threads", 1);
    cfg.output_dir = !g.output_dir.empty() ? g.output_dir
                                           : j.value("output_dir", std::string("sweep"));
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("sweep config: ") + e.what());
  }
  return cfg;
}

int cmd_sweep(const GlobalOpts& g) {
  const SweepConfig cfg = sweep_config_from_json(load_config(g), g);
  const std::vector<LifespanRecord> records = run_sweep(cfg);
  std::optional<ScalingFit> fit;
  try {
    fit = fit_lifespan(records, cfg.mp_template.pc);
  } catch (const InsufficientData&) {
    fit = std::nullopt;
  }
  emit_report(records, fit, cfg.mp_template.pc, cfg.output_dir);
  print(g, "records = " + std::to_string(records.size()));
  if (fit) {
    print(g, "fit: " + to_string(fit->model) + " slope=" + format_double(fit->slope) +
                 " theory=" + format_double(fit->theory_exponent) +
                 " consistent=" + (fit->consistent ? "true" : "false"));
  } else {
    print(g, "fit: insufficient data");
  }
  print(g, "reports -> " + cfg.output_dir);
  return 0;
}

int cmd_fit(const GlobalOpts& g, int N, double mu, double p) {
  if (g.output_dir.empty()) throw InvalidInput("fit: --output <sweep-dir> required");
  const fs::path records_dir = fs::path(g.output_dir) / "records";
  if (!fs::exists(records_dir)) {
    throw IoError("fit: no records directory under " + g.output_dir);
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(records_dir)) {
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<LifespanRecord> records;
  for (const fs::path& f : files) records.push_back(record_from_json(read_json_file(f)));
  std::sort(records.begin(), records.end(),
            [](const LifespanRecord& a, const LifespanRecord& b) { return a.eps > b.eps; });

  const ProblemClass pc{N, mu, p};
  std::optional<ScalingFit> fit;
  try {
    fit = fit_lifespan(records, pc);
  } catch (const InsufficientData&) {
    fit = std::nullopt;
  }
  emit_report(records, fit, pc, g.output_dir);
  if (fit) {
    print(g, "fit: " + to_string(fit->model) + " slope=" + format_double(fit->slope) +
                 " r2=" + format_double(fit->r_squared) +
                 " consistent=" + (fit->consistent ? "true" : "false"));
  } else {
    print(g, "fit: insufficient data");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical laboratory for blowup lifespans of the semilinear "
               "wave equation with scale-invariant damping"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--config", g.config_path, "JSON config file");
  app.add_option("--output", g.output_dir, "output directory");
  app.add_flag("--json", g.as_json, "print machine-readable JSON");
  app.add_flag("--quiet", g.quiet, "suppress table output");
  app.add_option("--threads", g.threads, "worker threads for sweeps");

  auto* sc_exp = app.add_subcommand("exponents", "critical exponent calculus");
  int N = 1;
  double mu = 1.0, p = 3.0, tol = 1e-9;
  sc_exp->add_option("--N", N, "space dimension")->required();
  sc_exp->add_option("--mu", mu, "damping coefficient")->required();
  sc_exp->add_option("--p", p, "nonlinearity power")->required();
  sc_exp->add_option("--tol", tol, "criticality tolerance (relative)");

  auto* sc_hyp = app.add_subcommand("hyp2f1", "Gauss hypergeometric evaluation");
  double ha = 0, hb = 0, hc = 1, hz = 0, htol = 1e-15, hsplit = 0.5;
  int hmax = 10000;
  sc_hyp->add_option("--a", ha)->required();
  sc_hyp->add_option("--b", hb)->required();
  sc_hyp->add_option("--c", hc)->required();
  sc_hyp->add_option("--z", hz)->required();
  sc_hyp->add_option("--tol", htol, "termwise relative cutoff");
  sc_hyp->add_option("--max-terms", hmax);
  sc_hyp->add_option("--z-split", hsplit, "series/transformation switch point");

  auto* sc_ver = app.add_subcommand("verify-identities",
                                    "test-function identity battery");
  double vbeta = 1.2, vmu = 0.8;
  int vN = 2, vsamples = 20;
  unsigned vseed = 12345;
  sc_ver->add_option("--beta", vbeta)->required();
  sc_ver->add_option("--mu", vmu)->required();
  sc_ver->add_option("--N", vN)->required();
  sc_ver->add_option("--samples", vsamples, "random cone sample count");
  sc_ver->add_option("--seed", vseed);

  auto* sc_sim = app.add_subcommand("simulate", "radial damped-wave run");

  auto* sc_fun = app.add_subcommand("functionals",
                                    "G/H/J traces and identity report for a run");
  std::string run_dir;
  double fbeta = 1.2, fq = 0.0;
  sc_fun->add_option("--run", run_dir, "simulation output directory")->required();
  sc_fun->add_option("--beta", fbeta)->required();
  sc_fun->add_option("--q", fq, "Holder bound parameter q > p");

  auto* sc_ode = app.add_subcommand("blowup-ode", "reduced blowup ODE scaling");
  std::string ocase = "i", orange = "1e-3:1e-1:8";
  double op = 2.0, oC = 1.0, oc = 3.0, osigma0 = 0.0;
  sc_ode->add_option("--case", ocase, "i or ii")->required();
  sc_ode->add_option("--p", op)->required();
  sc_ode->add_option("--eps-range", orange, "lo:hi:n log-spaced");
  sc_ode->add_option("--C", oC, "source/floor constant");
  sc_ode->add_option("--c", oc, "H'/sigma coefficient (case i)");
  sc_ode->add_option("--sigma0", osigma0, "start clock");

  auto* sc_sweep = app.add_subcommand("sweep", "lifespan sweep over eps");

  auto* sc_fit = app.add_subcommand("fit", "refit records in a sweep directory");
  int fN = 1;
  double fmu = 1.0, fp = 3.0;
  sc_fit->add_option("--N", fN)->required();
  sc_fit->add_option("--mu", fmu)->required();
  sc_fit->add_option("--p", fp)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (sc_exp->parsed()) return cmd_exponents(g, N, mu, p, tol);
    if (sc_hyp->parsed()) return cmd_hyp2f1(g, ha, hb, hc, hz, htol, hmax, hsplit);
    if (sc_ver->parsed()) return cmd_verify_identities(g, vbeta, vmu, vN, vsamples, vseed);
    if (sc_sim->parsed()) return cmd_simulate(g);
    if (sc_fun->parsed()) return cmd_functionals(g, run_dir, fbeta, fq);
    if (sc_ode->parsed()) return cmd_blowup_ode(g, ocase, op, orange, oC, oc, osigma0);
    if (sc_sweep->parsed()) return cmd_sweep(g);
    if (sc_fit->parsed()) return cmd_fit(g, fN, fmu, fp);
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 3;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
