#include "dampedwave/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <thread>

#include "dampedwave/numerics.hpp"
#include "dampedwave/report_io.hpp"

namespace dampedwave {

namespace fs = std::filesystem;

double SweepConfig::base_dr() const {
  const double base = dr > 0.0 ? dr : mp_template.r0 / 64.0;
  // The finest pair of the requested levels feeds the Richardson bracket.
  return base / std::pow(2.0, grid_levels - 2);
}

void SweepConfig::validate() const {
  mp_template.validate();
  if (eps_values.empty()) throw InvalidInput("sweep: eps_values must be nonempty");
  for (std::size_t i = 1; i < eps_values.size(); ++i) {
    if (!(eps_values[i] < eps_values[i - 1])) {
      throw InvalidInput("sweep: eps_values must be strictly decreasing");
    }
  }
  if (!(eps_values.back() > 0.0)) throw InvalidInput("sweep: eps must be > 0");
  if (grid_levels < 2) throw InvalidInput("sweep: grid_levels must be >= 2");
  if (!(T_cap > 0.0)) throw InvalidInput("sweep: T_cap must be > 0");
  if (threads < 1) throw InvalidInput("sweep: threads must be >= 1");
  if (output_dir.empty()) throw InvalidInput("sweep: output_dir required");
}

namespace {

fs::path record_path(const SweepConfig& cfg, double eps) {
  std::string name = "eps_" + format_double(eps) + ".json";
  std::replace(name.begin(), name.end(), '+', 'p');
  return fs::path(cfg.output_dir) / "records" / name;
}

LifespanRecord compute_record(const SweepConfig& cfg, double eps) {
  const auto t0 = std::chrono::steady_clock::now();
  LifespanRecord rec;
  rec.eps = eps;
  try {
    ModelParams mp = cfg.mp_template;
    mp.eps = eps;
    const RadialGrid grid = RadialGrid::for_domain(mp.r0, cfg.T_cap, cfg.base_dr());
    SolverOptions opt;
    opt.cfl = cfg.cfl;
    const BlowupReport rep = integrate(mp, grid, cfg.T_cap, cfg.blow_threshold, opt);
    rec.status = rep.status;
    rec.T_est = rep.T_est;
    rec.T_refined = rep.T_refined;
  } catch (const NumericalError&) {
    rec.status = RunStatus::Diverged;
    rec.T_est = rec.T_refined = 0.0;
  }
  rec.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

}  // namespace

std::vector<LifespanRecord> run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  std::error_code ec;
  fs::create_directories(fs::path(cfg.output_dir) / "records", ec);
  if (ec) throw IoError("sweep: cannot create output dir: " + ec.message());

  std::vector<LifespanRecord> records(cfg.eps_values.size());
  std::vector<char> done(cfg.eps_values.size(), 0);

  // Resume: reuse any record file whose eps matches.
  for (std::size_t i = 0; i < cfg.eps_values.size(); ++i) {
    const fs::path path = record_path(cfg, cfg.eps_values[i]);
    if (fs::exists(path)) {
      const LifespanRecord rec = record_from_json(read_json_file(path));
      if (rec.eps == cfg.eps_values[i]) {
        records[i] = rec;
        done[i] = 1;
      }
    }
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cfg.eps_values.size()) return;
      if (done[i]) continue;
      records[i] = compute_record(cfg, cfg.eps_values[i]);
      write_text_file(record_path(cfg, cfg.eps_values[i]),
                      record_to_json(records[i]).dump(2) + "\n");
    }
  };

  if (cfg.threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    const int n_threads = std::min<int>(cfg.threads, cfg.eps_values.size());
    pool.reserve(n_threads);
    for (int k = 0; k < n_threads; ++k) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }
  return records;
}

std::string to_string(FitModel m) {
  return m == FitModel::PowerLaw ? "PowerLaw" : "DoubleExp";
}

ScalingFit fit_lifespan(const std::vector<LifespanRecord>& records,
                        const ProblemClass& pc) {
  std::vector<double> eps, T;
  for (const LifespanRecord& r : records) {
    if (r.status == RunStatus::BlowupDetected && std::isfinite(r.T_refined) &&
        r.T_refined > 0.0) {
      eps.push_back(r.eps);
      T.push_back(r.T_refined);
    }
  }
  if (eps.size() < 4) {
    throw InsufficientData("fit_lifespan: need >= 4 blowup records");
  }
  const auto [mn, mx] = std::minmax_element(eps.begin(), eps.end());
  if (std::log10(*mx / *mn) < 0.7 - 1e-12) {
    throw InsufficientData("fit_lifespan: records must span >= 0.7 decades of eps");
  }

  const Regime regime = classify_regime(pc);
  std::vector<double> x(eps.size());
  for (std::size_t i = 0; i < eps.size(); ++i) x[i] = std::log(1.0 / eps[i]);

  ScalingFit fit;
  fit.n_used = static_cast<int>(eps.size());

  if (regime.tag == RegimeTag::Critical) {
    // log log T against log(1/eps); only records with T > 1 carry a
    // meaningful double logarithm.
    std::vector<double> xs, ys, ys_pow;
    for (std::size_t i = 0; i < eps.size(); ++i) {
      if (T[i] > 1.0) {
        xs.push_back(x[i]);
        ys.push_back(std::log(std::log(T[i])));
        ys_pow.push_back(std::log(T[i]));
      }
    }
    if (xs.size() < 4) {
      throw InsufficientData("fit_lifespan: too few records with T > 1");
    }
    const LinearFit dd = fit_line(xs, ys);
    const LinearFit pw = fit_line(xs, ys_pow);
    fit.model = FitModel::DoubleExp;
    fit.slope = dd.slope;
    fit.intercept = dd.intercept;
    fit.r_squared = dd.r_squared;
    fit.theory_exponent = pc.p * (pc.p - 1.0);
    fit.n_used = static_cast<int>(xs.size());
    fit.consistent = dd.r_squared > pw.r_squared;
    return fit;
  }

  std::vector<double> y(T.size());
  for (std::size_t i = 0; i < T.size(); ++i) y[i] = std::log(T[i]);
  const LinearFit lf = fit_line(x, y);
  fit.model = FitModel::PowerLaw;
  fit.slope = lf.slope;
  fit.intercept = lf.intercept;
  fit.r_squared = lf.r_squared;
  if (regime.tag == RegimeTag::Subcritical) {
    fit.theory_exponent = theta_exponent(pc);
    // The theory gives an upper bound on T with a free delta, so the
    // empirical growth exponent must not exceed theta beyond tolerance.
    fit.consistent = lf.slope <= fit.theory_exponent * 1.15;
  } else {
    fit.theory_exponent = 0.0;
    fit.consistent = false;  // never claimed outside the covered regimes
  }
  return fit;
}

void emit_report(const std::vector<LifespanRecord>& records,
                 const std::optional<ScalingFit>& fit, const ProblemClass& pc,
                 const std::string& out_dir) {
  std::error_code ec;
  fs::create_directories(fs::path(out_dir) / "plotdata", ec);
  if (ec) throw IoError("emit_report: cannot create " + out_dir + ": " + ec.message());

  std::string csv = "eps,T_est,T_refined,status\n";
  for (const LifespanRecord& r : records) {
    csv += format_double(r.eps) + "," + format_double(r.T_est) + "," +
           format_double(r.T_refined) + "," + to_string(r.status) + "\n";
  }
  write_text_file(fs::path(out_dir) / "sweep.csv", csv);

  nlohmann::json j;
  if (fit) {
    j["model"] = to_string(fit->model);
    j["slope"] = fit->slope;
    j["intercept"] = fit->intercept;
    j["r_squared"] = fit->r_squared;
    j["theory_exponent"] = fit->theory_exponent;
    j["consistent"] = fit->consistent;
    j["n_used"] = fit->n_used;
  } else {
    j["model"] = nullptr;
    j["slope"] = nullptr;
    j["intercept"] = nullptr;
    j["r_squared"] = nullptr;
    j["theory_exponent"] = nullptr;
    j["consistent"] = nullptr;
    j["n_used"] = 0;
  }
  nlohmann::json theory;
  theory["gamma"] = gamma_poly(pc.N + pc.mu, pc.p);
  theory["p_fujita"] = fujita_exponent(pc.N);
  const StraussExponent p0 = strauss_exponent(pc.N + pc.mu);
  if (p0.is_finite()) {
    theory["p_strauss"] = p0.value();
  } else {
    theory["p_strauss"] = nullptr;
  }
  theory["mu_star"] = mu_star(pc.N);
  const Regime regime = classify_regime(pc);
  theory["regime"] = to_string(regime.tag);
  theory["branch"] = to_string(regime.branch);
  try {
    theory["theta"] = theta_exponent(pc);
  } catch (const Error&) {
    theory["theta"] = nullptr;
  }
  j["theory"] = theory;
  write_text_file(fs::path(out_dir) / "fit.json", j.dump(2) + "\n");

  std::string loglog;
  std::string direct;
  for (const LifespanRecord& r : records) {
    direct += format_double(r.eps) + " " + format_double(r.T_refined) + "\n";
    if (r.status == RunStatus::BlowupDetected && r.T_refined > 0.0) {
      loglog += format_double(std::log10(1.0 / r.eps)) + " " +
                format_double(std::log10(r.T_refined)) + "\n";
    }
  }
  write_text_file(fs::path(out_dir) / "plotdata" / "lifespan_loglog.dat", loglog);
  write_text_file(fs::path(out_dir) / "plotdata" / "sweep_T_vs_eps.dat", direct);
}

}  // namespace dampedwave
