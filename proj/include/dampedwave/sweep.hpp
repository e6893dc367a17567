#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dampedwave/wavesolver.hpp"

// Lifespan sweeps over eps and the scaling fits against the theoretical
// exponents. Records persist incrementally as one JSON file per eps, so an
// interrupted sweep resumes from the completed records.

namespace dampedwave {

struct SweepConfig {
  ModelParams mp_template;          // eps field overridden per record
  std::vector<double> eps_values;   // strictly decreasing
  double dr = 0.0;                  // base spacing; 0 selects r0/64
  double cfl = 0.9;
  double blow_threshold = 1e6;
  double T_cap = 10.0;
  int grid_levels = 2;              // the finest pair enters the Richardson bracket
  std::string output_dir;           // records land in <output_dir>/records
  unsigned seed = 12345;            // forwarded to randomized verifiers downstream
  int threads = 1;

  double base_dr() const;
  void validate() const;
};

struct LifespanRecord {
  double eps = 0.0;
  double T_est = 0.0;
  double T_refined = 0.0;
  RunStatus status = RunStatus::CompletedNoBlowup;
  double wall_time = 0.0;  // seconds; excluded from deterministic reports
};

// One record per eps, descending; completed record files are reused.
// Per-record failures are recorded as Diverged and the sweep continues.
std::vector<LifespanRecord> run_sweep(const SweepConfig& cfg);

enum class FitModel { PowerLaw, DoubleExp };
std::string to_string(FitModel m);

struct ScalingFit {
  FitModel model = FitModel::PowerLaw;
  double slope = 0.0;      // growth exponent of T in 1/eps (or of log T, critical)
  double intercept = 0.0;
  double r_squared = 0.0;
  double theory_exponent = 0.0;
  bool consistent = false;
  int n_used = 0;
};

// Least squares through the blowup records in regime-appropriate
// coordinates: log T vs log(1/eps) in the subcritical regime (bound
// consistency requires slope <= theta * 1.15), log log T vs log(1/eps) at
// the critical exponent (consistency means the double-exponential model
// outperforms the power law in r^2). Throws InsufficientData below 4
// blowup records or 0.7 decades of eps.
ScalingFit fit_lifespan(const std::vector<LifespanRecord>& records,
                        const ProblemClass& pc);

// sweep.csv, fit.json (nulls when no fit), and plot-ready two-column files
// under <out_dir>/plotdata. Byte-stable across reruns of the same config.
void emit_report(const std::vector<LifespanRecord>& records,
                 const std::optional<ScalingFit>& fit, const ProblemClass& pc,
                 const std::string& out_dir);

}  // namespace dampedwave
