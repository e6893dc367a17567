#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "dampedwave/exponents.hpp"

// Explicit finite-difference solver for the radially symmetric semilinear
// damped wave equation
//   u_tt - u_rr - (N-1)/r u_r + mu/(1+t) u_t = |u|^p
// with compactly supported data u(0) = eps f, u_t(0) = eps g, plus blowup
// detection by amplitude-threshold crossing. Time stepping is leapfrog with
// the damping term centered in time (semi-implicit but closed-form); the
// source term shrinks dt through a stability guard as the amplitude grows.

namespace dampedwave {

enum class DataProfile { Bump4, Custom };

struct ModelParams {
  ProblemClass pc;
  double eps = 1.0;
  double r0 = 0.5;  // support radius of the data, < 1
  double amp_f = 1.0;
  double amp_g = 1.0;
  DataProfile profile = DataProfile::Bump4;
  // Sampled when profile == Custom (amplitudes are not applied on top).
  std::function<double(double)> custom_f;
  std::function<double(double)> custom_g;

  void validate() const;
};

struct RadialGrid {
  double dr = 0.0;
  int n_points = 0;

  double r(int i) const { return dr * i; }
  double r_max() const { return dr * (n_points - 1); }

  // Domain large enough that the light cone from B(0,r0) stays away from
  // the outer Dirichlet boundary for the whole horizon.
  static RadialGrid for_domain(double r0, double t_horizon, double dr,
                               double margin = 0.5);
  RadialGrid refined() const { return RadialGrid{0.5 * dr, 2 * n_points - 1}; }
};

struct RadialField {
  double t = 0.0;
  double dt_prev = 0.0;  // spacing between values and prev_values
  std::vector<double> values;
  std::vector<double> prev_values;
};

enum class RunStatus { CompletedNoBlowup, BlowupDetected, Diverged };
std::string to_string(RunStatus s);

struct Snapshot {
  double t = 0.0;
  std::vector<double> u;
};

struct SolverOptions {
  double cfl = 0.9;                 // dt = cfl * dr before guards
  double blow_threshold = 1e6;      // amplitude threshold for T_est
  double source_guard = 0.2;        // halve dt while dt*sqrt(p*max|u|^{p-1}) exceeds this
  bool nonlinearity_on = true;      // |u|^p source
  std::function<double(double, double)> forcing;  // extra source f(r,t), for manufactured solutions
  int snapshot_stride = 0;          // every k-th step; 0 disables
  double support_tol = 1e-12;       // |u| level defining the numerical support
};

// One grid level.
struct RunResult {
  RunStatus status = RunStatus::CompletedNoBlowup;
  double t_end = 0.0;      // time reached (last finite state when Diverged)
  double T_est = 0.0;      // bisected threshold-crossing time (blowup only)
  double peak_amplitude = 0.0;
  double min_value_seen = 0.0;
  double max_support_excess = 0.0;  // max over steps of support radius - (r0 + t)
  long steps = 0;
  double dt_final = 0.0;
  std::vector<Snapshot> snapshots;
};

struct BlowupReport {
  RunStatus status = RunStatus::CompletedNoBlowup;
  double T_est = 0.0;      // coarse-grid crossing time
  double T_refined = 0.0;  // Richardson value clamped to the [coarse, fine] bracket
  double peak_amplitude = 0.0;
  std::map<std::string, double> diagnostics;
};

// Unscaled data profiles f, g on the grid (the solver applies eps).
// Throws GridTooCoarse when r0 spans fewer than 32 cells.
std::pair<std::vector<double>, std::vector<double>> make_initial_data(
    const ModelParams& mp, const RadialGrid& grid);

// One leapfrog update of a state whose prev_values are dt_prev behind; if
// dt differs from dt_prev the previous level is rebuilt by a second-order
// Taylor shift first. Throws NonFinite if the update produces NaN/Inf.
RadialField step(const RadialField& state, const ModelParams& mp,
                 const RadialGrid& grid, double dt,
                 const SolverOptions& opt = {});

class WaveSolver {
 public:
  WaveSolver(ModelParams mp, RadialGrid grid, SolverOptions opt = {});

  // Integrate from t = 0 to t_max (or threshold crossing / divergence).
  RunResult run(double t_max);

  const RadialGrid& grid() const { return grid_; }

 private:
  friend RadialField step(const RadialField&, const ModelParams&,
                          const RadialGrid&, double, const SolverOptions&);

  struct State {
    double t = 0.0;
    double dt_prev = 0.0;
    std::vector<double> u;
    std::vector<double> uprev;
  };

  void source_into(const std::vector<double>& u, double t);
  std::vector<double> laplacian(const std::vector<double>& u) const;
  void advance(State& st, double dt);
  void rebuild_prev(State& st, double new_dt);
  double bisect_crossing(State before, double dt, double threshold);

  ModelParams mp_;
  RadialGrid grid_;
  SolverOptions opt_;
  std::vector<double> cplus_, cminus_, src_;
};

// Two grid levels with a Richardson-extrapolated, bracket-clamped refined
// blowup time. Throws InvalidInput when the light cone from B(0,r0) would
// reach the outer boundary before T_max.
BlowupReport integrate(const ModelParams& mp, const RadialGrid& grid,
                       double T_max, double blow_threshold,
                       SolverOptions opt = {});

struct IntegrationOutput {
  BlowupReport report;
  std::vector<Snapshot> coarse_snapshots;  // populated when opt.snapshot_stride > 0
};

IntegrationOutput integrate_full(const ModelParams& mp, const RadialGrid& grid,
                                 double T_max, double blow_threshold,
                                 SolverOptions opt = {});

// Max over saved snapshots of (support radius of |u| > tol) - (r0 + t).
// Requires a run recorded with snapshots.
double check_finite_propagation(const RunResult& result, const ModelParams& mp,
                                const RadialGrid& grid, double tol = 1e-12);

// Discrete leapfrog energy of a state pair separated by dt:
//   1/2 sum_i w_i ((u_new - u_old)/dt)^2
//   + 1/2 sum_faces wbar (d_r u_new)(d_r u_old),
// with radial weights w = r^{N-1} dr. Exactly conserved for N = 1 with
// mu = 0 and the source off.
double discrete_energy(const std::vector<double>& u_new,
                       const std::vector<double>& u_old, double dt,
                       const RadialGrid& grid, int N);

}  // namespace dampedwave
