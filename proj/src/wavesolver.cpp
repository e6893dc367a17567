#include "dampedwave/wavesolver.hpp"

#include <algorithm>
#include <cmath>

#include "dampedwave/kernels/kernels.hpp"

namespace dampedwave {

void ModelParams::validate() const {
  pc.validate();
  if (!(eps > 0.0)) throw InvalidInput("ModelParams: eps must be > 0");
  if (!(r0 > 0.0 && r0 < 1.0)) throw InvalidInput("ModelParams: r0 must lie in (0,1)");
  if (profile == DataProfile::Bump4) {
    if (!(amp_f >= 0.0) || !(amp_g >= 0.0) || amp_f + amp_g <= 0.0) {
      throw InvalidInput("ModelParams: need nonnegative amplitudes with amp_f + amp_g > 0");
    }
  } else if (!custom_f || !custom_g) {
    throw InvalidInput("ModelParams: custom profile needs both f and g callables");
  }
  if (pc.N >= 3 && !(pc.p < static_cast<double>(pc.N) / (pc.N - 2))) {
    throw InvalidInput("ModelParams: p must be < N/(N-2) for N >= 3");
  }
}

RadialGrid RadialGrid::for_domain(double r0, double t_horizon, double dr,
                                  double margin) {
  if (!(dr > 0.0)) throw InvalidInput("RadialGrid: dr must be > 0");
  const double r_max = r0 + t_horizon + margin;
  const int n = static_cast<int>(std::ceil(r_max / dr)) + 1;
  return RadialGrid{dr, n};
}

std::string to_string(RunStatus s) {
  switch (s) {
    case RunStatus::CompletedNoBlowup:
      return "CompletedNoBlowup";
    case RunStatus::BlowupDetected:
      return "BlowupDetected";
    case RunStatus::Diverged:
      return "Diverged";
  }
  return "?";
}

std::pair<std::vector<double>, std::vector<double>> make_initial_data(
    const ModelParams& mp, const RadialGrid& grid) {
  mp.validate();
  if (mp.r0 / grid.dr < 32.0 - 1e-9) {
    throw GridTooCoarse("make_initial_data: data support needs >= 32 cells");
  }
  std::vector<double> f(grid.n_points, 0.0), g(grid.n_points, 0.0);
  for (int i = 0; i < grid.n_points; ++i) {
    const double r = grid.r(i);
    if (mp.profile == DataProfile::Bump4) {
      if (r < mp.r0) {
        const double s = 1.0 - (r / mp.r0) * (r / mp.r0);
        const double bump = s * s * s * s;
        f[i] = mp.amp_f * bump;
        g[i] = mp.amp_g * bump;
      }
    } else {
      f[i] = mp.custom_f(r);
      g[i] = mp.custom_g(r);
    }
  }
  return {std::move(f), std::move(g)};
}

WaveSolver::WaveSolver(ModelParams mp, RadialGrid grid, SolverOptions opt)
    : mp_(std::move(mp)), grid_(grid), opt_(std::move(opt)) {
  mp_.validate();
  if (grid_.n_points < 3) throw InvalidInput("WaveSolver: grid too small");
  const double inv_dr2 = 1.0 / (grid_.dr * grid_.dr);
  cplus_.assign(grid_.n_points, 0.0);
  cminus_.assign(grid_.n_points, 0.0);
  src_.assign(grid_.n_points, 0.0);
  for (int i = 1; i < grid_.n_points - 1; ++i) {
    const double radial = (mp_.pc.N - 1.0) / (2.0 * grid_.dr * grid_.r(i));
    cplus_[i] = inv_dr2 + radial;
    cminus_[i] = inv_dr2 - radial;
  }
}

void WaveSolver::source_into(const std::vector<double>& u, double t) {
  const std::size_t n = u.size();
  if (opt_.nonlinearity_on) {
    kernels::abs_pow(u.data(), src_.data(), n, mp_.pc.p);
  } else {
    std::fill(src_.begin(), src_.end(), 0.0);
  }
  if (opt_.forcing) {
    for (std::size_t i = 0; i < n; ++i) src_[i] += opt_.forcing(grid_.r(i), t);
  }
}

std::vector<double> WaveSolver::laplacian(const std::vector<double>& u) const {
  const int n = grid_.n_points;
  std::vector<double> lap(n, 0.0);
  const double inv_dr2 = 1.0 / (grid_.dr * grid_.dr);
  lap[0] = 2.0 * mp_.pc.N * (u[1] - u[0]) * inv_dr2;
  const double cmid = -2.0 * inv_dr2;
  for (int i = 1; i < n - 1; ++i) {
    lap[i] = cplus_[i] * u[i + 1] + cminus_[i] * u[i - 1] + cmid * u[i];
  }
  return lap;
}

void WaveSolver::rebuild_prev(State& st, double new_dt) {
  // Second-order Taylor shift of the previous time level onto the new
  // spacing, using the damped acceleration at the current state.
  const int n = grid_.n_points;
  const double h = st.dt_prev;
  const double mu_over = mp_.pc.mu / (1.0 + st.t);
  source_into(st.u, st.t);
  const std::vector<double> lap = laplacian(st.u);
  std::vector<double> fresh(n, 0.0);
  for (int i = 0; i < n; ++i) {
    const double L = lap[i] + src_[i];
    const double v = ((st.u[i] - st.uprev[i]) / h + 0.5 * h * L) /
                     (1.0 + 0.5 * mu_over * h);
    const double a = L - mu_over * v;
    fresh[i] = st.u[i] - new_dt * v + 0.5 * new_dt * new_dt * a;
  }
  fresh[n - 1] = 0.0;
  st.uprev = std::move(fresh);
  st.dt_prev = new_dt;
}

void WaveSolver::advance(State& st, double dt) {
  if (st.dt_prev != dt) rebuild_prev(st, dt);
  const int n = grid_.n_points;
  const double d = mp_.pc.mu * dt / (2.0 * (1.0 + st.t));
  const double omd = 1.0 - d;
  const double inv_opd = 1.0 / (1.0 + d);
  const double dt2 = dt * dt;
  const double inv_dr2 = 1.0 / (grid_.dr * grid_.dr);

  source_into(st.u, st.t);
  std::vector<double> next(n, 0.0);
  kernels::damped_wave_update(st.u.data(), st.uprev.data(), src_.data(),
                              cplus_.data(), cminus_.data(), -2.0 * inv_dr2, dt2,
                              omd, inv_opd, next.data(), 1, n - 1);
  const double lap0 = 2.0 * mp_.pc.N * (st.u[1] - st.u[0]) * inv_dr2;
  next[0] = (2.0 * st.u[0] - omd * st.uprev[0] + dt2 * (lap0 + src_[0])) * inv_opd;
  next[n - 1] = 0.0;

  st.uprev = std::move(st.u);
  st.u = std::move(next);
  st.t += dt;
  st.dt_prev = dt;
}

double WaveSolver::bisect_crossing(State before, double dt, double threshold) {
  // Invariant: max|u| < threshold at `before`, crossing happens within dt.
  for (int level = 0; level < 10; ++level) {
    const double half = 0.5 * dt;
    State trial = before;
    advance(trial, half);
    const double m = kernels::max_abs(trial.u.data(), trial.u.size());
    if (!std::isfinite(m) || m >= threshold) {
      dt = half;
    } else {
      before = std::move(trial);
      dt = half;
    }
  }
  return before.t + dt;
}

RunResult WaveSolver::run(double t_max) {
  if (!(t_max > 0.0)) throw InvalidInput("WaveSolver::run: t_max must be > 0");
  const int n = grid_.n_points;
  auto [f, g] = make_initial_data(mp_, grid_);

  State st;
  st.u.assign(n, 0.0);
  for (int i = 0; i < n; ++i) st.u[i] = mp_.eps * f[i];

  RunResult res;
  res.min_value_seen = kernels::min_value(st.u.data(), n);
  res.peak_amplitude = kernels::max_abs(st.u.data(), n);
  res.max_support_excess = -grid_.r_max();

  auto record_excess = [&](const State& s) {
    const std::ptrdiff_t idx =
        kernels::last_above(s.u.data(), s.u.size(), opt_.support_tol);
    const double support = idx < 0 ? 0.0 : grid_.r(static_cast<int>(idx));
    res.max_support_excess =
        std::max(res.max_support_excess, support - (mp_.r0 + s.t));
  };
  auto snap = [&](const State& s) {
    if (opt_.snapshot_stride > 0 &&
        (res.steps % opt_.snapshot_stride == 0 || s.t >= t_max)) {
      res.snapshots.push_back({s.t, s.u});
    }
  };

  record_excess(st);
  snap(st);

  const double dt_base = opt_.cfl * grid_.dr;
  const long n_steps = std::lround(std::ceil(t_max / dt_base - 1e-9));
  double dt = t_max / static_cast<double>(n_steps);

  // First step: Taylor expansion seeded with the velocity data.
  {
    source_into(st.u, 0.0);
    const std::vector<double> lap = laplacian(st.u);
    std::vector<double> u1(n, 0.0);
    for (int i = 0; i < n; ++i) {
      const double v0 = mp_.eps * g[i];
      const double a0 = lap[i] + src_[i] - mp_.pc.mu * v0;
      u1[i] = st.u[i] + dt * v0 + 0.5 * dt * dt * a0;
    }
    u1[n - 1] = 0.0;
    st.uprev = std::move(st.u);
    st.u = std::move(u1);
    st.t = dt;
    st.dt_prev = dt;
    res.steps = 1;
  }

  const double p = mp_.pc.p;
  State before = st;
  while (true) {
    if (!kernels::all_finite(st.u.data(), n)) {
      res.status = RunStatus::Diverged;
      res.t_end = before.t;
      res.dt_final = dt;
      return res;
    }
    const double m = kernels::max_abs(st.u.data(), n);
    res.peak_amplitude = std::max(res.peak_amplitude, m);
    res.min_value_seen =
        std::min(res.min_value_seen, kernels::min_value(st.u.data(), n));
    record_excess(st);
    snap(st);

    if (m >= opt_.blow_threshold) {
      res.status = RunStatus::BlowupDetected;
      res.T_est = bisect_crossing(std::move(before), st.dt_prev, opt_.blow_threshold);
      res.t_end = st.t;
      res.dt_final = st.dt_prev;
      return res;
    }
    if (st.t >= t_max * (1.0 - 1e-12)) {
      res.status = RunStatus::CompletedNoBlowup;
      res.t_end = st.t;
      res.dt_final = st.dt_prev;
      return res;
    }

    // Source-term stability guard: keep dt * sqrt(p max|u|^{p-1}) small.
    if (opt_.nonlinearity_on && m > 0.0) {
      const double freq = std::sqrt(p * std::pow(m, p - 1.0));
      int halvings = 0;
      while (dt * freq > opt_.source_guard && halvings < 60) {
        dt *= 0.5;
        ++halvings;
      }
    }
    dt = std::min(dt, t_max - st.t);

    before = st;
    advance(st, dt);
    ++res.steps;
  }
}

RadialField step(const RadialField& state, const ModelParams& mp,
                 const RadialGrid& grid, double dt, const SolverOptions& opt) {
  if (!(dt > 0.0)) throw InvalidInput("step: dt must be > 0");
  WaveSolver solver(mp, grid, opt);
  WaveSolver::State st;
  st.t = state.t;
  st.dt_prev = state.dt_prev > 0.0 ? state.dt_prev : dt;
  st.u = state.values;
  st.uprev = state.prev_values.empty() ? state.values : state.prev_values;
  solver.advance(st, dt);
  if (!kernels::all_finite(st.u.data(), st.u.size())) {
    throw NonFinite("step: update produced NaN/Inf");
  }
  RadialField out;
  out.t = st.t;
  out.dt_prev = st.dt_prev;
  out.values = std::move(st.u);
  out.prev_values = std::move(st.uprev);
  return out;
}

BlowupReport integrate(const ModelParams& mp, const RadialGrid& grid,
                       double T_max, double blow_threshold, SolverOptions opt) {
  return integrate_full(mp, grid, T_max, blow_threshold, std::move(opt)).report;
}

IntegrationOutput integrate_full(const ModelParams& mp, const RadialGrid& grid,
                                 double T_max, double blow_threshold,
                                 SolverOptions opt) {
  const double reserve = grid.r_max() - mp.r0 - T_max;
  if (reserve < 4.0 * grid.dr) {
    throw InvalidInput("integrate: light cone would reach the outer boundary");
  }
  opt.blow_threshold = blow_threshold;

  WaveSolver coarse(mp, grid, opt);
  RunResult rc = coarse.run(T_max);

  BlowupReport rep;
  rep.diagnostics["dr"] = grid.dr;
  rep.diagnostics["n_points"] = grid.n_points;
  rep.diagnostics["steps_coarse"] = static_cast<double>(rc.steps);
  rep.diagnostics["support_excess_coarse"] = rc.max_support_excess;
  rep.diagnostics["min_value_coarse"] = rc.min_value_seen;
  rep.peak_amplitude = rc.peak_amplitude;

  if (rc.status != RunStatus::BlowupDetected) {
    rep.status = rc.status;
    rep.T_est = rep.T_refined = rc.t_end;
    return {std::move(rep), std::move(rc.snapshots)};
  }

  SolverOptions fine_opt = opt;
  fine_opt.snapshot_stride = 0;
  WaveSolver fine(mp, grid.refined(), fine_opt);
  const RunResult rf = fine.run(T_max);
  rep.diagnostics["steps_fine"] = static_cast<double>(rf.steps);
  rep.diagnostics["support_excess_fine"] = rf.max_support_excess;
  rep.diagnostics["min_value_fine"] = rf.min_value_seen;
  rep.peak_amplitude = std::max(rep.peak_amplitude, rf.peak_amplitude);

  if (rf.status != RunStatus::BlowupDetected) {
    // The refined grid disagrees; trust it and say so in the diagnostics.
    rep.status = rf.status;
    rep.T_est = rc.T_est;
    rep.T_refined = rf.t_end;
    rep.diagnostics["refinement_disagreed"] = 1.0;
    return {std::move(rep), std::move(rc.snapshots)};
  }

  rep.status = RunStatus::BlowupDetected;
  rep.T_est = rc.T_est;
  const double lo = std::min(rc.T_est, rf.T_est);
  const double hi = std::max(rc.T_est, rf.T_est);
  const double richardson = rf.T_est + (rf.T_est - rc.T_est) / 3.0;
  rep.T_refined = std::clamp(richardson, lo, hi);
  rep.diagnostics["T_coarse"] = rc.T_est;
  rep.diagnostics["T_fine"] = rf.T_est;
  rep.diagnostics["richardson_raw"] = richardson;
  return {std::move(rep), std::move(rc.snapshots)};
}

double check_finite_propagation(const RunResult& result, const ModelParams& mp,
                                const RadialGrid& grid, double tol) {
  if (result.snapshots.empty()) {
    throw InvalidInput("check_finite_propagation: run has no snapshots");
  }
  double worst = -grid.r_max();
  for (const Snapshot& s : result.snapshots) {
    const std::ptrdiff_t idx = kernels::last_above(s.u.data(), s.u.size(), tol);
    const double support = idx < 0 ? 0.0 : grid.r(static_cast<int>(idx));
    worst = std::max(worst, support - (mp.r0 + s.t));
  }
  return worst;
}

double discrete_energy(const std::vector<double>& u_new,
                       const std::vector<double>& u_old, double dt,
                       const RadialGrid& grid, int N) {
  if (u_new.size() != u_old.size() || u_new.size() < 2) {
    throw InvalidInput("discrete_energy: bad state pair");
  }
  const int n = static_cast<int>(u_new.size());
  const double dr = grid.dr;
  double kinetic = 0.0;
  for (int i = 0; i < n; ++i) {
    double w = std::pow(grid.r(i), N - 1) * dr;
    if (N == 1 && (i == 0 || i == n - 1)) w *= 0.5;
    const double v = (u_new[i] - u_old[i]) / dt;
    kinetic += w * v * v;
  }
  double elastic = 0.0;
  for (int i = 0; i + 1 < n; ++i) {
    const double rbar = 0.5 * (grid.r(i) + grid.r(i + 1));
    const double w = std::pow(rbar, N - 1) * dr;
    elastic += w * (u_new[i + 1] - u_new[i]) * (u_old[i + 1] - u_old[i]) / (dr * dr);
  }
  return 0.5 * (kinetic + elastic);
}

}  // namespace dampedwave
