#include "dampedwave/functionals.hpp"

#include <algorithm>
#include <cmath>

#include "dampedwave/kernels/kernels.hpp"
#include "dampedwave/numerics.hpp"

namespace dampedwave {

namespace {

// Trapezoid weights w_i = dr (dr/2 at the ends) on the index range [0, hi].
int support_cut(const RadialGrid& grid, double radius) {
  const int hi = static_cast<int>(std::ceil(radius / grid.dr)) + 2;
  return std::min(hi, grid.n_points - 1);
}

double trap_weight(int i, int hi, double dr) {
  return (i == 0 || i == hi) ? 0.5 * dr : dr;
}

// int_0^{r0+t} integrand(r) * weight(u) r^{N-1} dr against the test profile.
double weighted_snapshot_integral(const Snapshot& snap, const RadialGrid& grid,
                                  const ModelParams& mp,
                                  const std::vector<double>& values) {
  const int hi = support_cut(grid, mp.r0 + snap.t);
  double sum = 0.0;
  for (int i = 0; i <= hi; ++i) {
    const double r = grid.r(i);
    sum += trap_weight(i, hi, grid.dr) * std::pow(r, mp.pc.N - 1) * values[i];
  }
  return sphere_area(mp.pc.N) * sum;
}

}  // namespace

double lp_norm(const Snapshot& snap, const RadialGrid& grid, int N, double p) {
  const std::size_t n = snap.u.size();
  std::vector<double> powed(n);
  kernels::abs_pow(snap.u.data(), powed.data(), n, p);
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double tw = (i == 0 || i + 1 == n) ? 0.5 * grid.dr : grid.dr;
    w[i] = tw * std::pow(grid.r(static_cast<int>(i)), N - 1);
  }
  const double integral =
      sphere_area(N) * kernels::weighted_sum(w.data(), powed.data(), n);
  return std::pow(integral, 1.0 / p);
}

FunctionalTrace compute_G(const std::vector<Snapshot>& snapshots,
                          const RadialGrid& grid, const TestFunctionFamily& fam,
                          const ModelParams& mp) {
  fam.validate();
  if (snapshots.empty()) throw InvalidInput("compute_G: no snapshots");
  if (!(mp.r0 + 2.0 * grid.dr < 1.0)) {
    throw DomainError("compute_G: support ball does not stay inside the light cone");
  }

  FunctionalTrace trace;
  trace.beta = fam.beta;
  trace.times.reserve(snapshots.size());
  trace.G.reserve(snapshots.size());

  std::vector<double> powed(grid.n_points), w(grid.n_points);
  for (const Snapshot& snap : snapshots) {
    const int hi = support_cut(grid, mp.r0 + snap.t);
    kernels::abs_pow(snap.u.data(), powed.data(), hi + 1, mp.pc.p);
    for (int i = 0; i <= hi; ++i) {
      const double r = grid.r(i);
      w[i] = trap_weight(i, hi, grid.dr) * std::pow(r, mp.pc.N - 1) *
             Phi(fam, r, snap.t);
    }
    trace.times.push_back(snap.t);
    trace.G.push_back(sphere_area(mp.pc.N) *
                      kernels::weighted_sum(w.data(), powed.data(), hi + 1));
  }
  trace.quadrature_meta["dr"] = grid.dr;
  trace.quadrature_meta["snapshots"] = static_cast<double>(snapshots.size());
  return trace;
}

void compute_H_J(FunctionalTrace& trace) {
  const std::size_t n = trace.times.size();
  if (trace.G.size() != n) throw InvalidInput("compute_H_J: trace has no G");
  std::vector<double> weighted(n);
  for (std::size_t i = 0; i < n; ++i) weighted[i] = (1.0 + trace.times[i]) * trace.G[i];
  const std::vector<double> inner = cumtrapz(trace.times, weighted);
  trace.H = cumtrapz(trace.times, inner);
  std::vector<double> jw(n);
  for (std::size_t i = 0; i < n; ++i) {
    jw[i] = std::pow(1.0 + trace.times[i], -3.0) * trace.H[i];
  }
  trace.J = cumtrapz(trace.times, jw);
}

double check_kernel_identity(const FunctionalTrace& trace, int max_samples) {
  const std::size_t n = trace.times.size();
  if (trace.J.size() != n) throw InvalidInput("check_kernel_identity: J not filled");
  const std::size_t stride = std::max<std::size_t>(1, n / max_samples);
  double worst = 0.0;
  std::vector<double> kern(n);
  for (std::size_t k = stride; k < n; k += stride) {
    const double t = trace.times[k];
    for (std::size_t j = 0; j <= k; ++j) {
      const double d = t - trace.times[j];
      kern[j] = d * d * trace.G[j];
    }
    const double rhs =
        0.5 * trapezoid(std::span(trace.times).first(k + 1),
                        std::span(kern).first(k + 1));
    const double lhs = (1.0 + t) * (1.0 + t) * trace.J[k];
    const double scale = std::max({std::fabs(rhs), std::fabs(lhs), 1e-300});
    worst = std::max(worst, std::fabs(lhs - rhs) / scale);
  }
  return worst;
}

DataMoments compute_data_moments(const ModelParams& mp, const RadialGrid& grid,
                                 const TestFunctionFamily& fam) {
  fam.validate();
  if (!(fam.beta - 1.0 + fam.mu > 0.0)) {
    throw InvalidParams("compute_data_moments: needs beta - 1 + mu > 0");
  }
  if (!(mp.r0 + grid.dr < 1.0)) {
    throw DomainError("compute_data_moments: data support too close to the unit ball");
  }
  const auto [f, g] = make_initial_data(mp, grid);
  const TestFunctionFamily up = fam.raised();
  const int hi = support_cut(grid, mp.r0);

  double e0 = 0.0, e1 = 0.0;
  for (int i = 0; i <= hi; ++i) {
    const double r = grid.r(i);
    const double z = r * r;
    const double w = trap_weight(i, hi, grid.dr) * std::pow(r, mp.pc.N - 1);
    const double ps = psi(fam, z);
    e0 += w * f[i] * ps;
    e1 += w * (g[i] * ps + f[i] * (fam.beta * psi(up, z) + (fam.mu - 1.0) * ps));
  }
  DataMoments m;
  m.beta = fam.beta;
  m.E0 = sphere_area(mp.pc.N) * e0;
  m.E1 = sphere_area(mp.pc.N) * e1;
  const bool data_present = kernels::max_abs(f.data(), f.size()) > 0.0 ||
                            kernels::max_abs(g.data(), g.size()) > 0.0;
  if (data_present && !(m.E1 > 0.0)) {
    throw PositivityViolated("compute_data_moments: E1 <= 0 under beta-1+mu > 0");
  }
  return m;
}

PairingGapReport check_duhamel_identity(const std::vector<Snapshot>& snapshots,
                                        const RadialGrid& grid,
                                        const TestFunctionFamily& fam,
                                        const ModelParams& mp, bool nonlinear) {
  if (snapshots.empty()) throw InvalidInput("check_duhamel_identity: no snapshots");
  const DataMoments mom = compute_data_moments(mp, grid, fam);
  const std::size_t n = snapshots.size();

  std::vector<double> times(n);
  for (std::size_t k = 0; k < n; ++k) times[k] = snapshots[k].t;

  // Left side: eps E0 + eps E1 t + int_0^t (t-s) G ds, the kernel integral
  // in its double-cumulative form.
  std::vector<double> lhs(n, 0.0);
  if (nonlinear) {
    const FunctionalTrace trace = compute_G(snapshots, grid, fam, mp);
    const std::vector<double> inner = cumtrapz(times, trace.G);
    const std::vector<double> outer = cumtrapz(times, inner);
    for (std::size_t k = 0; k < n; ++k) lhs[k] = outer[k];
  }
  for (std::size_t k = 0; k < n; ++k) {
    lhs[k] += mp.eps * (mom.E0 + mom.E1 * times[k]);
  }

  // Right side: int u Phi dx + cumulative of (1+s)^{-beta} int u psi~ dx.
  std::vector<double> boundary(n), tail(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Snapshot& snap = snapshots[k];
    const int hi = support_cut(grid, mp.r0 + snap.t);
    std::vector<double> phi_row(hi + 1), tilde_row(hi + 1);
    const double shift = 1.0 + snap.t;
    for (int i = 0; i <= hi; ++i) {
      const double r = grid.r(i);
      phi_row[i] = snap.u[i] * Phi(fam, r, snap.t);
      const double z = (r / shift) * (r / shift);
      tilde_row[i] = snap.u[i] * psi_tilde(fam, z);
    }
    boundary[k] = weighted_snapshot_integral(snap, grid, mp, phi_row);
    tail[k] = std::pow(shift, -fam.beta) *
              weighted_snapshot_integral(snap, grid, mp, tilde_row);
  }
  const std::vector<double> tail_cum = cumtrapz(times, tail);

  PairingGapReport rep;
  double scale = 1e-300;
  for (std::size_t k = 0; k < n; ++k) {
    scale = std::max({scale, std::fabs(lhs[k]), std::fabs(boundary[k] + tail_cum[k])});
  }
  for (std::size_t k = 0; k < n; ++k) {
    const double rhs = boundary[k] + tail_cum[k];
    const double gap = std::fabs(lhs[k] - rhs);
    const double local = gap / std::max({std::fabs(lhs[k]), std::fabs(rhs), 1e-3 * scale});
    if (k == 0) rep.gap_t0 = local;
    rep.max_rel_gap = std::max(rep.max_rel_gap, local);
  }
  return rep;
}

HolderBoundsReport check_holder_bounds(const std::vector<Snapshot>& snapshots,
                                       const RadialGrid& grid,
                                       const ModelParams& mp, double q) {
  if (snapshots.empty()) throw InvalidInput("check_holder_bounds: no snapshots");
  const double p = mp.pc.p;
  if (!(q > p)) throw InvalidInput("check_holder_bounds: needs q > p");
  const double mu = mp.pc.mu;
  const int N = mp.pc.N;
  const double pp = p / (p - 1.0);  // Holder conjugate
  const double edge = 0.5 * (N + 1.0 - mu);

  HolderBoundsReport rep;
  rep.beta_power = edge - 1.0 / q;
  rep.beta_log = edge - 1.0 / p;
  if (!(rep.beta_power > std::max(0.0, 1.0 - mu))) {
    throw InvalidParams("check_holder_bounds: beta = (N+1-mu)/2 - 1/q must exceed max{0,1-mu}");
  }

  const std::size_t n = snapshots.size();
  std::vector<double> times(n), norms(n);
  for (std::size_t k = 0; k < n; ++k) {
    times[k] = snapshots[k].t;
    norms[k] = lp_norm(snapshots[k], grid, N, p);
  }
  if (*std::max_element(norms.begin(), norms.end()) <= 0.0) {
    return rep;  // identically zero run: constants undefined
  }
  rep.defined = true;

  TestFunctionFamily fam_power{rep.beta_power, mu, N};
  const DataMoments mom = compute_data_moments(mp, grid, fam_power);
  FunctionalTrace trace_power = compute_G(snapshots, grid, fam_power, mp);
  {
    const std::vector<double> inner = cumtrapz(times, trace_power.G);
    const std::vector<double> kernel_int = cumtrapz(times, inner);
    std::vector<double> weight(n);
    for (std::size_t k = 0; k < n; ++k) {
      weight[k] = norms[k] * std::pow(1.0 + times[k], N / pp + 1.0 - edge - 1.0 / pp);
    }
    const std::vector<double> tail = cumtrapz(times, weight);
    for (std::size_t k = 0; k < n; ++k) {
      const double lhs = mp.eps * (mom.E0 + mom.E1 * times[k]) + kernel_int[k];
      const double rhs =
          norms[k] * std::pow(1.0 + times[k], N / pp + 1.0 - rep.beta_power) + tail[k];
      if (rhs > 0.0) rep.c1_power = std::max(rep.c1_power, lhs / rhs);
    }
  }

  if (rep.beta_log > std::max(0.0, 1.0 - mu)) {
    TestFunctionFamily fam_log{rep.beta_log, mu, N};
    FunctionalTrace trace_log = compute_G(snapshots, grid, fam_log, mp);
    const std::vector<double> inner = cumtrapz(times, trace_log.G);
    const std::vector<double> kernel_int = cumtrapz(times, inner);
    std::vector<double> weight(n);
    for (std::size_t k = 0; k < n; ++k) {
      weight[k] = norms[k] * std::pow(1.0 + times[k], N / pp - rep.beta_log) *
                  std::pow(std::log(1.0 + times[k]), 1.0 / pp);
    }
    const std::vector<double> tail = cumtrapz(times, weight);
    for (std::size_t k = 1; k < n; ++k) {
      const double rhs =
          norms[k] * std::pow(1.0 + times[k], N / pp + 1.0 - rep.beta_log) + tail[k];
      if (rhs > 0.0) rep.c1_log = std::max(rep.c1_log, kernel_int[k] / rhs);
    }
  }

  // Pointwise Holder sanity: int u Phi dx <= ||u||_p (int Phi^{p'})^{1/p'}.
  double min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    const Snapshot& snap = snapshots[k];
    const int hi = support_cut(grid, mp.r0 + snap.t);
    std::vector<double> u_phi(hi + 1), phi_pp(hi + 1);
    for (int i = 0; i <= hi; ++i) {
      const double r = grid.r(i);
      const double phi = Phi(fam_power, r, snap.t);
      u_phi[i] = snap.u[i] * phi;
      phi_pp[i] = std::pow(phi, pp);
    }
    const double lhs = weighted_snapshot_integral(snap, grid, mp, u_phi);
    const double rhs =
        norms[k] *
        std::pow(weighted_snapshot_integral(snap, grid, mp, phi_pp), 1.0 / pp);
    const double scale = std::max(rhs, 1e-300);
    min_gap = std::min(min_gap, (rhs - lhs) / scale);
  }
  rep.holder_min_gap = min_gap;
  return rep;
}

}  // namespace dampedwave
