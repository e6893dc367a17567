#include "dampedwave/testfunc.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace dampedwave {

void TestFunctionFamily::validate() const {
  if (!(beta > 0.0)) throw InvalidParams("TestFunctionFamily: beta must be > 0");
  if (N < 1) throw InvalidParams("TestFunctionFamily: N must be >= 1");
  profile_params().validate();
}

HypergeomParams TestFunctionFamily::profile_params(double beta_shift,
                                                   double mu_shift) const {
  HypergeomParams p;
  p.a = 0.5 * (beta + beta_shift);
  p.b = 0.5 * ((beta + beta_shift) - 1.0 + (mu + mu_shift));
  p.c = 0.5 * N;
  p.series_tol = series_tol;
  p.max_terms = max_terms;
  p.z_split = z_split;
  return p;
}

TestFunctionFamily TestFunctionFamily::raised() const {
  TestFunctionFamily f = *this;
  f.beta += 2.0;
  f.mu -= 2.0;
  return f;
}

double psi(const TestFunctionFamily& fam, double z) {
  return hyp2f1(fam.profile_params(), z).value;
}

double psi_derivative(const TestFunctionFamily& fam, double z) {
  return hyp2f1_derivative(fam.profile_params(), z);
}

namespace {

double cone_argument(double r, double t) {
  if (!(r >= 0.0) || !(t >= 0.0) || r >= 1.0 + t) {
    throw DomainError("test function evaluated outside the light cone r < 1+t");
  }
  const double ratio = r / (1.0 + t);
  return ratio * ratio;
}

}  // namespace

double Psi(const TestFunctionFamily& fam, double r, double t) {
  const double z = cone_argument(r, t);
  return std::pow(1.0 + t, -fam.beta) * psi(fam, z);
}

double Phi(const TestFunctionFamily& fam, double r, double t) {
  return (1.0 + t) * Psi(fam, r, t);
}

double psi_tilde(const TestFunctionFamily& fam, double z) {
  return 2.0 * fam.beta * psi(fam.raised(), z) + (fam.mu - 2.0) * psi(fam, z);
}

double check_contiguous_identity(const TestFunctionFamily& fam,
                                 std::span<const double> z_grid) {
  const TestFunctionFamily up = fam.raised();
  double worst = 0.0;
  for (const double z : z_grid) {
    const double lhs = fam.beta * psi(fam, z) + 2.0 * z * psi_derivative(fam, z);
    const double rhs = fam.beta * psi(up, z);
    worst = std::max(worst, std::fabs(lhs - rhs));
  }
  return worst;
}

double check_time_derivative_identity(
    const TestFunctionFamily& fam,
    std::span<const std::pair<double, double>> rt_samples, double h) {
  const TestFunctionFamily up = fam.raised();
  double worst = 0.0;
  for (const auto& [r, t] : rt_samples) {
    if (t < h) throw DomainError("time-derivative check needs t >= h");
    const double fd = (Psi(fam, r, t + h) - Psi(fam, r, t - h)) / (2.0 * h);
    const double exact = -fam.beta * (1.0 + t) * Psi(up, r, t);
    worst = std::max(worst, std::fabs(fd - exact) / std::fabs(exact));
  }
  return worst;
}

double check_dual_equation(const TestFunctionFamily& fam, const RectPatch& patch,
                           double h) {
  if (patch.nr < 1 || patch.nt < 1) throw InvalidInput("empty dual-equation patch");
  const double mu = fam.mu;
  double worst = 0.0;
  for (int j = 0; j < patch.nt; ++j) {
    const double t = patch.nt == 1
                         ? patch.t_lo
                         : patch.t_lo + (patch.t_hi - patch.t_lo) * j / (patch.nt - 1);
    for (int i = 0; i < patch.nr; ++i) {
      const double r = patch.nr == 1
                           ? patch.r_lo
                           : patch.r_lo + (patch.r_hi - patch.r_lo) * i / (patch.nr - 1);
      if (r != 0.0 && r < 2.0 * h) {
        throw DomainError("dual-equation stencil needs r = 0 or r >= 2h");
      }
      const double phi_c = Phi(fam, r, t);
      const double phi_tp = Phi(fam, r, t + h);
      const double phi_tm = Phi(fam, r, t - h);
      const double d2t = (phi_tp - 2.0 * phi_c + phi_tm) / (h * h);

      double lap;
      if (r == 0.0) {
        // Even symmetry at the axis: Lap = N * phi_rr(0).
        lap = fam.N * 2.0 * (Phi(fam, h, t) - phi_c) / (h * h);
      } else {
        const double phi_rp = Phi(fam, r + h, t);
        const double phi_rm = Phi(fam, r - h, t);
        lap = (phi_rp - 2.0 * phi_c + phi_rm) / (h * h) +
              (fam.N - 1.0) / r * (phi_rp - phi_rm) / (2.0 * h);
      }
      const double damp =
          (mu / (1.0 + t + h) * phi_tp - mu / (1.0 + t - h) * phi_tm) / (2.0 * h);
      worst = std::max(worst, std::fabs(d2t - lap - damp));
    }
  }
  return worst;
}

BoundConstants estimate_bound_constants(const TestFunctionFamily& fam) {
  fam.validate();
  const double lo = std::max(0.0, 1.0 - fam.mu);
  const double hi = 0.5 * (fam.N + 1.0 - fam.mu);
  if (std::fabs(fam.beta - hi) <= 1e-9 * std::max(1.0, std::fabs(hi))) {
    throw WrongRegime("estimate_bound_constants: beta on the regime boundary (N+1-mu)/2");
  }

  // Uniform z panel plus a geometric approach to the cone edge, capped at
  // 1 - 1e-4 to keep the edge-growth regime inside double range.
  std::vector<double> zs;
  for (int k = 0; k <= 18; ++k) zs.push_back(0.05 * k);
  for (int j = 6; j <= 16; ++j) zs.push_back(1.0 - std::pow(10.0, -0.25 * j));

  BoundConstants out;
  if (fam.beta > hi) {
    out.regime = BoundRegime::ConeEdgeGrowth;
    const double expo = fam.beta - hi;
    double mn = std::numeric_limits<double>::infinity(), mx = 0.0;
    for (const double z : zs) {
      const double v = psi(fam, z) * std::pow(1.0 - std::sqrt(z), expo);
      mn = std::min(mn, v);
      mx = std::max(mx, v);
    }
    if (!(mn > 0.0) || !std::isfinite(mx)) {
      throw PositivityViolated(
          "estimate_bound_constants: cone-edge-normalized profile not positive and finite");
    }
    out.c_lower = mn;
    out.c_upper = mx;
    return out;
  }
  if (fam.beta > lo) {
    out.regime = BoundRegime::Bounded;
    double mn = std::numeric_limits<double>::infinity(), mx = 0.0;
    for (const double z : zs) {
      const double v = psi(fam, z);
      mn = std::min(mn, v);
      mx = std::max(mx, v);
    }
    if (mn < 1.0 - 1e-9 || !std::isfinite(mx)) {
      throw PositivityViolated(
          "estimate_bound_constants: bounded-regime profile dipped below 1");
    }
    out.c_lower = mn;
    out.c_upper = mx;
    return out;
  }
  throw WrongRegime("estimate_bound_constants: beta <= max{0, 1-mu} is not covered");
}

std::vector<std::pair<double, double>> sample_cone_points(int count, unsigned seed,
                                                          double t_max,
                                                          double margin) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> ut(0.1, t_max);
  std::uniform_real_distribution<double> ur(0.0, 1.0);
  std::vector<std::pair<double, double>> pts;
  pts.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double t = ut(rng);
    const double r = ur(rng) * margin * (1.0 + t);
    pts.emplace_back(r, t);
  }
  return pts;
}

}  // namespace dampedwave
