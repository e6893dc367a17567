#pragma once

#include <span>
#include <utility>
#include <vector>

#include "dampedwave/hypergeom.hpp"

// Self-similar solutions of the conjugate linear damped wave equation,
// built from Gauss hypergeometric profiles:
//   psi(z)    = F(beta/2, (beta-1+mu)/2, N/2; z)
//   Psi(x,t)  = (1+t)^{-beta} psi(|x|^2/(1+t)^2)
//   Phi(x,t)  = (1+t) Psi(x,t)
// Phi solves   Phi_tt - Lap(Phi) - d/dt( mu/(1+t) Phi ) = 0   on the light
// cone |x| < 1+t. The check_* routines verify the algebraic and
// differential identities of the family numerically.

namespace dampedwave {

struct TestFunctionFamily {
  double beta = 1.0;
  double mu = 0.0;
  int N = 1;
  // evaluation policy, forwarded into every hypergeometric call
  double series_tol = 1e-15;
  int max_terms = 10000;
  double z_split = 0.5;

  void validate() const;

  // Parameter triple of psi_{beta,mu}; shifts select contiguous relatives.
  HypergeomParams profile_params(double beta_shift = 0.0,
                                 double mu_shift = 0.0) const;

  // The (beta+2, mu-2) relative appearing in the time derivative of Psi.
  TestFunctionFamily raised() const;
};

enum class ConeKind { Q0, Q1 };

// Q0: |x| < t. Q1: |x| < 1 + t.
struct ConeDomain {
  ConeKind kind = ConeKind::Q1;
  bool contains(double r, double t) const {
    return r >= 0.0 && t >= 0.0 && r < (kind == ConeKind::Q0 ? t : 1.0 + t);
  }
};

double psi(const TestFunctionFamily& fam, double z);
double psi_derivative(const TestFunctionFamily& fam, double z);

// Throws DomainError outside Q1 (r >= 1+t).
double Psi(const TestFunctionFamily& fam, double r, double t);
double Phi(const TestFunctionFamily& fam, double r, double t);

// psi~(z) = 2 beta psi_{beta+2,mu-2}(z) + (mu-2) psi_{beta,mu}(z).
double psi_tilde(const TestFunctionFamily& fam, double z);

// max over the grid of | beta psi + 2 z psi' - beta psi_{beta+2,mu-2} |.
double check_contiguous_identity(const TestFunctionFamily& fam,
                                 std::span<const double> z_grid);

// max relative error between the centered finite difference of
// d/dt Psi_{beta,mu} and the closed form -beta (1+t) Psi_{beta+2,mu-2}.
double check_time_derivative_identity(
    const TestFunctionFamily& fam,
    std::span<const std::pair<double, double>> rt_samples, double h = 1e-5);

struct RectPatch {
  double r_lo = 0.1, r_hi = 0.8;
  double t_lo = 0.5, t_hi = 1.5;
  int nr = 8, nt = 8;
};

// max over the patch of the second-order centered-difference residual of
// the conjugate operator applied to Phi. Points must be r = 0 exactly or
// r >= 2h, and the whole stencil must stay inside Q1.
double check_dual_equation(const TestFunctionFamily& fam, const RectPatch& patch,
                           double h = 1e-3);

enum class BoundRegime {
  Bounded,         // max{0,1-mu} < beta < (N+1-mu)/2:  1 <= psi <= c
  ConeEdgeGrowth,  // beta > (N+1-mu)/2: psi ~ (1-sqrt(z))^{(N+1-mu)/2-beta}
};

struct BoundConstants {
  double c_lower = 0.0;
  double c_upper = 0.0;
  BoundRegime regime = BoundRegime::Bounded;
};

// Scans psi (or its cone-edge-normalized form) on a z-grid approaching 1
// (capped at 1 - 1e-4) and reports the empirical bound constants. Throws
// WrongRegime when beta is outside both parameter windows or on their
// boundary.
BoundConstants estimate_bound_constants(const TestFunctionFamily& fam);

// Seeded samples strictly inside Q1 with r <= margin*(1+t); used by the
// identity verifiers.
std::vector<std::pair<double, double>> sample_cone_points(int count,
                                                          unsigned seed,
                                                          double t_max = 3.0,
                                                          double margin = 0.85);

}  // namespace dampedwave
