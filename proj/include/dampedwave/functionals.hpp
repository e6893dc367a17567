#pragma once

#include <map>
#include <string>
#include <vector>

#include "dampedwave/testfunc.hpp"
#include "dampedwave/wavesolver.hpp"

// Integral functionals of a numerical solution paired against the conjugate
// test function Phi_beta:
//   G(t) = int |u|^p Phi_beta dx
//   H(t) = int_0^t (t-s)(1+s) G(s) ds
//   J(t) = int_0^t (1+s)^{-3} H(s) ds
// together with the exact identities and bounds that connect them to the
// data moments E0, E1. All quadrature is composite trapezoid on the solver
// grid; H uses the double-cumulative form int_0^t int_0^tau (1+s)G ds dtau,
// which equals the (t-s) kernel form by Fubini.

namespace dampedwave {

struct FunctionalTrace {
  std::vector<double> times;
  std::vector<double> G;
  std::vector<double> H;
  std::vector<double> J;
  double beta = 0.0;
  std::map<std::string, double> quadrature_meta;
};

struct DataMoments {
  double E0 = 0.0;  // int f psi_{beta,mu}(|x|^2) dx
  double E1 = 0.0;  // int g psi + int f (beta psi_{beta+2,mu-2} + (mu-1) psi) dx
  double beta = 0.0;
};

// G from solution snapshots; the x-integral runs over the support ball
// r <= r0 + t (plus two cells of stencil bleed), which stays strictly
// inside the light cone because r0 < 1.
FunctionalTrace compute_G(const std::vector<Snapshot>& snapshots,
                          const RadialGrid& grid, const TestFunctionFamily& fam,
                          const ModelParams& mp);

// Fill H and J by cumulative trapezoids.
void compute_H_J(FunctionalTrace& trace);

// Max relative gap of (1+t)^2 J(t) = 1/2 int_0^t (t-s)^2 G(s) ds over up to
// max_samples sampled times (the right side by direct kernel quadrature).
double check_kernel_identity(const FunctionalTrace& trace, int max_samples = 33);

// Data moments by radial quadrature over [0, r0]. Requires beta-1+mu > 0;
// throws PositivityViolated if E1 still comes out nonpositive.
DataMoments compute_data_moments(const ModelParams& mp, const RadialGrid& grid,
                                 const TestFunctionFamily& fam);

struct PairingGapReport {
  double gap_t0 = 0.0;      // relative gap at t = 0 (pure quadrature consistency)
  double max_rel_gap = 0.0;  // max over snapshot times
};

// The Duhamel-type pairing identity
//   eps E0 + eps E1 t + int_0^t (t-s) G ds
//     = int u(t) Phi(t) dx
//       + int_0^t (1+s)^{-beta} int u(s) psi~(|x|^2/(1+s)^2) dx ds.
// For a linear run (source off) pass nonlinear = false: the G-term drops on
// both sides and the identity reduces to the data terms.
PairingGapReport check_duhamel_identity(const std::vector<Snapshot>& snapshots,
                                        const RadialGrid& grid,
                                        const TestFunctionFamily& fam,
                                        const ModelParams& mp, bool nonlinear);

struct HolderBoundsReport {
  bool defined = false;   // false when the solution is identically zero
  double c1_power = 0.0;  // minimal constant in the power-weight bound
  double c1_log = 0.0;    // minimal constant in the log-weight bound
  double holder_min_gap = 0.0;  // min over t of (Holder RHS - LHS), scale-normalized
  double beta_power = 0.0;
  double beta_log = 0.0;
};

// Fits the smallest constants C1 making the two pairing bounds hold along
// the run, and checks the pointwise Holder inequality
//   int u Phi dx <= ||u||_p (int_{r<=r0+t} Phi^{p'} dx)^{1/p'}.
// q > p chooses beta = (N+1-mu)/2 - 1/q for the power-weight bound; the
// log-weight bound uses beta0 = (N+1-mu)/2 - 1/p.
HolderBoundsReport check_holder_bounds(const std::vector<Snapshot>& snapshots,
                                       const RadialGrid& grid,
                                       const ModelParams& mp, double q);

// L^p norm of a snapshot over the whole grid.
double lp_norm(const Snapshot& snap, const RadialGrid& grid, int N, double p);

}  // namespace dampedwave
