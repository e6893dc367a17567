#pragma once

#include <string>

#include "dampedwave/errors.hpp"

// Closed-form critical-exponent calculus for the damped semilinear wave
// equation
//   u_tt - Lap(u) + mu/(1+t) u_t = |u|^p,  u(0) = eps f,  u_t(0) = eps g,
// with compactly supported nonnegative data: the Strauss and Fujita
// exponents, the damping threshold mu_*, the admissible exponent window
// S_N used by the test-function argument, the lifespan exponent theta, and
// the regime classification behind the lifespan upper bounds.

namespace dampedwave {

struct ProblemClass {
  int N = 1;      // space dimension, >= 1
  double mu = 0;  // damping coefficient, >= 0
  double p = 2;   // nonlinearity power, > 1

  void validate() const;
};

// gamma(n; p) = 2 + (n+1) p - (n-1) p^2. The Strauss exponent p0(n) is its
// positive root in p.
double gamma_poly(double n, double p);

// p0(n) for n > 1; p0(1) is infinite and carries no float value, so the
// result is a tagged type and arithmetic on the infinite case is impossible
// by construction.
class StraussExponent {
 public:
  static StraussExponent finite(double v) { return StraussExponent(true, v); }
  static StraussExponent infinite() { return StraussExponent(false, 0.0); }

  bool is_finite() const { return finite_; }
  double value() const;  // throws InvalidInput when infinite

  // Order comparisons against a finite p are well-defined either way.
  bool greater_than(double p) const { return !finite_ || value_ > p; }
  bool less_eq(double p) const { return finite_ && value_ <= p; }

 private:
  StraussExponent(bool f, double v) : finite_(f), value_(v) {}
  bool finite_;
  double value_;
};

StraussExponent strauss_exponent(double n);

// Fujita exponent 1 + 2/N.
double fujita_exponent(int N);

// mu_* = (N^2 + N + 2)/(N + 2); the damping strength at which the Fujita
// and shifted Strauss thresholds meet: p_F(N) = p0(N + mu_*).
double mu_star(int N);

enum class SupBranch {
  OneDStrauss,   // N = 1, max{3, 2/mu} <= p < p0(1+mu): sup = 1/p
  OneDSmallMu,   // N = 1, 0 < mu < 2/3, 3 <= p < 2/mu:  sup = mu/2
  MultiStrauss,  // N >= 2, p0(N+2+mu) <= p < p0(N+mu):  sup = 1/p
  MultiShifted,  // N >= 2, p_F(N) <= p < p0(N+2+mu):    sup = ((N+1+mu)p-(N+3+mu))/2
  OffTable,      // outside the tabulated rows; sup is the right endpoint
};

std::string to_string(SupBranch b);

// The admissible window
//   S_N = (0, 1/p) /\ (0, (N-|1-mu|)/2)
//         /\ ( ((N-1+mu)p-(N+1+mu))/2 , ((N+1+mu)p-(N+3+mu))/2 ),
// nonempty whenever p_F(N) <= p < p0(N+mu) and mu is in range.
struct AdmissibleSet {
  double lo = 0.0;
  double hi = 0.0;  // sup_value equals hi whenever the set is nonempty
  double sup_value = 0.0;
  SupBranch branch = SupBranch::OffTable;
};

// Throws EmptySetError when the intersection is empty.
AdmissibleSet admissible_set(const ProblemClass& pc);

// theta = (p-1) / ( gamma(N+mu; p)/(2p) - 1/p + sup S_N ). With
// sup S_N = 1/p this reduces to 2p(p-1)/gamma(N+mu; p).
double theta_exponent(const ProblemClass& pc);

enum class RegimeTag { Subcritical, Critical, OutsideTheorem };

enum class RegimeBranch {
  CriticalRow,      // p = p0(N+mu)
  OneDStrauss,      // N = 1, max{3, 2/mu} <= p < p0(1+mu)
  OneDSmallMu,      // N = 1, 0 < mu < 2/3, 3 <= p < 2/mu
  MultiStrauss,     // N >= 2, p0(N+2+mu) <= p < p0(N+mu)
  MultiShifted,     // N >= 2, p_F(N) <= p < p0(N+2+mu)
  OutsideMuRange,   // mu outside (0, 4/3) for N = 1 or [0, mu_*) for N >= 2
  OutsideBelowPF,   // p < p_F(N)
  OutsideAboveP0,   // p > p0(N+mu)
};

std::string to_string(RegimeTag t);
std::string to_string(RegimeBranch b);

struct Regime {
  RegimeTag tag = RegimeTag::OutsideTheorem;
  RegimeBranch branch = RegimeBranch::OutsideMuRange;
};

// Criticality is decided by |p - p0(N+mu)| <= tol * p0(N+mu). The boundary
// p = p_F(N) counts as Subcritical.
Regime classify_regime(const ProblemClass& pc, double tol = 1e-9);

struct LifespanBound {
  double value = 0.0;         // the bound itself
  double exp_argument = 0.0;  // critical case: value = C * exp(exp_argument)
  double theta_row = 0.0;     // subcritical case: value = C * eps^{-theta_row-delta}
  Regime regime;
};

// Lifespan upper bound
//   critical:            C exp( C eps^{-p(p-1)} )
//   subcritical, sup=1/p rows:  C eps^{-2p(p-1)/gamma(N+mu;p) - delta}
//   N = 1 small-mu row:         C eps^{-2(p-1)/mu - delta}
//   N >= 2 shifted row:         C eps^{-1 - delta}
// Throws OutsideTheoremError when no bound exists for the parameters.
LifespanBound lifespan_bound(const ProblemClass& pc, double eps, double delta,
                             double C, double tol = 1e-9);

}  // namespace dampedwave
