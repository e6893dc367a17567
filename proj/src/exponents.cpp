#include "dampedwave/exponents.hpp"

#include <algorithm>
#include <cmath>

namespace dampedwave {

void ProblemClass::validate() const {
  if (N < 1) throw InvalidInput("ProblemClass: N must be >= 1");
  if (!(mu >= 0.0)) throw InvalidInput("ProblemClass: mu must be >= 0");
  if (!(p > 1.0)) throw InvalidInput("ProblemClass: p must be > 1");
}

double gamma_poly(double n, double p) {
  return 2.0 + (n + 1.0) * p - (n - 1.0) * p * p;
}

double StraussExponent::value() const {
  if (!finite_) throw InvalidInput("StraussExponent: p0(1) is infinite");
  return value_;
}

StraussExponent strauss_exponent(double n) {
  if (!(n >= 1.0)) throw InvalidInput("strauss_exponent: n must be >= 1");
  if (n == 1.0) return StraussExponent::infinite();
  const double a = n - 1.0, b = n + 1.0;
  return StraussExponent::finite((b + std::sqrt(b * b + 8.0 * a)) / (2.0 * a));
}

double fujita_exponent(int N) {
  if (N < 1) throw InvalidInput("fujita_exponent: N must be >= 1");
  return 1.0 + 2.0 / N;
}

double mu_star(int N) {
  if (N < 1) throw InvalidInput("mu_star: N must be >= 1");
  const double Nd = N;
  return (Nd * Nd + Nd + 2.0) / (Nd + 2.0);
}

std::string to_string(SupBranch b) {
  switch (b) {
    case SupBranch::OneDStrauss:
      return "N=1, max{3,2/mu} <= p < p0(1+mu)";
    case SupBranch::OneDSmallMu:
      return "N=1, 0 < mu < 2/3, 3 <= p < 2/mu";
    case SupBranch::MultiStrauss:
      return "N>=2, p0(N+2+mu) <= p < p0(N+mu)";
    case SupBranch::MultiShifted:
      return "N>=2, p_F(N) <= p < p0(N+2+mu)";
    case SupBranch::OffTable:
      return "off-table";
  }
  return "?";
}

AdmissibleSet admissible_set(const ProblemClass& pc) {
  pc.validate();
  const double N = pc.N, mu = pc.mu, p = pc.p;

  const double lo3 = 0.5 * ((N - 1.0 + mu) * p - (N + 1.0 + mu));
  const double hi3 = 0.5 * ((N + 1.0 + mu) * p - (N + 3.0 + mu));
  const double hi2 = 0.5 * (N - std::fabs(1.0 - mu));

  AdmissibleSet s;
  s.lo = std::max(0.0, lo3);
  s.hi = std::min({1.0 / p, hi2, hi3});
  if (!(s.lo < s.hi)) {
    throw EmptySetError("admissible_set: empty window (parameters outside the blowup regime)");
  }

  if (pc.N == 1) {
    if (mu > 0.0 && mu < 2.0 / 3.0 && p >= 3.0 && p < 2.0 / mu) {
      s.branch = SupBranch::OneDSmallMu;
      s.sup_value = 0.5 * mu;
    } else if (mu > 0.0 && p >= std::max(3.0, 2.0 / mu) &&
               strauss_exponent(1.0 + mu).greater_than(p)) {
      s.branch = SupBranch::OneDStrauss;
      s.sup_value = 1.0 / p;
    } else {
      s.branch = SupBranch::OffTable;
      s.sup_value = s.hi;
    }
  } else {
    const StraussExponent p0_shift = strauss_exponent(N + 2.0 + mu);
    const StraussExponent p0 = strauss_exponent(N + mu);
    if (p0_shift.less_eq(p) && p0.greater_than(p)) {
      s.branch = SupBranch::MultiStrauss;
      s.sup_value = 1.0 / p;
    } else if (p >= fujita_exponent(pc.N) && p0_shift.greater_than(p)) {
      s.branch = SupBranch::MultiShifted;
      s.sup_value = hi3;
    } else {
      s.branch = SupBranch::OffTable;
      s.sup_value = s.hi;
    }
  }
  return s;
}

double theta_exponent(const ProblemClass& pc) {
  const AdmissibleSet s = admissible_set(pc);
  const double lambda =
      gamma_poly(pc.N + pc.mu, pc.p) / (2.0 * pc.p) - 1.0 / pc.p + s.sup_value;
  return (pc.p - 1.0) / lambda;
}

std::string to_string(RegimeTag t) {
  switch (t) {
    case RegimeTag::Subcritical:
      return "Subcritical";
    case RegimeTag::Critical:
      return "Critical";
    case RegimeTag::OutsideTheorem:
      return "OutsideTheorem";
  }
  return "?";
}

std::string to_string(RegimeBranch b) {
  switch (b) {
    case RegimeBranch::CriticalRow:
      return "p = p0(N+mu)";
    case RegimeBranch::OneDStrauss:
      return "N=1, max{3,2/mu} <= p < p0(1+mu)";
    case RegimeBranch::OneDSmallMu:
      return "N=1, 0 < mu < 2/3, 3 <= p < 2/mu";
    case RegimeBranch::MultiStrauss:
      return "N>=2, p0(N+2+mu) <= p < p0(N+mu)";
    case RegimeBranch::MultiShifted:
      return "N>=2, p_F(N) <= p < p0(N+2+mu)";
    case RegimeBranch::OutsideMuRange:
      return "mu outside the admissible range";
    case RegimeBranch::OutsideBelowPF:
      return "p below the Fujita exponent";
    case RegimeBranch::OutsideAboveP0:
      return "p above p0(N+mu)";
  }
  return "?";
}

Regime classify_regime(const ProblemClass& pc, double tol) {
  pc.validate();
  if (!(tol > 0.0)) throw InvalidInput("classify_regime: tol must be > 0");
  const double mu = pc.mu, p = pc.p;

  const bool mu_ok = (pc.N == 1) ? (mu > 0.0 && mu < 4.0 / 3.0)
                                 : (mu >= 0.0 && mu < mu_star(pc.N));
  if (!mu_ok) return {RegimeTag::OutsideTheorem, RegimeBranch::OutsideMuRange};

  const double p0 = strauss_exponent(pc.N + mu).value();
  if (std::fabs(p - p0) <= tol * p0) {
    return {RegimeTag::Critical, RegimeBranch::CriticalRow};
  }
  if (p > p0) return {RegimeTag::OutsideTheorem, RegimeBranch::OutsideAboveP0};
  if (p < fujita_exponent(pc.N)) {
    return {RegimeTag::OutsideTheorem, RegimeBranch::OutsideBelowPF};
  }

  if (pc.N == 1) {
    if (mu < 2.0 / 3.0 && p < 2.0 / mu) {
      return {RegimeTag::Subcritical, RegimeBranch::OneDSmallMu};
    }
    return {RegimeTag::Subcritical, RegimeBranch::OneDStrauss};
  }
  if (strauss_exponent(pc.N + 2.0 + mu).less_eq(p)) {
    return {RegimeTag::Subcritical, RegimeBranch::MultiStrauss};
  }
  return {RegimeTag::Subcritical, RegimeBranch::MultiShifted};
}

LifespanBound lifespan_bound(const ProblemClass& pc, double eps, double delta,
                             double C, double tol) {
  if (!(eps > 0.0)) throw InvalidInput("lifespan_bound: eps must be > 0");
  if (!(delta >= 0.0)) throw InvalidInput("lifespan_bound: delta must be >= 0");
  if (!(C > 0.0)) throw InvalidInput("lifespan_bound: C must be > 0");

  LifespanBound out;
  out.regime = classify_regime(pc, tol);
  const double p = pc.p;

  switch (out.regime.tag) {
    case RegimeTag::Critical:
      out.exp_argument = C * std::pow(eps, -p * (p - 1.0));
      out.value = C * std::exp(out.exp_argument);
      return out;
    case RegimeTag::Subcritical:
      switch (out.regime.branch) {
        case RegimeBranch::OneDSmallMu:
          out.theta_row = 2.0 * (p - 1.0) / pc.mu;
          break;
        case RegimeBranch::MultiShifted:
          out.theta_row = 1.0;
          break;
        default:
          out.theta_row = 2.0 * p * (p - 1.0) / gamma_poly(pc.N + pc.mu, p);
          break;
      }
      out.value = C * std::pow(eps, -out.theta_row - delta);
      return out;
    case RegimeTag::OutsideTheorem:
      throw OutsideTheoremError(
          "lifespan_bound: no bound for these parameters (" +
          to_string(out.regime.branch) + ")");
  }
  throw Error("lifespan_bound: unreachable");
}

}  // namespace dampedwave
