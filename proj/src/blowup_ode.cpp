#include "dampedwave/blowup_ode.hpp"

#include <algorithm>
#include <cmath>

#include "dampedwave/numerics.hpp"

namespace dampedwave {

double BlowupOdeProblem::floor_H(double sigma, double eps) const {
  const double scale = std::pow(eps, p) * C;
  return kind == OdeCase::PowerI ? scale * sigma * sigma : scale * sigma;
}

double BlowupOdeProblem::floor_V(double sigma, double eps) const {
  const double scale = std::pow(eps, p) * C;
  return kind == OdeCase::PowerI ? scale * sigma : scale;
}

OdeRunResult integrate_blowup_ode(const BlowupOdeProblem& prob, double eps) {
  if (!(prob.p > 1.0)) throw InvalidInput("blowup ODE: p must be > 1");
  if (!(eps > 0.0)) throw InvalidInput("blowup ODE: eps must be > 0");
  if (!(prob.sigma0 > 0.0)) throw InvalidInput("blowup ODE: sigma0 must be > 0");

  double sigma = prob.sigma0;
  double H = prob.H0 >= 0.0 ? prob.H0 : prob.floor_H(sigma, eps);
  double V = prob.V0 >= 0.0 ? prob.V0 : prob.floor_V(sigma, eps);
  double dt = 0.01 * prob.sigma0;

  OdeRunResult res;
  constexpr long kMaxSteps = 20'000'000;
  while (res.steps < kMaxSteps) {
    if (H > prob.blow_level) {
      res.sigma_star = sigma;
      return res;
    }
    if (sigma > prob.sigma_cap) {
      throw NoBlowup("blowup ODE: sigma cap reached without blowup");
    }

    dt = std::min(2.0 * dt, 0.05 * sigma);
    for (int k = 0; k < 200 && V * dt > prob.growth_guard * H; ++k) dt *= 0.5;

    // V' = -a V + f with f frozen over the step (exponential integrator,
    // exact for the linear part, so the stiff damping never limits dt).
    const double a = prob.kind == OdeCase::PowerI ? prob.c / sigma : 2.0;
    const double f = prob.kind == OdeCase::PowerI
                         ? prob.C * std::pow(H, prob.p)
                         : prob.C * std::pow(sigma, 1.0 - prob.p) * std::pow(H, prob.p);
    const double decay = std::exp(-a * dt);
    const double v_new = (V - f / a) * decay + f / a;
    const double h_prev = H;
    H += 0.5 * dt * (V + v_new);
    V = v_new;
    sigma += dt;
    H = std::max(H, prob.floor_H(sigma, eps));
    V = std::max(V, prob.floor_V(sigma, eps));
    ++res.steps;

    if (H > prob.blow_level) {
      // Log-linear interpolation of the crossing inside the last step.
      const double frac = std::log(prob.blow_level / h_prev) / std::log(H / h_prev);
      res.sigma_star = sigma - dt + dt * std::clamp(frac, 0.0, 1.0);
      return res;
    }
  }
  throw NoConvergence("blowup ODE: step budget exhausted");
}

OdeScalingFit blowup_ode_demo(const BlowupOdeProblem& prob,
                              std::span<const double> eps_list) {
  if (eps_list.size() < 2) throw InsufficientData("blowup_ode_demo: need >= 2 eps values");
  const auto [mn, mx] = std::minmax_element(eps_list.begin(), eps_list.end());
  if (!(*mx / *mn >= std::pow(10.0, 1.5) * (1.0 - 1e-12))) {
    throw InsufficientData("blowup_ode_demo: eps range must span >= 1.5 decades");
  }

  OdeScalingFit fit;
  fit.expected_slope = prob.kind == OdeCase::PowerI ? -(prob.p - 1.0) / 2.0
                                                    : -prob.p * (prob.p - 1.0);
  std::vector<double> log_eps, log_sigma;
  for (const double eps : eps_list) {
    const OdeRunResult r = integrate_blowup_ode(prob, eps);
    fit.eps.push_back(eps);
    fit.sigma_star.push_back(r.sigma_star);
    log_eps.push_back(std::log(eps));
    log_sigma.push_back(std::log(r.sigma_star));
  }
  const LinearFit lf = fit_line(log_eps, log_sigma);
  fit.slope = lf.slope;
  fit.intercept = lf.intercept;
  fit.r_squared = lf.r_squared;
  return fit;
}

double SubcriticalMap::sigma_of_t(double t) const {
  return 2.0 / lambda * std::pow(1.0 + t, 0.5 * lambda);
}

double SubcriticalMap::t_of_sigma(double sigma) const {
  return std::pow(0.5 * lambda * sigma, 2.0 / lambda) - 1.0;
}

SubcriticalMap subcritical_map(const ProblemClass& pc, double delta_prime) {
  const AdmissibleSet s = admissible_set(pc);
  const double inv_q = s.sup_value - delta_prime;
  if (!(inv_q > s.lo)) {
    throw InvalidInput("subcritical_map: delta' pushes 1/q out of the admissible window");
  }
  SubcriticalMap map;
  map.lambda = gamma_poly(pc.N + pc.mu, pc.p) / (2.0 * pc.p) - 1.0 / pc.p + inv_q;
  return map;
}

double CriticalMap::sigma_of_t(double t) const { return std::log1p(t); }
double CriticalMap::t_of_sigma(double sigma) const { return std::expm1(sigma); }
double CriticalMap::sigma0() const { return std::log(2.0); }

BlowupOdeProblem make_case_power(const ProblemClass& pc, double C,
                                 double delta_prime) {
  const SubcriticalMap map = subcritical_map(pc, delta_prime);
  BlowupOdeProblem prob;
  prob.kind = OdeCase::PowerI;
  prob.p = pc.p;
  prob.C = C;
  prob.c = map.damping_c();
  prob.sigma0 = map.sigma0();
  return prob;
}

BlowupOdeProblem make_case_log(double p, double C) {
  BlowupOdeProblem prob;
  prob.kind = OdeCase::LogII;
  prob.p = p;
  prob.C = C;
  prob.sigma0 = CriticalMap{}.sigma0();
  return prob;
}

}  // namespace dampedwave
