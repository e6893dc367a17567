#pragma once

#include <span>
#include <vector>

#include "dampedwave/exponents.hpp"

// Reduced blowup ODEs behind the lifespan bounds, run as standalone
// demonstrations. Two cases:
//   (i)  C H^p = H'' + c H'/sigma,   floors H >= eps^p C sigma^2, H' >= eps^p C sigma
//   (ii) C sigma^{1-p} H^p = H'' + 2 H',  floors H >= eps^p C sigma, H' >= eps^p C
// The inequalities are integrated as equalities; the stated lower bounds
// are enforced as running floors because in the full problem they are
// sustained by the wave-equation estimates, not by the reduced ODE itself.
// The blowup sigma then scales as eps^{-(p-1)/2} in case (i) and
// eps^{-p(p-1)} in case (ii).

namespace dampedwave {

enum class OdeCase { PowerI, LogII };

struct BlowupOdeProblem {
  OdeCase kind = OdeCase::PowerI;
  double p = 2.0;
  double C = 1.0;           // both the source constant and the floor scale
  double c = 3.0;           // H'/sigma coefficient (case (i) only)
  double sigma0 = 1.0;
  double H0 = -1.0;         // initial H;  negative selects the floor at sigma0
  double V0 = -1.0;         // initial H'; negative selects the floor at sigma0
  double blow_level = 1e12;
  double sigma_cap = 1e12;
  double growth_guard = 0.05;  // halve dt while H' dt > guard * H

  double floor_H(double sigma, double eps) const;
  double floor_V(double sigma, double eps) const;
};

struct OdeRunResult {
  double sigma_star = 0.0;
  long steps = 0;
};

// Integrate until H > blow_level; exponential time differencing handles the
// stiff linear damping, and the step halves while H' dt > guard * H.
// Throws NoBlowup past sigma_cap.
OdeRunResult integrate_blowup_ode(const BlowupOdeProblem& prob, double eps);

struct OdeScalingFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double expected_slope = 0.0;
  std::vector<double> eps;
  std::vector<double> sigma_star;
};

// Runs the sweep and fits log sigma* against log eps. Requires eps_list to
// span at least 1.5 decades.
OdeScalingFit blowup_ode_demo(const BlowupOdeProblem& prob,
                              std::span<const double> eps_list);

// Change of variables carrying the wave-equation functionals onto the ODE
// clock: sigma = (2/lambda)(1+t)^{lambda/2} in the subcritical regime with
// lambda = gamma(N+mu;p)/(2p) - 1/p + 1/q and 1/q = sup S_N - delta'.
struct SubcriticalMap {
  double lambda = 1.0;

  double sigma_of_t(double t) const;
  double t_of_sigma(double sigma) const;
  double sigma0() const { return 2.0 / lambda; }
  double damping_c() const { return (4.0 + lambda) / lambda; }
};

SubcriticalMap subcritical_map(const ProblemClass& pc, double delta_prime = 1e-3);

// Critical regime clock sigma = log(1+t).
struct CriticalMap {
  double sigma_of_t(double t) const;
  double t_of_sigma(double sigma) const;
  double sigma0() const;  // log 2
};

// Case setups derived from a model problem.
BlowupOdeProblem make_case_power(const ProblemClass& pc, double C = 1.0,
                                 double delta_prime = 1e-3);
BlowupOdeProblem make_case_log(double p, double C = 1.0);

}  // namespace dampedwave
