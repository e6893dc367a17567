#pragma once

#include "dampedwave/errors.hpp"

// Real-parameter Gauss hypergeometric function
//   F(a,b,c;z) = sum_n (a)_n (b)_n / (c)_n * z^n / n!
// on z in [0,1), with the linear-transformation formula in 1-z past a
// configurable split point, the contiguous first/second derivatives, and
// the hypergeometric ODE residual used as a self-consistency oracle.

namespace dampedwave {

struct HypergeomParams {
  double a = 0.0;
  double b = 0.0;
  double c = 1.0;
  double series_tol = 1e-15;  // termwise relative cutoff
  int max_terms = 10000;
  double z_split = 0.5;  // direct series below, 1-z transformation above

  void validate() const;  // throws InvalidParams
};

enum class EvalMethod { DirectSeries, TransformedSeries };

struct EvalResult {
  double value = 0.0;
  int terms_used = 0;
  EvalMethod method = EvalMethod::DirectSeries;
  double truncation_estimate = 0.0;
  // When c-a-b sits within 1e-6 of an integer the transformation formula
  // degenerates; b is nudged by this amount (1e-7) and the nudge reported.
  double b_perturbation = 0.0;
};

// Rising factorial (d)_n = d (d+1) ... (d+n-1), with (d)_0 = 1.
double pochhammer(double d, int n);

// Throws DomainError for z outside [0,1), InvalidParams for c a nonpositive
// integer, NoConvergence when max_terms is exhausted.
EvalResult hyp2f1(const HypergeomParams& params, double z);

// dF/dz = (a b / c) F(a+1, b+1, c+1; z).
double hyp2f1_derivative(const HypergeomParams& params, double z);

// z(1-z) F'' + (c - (1+a+b) z) F' - a b F, with F'' evaluated through the
// parameter-shifted series. Identically zero in exact arithmetic; the
// returned magnitude bounds the evaluator's self-consistency.
double ode_residual(const HypergeomParams& params, double z);

}  // namespace dampedwave
