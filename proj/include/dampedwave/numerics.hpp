#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace dampedwave {

// Surface area of the unit sphere in R^N: 2 pi^{N/2} / Gamma(N/2).
double sphere_area(int N);

// Composite trapezoid of samples y on the uniform step h.
double trapezoid(std::span<const double> y, double h);

// Trapezoid over a nonuniform abscissa t (|t| == |y|).
double trapezoid(std::span<const double> t, std::span<const double> y);

// Cumulative trapezoid: out[0] = 0, out[k] = integral of y up to t[k].
std::vector<double> cumtrapz(std::span<const double> t, std::span<const double> y);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

// Ordinary least squares y = intercept + slope * x.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace dampedwave
