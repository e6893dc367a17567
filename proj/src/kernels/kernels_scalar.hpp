#pragma once

#include <cmath>
#include <cstddef>
#include <limits>

// Scalar reference kernels. These define the semantics the SIMD variants
// are tested against.

namespace dampedwave::kernels::scalar {

// Shared by both backends so that integer exponents round identically.
inline double pow_int_chain(double a, int k) {
  double r = 1.0;
  for (int j = 0; j < k; ++j) r *= a;
  return r;
}

inline bool integer_power(double p, int& k) {
  const double r = std::nearbyint(p);
  if (p == r && r >= 1.0 && r <= 8.0) {
    k = static_cast<int>(r);
    return true;
  }
  return false;
}

inline void abs_pow(const double* u, double* out, std::size_t n, double p) {
  int k;
  if (integer_power(p, k)) {
    for (std::size_t i = 0; i < n; ++i) {
      const double a = std::fabs(u[i]);
      out[i] = pow_int_chain(a, k);
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) out[i] = std::pow(std::fabs(u[i]), p);
  }
}

inline void damped_wave_update(const double* u, const double* uprev,
                               const double* src, const double* cplus,
                               const double* cminus, double cmid, double dt2,
                               double omd, double inv_opd, double* out,
                               std::size_t i0, std::size_t i1) {
  for (std::size_t i = i0; i < i1; ++i) {
    const double lap = cplus[i] * u[i + 1] + cminus[i] * u[i - 1] + cmid * u[i];
    out[i] = (2.0 * u[i] - omd * uprev[i] + dt2 * (lap + src[i])) * inv_opd;
  }
}

inline double max_abs(const double* u, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(u[i]));
  return m;
}

inline double min_value(const double* u, std::size_t n) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) m = std::min(m, u[i]);
  return m;
}

inline double weighted_sum(const double* w, const double* v, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += w[i] * v[i];
  return s;
}

inline std::ptrdiff_t last_above(const double* u, std::size_t n, double tol) {
  for (std::size_t i = n; i > 0; --i) {
    if (std::fabs(u[i - 1]) > tol) return static_cast<std::ptrdiff_t>(i - 1);
  }
  return -1;
}

inline bool all_finite(const double* u, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(u[i])) return false;
  }
  return true;
}

}  // namespace dampedwave::kernels::scalar
