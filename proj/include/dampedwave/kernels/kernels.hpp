#pragma once

#include <cstddef>

// Data-parallel inner loops used by the wave solver and the quadrature
// layer. Every kernel has a scalar reference implementation and, on x86-64
// with AVX2, a vectorized variant selected at runtime. The two paths are
// equivalence-tested; reductions may differ from the scalar path by a few
// ulps because partial sums are reassociated.

namespace dampedwave::kernels {

enum class Backend {
  Auto,    // pick the best supported backend (default)
  Scalar,  // reference path
  Avx2,
};

// True if this binary contains the AVX2 path and the CPU supports it.
bool avx2_supported();

// Backend currently in effect (never Auto).
Backend active_backend();

// Test hook: pin the backend. Throws InvalidInput if unsupported.
void force_backend(Backend b);

// out[i] = |u[i]|^p. Integer p in [1,8] uses a multiplication chain
// (identical on both backends); other p falls back to std::pow per lane.
void abs_pow(const double* u, double* out, std::size_t n, double p);

// Leapfrog update with semi-implicit damping for the interior points
// i in [i0, i1):
//   out[i] = (2 u[i] - omd * uprev[i]
//             + dt2 * (cplus[i] * u[i+1] + cminus[i] * u[i-1]
//                      + cmid * u[i] + src[i])) * inv_opd
// where omd = 1 - d, inv_opd = 1/(1 + d), d = mu*dt/(2(1+t)).
void damped_wave_update(const double* u, const double* uprev, const double* src,
                        const double* cplus, const double* cminus, double cmid,
                        double dt2, double omd, double inv_opd, double* out,
                        std::size_t i0, std::size_t i1);

// max_i |u[i]|; 0 for n == 0. NaNs are not reliably propagated -- pair
// with all_finite when scanning for divergence.
double max_abs(const double* u, std::size_t n);

// min_i u[i]; +inf for n == 0.
double min_value(const double* u, std::size_t n);

// sum_i w[i] * v[i].
double weighted_sum(const double* w, const double* v, std::size_t n);

// Largest index with |u[i]| > tol, scanning from the tail; -1 if none.
std::ptrdiff_t last_above(const double* u, std::size_t n, double tol);

// True iff every element is finite (no NaN or Inf).
bool all_finite(const double* u, std::size_t n);

}  // namespace dampedwave::kernels
