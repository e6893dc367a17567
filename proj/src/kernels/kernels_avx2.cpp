// AVX2 variants of the solver/quadrature kernels. Compiled with -mavx2
// -mfma in its own translation unit; the dispatcher only routes here after
// a runtime CPU check.

#include "kernels_avx2.hpp"

#ifdef DAMPEDWAVE_HAVE_AVX2

#include <immintrin.h>

#include <cmath>
#include <limits>

#include "kernels_scalar.hpp"

namespace dampedwave::kernels::avx2 {

namespace {

inline __m256d abs_pd(__m256d x) {
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  return _mm256_andnot_pd(sign_mask, x);
}

inline double hsum_pd(__m256d x) {
  __m128d lo = _mm256_castpd256_pd128(x);
  __m128d hi = _mm256_extractf128_pd(x, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d swapped = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}

inline double hmax_pd(__m256d x) {
  __m128d lo = _mm256_castpd256_pd128(x);
  __m128d hi = _mm256_extractf128_pd(x, 1);
  lo = _mm_max_pd(lo, hi);
  __m128d swapped = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_max_sd(lo, swapped));
}

inline double hmin_pd(__m256d x) {
  __m128d lo = _mm256_castpd256_pd128(x);
  __m128d hi = _mm256_extractf128_pd(x, 1);
  lo = _mm_min_pd(lo, hi);
  __m128d swapped = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_min_sd(lo, swapped));
}

}  // namespace

void abs_pow(const double* u, double* out, std::size_t n, double p) {
  int k;
  if (!scalar::integer_power(p, k)) {
    // General exponents go through libm; keeps both backends bit-compatible
    // for the expensive transcendental case.
    for (std::size_t i = 0; i < n; ++i) out[i] = std::pow(std::fabs(u[i]), p);
    return;
  }
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a = abs_pd(_mm256_loadu_pd(u + i));
    __m256d r = _mm256_set1_pd(1.0);
    for (int j = 0; j < k; ++j) r = _mm256_mul_pd(r, a);
    _mm256_storeu_pd(out + i, r);
  }
  for (; i < n; ++i) out[i] = scalar::pow_int_chain(std::fabs(u[i]), k);
}

void damped_wave_update(const double* u, const double* uprev, const double* src,
                        const double* cplus, const double* cminus, double cmid,
                        double dt2, double omd, double inv_opd, double* out,
                        std::size_t i0, std::size_t i1) {
  const __m256d vcmid = _mm256_set1_pd(cmid);
  const __m256d vdt2 = _mm256_set1_pd(dt2);
  const __m256d vomd = _mm256_set1_pd(omd);
  const __m256d vinv = _mm256_set1_pd(inv_opd);
  const __m256d vtwo = _mm256_set1_pd(2.0);
  std::size_t i = i0;
  for (; i + 4 <= i1; i += 4) {
    const __m256d uc = _mm256_loadu_pd(u + i);
    const __m256d up = _mm256_loadu_pd(u + i + 1);
    const __m256d um = _mm256_loadu_pd(u + i - 1);
    __m256d lap = _mm256_mul_pd(_mm256_loadu_pd(cplus + i), up);
    lap = _mm256_fmadd_pd(_mm256_loadu_pd(cminus + i), um, lap);
    lap = _mm256_fmadd_pd(vcmid, uc, lap);
    lap = _mm256_add_pd(lap, _mm256_loadu_pd(src + i));
    __m256d acc = _mm256_mul_pd(vtwo, uc);
    acc = _mm256_fnmadd_pd(vomd, _mm256_loadu_pd(uprev + i), acc);
    acc = _mm256_fmadd_pd(vdt2, lap, acc);
    _mm256_storeu_pd(out + i, _mm256_mul_pd(acc, vinv));
  }
  if (i < i1) {
    scalar::damped_wave_update(u, uprev, src, cplus, cminus, cmid, dt2, omd,
                               inv_opd, out, i, i1);
  }
}

double max_abs(const double* u, std::size_t n) {
  __m256d m = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) m = _mm256_max_pd(m, abs_pd(_mm256_loadu_pd(u + i)));
  double r = hmax_pd(m);
  for (; i < n; ++i) r = std::max(r, std::fabs(u[i]));
  return r;
}

double min_value(const double* u, std::size_t n) {
  __m256d m = _mm256_set1_pd(std::numeric_limits<double>::infinity());
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) m = _mm256_min_pd(m, _mm256_loadu_pd(u + i));
  double r = hmin_pd(m);
  for (; i < n; ++i) r = std::min(r, u[i]);
  return r;
}

double weighted_sum(const double* w, const double* v, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(v + i), acc);
  }
  double s = hsum_pd(acc);
  for (; i < n; ++i) s += w[i] * v[i];
  return s;
}

std::ptrdiff_t last_above(const double* u, std::size_t n, double tol) {
  const __m256d vtol = _mm256_set1_pd(tol);
  std::size_t i = n;
  while (i % 4 != 0) {
    --i;
    if (std::fabs(u[i]) > tol) return static_cast<std::ptrdiff_t>(i);
  }
  while (i >= 4) {
    i -= 4;
    const __m256d a = abs_pd(_mm256_loadu_pd(u + i));
    const int mask = _mm256_movemask_pd(_mm256_cmp_pd(a, vtol, _CMP_GT_OQ));
    if (mask != 0) {
      for (int lane = 3; lane >= 0; --lane) {
        if (mask & (1 << lane)) return static_cast<std::ptrdiff_t>(i + lane);
      }
    }
  }
  return -1;
}

bool all_finite(const double* u, std::size_t n) {
  const __m256d vinf = _mm256_set1_pd(std::numeric_limits<double>::infinity());
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a = abs_pd(_mm256_loadu_pd(u + i));
    // |x| < inf is false for NaN and for +/-inf.
    const int mask = _mm256_movemask_pd(_mm256_cmp_pd(a, vinf, _CMP_LT_OQ));
    if (mask != 0xF) return false;
  }
  for (; i < n; ++i) {
    if (!std::isfinite(u[i])) return false;
  }
  return true;
}

}  // namespace dampedwave::kernels::avx2

#endif  // DAMPEDWAVE_HAVE_AVX2
