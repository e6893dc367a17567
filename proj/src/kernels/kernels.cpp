#include "dampedwave/kernels/kernels.hpp"

#include <atomic>

#include "dampedwave/errors.hpp"
#include "kernels_avx2.hpp"
#include "kernels_scalar.hpp"

namespace dampedwave::kernels {

namespace {

struct Vtable {
  void (*abs_pow)(const double*, double*, std::size_t, double);
  void (*damped_wave_update)(const double*, const double*, const double*,
                             const double*, const double*, double, double,
                             double, double, double*, std::size_t, std::size_t);
  double (*max_abs)(const double*, std::size_t);
  double (*min_value)(const double*, std::size_t);
  double (*weighted_sum)(const double*, const double*, std::size_t);
  std::ptrdiff_t (*last_above)(const double*, std::size_t, double);
  bool (*all_finite)(const double*, std::size_t);
};

constexpr Vtable kScalar = {
    &scalar::abs_pow,    &scalar::damped_wave_update, &scalar::max_abs,
    &scalar::min_value,  &scalar::weighted_sum,       &scalar::last_above,
    &scalar::all_finite,
};

#ifdef DAMPEDWAVE_HAVE_AVX2
constexpr Vtable kAvx2 = {
    &avx2::abs_pow,    &avx2::damped_wave_update, &avx2::max_abs,
    &avx2::min_value,  &avx2::weighted_sum,       &avx2::last_above,
    &avx2::all_finite,
};
#endif

std::atomic<const Vtable*> g_vtable{nullptr};
std::atomic<Backend> g_backend{Backend::Auto};

const Vtable* resolve() {
  const Vtable* t = g_vtable.load(std::memory_order_acquire);
  if (t != nullptr) return t;
#ifdef DAMPEDWAVE_HAVE_AVX2
  if (avx2_supported()) {
    g_backend.store(Backend::Avx2, std::memory_order_relaxed);
    g_vtable.store(&kAvx2, std::memory_order_release);
    return &kAvx2;
  }
#endif
  g_backend.store(Backend::Scalar, std::memory_order_relaxed);
  g_vtable.store(&kScalar, std::memory_order_release);
  return &kScalar;
}

}  // namespace

bool avx2_supported() {
#ifdef DAMPEDWAVE_HAVE_AVX2
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend active_backend() {
  resolve();
  return g_backend.load(std::memory_order_relaxed);
}

void force_backend(Backend b) {
  switch (b) {
    case Backend::Auto:
      g_vtable.store(nullptr, std::memory_order_release);
      resolve();
      return;
    case Backend::Scalar:
      g_backend.store(Backend::Scalar, std::memory_order_relaxed);
      g_vtable.store(&kScalar, std::memory_order_release);
      return;
    case Backend::Avx2:
#ifdef DAMPEDWAVE_HAVE_AVX2
      if (avx2_supported()) {
        g_backend.store(Backend::Avx2, std::memory_order_relaxed);
        g_vtable.store(&kAvx2, std::memory_order_release);
        return;
      }
#endif
      throw InvalidInput("AVX2 backend not available on this machine");
  }
}

void abs_pow(const double* u, double* out, std::size_t n, double p) {
  resolve()->abs_pow(u, out, n, p);
}

void damped_wave_update(const double* u, const double* uprev, const double* src,
                        const double* cplus, const double* cminus, double cmid,
                        double dt2, double omd, double inv_opd, double* out,
                        std::size_t i0, std::size_t i1) {
  resolve()->damped_wave_update(u, uprev, src, cplus, cminus, cmid, dt2, omd,
                                inv_opd, out, i0, i1);
}

double max_abs(const double* u, std::size_t n) { return resolve()->max_abs(u, n); }

double min_value(const double* u, std::size_t n) {
  return resolve()->min_value(u, n);
}

double weighted_sum(const double* w, const double* v, std::size_t n) {
  return resolve()->weighted_sum(w, v, n);
}

std::ptrdiff_t last_above(const double* u, std::size_t n, double tol) {
  return resolve()->last_above(u, n, tol);
}

bool all_finite(const double* u, std::size_t n) {
  return resolve()->all_finite(u, n);
}

}  // namespace dampedwave::kernels
