#pragma once

#include <cstddef>

#ifdef DAMPEDWAVE_HAVE_AVX2

namespace dampedwave::kernels::avx2 {

void abs_pow(const double* u, double* out, std::size_t n, double p);
void damped_wave_update(const double* u, const double* uprev, const double* src,
                        const double* cplus, const double* cminus, double cmid,
                        double dt2, double omd, double inv_opd, double* out,
                        std::size_t i0, std::size_t i1);
double max_abs(const double* u, std::size_t n);
double min_value(const double* u, std::size_t n);
double weighted_sum(const double* w, const double* v, std::size_t n);
std::ptrdiff_t last_above(const double* u, std::size_t n, double tol);
bool all_finite(const double* u, std::size_t n);

}  // namespace dampedwave::kernels::avx2

#endif  // DAMPEDWAVE_HAVE_AVX2
