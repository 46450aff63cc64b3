#pragma once

#include <cstddef>

namespace stosep::kernels {

enum class SimdLevel {
    scalar = 0,
    avx2 = 1,
    neon = 2,  // reserved; no backend shipped for it yet
};

const char* level_name(SimdLevel level);

// Level chosen at startup: best supported by the CPU, overridable with the
// STOSEP_SIMD environment variable ("scalar", "avx2").
SimdLevel active_level();

// Force a level at runtime (used by the equivalence tests). Returns false and
// leaves the active level unchanged if this build/CPU cannot run `level`.
bool set_level(SimdLevel level);

// Reductions accumulate in four independent lanes (element index mod 4),
// fused multiply-add in every lane, combined as (l0+l1)+(l2+l3). Every
// backend reproduces that order exactly, so results are identical bit for
// bit whichever level is active.
double dot(const double* a, const double* b, std::size_t n);
double sum(const double* a, std::size_t n);
double squared_distance(const double* a, const double* b, std::size_t n);

// y[i] += a * x[i], one fused multiply-add per element.
void axpy(double* y, double a, const double* x, std::size_t n);

std::size_t count_greater(const double* v, std::size_t n, double threshold);

}  // namespace stosep::kernels
