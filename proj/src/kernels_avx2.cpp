#ifdef STOSEP_COMPILE_AVX2

#include <immintrin.h>

#include <cmath>

#include "kernels_impl.hpp"

// AVX2+FMA backend. Lane L of the vector accumulator sees exactly the
// elements with index ≡ L (mod 4) that the scalar reference assigns to
// acc[L]; tails continue the same lanes with scalar fma. The final
// (l0+l1)+(l2+l3) reduction matches the reference, so every result is
// bit-identical to the scalar backend.

namespace stosep::kernels::detail {
namespace {

inline double reduce_lanes(__m256d vacc, const double* a, const double* b, std::size_t i,
                           std::size_t n, bool square_diff) {
    alignas(32) double acc[4];
    _mm256_store_pd(acc, vacc);
    for (; i < n; ++i) {
        if (square_diff) {
            double d = a[i] - b[i];
            acc[i & 3] = std::fma(d, d, acc[i & 3]);
        } else {
            acc[i & 3] = std::fma(a[i], b[i], acc[i & 3]);
        }
    }
    return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d vacc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        vacc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), vacc);
    return reduce_lanes(vacc, a, b, i, n, false);
}

double sum_avx2(const double* a, std::size_t n) {
    __m256d vacc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        vacc = _mm256_add_pd(vacc, _mm256_loadu_pd(a + i));
    alignas(32) double acc[4];
    _mm256_store_pd(acc, vacc);
    for (; i < n; ++i)
        acc[i & 3] += a[i];
    return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

double squared_distance_avx2(const double* a, const double* b, std::size_t n) {
    __m256d vacc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        vacc = _mm256_fmadd_pd(d, d, vacc);
    }
    return reduce_lanes(vacc, a, b, i, n, true);
}

void axpy_avx2(double* y, double a, const double* x, std::size_t n) {
    __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    for (; i < n; ++i)
        y[i] = std::fma(a, x[i], y[i]);
}

std::size_t count_greater_avx2(const double* v, std::size_t n, double threshold) {
    __m256d vt = _mm256_set1_pd(threshold);
    std::size_t c = 0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d m = _mm256_cmp_pd(_mm256_loadu_pd(v + i), vt, _CMP_GT_OQ);
        c += static_cast<std::size_t>(__builtin_popcount(_mm256_movemask_pd(m)));
    }
    for (; i < n; ++i)
        c += v[i] > threshold ? 1 : 0;
    return c;
}

}  // namespace

const Backend& avx2_backend() {
    static const Backend b = {
        dot_avx2, sum_avx2, squared_distance_avx2, axpy_avx2, count_greater_avx2,
    };
    return b;
}

}  // namespace stosep::kernels::detail

#endif  // STOSEP_COMPILE_AVX2
