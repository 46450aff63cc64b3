#include <cmath>

#include "kernels_impl.hpp"

// Reference backend. The 4-lane accumulation pattern here is the contract;
// vector backends must match it bit for bit (std::fma is correctly rounded,
// identical to one vfmadd lane).

namespace stosep::kernels::detail {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i)
        acc[i & 3] = std::fma(a[i], b[i], acc[i & 3]);
    return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

double sum_scalar(const double* a, std::size_t n) {
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i)
        acc[i & 3] += a[i];
    return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

double squared_distance_scalar(const double* a, const double* b, std::size_t n) {
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        double d = a[i] - b[i];
        acc[i & 3] = std::fma(d, d, acc[i & 3]);
    }
    return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

void axpy_scalar(double* y, double a, const double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        y[i] = std::fma(a, x[i], y[i]);
}

std::size_t count_greater_scalar(const double* v, std::size_t n, double threshold) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < n; ++i)
        c += v[i] > threshold ? 1 : 0;
    return c;
}

}  // namespace

const Backend& scalar_backend() {
    static const Backend b = {
        dot_scalar, sum_scalar, squared_distance_scalar, axpy_scalar, count_greater_scalar,
    };
    return b;
}

}  // namespace stosep::kernels::detail
