#pragma once

#include <cstddef>

namespace stosep::kernels::detail {

struct Backend {
    double (*dot)(const double*, const double*, std::size_t);
    double (*sum)(const double*, std::size_t);
    double (*squared_distance)(const double*, const double*, std::size_t);
    void (*axpy)(double*, double, const double*, std::size_t);
    std::size_t (*count_greater)(const double*, std::size_t, double);
};

const Backend& scalar_backend();
#ifdef STOSEP_COMPILE_AVX2
const Backend& avx2_backend();
#endif

}  // namespace stosep::kernels::detail
