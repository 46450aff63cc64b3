#include "stosep/kernels.hpp"

#include <cstdlib>
#include <cstring>

#include "kernels_impl.hpp"

namespace stosep::kernels {
namespace {

using detail::Backend;

bool level_supported(SimdLevel level) {
    switch (level) {
        case SimdLevel::scalar:
            return true;
        case SimdLevel::avx2:
#ifdef STOSEP_COMPILE_AVX2
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
        case SimdLevel::neon:
            return false;
    }
    return false;
}

const Backend& backend_for(SimdLevel level) {
#ifdef STOSEP_COMPILE_AVX2
    if (level == SimdLevel::avx2)
        return detail::avx2_backend();
#endif
    (void)level;
    return detail::scalar_backend();
}

SimdLevel pick_level() {
    if (const char* env = std::getenv("STOSEP_SIMD")) {
        if (std::strcmp(env, "scalar") == 0)
            return SimdLevel::scalar;
        if (std::strcmp(env, "avx2") == 0 && level_supported(SimdLevel::avx2))
            return SimdLevel::avx2;
        // unknown or unsupported names fall through to detection
    }
    if (level_supported(SimdLevel::avx2))
        return SimdLevel::avx2;
    return SimdLevel::scalar;
}

struct State {
    SimdLevel level;
    const Backend* backend;
    State() : level(pick_level()), backend(&backend_for(level)) {}
};

State& state() {
    static State s;
    return s;
}

}  // namespace

const char* level_name(SimdLevel level) {
    switch (level) {
        case SimdLevel::scalar:
            return "scalar";
        case SimdLevel::avx2:
            return "avx2";
        case SimdLevel::neon:
            return "neon";
    }
    return "unknown";
}

SimdLevel active_level() {
    return state().level;
}

bool set_level(SimdLevel level) {
    if (!level_supported(level))
        return false;
    state().level = level;
    state().backend = &backend_for(level);
    return true;
}

double dot(const double* a, const double* b, std::size_t n) {
    return state().backend->dot(a, b, n);
}

double sum(const double* a, std::size_t n) {
    return state().backend->sum(a, n);
}

double squared_distance(const double* a, const double* b, std::size_t n) {
    return state().backend->squared_distance(a, b, n);
}

void axpy(double* y, double a, const double* x, std::size_t n) {
    state().backend->axpy(y, a, x, n);
}

std::size_t count_greater(const double* v, std::size_t n, double threshold) {
    return state().backend->count_greater(v, n, threshold);
}

}  // namespace stosep::kernels
