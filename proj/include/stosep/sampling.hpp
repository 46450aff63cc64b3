#pragma once

#include <cstdint>
#include <string>

#include "stosep/types.hpp"

namespace stosep {

enum class SampleKind {
    uniform_ball,
    uniform_sphere,
    isotropic_gaussian,
    product_uniform_cube,
};

const char* sample_kind_name(SampleKind kind);
SampleKind sample_kind_from_name(const std::string& name);

struct SampleSpec {
    SampleKind kind = SampleKind::uniform_ball;
    std::size_t n = 1;  // ambient dimension
    std::size_t m = 1;  // number of points
    std::uint64_t seed = 0;
};

// Deterministic per (seed, kind, n, m); every point draws from its own
// counter-derived stream, so thread count and generation order are
// irrelevant to the output bits.
DataMatrix sample(const SampleSpec& spec);

struct AngleStats {
    double mean_abs_cos = 0.0;
    double max_abs_cos = 0.0;
};

// Exact pairwise cosine statistics over all unordered row pairs.
AngleStats pairwise_angle_stats(const DataMatrix& X);

}  // namespace stosep
