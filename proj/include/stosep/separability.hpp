#pragma once

#include <cstdint>
#include <utility>

#include "stosep/types.hpp"

namespace stosep {

struct Ball {
    std::vector<double> center;
    double radius = 0.0;  // >= 0

    bool contains_interior(const double* x, std::size_t d) const;
};

struct SeparabilityReport {
    double alpha = 0.0;
    std::size_t points = 0;
    // indexed by y: how many x != y have (x,y) > alpha*(x,x)
    std::vector<std::size_t> violation_counts;
    std::vector<double> violation_frequencies;  // counts / (m-1)
    bool fully_separable = false;
    std::uint64_t total_violations = 0;  // ordered (x, y) pairs
    // first violating (x-index, y-index) pairs, capped; total above is exact
    std::vector<std::pair<std::size_t, std::size_t>> violating_pairs;
};

// (x,y) <= alpha*(x,x) for every row y. Returns the failing row indices.
std::pair<bool, std::vector<std::size_t>> is_separable_point(const double* x, std::size_t d,
                                                             const DataMatrix& Y, double alpha);

// Region of points x that violate Eq-style separability against y: open ball
// centered at y/(2*alpha) with radius |y|/(2*alpha).
Ball excluded_ball(const double* y, std::size_t d, double alpha);

// Exhaustive O(m^2 * d) audit of every ordered pair.
SeparabilityReport dataset_separability(const DataMatrix& Y, double alpha,
                                        std::size_t max_pairs = 1000);

struct ProfilePoint {
    double alpha = 0.0;
    double separable_fraction = 0.0;
};

// Fraction of points separable from the rest, per threshold. One O(m^2 * d)
// pass computes each point's critical threshold; the curve is exactly
// non-decreasing in alpha by construction.
std::vector<ProfilePoint> separability_profile(const DataMatrix& Y,
                                               const std::vector<double>& alphas);

}  // namespace stosep
