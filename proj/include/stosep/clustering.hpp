#pragma once

// Cluster-overlap geometry: the radius of the ball enclosing the lens where
// two cluster balls intersect, and the goodness measure gamma built from it.
// Also the seeded centroid clustering used to group corrector training
// errors.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "stosep/types.hpp"

namespace stosep::clustering {

// Outcome of intersecting the two cluster balls (radii r1, r2, centers rho
// apart). overlapping means the enclosing-ball formula applies: the lens
// center lies between the ball centers. disjoint: no intersection
// (rho >= r1 + r2). engulfed: one ball contains the center-side half of the
// other (rho^2 <= |r1^2 - r2^2|), including duplicate clusters at rho = 0;
// the formula's geometry does not apply there.
enum class OverlapOutcome { overlapping, disjoint, engulfed };

const char* outcome_name(OverlapOutcome o);

struct DisjointClusters : Error {
    using Error::Error;
};
struct EngulfedClusters : Error {
    using Error::Error;
};

struct ClusterPairStats {
    double r1 = 0.0;   // RMS point-to-centroid distance, first cluster
    double r2 = 0.0;   // second cluster
    double rho = 0.0;  // centroid distance
    std::size_t n = 0; // dimension used in gamma
};

OverlapOutcome classify_overlap(double r1, double r2, double rho);

// Radius of the ball enclosing the intersection lens:
// R^2 = (r1^2 + r2^2)/2 - rho^2/4 - (r1^2 - r2^2)^2 / (4 rho^2).
// Only defined for the overlapping outcome; throws DisjointClusters or
// EngulfedClusters otherwise. Satisfies R < min(r1, r2).
double overlap_radius(double r1, double r2, double rho);

struct GoodnessResult {
    OverlapOutcome outcome = OverlapOutcome::disjoint;
    double R = 0.0;      // 0 unless overlapping
    double gamma = 0.0;  // (R/r1)^n + (R/r2)^n; 0 for disjoint; NaN for engulfed
};

// gamma = (R/r1)^n + (R/r2)^n, evaluated in log-space. Small gamma means the
// clusters barely confuse points; the engulfed outcome is flagged instead of
// scored.
GoodnessResult cluster_goodness(const ClusterPairStats& stats);

struct Clustering {
    std::vector<std::size_t> assignments;  // one per input row
    DataMatrix centroids;                  // k x d
    std::vector<double> radii;             // RMS radius per cluster
};

// Seeded centroid refinement: greedy farthest-point initialization (first
// center drawn from the seed), then nearest-centroid assignment and mean
// updates until centroids shift by less than 1e-6 relative or 100 rounds.
// Deterministic for a given seed; ties resolve to the lowest index. Empty
// clusters are re-seeded from the point currently farthest from its
// centroid. Requires 1 <= k <= m.
Clustering cluster_points(const DataMatrix& points, std::size_t k, std::uint64_t seed);

struct PairwiseGoodness {
    std::size_t k = 0;
    std::vector<GoodnessResult> cells;  // row-major k x k; diagonal is engulfed (rho = 0)
    std::vector<ClusterPairStats> stats;  // the (r1, r2, rho, n) per cell, same layout
    const GoodnessResult& at(std::size_t i, std::size_t j) const { return cells[i * k + j]; }
};

// Goodness for every cluster pair of an assignment. n_override picks the
// dimension used in gamma; 0 means the data dimension. Every cluster in
// 0..max(assignments) must be nonempty.
PairwiseGoodness pairwise_goodness(const DataMatrix& points,
                                   const std::vector<std::size_t>& assignments,
                                   std::size_t n_override = 0);

}  // namespace stosep::clustering
