#include "stosep/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "stosep/kernels.hpp"
#include "stosep/rng.hpp"

namespace stosep::clustering {

namespace {

constexpr std::uint64_t kClusterDomainTag = 0x636c7573ULL;  // stream domain for seeding
constexpr int kMaxRounds = 100;
constexpr double kRelShiftStop = 1e-6;

void check_radii(double r1, double r2, double rho) {
    if (!(r1 >= 0.0) || !(r2 >= 0.0) || !(rho >= 0.0))
        throw DegenerateInput("cluster overlap: radii and centroid distance must be >= 0");
}

}  // namespace

const char* outcome_name(OverlapOutcome o) {
    switch (o) {
        case OverlapOutcome::overlapping: return "overlapping";
        case OverlapOutcome::disjoint: return "disjoint";
        case OverlapOutcome::engulfed: return "engulfed";
    }
    return "?";
}

OverlapOutcome classify_overlap(double r1, double r2, double rho) {
    check_radii(r1, r2, rho);
    if (rho >= r1 + r2)
        return OverlapOutcome::disjoint;
    if (rho * rho <= std::abs(r1 * r1 - r2 * r2))
        return OverlapOutcome::engulfed;
    return OverlapOutcome::overlapping;
}

double overlap_radius(double r1, double r2, double rho) {
    switch (classify_overlap(r1, r2, rho)) {
        case OverlapOutcome::disjoint: {
            std::ostringstream os;
            os << "overlap_radius: clusters disjoint (rho = " << rho << " >= r1 + r2 = " << r1 + r2
               << ")";
            throw DisjointClusters(os.str());
        }
        case OverlapOutcome::engulfed: {
            std::ostringstream os;
            os << "overlap_radius: one cluster engulfs the other's center side (rho^2 = "
               << rho * rho << " <= |r1^2 - r2^2| = " << std::abs(r1 * r1 - r2 * r2) << ")";
            throw EngulfedClusters(os.str());
        }
        case OverlapOutcome::overlapping: break;
    }
    const double s1 = r1 * r1, s2 = r2 * r2;
    const double diff = s1 - s2;
    const double R2 = 0.5 * (s1 + s2) - 0.25 * rho * rho - diff * diff / (4.0 * rho * rho);
    return std::sqrt(std::max(R2, 0.0));
}

GoodnessResult cluster_goodness(const ClusterPairStats& stats) {
    if (stats.n < 1)
        throw DegenerateInput("cluster_goodness: need n >= 1");
    GoodnessResult out;
    out.outcome = classify_overlap(stats.r1, stats.r2, stats.rho);
    if (out.outcome == OverlapOutcome::disjoint)
        return out;  // R = 0, gamma = 0
    if (out.outcome == OverlapOutcome::engulfed) {
        out.gamma = std::numeric_limits<double>::quiet_NaN();
        return out;
    }
    out.R = overlap_radius(stats.r1, stats.r2, stats.rho);
    const double nn = static_cast<double>(stats.n);
    const double lr = std::log(out.R);
    out.gamma = std::exp(nn * (lr - std::log(stats.r1))) + std::exp(nn * (lr - std::log(stats.r2)));
    return out;
}

Clustering cluster_points(const DataMatrix& points, std::size_t k, std::uint64_t seed) {
    points.validate("cluster_points");
    const std::size_t m = points.rows, d = points.cols;
    if (k < 1 || k > m)
        throw DegenerateInput("cluster_points: need 1 <= k <= m");

    Clustering out;
    out.centroids.rows = k;
    out.centroids.cols = d;
    out.centroids.values.assign(k * d, 0.0);
    out.assignments.assign(m, 0);
    out.radii.assign(k, 0.0);

    auto centroid = [&](std::size_t c) { return out.centroids.values.data() + c * d; };

    // Greedy farthest-point seeding; only the first pick uses randomness.
    {
        rng::Stream s(rng::stream_key(seed, kClusterDomainTag, 0));
        std::size_t first = std::min<std::size_t>(static_cast<std::size_t>(s.uniform() * m), m - 1);
        std::copy_n(points.row(first), d, centroid(0));
        std::vector<double> nearest(m, std::numeric_limits<double>::infinity());
        for (std::size_t c = 1; c < k; ++c) {
            std::size_t far = 0;
            double far_d = -1.0;
            for (std::size_t i = 0; i < m; ++i) {
                const double dist = kernels::squared_distance(points.row(i), centroid(c - 1), d);
                nearest[i] = std::min(nearest[i], dist);
                if (nearest[i] > far_d) {
                    far_d = nearest[i];
                    far = i;
                }
            }
            std::copy_n(points.row(far), d, centroid(c));
        }
    }

    std::vector<double> next(k * d);
    std::vector<std::size_t> count(k);
    std::vector<double> dist_to_own(m);

    for (int round = 0; round < kMaxRounds; ++round) {
        for (std::size_t i = 0; i < m; ++i) {
            std::size_t best = 0;
            double best_d = std::numeric_limits<double>::infinity();
            for (std::size_t c = 0; c < k; ++c) {
                const double dist = kernels::squared_distance(points.row(i), centroid(c), d);
                if (dist < best_d) {
                    best_d = dist;
                    best = c;
                }
            }
            out.assignments[i] = best;
            dist_to_own[i] = best_d;
        }

        // Re-seed each empty cluster from the point farthest from its
        // centroid, never draining a cluster below one member.
        std::fill(count.begin(), count.end(), 0);
        for (std::size_t i = 0; i < m; ++i)
            ++count[out.assignments[i]];
        for (std::size_t c = 0; c < k; ++c) {
            if (count[c] != 0)
                continue;
            std::size_t far = m;
            double far_d = -1.0;
            for (std::size_t i = 0; i < m; ++i)
                if (count[out.assignments[i]] > 1 && dist_to_own[i] > far_d) {
                    far_d = dist_to_own[i];
                    far = i;
                }
            --count[out.assignments[far]];
            out.assignments[far] = c;
            count[c] = 1;
            dist_to_own[far] = 0.0;
        }

        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t i = 0; i < m; ++i)
            kernels::axpy(next.data() + out.assignments[i] * d, 1.0, points.row(i), d);
        double worst_shift = 0.0;
        for (std::size_t c = 0; c < k; ++c) {
            const double inv = 1.0 / static_cast<double>(count[c]);
            for (std::size_t j = 0; j < d; ++j)
                next[c * d + j] *= inv;
            const double shift = kernels::squared_distance(next.data() + c * d, centroid(c), d);
            const double scale = 1.0 + kernels::dot(centroid(c), centroid(c), d);
            worst_shift = std::max(worst_shift, shift / scale);
        }
        std::copy(next.begin(), next.end(), out.centroids.values.begin());
        if (worst_shift <= kRelShiftStop * kRelShiftStop)
            break;
    }

    // Final assignment against the final centroids, then RMS radii.
    std::fill(count.begin(), count.end(), 0);
    std::fill(out.radii.begin(), out.radii.end(), 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < k; ++c) {
            const double dist = kernels::squared_distance(points.row(i), centroid(c), d);
            if (dist < best_d) {
                best_d = dist;
                best = c;
            }
        }
        out.assignments[i] = best;
        out.radii[best] += best_d;
        ++count[best];
    }
    for (std::size_t c = 0; c < k; ++c)
        if (count[c])
            out.radii[c] = std::sqrt(out.radii[c] / static_cast<double>(count[c]));
    return out;
}

PairwiseGoodness pairwise_goodness(const DataMatrix& points,
                                   const std::vector<std::size_t>& assignments,
                                   std::size_t n_override) {
    points.validate("pairwise_goodness");
    if (assignments.size() != points.rows)
        throw DimensionMismatch("pairwise_goodness: one assignment per row required");
    const std::size_t d = points.cols;
    std::size_t k = 0;
    for (std::size_t a : assignments)
        k = std::max(k, a + 1);

    DataMatrix centroids;
    centroids.rows = k;
    centroids.cols = d;
    centroids.values.assign(k * d, 0.0);
    std::vector<std::size_t> count(k, 0);
    for (std::size_t i = 0; i < points.rows; ++i) {
        kernels::axpy(centroids.values.data() + assignments[i] * d, 1.0, points.row(i), d);
        ++count[assignments[i]];
    }
    for (std::size_t c = 0; c < k; ++c) {
        if (count[c] == 0)
            throw DegenerateInput("pairwise_goodness: empty cluster in assignment");
        const double inv = 1.0 / static_cast<double>(count[c]);
        for (std::size_t j = 0; j < d; ++j)
            centroids.values[c * d + j] *= inv;
    }
    std::vector<double> radii(k, 0.0);
    for (std::size_t i = 0; i < points.rows; ++i)
        radii[assignments[i]] +=
            kernels::squared_distance(points.row(i), centroids.row(assignments[i]), d);
    for (std::size_t c = 0; c < k; ++c)
        radii[c] = std::sqrt(radii[c] / static_cast<double>(count[c]));

    PairwiseGoodness out;
    out.k = k;
    out.cells.resize(k * k);
    out.stats.resize(k * k);
    const std::size_t n = n_override ? n_override : d;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            ClusterPairStats s;
            s.r1 = radii[i];
            s.r2 = radii[j];
            s.rho = std::sqrt(kernels::squared_distance(centroids.row(i), centroids.row(j), d));
            s.n = n;
            out.stats[i * k + j] = s;
            out.cells[i * k + j] = cluster_goodness(s);
        }
    return out;
}

}  // namespace stosep::clustering
