#include "stosep/dimension.hpp"

#include <cmath>
#include <limits>

#include "stosep/kernels.hpp"
#include "stosep/preprocess.hpp"
#include "stosep/separability.hpp"

namespace stosep::dimension {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559005768;
constexpr double kBracketLo = 2.0;
constexpr double kBracketHi = 1e6;

// log of the sphere formula at real-valued dimension n.
double log_py(double n, double alpha, bounds::AsymptoticVariant variant) {
    const double denom = variant == bounds::AsymptoticVariant::n_minus_1 ? n - 1.0 : n;
    return 0.5 * (n - 1.0) * std::log1p(-alpha * alpha) - std::log(alpha) -
           0.5 * std::log(kTwoPi * denom);
}

// Bisect the strictly decreasing g(n) = log_py(n) - log_target to a sign
// change; runs to floating-point fixpoint, far past the 1e-9 contract.
double bisect_log_py(double log_target, double alpha, bounds::AsymptoticVariant variant) {
    double lo = kBracketLo, hi = kBracketHi;
    if (log_py(lo, alpha, variant) <= log_target)
        return lo;
    if (log_py(hi, alpha, variant) >= log_target)
        return hi;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi)
            break;
        const double g = log_py(mid, alpha, variant) - log_target;
        if (g == 0.0)
            return mid;
        (g > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

std::vector<double> empirical_py(const DataMatrix& Y, double alpha) {
    return dataset_separability(Y, alpha, 0).violation_frequencies;
}

double invert_py(double p, double alpha, bounds::AsymptoticVariant variant) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw InvalidThreshold("invert_py: need 0 < alpha < 1");
    if (!(p > 0.0))
        throw DegenerateInput("invert_py: need p > 0");
    return bisect_log_py(std::log(p), alpha, variant);
}

DimensionEstimate effective_dimension(const DataMatrix& Y, double alpha,
                                      bounds::AsymptoticVariant variant) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw InvalidThreshold("effective_dimension: need 0 < alpha < 1");
    DimensionEstimate est;
    est.alpha = alpha;
    est.per_point = empirical_py(Y, alpha);
    double sum = 0.0;
    for (double p : est.per_point)
        sum += p;
    est.p_bar = sum / static_cast<double>(est.per_point.size());

    const double m = static_cast<double>(Y.rows);
    if (est.p_bar == 0.0) {
        est.saturated_zero = true;
        // Lower bound: the dimension at which one violation is expected
        // across all m(m-1) ordered pairs.
        est.n_eff = bisect_log_py(-std::log(m * (m - 1.0)), alpha, variant);
        return est;
    }
    if (std::log(est.p_bar) >= log_py(kBracketLo, alpha, variant)) {
        est.saturated_one = true;
        est.n_eff = kBracketLo;
        return est;
    }
    est.n_eff = bisect_log_py(std::log(est.p_bar), alpha, variant);
    return est;
}

DataMatrix normalize_for_sphere_comparison(const DataMatrix& raw) {
    DataMatrix Z = whiten_auto(raw, RetentionRule::condition_number(10.0)).first;
    for (std::size_t i = 0; i < Z.rows; ++i) {
        double* row = Z.values.data() + i * Z.cols;
        const double norm = std::sqrt(kernels::dot(row, row, Z.cols));
        if (norm == 0.0)
            continue;  // centering collapsed this row; leave it at the origin
        for (std::size_t j = 0; j < Z.cols; ++j)
            row[j] /= norm;
    }
    return Z;
}

DimensionEstimate estimate_dimension(const DataMatrix& raw, double alpha,
                                     bounds::AsymptoticVariant variant) {
    return effective_dimension(normalize_for_sphere_comparison(raw), alpha, variant);
}

GridEstimate estimate_dimension_grid(const DataMatrix& raw, const std::vector<double>& alphas,
                                     bounds::AsymptoticVariant variant) {
    if (alphas.empty())
        throw InvalidThreshold("estimate_dimension_grid: empty alpha grid");
    GridEstimate grid;
    const DataMatrix Z = normalize_for_sphere_comparison(raw);
    double sum = 0.0;
    std::size_t used = 0;
    for (double a : alphas) {
        grid.per_alpha.push_back(effective_dimension(Z, a, variant));
        const DimensionEstimate& e = grid.per_alpha.back();
        if (!e.saturated_zero && !e.saturated_one) {
            sum += e.n_eff;
            ++used;
        }
    }
    grid.n_eff_mean = used ? sum / static_cast<double>(used)
                           : std::numeric_limits<double>::quiet_NaN();
    return grid;
}

}  // namespace stosep::dimension
