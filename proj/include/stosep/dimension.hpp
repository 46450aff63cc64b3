#pragma once

// Effective-dimension estimation from inseparability frequencies: measure
// how often points fail the threshold test against each other, then invert
// the sphere formula to find the dimension whose uniform-sphere prediction
// matches the observed mean frequency.

#include <vector>

#include "stosep/bounds.hpp"
#include "stosep/types.hpp"

namespace stosep::dimension {

// Per-point inseparability frequencies: for each y, the fraction of other
// points x with (x, y) > alpha * (x, x). Needs m >= 2, 0 <= alpha < 1.
std::vector<double> empirical_py(const DataMatrix& Y, double alpha);

struct DimensionEstimate {
    double alpha = 0.0;
    double p_bar = 0.0;             // mean of per_point
    double n_eff = 0.0;             // inverted dimension, or bound when saturated
    std::vector<double> per_point;  // empirical_py sample
    // p_bar = 0: the sample witnessed no violations; n_eff then holds the
    // lower bound n* at which the expected violation count over the whole
    // sample drops to 1.
    bool saturated_zero = false;
    // p_bar at or above the formula value at n = 2; n_eff pinned to 2.
    bool saturated_one = false;
};

// Invert p = sphere_py_asymptotic(n, alpha, variant) for real n by bisection
// on [2, 1e6], to 1e-9 relative tolerance in p (in practice to machine
// precision). Requires p within the formula's range at the bracket ends.
double invert_py(double p, double alpha, bounds::AsymptoticVariant variant);

// Core estimator. Input must already be normalized for comparison against
// the uniform sphere (centered, whitened, unit norm); use estimate_dimension
// for the full pipeline. m >= 2.
DimensionEstimate effective_dimension(const DataMatrix& Y, double alpha,
                                      bounds::AsymptoticVariant variant = bounds::AsymptoticVariant::n);

// Full pipeline: center, whiten keeping components within condition number
// kappa = 10, project each point to the unit sphere, then run the core
// estimator. Rows that collapse to zero after centering stay zero.
DimensionEstimate estimate_dimension(const DataMatrix& raw, double alpha,
                                     bounds::AsymptoticVariant variant = bounds::AsymptoticVariant::n);

struct GridEstimate {
    std::vector<DimensionEstimate> per_alpha;
    double n_eff_mean = 0.0;  // mean over non-saturated entries; NaN if all saturated
};
GridEstimate estimate_dimension_grid(const DataMatrix& raw, const std::vector<double>& alphas,
                                     bounds::AsymptoticVariant variant = bounds::AsymptoticVariant::n);

// The normalization used by estimate_dimension, exposed for reuse and tests.
DataMatrix normalize_for_sphere_comparison(const DataMatrix& raw);

}  // namespace stosep::dimension
