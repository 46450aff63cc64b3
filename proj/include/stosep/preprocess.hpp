#pragma once

#include <memory>

#include "stosep/types.hpp"

namespace stosep {

struct SpectralModel {
    std::vector<double> mean;     // d
    std::vector<double> eigvecs;  // d*d row-major; row i = i-th eigenvector (unit length)
    std::vector<double> eigvals;  // d, sorted descending, all >= 0
    std::size_t dim = 0;

    const double* eigvec(std::size_t i) const { return eigvecs.data() + i * dim; }
};

struct WhiteningModel {
    SpectralModel spectral;
    std::size_t retained = 0;     // k
    double kappa = 1.0;           // lambda_max / lambda_k over retained components

    // Pass-through model: mean 0, identity rotation, unit eigvals. Lets the
    // corrector APIs run directly on data that is already whitened.
    static WhiteningModel identity(std::size_t d);
};

struct RetentionRule {
    enum class Kind { kaiser, variance_fraction, condition_number };
    Kind kind = Kind::condition_number;
    double value = 10.0;

    static RetentionRule kaiser(double threshold = 1.0) { return {Kind::kaiser, threshold}; }
    static RetentionRule variance_fraction(double f) { return {Kind::variance_fraction, f}; }
    static RetentionRule condition_number(double kappa) { return {Kind::condition_number, kappa}; }
};

// Mean + eigendecomposition of the sample covariance, divisor m-1.
// Deterministic eigenvector signs: largest-magnitude entry made positive.
SpectralModel fit_pca(const DataMatrix& X);

// Kaiser: k = #{lambda_i >= t * mean(lambda)};
// VarianceFraction: smallest k with cumulative sum >= f * total;
// ConditionNumber: k = #{lambda_i >= lambda_max / kappa}. Always k >= 1.
std::size_t select_components(const SpectralModel& model, const RetentionRule& rule);

// Project onto the top-k eigenvectors and rescale each axis to unit variance.
std::pair<DataMatrix, WhiteningModel> whiten(const DataMatrix& X, const SpectralModel& model,
                                             std::size_t k);

// fit_pca + select_components + whiten in one call.
std::pair<DataMatrix, WhiteningModel> whiten_auto(const DataMatrix& X, const RetentionRule& rule);

// Transform points through an existing model (same map the training data got).
DataMatrix whiten_apply(const WhiteningModel& model, const DataMatrix& X);
std::vector<double> whiten_apply_point(const WhiteningModel& model, const double* x,
                                       std::size_t d);

// m x m matrix of inner products of centered rows (the n < p shortcut).
// correlation = true gives Pearson correlations of the raw rows instead.
DataMatrix gram_preprocess(const DataMatrix& X, bool correlation = false);

// Coordinates of a new point in the gram representation: centered inner
// products against every training row. The scale is left as-is, no extra
// normalization is applied.
std::vector<double> gram_project(const DataMatrix& X, const double* x, std::size_t d);

}  // namespace stosep
