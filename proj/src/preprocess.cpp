#include "stosep/preprocess.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "stosep/kernels.hpp"

namespace stosep {

WhiteningModel WhiteningModel::identity(std::size_t d) {
    WhiteningModel m;
    m.spectral.dim = d;
    m.spectral.mean.assign(d, 0.0);
    m.spectral.eigvals.assign(d, 1.0);
    m.spectral.eigvecs.assign(d * d, 0.0);
    for (std::size_t i = 0; i < d; ++i)
        m.spectral.eigvecs[i * d + i] = 1.0;
    m.retained = d;
    m.kappa = 1.0;
    return m;
}

SpectralModel fit_pca(const DataMatrix& X) {
    X.validate("fit_pca");
    if (X.rows < 2)
        throw DegenerateInput("fit_pca: need m >= 2");
    const std::size_t m = X.rows, d = X.cols;

    SpectralModel model;
    model.dim = d;
    model.mean.assign(d, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        kernels::axpy(model.mean.data(), 1.0, X.row(i), d);
    for (double& v : model.mean)
        v /= static_cast<double>(m);

    // rank-1 accumulation of the scatter matrix; contiguous row updates
    std::vector<double> scatter(d * d, 0.0);
    std::vector<double> c(d);
    for (std::size_t i = 0; i < m; ++i) {
        const double* x = X.row(i);
        for (std::size_t j = 0; j < d; ++j)
            c[j] = x[j] - model.mean[j];
        for (std::size_t j = 0; j < d; ++j)
            kernels::axpy(scatter.data() + j * d, c[j], c.data(), d);
    }
    const double divisor = static_cast<double>(m - 1);

    Eigen::MatrixXd C(d, d);
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t l = 0; l < d; ++l)
            C(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(l)) =
                scatter[j * d + l] / divisor;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(C);
    if (solver.info() != Eigen::Success)
        throw DegenerateInput("fit_pca: eigendecomposition failed");

    // Eigen returns ascending order; store descending, clamp the roundoff
    // negatives of an exactly PSD matrix, and fix signs deterministically.
    model.eigvals.resize(d);
    model.eigvecs.resize(d * d);
    for (std::size_t i = 0; i < d; ++i) {
        const auto src = static_cast<Eigen::Index>(d - 1 - i);
        model.eigvals[i] = std::max(solver.eigenvalues()(src), 0.0);
        double* row = model.eigvecs.data() + i * d;
        for (std::size_t j = 0; j < d; ++j)
            row[j] = solver.eigenvectors()(static_cast<Eigen::Index>(j), src);
        std::size_t imax = 0;
        for (std::size_t j = 1; j < d; ++j)
            if (std::fabs(row[j]) > std::fabs(row[imax]))
                imax = j;
        if (row[imax] < 0.0)
            for (std::size_t j = 0; j < d; ++j)
                row[j] = -row[j];
    }
    return model;
}

std::size_t select_components(const SpectralModel& model, const RetentionRule& rule) {
    const auto& ev = model.eigvals;
    if (ev.empty())
        throw DegenerateInput("select_components: empty model");
    double total = 0.0;
    for (double v : ev)
        total += v;
    if (total <= 0.0)
        throw DegenerateInput("select_components: all eigenvalues are zero");

    std::size_t k = 0;
    switch (rule.kind) {
        case RetentionRule::Kind::kaiser: {
            const double cut = rule.value * total / static_cast<double>(ev.size());
            for (double v : ev)
                if (v >= cut)
                    ++k;
            break;
        }
        case RetentionRule::Kind::variance_fraction: {
            if (rule.value <= 0.0 || rule.value > 1.0)
                throw InvalidThreshold("select_components: variance fraction must be in (0, 1]");
            double acc = 0.0;
            for (std::size_t i = 0; i < ev.size(); ++i) {
                acc += ev[i];
                if (acc >= rule.value * total) {
                    k = i + 1;
                    break;
                }
            }
            if (k == 0)
                k = ev.size();  // guard against roundoff at f = 1
            break;
        }
        case RetentionRule::Kind::condition_number: {
            if (rule.value < 1.0)
                throw InvalidThreshold("select_components: condition number must be >= 1");
            const double cut = ev[0] / rule.value;
            for (double v : ev)
                if (v >= cut)
                    ++k;
            break;
        }
    }
    return k == 0 ? 1 : k;
}

namespace {

constexpr double kRidgeFloorRel = 1e-12;

void apply_whitening(const SpectralModel& sp, std::size_t k, const double* x, double* out) {
    std::vector<double> c(sp.dim);
    for (std::size_t j = 0; j < sp.dim; ++j)
        c[j] = x[j] - sp.mean[j];
    for (std::size_t i = 0; i < k; ++i)
        out[i] = kernels::dot(sp.eigvec(i), c.data(), sp.dim) / std::sqrt(sp.eigvals[i]);
}

}  // namespace

std::pair<DataMatrix, WhiteningModel> whiten(const DataMatrix& X, const SpectralModel& model,
                                             std::size_t k) {
    X.validate("whiten");
    if (model.dim != X.cols)
        throw DimensionMismatch("whiten: model dimension does not match data");
    if (k < 1 || k > model.dim)
        throw DimensionMismatch("whiten: need 1 <= k <= d");
    const double lmax = model.eigvals[0];
    const double floor = kRidgeFloorRel * lmax;
    for (std::size_t i = 0; i < k; ++i)
        if (model.eigvals[i] <= 0.0 || model.eigvals[i] < floor)
            throw SingularComponent("whiten: retained eigenvalue below ridge floor (1e-12 * lambda_max)");

    DataMatrix Z(X.rows, k);
    for (std::size_t i = 0; i < X.rows; ++i)
        apply_whitening(model, k, X.row(i), Z.row(i));

    WhiteningModel wm;
    wm.spectral = model;
    wm.retained = k;
    wm.kappa = model.eigvals[0] / model.eigvals[k - 1];
    return {std::move(Z), std::move(wm)};
}

std::pair<DataMatrix, WhiteningModel> whiten_auto(const DataMatrix& X, const RetentionRule& rule) {
    SpectralModel model = fit_pca(X);
    std::size_t k = select_components(model, rule);
    return whiten(X, model, k);
}

DataMatrix whiten_apply(const WhiteningModel& model, const DataMatrix& X) {
    X.validate("whiten_apply");
    if (X.cols != model.spectral.dim)
        throw DimensionMismatch("whiten_apply: point dimension does not match model");
    DataMatrix Z(X.rows, model.retained);
    for (std::size_t i = 0; i < X.rows; ++i)
        apply_whitening(model.spectral, model.retained, X.row(i), Z.row(i));
    return Z;
}

std::vector<double> whiten_apply_point(const WhiteningModel& model, const double* x,
                                       std::size_t d) {
    if (d != model.spectral.dim)
        throw DimensionMismatch("whiten_apply_point: point dimension does not match model");
    std::vector<double> z(model.retained);
    apply_whitening(model.spectral, model.retained, x, z.data());
    return z;
}

// G_ij = (x_i - mu, x_j - mu), expanded so the centered copy of a very wide
// matrix is never materialized.
DataMatrix gram_preprocess(const DataMatrix& X, bool correlation) {
    X.validate("gram_preprocess");
    if (X.rows >= X.cols)
        throw DimensionMismatch("gram_preprocess: requires m < d");
    const std::size_t m = X.rows, d = X.cols;
    DataMatrix G(m, m);

    if (correlation) {
        std::vector<double> s(m), q(m);
        for (std::size_t i = 0; i < m; ++i) {
            s[i] = kernels::sum(X.row(i), d);
            q[i] = kernels::dot(X.row(i), X.row(i), d);
            double var = static_cast<double>(d) * q[i] - s[i] * s[i];
            if (var <= 0.0)
                throw DegenerateInput("gram_preprocess: constant row in correlation mode");
        }
        for (std::size_t i = 0; i < m; ++i) {
            G.at(i, i) = 1.0;
            for (std::size_t j = i + 1; j < m; ++j) {
                double num = static_cast<double>(d) * kernels::dot(X.row(i), X.row(j), d) - s[i] * s[j];
                double den = std::sqrt((static_cast<double>(d) * q[i] - s[i] * s[i]) *
                                       (static_cast<double>(d) * q[j] - s[j] * s[j]));
                G.at(i, j) = num / den;
                G.at(j, i) = G.at(i, j);
            }
        }
        return G;
    }

    std::vector<double> mu(d, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        kernels::axpy(mu.data(), 1.0, X.row(i), d);
    for (double& v : mu)
        v /= static_cast<double>(m);
    const double mumu = kernels::dot(mu.data(), mu.data(), d);
    std::vector<double> xmu(m);
    for (std::size_t i = 0; i < m; ++i)
        xmu[i] = kernels::dot(X.row(i), mu.data(), d);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i; j < m; ++j) {
            double v = kernels::dot(X.row(i), X.row(j), d) - xmu[i] - xmu[j] + mumu;
            G.at(i, j) = v;
            G.at(j, i) = v;
        }
    }
    return G;
}

std::vector<double> gram_project(const DataMatrix& X, const double* x, std::size_t d) {
    X.validate("gram_project");
    if (d != X.cols)
        throw DimensionMismatch("gram_project: point dimension does not match data");
    const std::size_t m = X.rows;
    std::vector<double> mu(d, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        kernels::axpy(mu.data(), 1.0, X.row(i), d);
    for (double& v : mu)
        v /= static_cast<double>(m);
    const double mumu = kernels::dot(mu.data(), mu.data(), d);
    const double xm = kernels::dot(x, mu.data(), d);
    std::vector<double> out(m);
    for (std::size_t i = 0; i < m; ++i)
        out[i] = kernels::dot(x, X.row(i), d) - xm - kernels::dot(X.row(i), mu.data(), d) + mumu;
    return out;
}

}  // namespace stosep
