#include "stosep/corrector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "stosep/clustering.hpp"
#include "stosep/kernels.hpp"

namespace stosep::corrector {

namespace {

std::vector<double> row_mean(const DataMatrix& X) {
    std::vector<double> mu(X.cols, 0.0);
    for (std::size_t i = 0; i < X.rows; ++i)
        kernels::axpy(mu.data(), 1.0, X.row(i), X.cols);
    const double inv = 1.0 / static_cast<double>(X.rows);
    for (double& v : mu)
        v *= inv;
    return mu;
}

}  // namespace

const char* kind_name(CorrectorKind k) {
    switch (k) {
        case CorrectorKind::single_point: return "single_point";
        case CorrectorKind::fisher: return "fisher";
        case CorrectorKind::cluster_centroid: return "cluster_centroid";
    }
    return "?";
}

CorrectorKind kind_from_name(const std::string& name) {
    if (name == "single_point" || name == "single")
        return CorrectorKind::single_point;
    if (name == "fisher")
        return CorrectorKind::fisher;
    if (name == "cluster_centroid" || name == "clustered")
        return CorrectorKind::cluster_centroid;
    throw DegenerateInput("unknown corrector kind: " + name);
}

FisherThreshold FisherThreshold::quantile(double q) {
    if (!(q >= 0.0 && q <= 1.0))
        throw InvalidThreshold("FisherThreshold: quantile must lie in [0, 1]");
    FisherThreshold t;
    t.kind = Kind::quantile;
    t.q = q;
    return t;
}

Corrector train_single(const double* x_err, std::size_t d, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw InvalidThreshold("train_single: need 0 < alpha < 1");
    const double ss = kernels::dot(x_err, x_err, d);
    if (!(ss > 0.0))
        throw DegenerateInput("train_single: error point must be nonzero");
    Corrector c;
    c.weights.assign(x_err, x_err + d);
    c.threshold = alpha * ss;
    c.kind = CorrectorKind::single_point;
    return c;
}

Corrector train_fisher(const DataMatrix& errors, const DataMatrix& normals,
                       const FisherThreshold& rule) {
    errors.validate("train_fisher(errors)");
    normals.validate("train_fisher(normals)");
    if (errors.cols != normals.cols)
        throw DimensionMismatch("train_fisher: class dimensions differ");
    const std::size_t d = errors.cols;

    const std::vector<double> mu_e = row_mean(errors);
    const std::vector<double> mu_n = row_mean(normals);
    Corrector c;
    c.kind = CorrectorKind::fisher;
    c.weights.resize(d);
    for (std::size_t j = 0; j < d; ++j)
        c.weights[j] = mu_e[j] - mu_n[j];
    const double wnorm = std::sqrt(kernels::dot(c.weights.data(), c.weights.data(), d));
    if (!(wnorm > 1e-12))
        throw DegenerateInput("train_fisher: class means coincide (within 1e-12)");

    if (rule.kind == FisherThreshold::Kind::midpoint) {
        c.threshold = 0.5 * (kernels::dot(c.weights.data(), mu_e.data(), d) +
                             kernels::dot(c.weights.data(), mu_n.data(), d));
    } else {
        std::vector<double> proj(normals.rows);
        for (std::size_t i = 0; i < normals.rows; ++i)
            proj[i] = kernels::dot(c.weights.data(), normals.row(i), d);
        std::sort(proj.begin(), proj.end());
        const auto idx = std::min<std::size_t>(
            proj.size() - 1, static_cast<std::size_t>(rule.q * static_cast<double>(proj.size())));
        c.threshold = proj[idx];
    }
    return c;
}

CorrectorEnsemble train_clustered(const DataMatrix& errors, const DataMatrix& normals,
                                  std::size_t k, const FisherThreshold& rule, double alpha,
                                  std::uint64_t seed) {
    errors.validate("train_clustered(errors)");
    normals.validate("train_clustered(normals)");
    if (errors.cols != normals.cols)
        throw DimensionMismatch("train_clustered: class dimensions differ");

    const clustering::Clustering cl = clustering::cluster_points(errors, k, seed);
    CorrectorEnsemble ens;
    ens.preprocessing = WhiteningModel::identity(errors.cols);
    ens.alpha = alpha;
    for (std::size_t c = 0; c < k; ++c) {
        DataMatrix member_rows;
        member_rows.cols = errors.cols;
        for (std::size_t i = 0; i < errors.rows; ++i)
            if (cl.assignments[i] == c) {
                ++member_rows.rows;
                member_rows.values.insert(member_rows.values.end(), errors.row(i),
                                          errors.row(i) + errors.cols);
            }
        Corrector m = train_fisher(member_rows, normals, rule);
        m.kind = CorrectorKind::cluster_centroid;
        ens.members.push_back(std::move(m));
    }
    return ens;
}

Decision apply(const CorrectorEnsemble& ens, const double* z, std::size_t d) {
    if (ens.members.empty())
        throw DegenerateInput("apply: ensemble has no members");
    const std::vector<double> w = whiten_apply_point(ens.preprocessing, z, d);
    Decision out;
    for (std::size_t i = 0; i < ens.members.size(); ++i) {
        const Corrector& c = ens.members[i];
        if (c.weights.size() != w.size())
            throw DimensionMismatch("apply: member weight dimension does not match model output");
        if (kernels::dot(c.weights.data(), w.data(), w.size()) > c.threshold)
            out.firing.push_back(i);
    }
    out.high_risk = !out.firing.empty();
    return out;
}

std::vector<Decision> apply_batch(const CorrectorEnsemble& ens, const DataMatrix& Z) {
    Z.validate("apply_batch");
    std::vector<Decision> out;
    out.reserve(Z.rows);
    for (std::size_t i = 0; i < Z.rows; ++i)
        out.push_back(apply(ens, Z.row(i), Z.cols));
    return out;
}

EvaluationReport evaluate(const CorrectorEnsemble& ens, const DataMatrix& test_errors,
                          const DataMatrix& test_normals) {
    EvaluationReport rep;
    const std::vector<Decision> on_err = apply_batch(ens, test_errors);
    const std::vector<Decision> on_norm = apply_batch(ens, test_normals);
    rep.errors_total = on_err.size();
    rep.normals_total = on_norm.size();
    for (const Decision& dec : on_err) {
        rep.errors_flagged += dec.high_risk ? 1 : 0;
        rep.overlap_count += dec.firing.size() > 1 ? 1 : 0;
    }
    for (const Decision& dec : on_norm) {
        rep.normals_flagged += dec.high_risk ? 1 : 0;
        rep.overlap_count += dec.firing.size() > 1 ? 1 : 0;
    }
    rep.errors_corrected =
        static_cast<double>(rep.errors_flagged) / static_cast<double>(rep.errors_total);
    rep.damage = static_cast<double>(rep.normals_flagged) / static_cast<double>(rep.normals_total);
    return rep;
}

CorrectorEnsemble train_pipeline(const DataMatrix& raw_errors, const DataMatrix& raw_normals,
                                 const TrainOptions& opt) {
    raw_errors.validate("train_pipeline(errors)");
    raw_normals.validate("train_pipeline(normals)");
    if (raw_errors.cols != raw_normals.cols)
        throw DimensionMismatch("train_pipeline: class dimensions differ");

    auto [norm_w, model] = whiten_auto(raw_normals, opt.retention);
    const DataMatrix err_w = whiten_apply(model, raw_errors);

    CorrectorEnsemble ens;
    ens.preprocessing = model;
    ens.alpha = opt.alpha;
    switch (opt.mode) {
        case CorrectorKind::single_point:
            for (std::size_t i = 0; i < err_w.rows; ++i)
                ens.members.push_back(train_single(err_w.row(i), err_w.cols, opt.alpha));
            break;
        case CorrectorKind::fisher:
            ens.members.push_back(train_fisher(err_w, norm_w, opt.rule));
            break;
        case CorrectorKind::cluster_centroid: {
            CorrectorEnsemble sub = train_clustered(err_w, norm_w, opt.k, opt.rule, opt.alpha,
                                                    opt.seed);
            ens.members = std::move(sub.members);
            break;
        }
    }
    return ens;
}

}  // namespace stosep::corrector
