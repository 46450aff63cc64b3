#include "stosep/sampling.hpp"

#include <cmath>

#include "stosep/kernels.hpp"
#include "stosep/rng.hpp"

namespace stosep {

const char* sample_kind_name(SampleKind kind) {
    switch (kind) {
        case SampleKind::uniform_ball:
            return "uniform_ball";
        case SampleKind::uniform_sphere:
            return "uniform_sphere";
        case SampleKind::isotropic_gaussian:
            return "isotropic_gaussian";
        case SampleKind::product_uniform_cube:
            return "product_uniform_cube";
    }
    return "unknown";
}

SampleKind sample_kind_from_name(const std::string& name) {
    if (name == "uniform_ball" || name == "ball")
        return SampleKind::uniform_ball;
    if (name == "uniform_sphere" || name == "sphere")
        return SampleKind::uniform_sphere;
    if (name == "isotropic_gaussian" || name == "gaussian")
        return SampleKind::isotropic_gaussian;
    if (name == "product_uniform_cube" || name == "cube")
        return SampleKind::product_uniform_cube;
    throw DegenerateInput("sample: unknown kind '" + name + "'");
}

namespace {

// fill with unit-sphere direction; stream advances by however many draws
// the polar rejection needs, which is fine because no one else shares it
void fill_sphere(rng::Stream& s, double* x, std::size_t n) {
    for (;;) {
        for (std::size_t j = 0; j < n; ++j)
            x[j] = s.gaussian();
        double norm = std::sqrt(kernels::dot(x, x, n));
        if (norm > 0.0) {
            for (std::size_t j = 0; j < n; ++j)
                x[j] /= norm;
            return;
        }
    }
}

}  // namespace

DataMatrix sample(const SampleSpec& spec) {
    if (spec.n < 1 || spec.m < 1)
        throw DegenerateInput("sample: need n >= 1 and m >= 1");
    DataMatrix X(spec.m, spec.n);
    const auto domain =
        (static_cast<std::uint64_t>(spec.kind) << 32) ^ static_cast<std::uint64_t>(spec.n);
    for (std::size_t i = 0; i < spec.m; ++i) {
        rng::Stream s(rng::stream_key(spec.seed, domain, i));
        double* x = X.row(i);
        switch (spec.kind) {
            case SampleKind::uniform_sphere:
                fill_sphere(s, x, spec.n);
                break;
            case SampleKind::uniform_ball: {
                fill_sphere(s, x, spec.n);
                double r = std::pow(s.uniform(), 1.0 / static_cast<double>(spec.n));
                for (std::size_t j = 0; j < spec.n; ++j)
                    x[j] *= r;
                break;
            }
            case SampleKind::isotropic_gaussian:
                for (std::size_t j = 0; j < spec.n; ++j)
                    x[j] = s.gaussian();
                break;
            case SampleKind::product_uniform_cube:
                for (std::size_t j = 0; j < spec.n; ++j)
                    x[j] = s.uniform();
                break;
        }
    }
    return X;
}

AngleStats pairwise_angle_stats(const DataMatrix& X) {
    X.validate("pairwise_angle_stats");
    if (X.rows < 2)
        throw DegenerateInput("pairwise_angle_stats: need m >= 2");
    std::vector<double> norms(X.rows);
    for (std::size_t i = 0; i < X.rows; ++i) {
        norms[i] = std::sqrt(kernels::dot(X.row(i), X.row(i), X.cols));
        if (norms[i] == 0.0)
            throw DegenerateInput("pairwise_angle_stats: zero row");
    }
    AngleStats stats;
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < X.rows; ++i) {
        for (std::size_t j = i + 1; j < X.rows; ++j) {
            double c = std::fabs(kernels::dot(X.row(i), X.row(j), X.cols)) / (norms[i] * norms[j]);
            acc += c;
            if (c > stats.max_abs_cos)
                stats.max_abs_cos = c;
        }
    }
    stats.mean_abs_cos = acc / (0.5 * static_cast<double>(X.rows) * static_cast<double>(X.rows - 1));
    return stats;
}

}  // namespace stosep
