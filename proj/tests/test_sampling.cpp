#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "stosep/kernels.hpp"
#include "stosep/sampling.hpp"

using namespace stosep;

namespace {

double row_norm(const DataMatrix& X, std::size_t i) {
    return std::sqrt(kernels::dot(X.row(i), X.row(i), X.cols));
}

// Kolmogorov-Smirnov statistic of observed values against a CDF.
template <typename F>
double ks_stat(std::vector<double> xs, F cdf) {
    std::sort(xs.begin(), xs.end());
    const double m = static_cast<double>(xs.size());
    double ks = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double f = cdf(xs[i]);
        ks = std::max(ks, std::abs((static_cast<double>(i) + 1.0) / m - f));
        ks = std::max(ks, std::abs(static_cast<double>(i) / m - f));
    }
    return ks;
}

}  // namespace

TEST_CASE("kind names round-trip") {
    for (SampleKind k : {SampleKind::uniform_ball, SampleKind::uniform_sphere,
                         SampleKind::isotropic_gaussian, SampleKind::product_uniform_cube})
        CHECK(sample_kind_from_name(sample_kind_name(k)) == k);
    CHECK(sample_kind_from_name("ball") == SampleKind::uniform_ball);
    CHECK(sample_kind_from_name("sphere") == SampleKind::uniform_sphere);
    CHECK(sample_kind_from_name("gaussian") == SampleKind::isotropic_gaussian);
    CHECK(sample_kind_from_name("cube") == SampleKind::product_uniform_cube);
    CHECK_THROWS_AS((void)sample_kind_from_name("torus"), DegenerateInput);
}

TEST_CASE("sphere points have unit norm") {
    const DataMatrix X = sample({SampleKind::uniform_sphere, 16, 2000, 42});
    REQUIRE(X.rows == 2000);
    REQUIRE(X.cols == 16);
    for (std::size_t i = 0; i < X.rows; ++i)
        CHECK(std::abs(row_norm(X, i) - 1.0) < 1e-12);
}

TEST_CASE("ball radii follow the r^n law") {
    const std::size_t n = 3, m = 100000;
    const DataMatrix X = sample({SampleKind::uniform_ball, n, m, 7});
    std::vector<double> radii(m);
    double max_r = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        radii[i] = row_norm(X, i);
        max_r = std::max(max_r, radii[i]);
    }
    CHECK(max_r <= 1.0);
    // CDF of the radius in the unit 3-ball is r^3
    CHECK(ks_stat(radii, [](double r) { return r * r * r; }) < 0.01);
}

TEST_CASE("gaussian sample is centered and isotropic-ish") {
    const std::size_t n = 10, m = 100000;
    const DataMatrix X = sample({SampleKind::isotropic_gaussian, n, m, 11});
    std::vector<double> mean(n, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        kernels::axpy(mean.data(), 1.0 / static_cast<double>(m), X.row(i), n);
    CHECK(std::sqrt(kernels::dot(mean.data(), mean.data(), n)) < 0.02);

    // per-coordinate variance near 1
    for (std::size_t j = 0; j < n; ++j) {
        double ss = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double c = X.at(i, j) - mean[j];
            ss += c * c;
        }
        CHECK(ss / static_cast<double>(m - 1) == doctest::Approx(1.0).epsilon(0.03));
    }
}

TEST_CASE("cube sample stays in the unit cube") {
    const std::size_t n = 5, m = 20000;
    const DataMatrix X = sample({SampleKind::product_uniform_cube, n, m, 3});
    double lo = 1.0, hi = 0.0, acc = 0.0;
    for (double v : X.values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        acc += v;
    }
    CHECK(lo >= 0.0);
    CHECK(hi < 1.0);
    CHECK(acc / static_cast<double>(n * m) == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("same spec reproduces identical bits") {
    const SampleSpec spec{SampleKind::uniform_ball, 8, 500, 123456789};
    const DataMatrix A = sample(spec);
    const DataMatrix B = sample(spec);
    CHECK(A.values == B.values);
}

TEST_CASE("growing m keeps earlier points unchanged") {
    const DataMatrix small = sample({SampleKind::isotropic_gaussian, 6, 50, 99});
    const DataMatrix big = sample({SampleKind::isotropic_gaussian, 6, 100, 99});
    CHECK(std::equal(small.values.begin(), small.values.end(), big.values.begin()));
}

TEST_CASE("different seeds differ") {
    const DataMatrix A = sample({SampleKind::uniform_sphere, 4, 100, 1});
    const DataMatrix B = sample({SampleKind::uniform_sphere, 4, 100, 2});
    CHECK(A.values != B.values);
}

TEST_CASE("pairwise angle statistics") {
    SUBCASE("orthonormal rows") {
        DataMatrix X{3, 3, {1, 0, 0, 0, 1, 0, 0, 0, 1}};
        const AngleStats st = pairwise_angle_stats(X);
        CHECK(st.mean_abs_cos == 0.0);
        CHECK(st.max_abs_cos == 0.0);
    }
    SUBCASE("duplicated row hits cosine 1") {
        DataMatrix X{3, 2, {1, 1, 2, 2, 1, 0}};
        CHECK(pairwise_angle_stats(X).max_abs_cos == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("high-dimensional gaussian rows are near-orthogonal") {
        const DataMatrix X = sample({SampleKind::isotropic_gaussian, 100, 200, 5});
        const AngleStats st = pairwise_angle_stats(X);
        CHECK(st.mean_abs_cos < 0.12);
        CHECK(st.max_abs_cos < 0.6);
    }
    SUBCASE("degenerate inputs rejected") {
        DataMatrix one{1, 2, {1, 2}};
        CHECK_THROWS_AS((void)pairwise_angle_stats(one), DegenerateInput);
        DataMatrix zero{2, 2, {0, 0, 1, 1}};
        CHECK_THROWS_AS((void)pairwise_angle_stats(zero), DegenerateInput);
    }
}

TEST_CASE("spec validation") {
    CHECK_THROWS_AS((void)sample({SampleKind::uniform_ball, 0, 5, 0}), DegenerateInput);
    CHECK_THROWS_AS((void)sample({SampleKind::uniform_ball, 3, 0, 0}), DegenerateInput);
}
