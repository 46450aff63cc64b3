#include "stosep/bounds.hpp"

#include <cmath>
#include <sstream>

namespace stosep::bounds {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double log1m_sq(double alpha) { return std::log1p(-alpha * alpha); }

void check_alpha_open(double alpha, const char* who) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        std::ostringstream os;
        os << who << ": need 0 < alpha < 1, got " << alpha;
        throw InvalidThreshold(os.str());
    }
}

// Common core of the elementary bound and both asymptotic variants:
// (1-alpha^2)^((n-1)/2) / (alpha * sqrt(2 pi denom)).
double log_cap_core(std::size_t n, double alpha, double denom) {
    return 0.5 * static_cast<double>(n - 1) * log1m_sq(alpha) - std::log(alpha) -
           0.5 * std::log(2.0 * kPi * denom);
}

// ln(psi / elementary(n, alpha)): the real-valued sample-count threshold.
double log_count_threshold(const SphereBoundParams& p) {
    return std::log(p.psi) - log_sphere_cap_bound_elementary(p.n, p.alpha);
}

// Largest integer strictly below x, as a double; 0 when x <= 1.
double floor_strict(double log_x) {
    const double x = std::exp(log_x);
    if (!(x > 1.0))
        return 0.0;
    double m = std::floor(x);
    if (m == x)
        m -= 1.0;
    return m;
}

}  // namespace

double log_ball_volume(std::size_t n) {
    if (n < 1)
        throw InapplicableBound("ball_volume: need n >= 1");
    const double h = 0.5 * static_cast<double>(n);
    return h * std::log(kPi) - std::lgamma(h + 1.0);
}

double log_sphere_area(std::size_t n) {
    if (n < 1)
        throw InapplicableBound("sphere_area: need n >= 1");
    const double h = 0.5 * static_cast<double>(n);
    return std::log(2.0) + h * std::log(kPi) - std::lgamma(h);
}

double ball_volume(std::size_t n) { return std::exp(log_ball_volume(n)); }
double sphere_area(std::size_t n) { return std::exp(log_sphere_area(n)); }

void BallBoundParams::validate() const {
    if (n < 1)
        throw InapplicableBound("ball bound: need n >= 1");
    if (!(C > 0.0))
        throw InapplicableBound("ball bound: need C > 0");
    if (!(r > 0.0))
        throw InapplicableBound("ball bound: need r > 0");
    if (!(b > 1.0))
        throw InapplicableBound("ball bound: need b > 1");
    check_alpha_open(alpha, "ball bound");
}

double log_single_point_failure_bound(const BallBoundParams& p) {
    p.validate();
    const double a = 2.0 * p.r * p.alpha;
    if (!(a > p.b)) {
        std::ostringstream os;
        os << "single_point_failure_bound: requires 2*r*alpha > b, got 2*r*alpha = " << a
           << ", b = " << p.b;
        throw InapplicableBound(os.str());
    }
    return std::log(p.C) + static_cast<double>(p.n) * (std::log(p.b) - std::log(a));
}

double single_point_failure_bound(const BallBoundParams& p) {
    return std::exp(log_single_point_failure_bound(p));
}

MutualFailureBounds mutual_failure_bounds(const BallBoundParams& p, std::uint64_t sample_size) {
    p.validate();
    const double a = 2.0 * p.r * p.alpha;
    if (!(a > p.b * p.b)) {
        std::ostringstream os;
        os << "mutual_failure_bounds: requires 2*r*alpha > b^2, got 2*r*alpha = " << a
           << ", b^2 = " << p.b * p.b;
        throw InapplicableBound(os.str());
    }
    if (sample_size < 1)
        throw InapplicableBound("mutual_failure_bounds: requires sample_size >= 1");
    const double log_size = std::log(static_cast<double>(sample_size));
    const double log_cap = static_cast<double>(p.n) * std::log(p.b);
    if (!(log_size < log_cap)) {
        std::ostringstream os;
        os << "mutual_failure_bounds: requires sample_size < b^n, got ln(sample_size) = "
           << log_size << ", n*ln(b) = " << log_cap;
        throw InapplicableBound(os.str());
    }
    MutualFailureBounds out;
    const double log_c = std::log(p.C);
    const double nn = static_cast<double>(p.n);
    out.log_sample_bound = log_size + log_c + nn * (std::log(p.b) - std::log(a));
    out.log_growth_bound = log_c + nn * (2.0 * std::log(p.b) - std::log(a));
    out.sample_bound = std::exp(out.log_sample_bound);
    out.growth_bound = std::exp(out.log_growth_bound);
    return out;
}

double log_sphere_cap_bound_cone(std::size_t n, double alpha) {
    if (n < 4)
        throw InapplicableBound("sphere_cap_bound_cone: need n >= 4");
    check_alpha_open(alpha, "sphere_cap_bound_cone");
    const double h = 0.5 * static_cast<double>(n);
    return std::lgamma(h) - std::lgamma(h - 0.5) + 0.5 * static_cast<double>(n - 1) * log1m_sq(alpha) -
           std::log(alpha) - 0.5 * std::log(kPi);
}

double sphere_cap_bound_cone(std::size_t n, double alpha) {
    return std::exp(log_sphere_cap_bound_cone(n, alpha));
}

double log_sphere_cap_bound_elementary(std::size_t n, double alpha) {
    if (n < 2)
        throw InapplicableBound("sphere_cap_bound_elementary: need n >= 2");
    check_alpha_open(alpha, "sphere_cap_bound_elementary");
    return log_cap_core(n, alpha, static_cast<double>(n - 1));
}

double sphere_cap_bound_elementary(std::size_t n, double alpha) {
    return std::exp(log_sphere_cap_bound_elementary(n, alpha));
}

double log_sphere_py_asymptotic(std::size_t n, double alpha, AsymptoticVariant variant) {
    if (n < 2)
        throw InapplicableBound("sphere_py_asymptotic: need n >= 2");
    check_alpha_open(alpha, "sphere_py_asymptotic");
    const double denom = variant == AsymptoticVariant::n_minus_1 ? static_cast<double>(n - 1)
                                                                 : static_cast<double>(n);
    return log_cap_core(n, alpha, denom);
}

double sphere_py_asymptotic(std::size_t n, double alpha, AsymptoticVariant variant) {
    return std::exp(log_sphere_py_asymptotic(n, alpha, variant));
}

void SphereBoundParams::validate() const {
    if (n < 2)
        throw InapplicableBound("sphere bound: need n >= 2");
    check_alpha_open(alpha, "sphere bound");
    if (!(psi > 0.0 && psi < 1.0)) {
        std::ostringstream os;
        os << "sphere bound: need 0 < psi < 1, got " << psi;
        throw InvalidThreshold(os.str());
    }
}

double max_sample_single(const SphereBoundParams& p) {
    p.validate();
    return floor_strict(log_count_threshold(p));
}

double max_sample_mutual(const SphereBoundParams& p) {
    p.validate();
    return floor_strict(0.5 * log_count_threshold(p));
}

std::vector<SeparationRow> separation_table(const std::vector<std::size_t>& ns, double alpha,
                                            double psi) {
    std::vector<SeparationRow> rows;
    rows.reserve(ns.size());
    for (std::size_t n : ns) {
        SphereBoundParams p{n, alpha, psi};
        rows.push_back({n, max_sample_single(p), max_sample_mutual(p)});
    }
    return rows;
}

}  // namespace stosep::bounds
