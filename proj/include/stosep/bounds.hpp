#pragma once

// Closed-form separability bounds and the sample-size table built from them.
//
// Every evaluator has a log-space twin returning the natural log of the
// bound. The twins stay finite for n up to 1e4 even where the linear-space
// value underflows double; the linear versions are exp() of the twin.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "stosep/types.hpp"

namespace stosep::bounds {

// Volume of the unit ball in R^n and surface area of its boundary sphere.
double ball_volume(std::size_t n);
double sphere_area(std::size_t n);
double log_ball_volume(std::size_t n);
double log_sphere_area(std::size_t n);

// Parameters for the ball-sampled regime: a set Y of fewer than b^n points
// drawn from a density bounded by C / (r^n V_n) on the unit ball.
struct BallBoundParams {
    std::size_t n = 0;  // dimension
    double b = 0.0;     // sample-growth base, |Y| < b^n
    double r = 0.0;     // density decay base
    double alpha = 0.0; // separability threshold
    double C = 0.0;     // density constant
    void validate() const;  // n >= 1, C > 0, r > 0, b > 1, 0 < alpha < 1
};

// Probability bound that one additional random point fails to be separable
// from every point of Y. Requires 2*r*alpha > b; the failure probability is
// below C * (b / (2 r alpha))^n. Caller interprets min(bound, 1).
double single_point_failure_bound(const BallBoundParams& p);
double log_single_point_failure_bound(const BallBoundParams& p);

// Probability bound that a sample of the given size fails to be pairwise
// separable. sample_bound = |Y| * C * (b/(2 r alpha))^n is the sharper form;
// growth_bound = C * (b^2/(2 r alpha))^n depends only on the growth base.
// Requires 2*r*alpha > b^2 and sample_size < b^n (checked in log-space).
struct MutualFailureBounds {
    double sample_bound = 0.0;
    double growth_bound = 0.0;
    double log_sample_bound = 0.0;
    double log_growth_bound = 0.0;
};
MutualFailureBounds mutual_failure_bounds(const BallBoundParams& p, std::uint64_t sample_size);

// Upper bounds on the spherical-cap probability p_y(alpha): the chance that
// a uniform point on the unit sphere lands in the cap (x, y) > alpha for a
// fixed unit y.
//
// cone: cap area bounded by the lateral cone surface,
//       Gamma(n/2)/Gamma((n-1)/2) * (1-alpha^2)^((n-1)/2) / (alpha sqrt(pi)).
//       Valid for n >= 4.
// elementary: (1-alpha^2)^((n-1)/2) / (alpha sqrt(2 pi (n-1))), n >= 2.
// The chain true cap measure <= elementary <= cone holds for n >= 4.
double sphere_cap_bound_cone(std::size_t n, double alpha);
double log_sphere_cap_bound_cone(std::size_t n, double alpha);
double sphere_cap_bound_elementary(std::size_t n, double alpha);
double log_sphere_cap_bound_elementary(std::size_t n, double alpha);

// Asymptotic estimate of p_y(alpha) itself (not a guaranteed bound).
// n_minus_1 uses denominator alpha*sqrt(2 pi (n-1)) and equals the
// elementary bound expression; the n variant uses alpha*sqrt(2 pi n) and
// tracks Monte Carlo estimates better in small dimensions.
enum class AsymptoticVariant { n_minus_1, n };
double sphere_py_asymptotic(std::size_t n, double alpha, AsymptoticVariant variant);
double log_sphere_py_asymptotic(std::size_t n, double alpha, AsymptoticVariant variant);

// Sphere-sample sizing: how many uniform sphere points can be drawn while a
// union bound keeps the failure probability under psi.
struct SphereBoundParams {
    std::size_t n = 0;  // dimension, >= 2
    double alpha = 0.0; // threshold in (0, 1)
    double psi = 0.0;   // failure budget in (0, 1)
    void validate() const;
};

// Largest integer M with M * elementary(n, alpha) < psi: with probability
// above 1 - psi, all M sample points are separable from one fixed point.
// Returns 0 when the bound certifies nothing. Computed in log-space; the
// result is exact while M fits a double and may round for M near 2^53.
double max_sample_single(const SphereBoundParams& p);

// Largest integer M with M^2 * elementary(n, alpha) < psi: every sample
// point separable from all others simultaneously.
double max_sample_mutual(const SphereBoundParams& p);

struct SeparationRow {
    std::size_t n = 0;
    double M1 = 0.0;  // max_sample_single
    double M2 = 0.0;  // max_sample_mutual
};
std::vector<SeparationRow> separation_table(const std::vector<std::size_t>& ns, double alpha,
                                            double psi);

}  // namespace stosep::bounds
