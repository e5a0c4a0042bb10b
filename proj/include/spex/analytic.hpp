#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spex/geometry.hpp"
#include "spex/pmf.hpp"
#include "spex/quadrature.hpp"
#include "spex/sampling.hpp"

namespace spex {

/// Two-disk overlap term of the Gauss-Poisson void probability,
///   a(v) = 2 v^2 arccos(1/(2v)) - sqrt(4 v^2 - 1)/2   for v >= 1,
/// and zero otherwise (the published piecewise form, kept verbatim).
inline double a_of_v(double v) {
    if (!(v >= 0.0)) throw std::invalid_argument("a_of_v: v must be >= 0");
    if (v < 1.0) return 0.0;
    double inv = std::clamp(1.0 / (2.0 * v), -1.0, 1.0);
    return 2.0 * v * v * std::acos(inv) - 0.5 * std::sqrt(4.0 * v * v - 1.0);
}

/// Reduced-Palm void probability P(xi^{o!}(B_v) = 0) of the Gauss-Poisson
/// process. The prefactor switches from 1 to p1/(p1+2p2) at v = 1: the
/// partner of a two-point cluster sits at unit distance exactly, so the
/// closed ball swallows it there. Both one-sided values at v = 1 are
/// meaningful; use gp_void_prob(1 - eps) / gp_void_prob(1) to see them.
inline double gp_void_prob(double v, const GaussPoissonParams& params) {
    params.validate();
    if (!(v >= 0.0)) throw std::invalid_argument("gp_void_prob: v must be >= 0");
    double expo = params.p1 * kPi * v * v + params.p2 * (2.0 * kPi * v * v - a_of_v(v));
    double pref = (v < 1.0) ? 1.0 : params.p1 / params.intensity();
    return pref * std::exp(-expo);
}

/// Mardia density of the minimal angle of the typical Poisson-Delaunay
/// triangle on [0, pi/3].
inline double mardia_pdf(double t) {
    if (t < 0.0 || t > kPi / 3.0) return 0.0;
    return 4.0 / kPi * std::sin(t) * ((kPi - 3.0 * t) * std::cos(t) + std::sin(3.0 * t));
}

/// CDF of the minimal angle, by adaptive quadrature of mardia_pdf.
inline double mardia_cdf(double t) {
    if (t <= 0.0) return 0.0;
    double hi = std::min(t, kPi / 3.0);
    return integrate(mardia_pdf, 0.0, hi, 1e-10).value;
}

/// Compound Poisson limit of the small-angle exceedance process: clump
/// intensities tau/2 and tau/4, total intensity 3 tau/4, cluster law
/// Q(1) = 2/3, Q(2) = 1/3, extremal index 3/4.
struct CpLimitParams {
    double tau;
    double pi1_mass;
    double pi2_mass;
    double gamma;
    Pmf cluster_law;

    double extremal_index() const { return gamma / tau; }
    double mean_cluster_size() const { return cluster_law.mean(); }
};

inline CpLimitParams cp_limit_params(double tau) {
    if (!(tau > 0.0)) throw std::invalid_argument("cp_limit_params: tau must be > 0");
    return {tau, tau / 2.0, tau / 4.0, 3.0 * tau / 4.0,
            Pmf({0.0, 2.0 / 3.0, 1.0 / 3.0})};
}

/// Sum_{i=0}^{k-1} e^{-tau} tau^i / i!, running-product form.
inline double poisson_partial_sum(double tau, int k) {
    if (!(tau > 0.0) || k < 1)
        throw std::invalid_argument("poisson_partial_sum: need tau > 0, k >= 1");
    double term = std::exp(-tau);
    double sum = term;
    for (int i = 1; i < k; ++i) {
        term *= tau / static_cast<double>(i);
        sum += term;
    }
    return std::min(sum, 1.0);
}

/// I(a) = int_0^a int_0^a (x y / (x^2 + y^2))^3 dx dy. The integrand is
/// homogeneous of degree zero, so I(a) = a^2 I(1); the quadrature value
/// doubles as a check of the identity I(1) = 1/16.
inline double pn2_integral(double a) {
    if (!(a > 0.0)) throw std::invalid_argument("pn2_integral: a must be > 0");
    auto f = [](double x, double y) {
        double s = x * x + y * y;
        if (s == 0.0) return 0.0;
        double r = x * y / s;
        return r * r * r;
    };
    return integrate2d(f, 0.0, a, 0.0, a, 1e-8 * std::max(1.0, a * a)).value;
}

}  // namespace spex
