#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace spex {

struct MeanSe {
    double mean = 0.0;
    double se = 0.0;
};

inline MeanSe mean_se(const std::vector<double>& xs) {
    if (xs.empty()) return {};
    double m = 0.0;
    for (double x : xs) m += x;
    m /= static_cast<double>(xs.size());
    if (xs.size() == 1) return {m, 0.0};
    double ss = 0.0;
    for (double x : xs) ss += (x - m) * (x - m);
    double var = ss / static_cast<double>(xs.size() - 1);
    return {m, std::sqrt(var / static_cast<double>(xs.size()))};
}

inline double binomial_se(double p_hat, std::uint64_t n) {
    if (n == 0) return 0.0;
    return std::sqrt(std::max(p_hat * (1.0 - p_hat), 0.0) / static_cast<double>(n));
}

namespace detail {

// Regularized incomplete gamma, series for x < a+1 and continued
// fraction otherwise.
inline double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 1000; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

inline double gamma_q_contfrac(double a, double x) {
    double b = x + 1.0 - a;
    double c = 1e300;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 1000; ++i) {
        double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < 1e-300) d = 1e-300;
        c = b + an / c;
        if (std::abs(c) < 1e-300) c = 1e-300;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace detail

/// P(a, x): regularized lower incomplete gamma.
inline double gamma_p(double a, double x) {
    if (!(a > 0.0) || x < 0.0) throw std::invalid_argument("gamma_p: bad arguments");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return detail::gamma_p_series(a, x);
    return 1.0 - detail::gamma_q_contfrac(a, x);
}

/// Chi-square survival function with dof degrees of freedom.
inline double chi2_sf(double x, double dof) {
    if (x <= 0.0) return 1.0;
    if (x < dof + 1.0) return 1.0 - detail::gamma_p_series(dof / 2.0, x / 2.0);
    return detail::gamma_q_contfrac(dof / 2.0, x / 2.0);
}

struct Chi2Result {
    double statistic = 0.0;
    double dof = 0.0;
    double p_value = 1.0;
};

/// Goodness of fit against given bin probabilities (no fitted
/// parameters: dof = bins - 1).
inline Chi2Result chi2_gof(const std::vector<std::uint64_t>& observed,
                           const std::vector<double>& probs) {
    if (observed.size() != probs.size() || observed.empty())
        throw std::invalid_argument("chi2_gof: size mismatch");
    std::uint64_t total = 0;
    for (auto c : observed) total += c;
    if (total == 0) throw std::invalid_argument("chi2_gof: empty sample");
    double stat = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        double expected = probs[i] * static_cast<double>(total);
        if (!(expected > 0.0)) throw std::invalid_argument("chi2_gof: zero expected bin");
        double d = static_cast<double>(observed[i]) - expected;
        stat += d * d / expected;
    }
    double dof = static_cast<double>(observed.size() - 1);
    return {stat, dof, chi2_sf(stat, dof)};
}

/// Kolmogorov asymptotic survival function Q(lambda).
inline double kolmogorov_sf(double lambda) {
    if (lambda <= 0.0) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int j = 1; j <= 101; ++j) {
        double term = std::exp(-2.0 * j * j * lambda * lambda);
        sum += sign * term;
        sign = -sign;
        if (term < 1e-16) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

struct KsResult {
    double statistic = 0.0;
    double p_value = 1.0;
};

/// Two-sample Kolmogorov-Smirnov test (asymptotic p-value).
inline KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    double ne = std::sqrt(na * nb / (na + nb));
    double lambda = (ne + 0.12 + 0.11 / ne) * d;
    return {d, kolmogorov_sf(lambda)};
}

}  // namespace spex
