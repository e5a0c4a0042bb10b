#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "spex/assignment.hpp"
#include "spex/geometry.hpp"
#include "spex/pmf.hpp"

namespace spex {

struct TooLarge : std::runtime_error {
    TooLarge() : std::runtime_error("brute-force matching limited to m <= 8") {}
};
struct SizeMismatch : std::runtime_error {
    SizeMismatch() : std::runtime_error("sample lists must have equal length") {}
};
struct CutoffTooSmall : std::runtime_error {
    explicit CutoffTooSmall(double tail)
        : std::runtime_error("count pmf cutoff leaves tail mass " + std::to_string(tail)) {}
};

/// Result of an optimal-matching distance. assignment[i] is the index in
/// the second pattern matched to point i of the first (the smaller
/// pattern for the unequal-mass variant); empty when the masses differ
/// under d1.
struct MatchResult {
    double value = 0.0;
    std::vector<int> assignment;
};

/// Normalized optimal-matching distance between finite patterns:
/// equal masses m > 0 give the exact min-average of d0 over pairings,
/// unequal masses give 1, two empty patterns give 0.
inline MatchResult d1(const CountingMeasure& mu, const CountingMeasure& chi) {
    std::size_t m = mu.size();
    if (m != chi.size()) return {1.0, {}};
    if (m == 0) return {0.0, {}};
    std::vector<double> cost(m * m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            cost[i * m + j] = d0(mu.points[i], chi.points[j]);
    std::vector<int> asg = solve_assignment(cost, m, m);
    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) total += cost[i * m + static_cast<std::size_t>(asg[i])];
    return {total / static_cast<double>(m), std::move(asg)};
}

/// Exhaustive-permutation oracle for d1 on equal masses, m <= 8.
inline double d1_bruteforce(const CountingMeasure& mu, const CountingMeasure& chi) {
    std::size_t m = mu.size();
    if (m != chi.size()) throw std::invalid_argument("d1_bruteforce: unequal masses");
    if (m > 8) throw TooLarge{};
    if (m == 0) return 0.0;
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
        double total = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            total += d0(mu.points[i], chi.points[static_cast<std::size_t>(perm[i])]);
        best = std::min(best, total);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best / static_cast<double>(m);
}

/// Unequal-mass extension: optimal injection of the smaller pattern into
/// the larger, averaged over the smaller mass. Equals d1 on equal masses
/// and is symmetric by definition; zero mass on either side gives 0.
inline double d_hat1(const CountingMeasure& mu, const CountingMeasure& chi) {
    const CountingMeasure& small = mu.size() <= chi.size() ? mu : chi;
    const CountingMeasure& large = mu.size() <= chi.size() ? chi : mu;
    std::size_t n = small.size(), m = large.size();
    if (n == 0) return 0.0;
    std::vector<double> cost(n * m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j)
            cost[i * m + j] = d0(small.points[i], large.points[j]);
    std::vector<int> asg = solve_assignment(cost, n, m);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += cost[i * m + static_cast<std::size_t>(asg[i])];
    return total / static_cast<double>(n);
}

/// Empirical Wasserstein estimate between two process laws given equal
/// numbers of sampled patterns: optimal matching of the sample clouds
/// under ground cost d1.
inline double empirical_d2(const std::vector<CountingMeasure>& samples_a,
                           const std::vector<CountingMeasure>& samples_b) {
    std::size_t m = samples_a.size();
    if (m != samples_b.size()) throw SizeMismatch{};
    if (m == 0) throw SizeMismatch{};
    std::vector<double> cost(m * m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            cost[i * m + j] = d1(samples_a[i], samples_b[j]).value;
    std::vector<int> asg = solve_assignment(cost, m, m);
    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) total += cost[i * m + static_cast<std::size_t>(asg[i])];
    return total / static_cast<double>(m);
}

/// Total variation between count laws, 1/2 sum |p - q| over the union of
/// supports.
inline double tv(const Pmf& p, const Pmf& q) {
    std::size_t end = std::max(p.support_end(), q.support_end());
    double s = 0.0;
    for (std::size_t k = 0; k < end; ++k) s += std::abs(p(k) - q(k));
    s += p.tail_mass() + q.tail_mass();
    return 0.5 * s;
}

/// Law of sum_i i * N_i with independent N_i ~ Poisson(mass_i): the count
/// in a region of a compound Poisson process with clump masses
/// (size, mass). Exact iterated convolution, truncated at cutoff with the
/// discarded tail recorded in the result.
inline Pmf cp_count_pmf(const std::vector<std::pair<int, double>>& cluster_masses, int cutoff) {
    if (cutoff < 0) throw std::invalid_argument("cp_count_pmf: negative cutoff");
    for (auto [size, mass] : cluster_masses)
        if (size < 1 || !(mass > 0.0))
            throw std::invalid_argument("cp_count_pmf: sizes must be >= 1, masses > 0");
    std::vector<double> acc(static_cast<std::size_t>(cutoff) + 1, 0.0);
    acc[0] = 1.0;
    for (auto [size, mass] : cluster_masses) {
        // Poisson(mass) pmf on k, contributing size*k to the total.
        std::vector<double> next(acc.size(), 0.0);
        double pk = std::exp(-mass);
        for (int k = 0; static_cast<std::size_t>(k) * size < acc.size(); ++k) {
            if (k > 0) pk *= mass / static_cast<double>(k);
            std::size_t shift = static_cast<std::size_t>(k) * static_cast<std::size_t>(size);
            for (std::size_t j = 0; j + shift < acc.size(); ++j)
                next[j + shift] += acc[j] * pk;
        }
        acc.swap(next);
    }
    double tail = 1.0 - std::accumulate(acc.begin(), acc.end(), 0.0);
    tail = std::max(tail, 0.0);
    if (tail >= 1e-9) throw CutoffTooSmall(tail);
    return Pmf(std::move(acc), tail);
}

/// Frequencies of a sample of counts.
inline Pmf empirical_count_pmf(const std::vector<std::uint64_t>& samples) {
    if (samples.empty()) throw std::invalid_argument("empirical_count_pmf: empty sample");
    std::uint64_t hi = *std::max_element(samples.begin(), samples.end());
    std::vector<double> p(static_cast<std::size_t>(hi) + 1, 0.0);
    for (std::uint64_t s : samples) p[static_cast<std::size_t>(s)] += 1.0;
    for (double& v : p) v /= static_cast<double>(samples.size());
    return Pmf(std::move(p));
}

}  // namespace spex
