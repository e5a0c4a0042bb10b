#pragma once

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace spex {

/// Exact min-cost assignment of n rows into m >= n columns (Hungarian
/// algorithm with potentials, O(n^2 m)). Returns the column chosen for
/// each row. cost must be row-major n x m.
inline std::vector<int> solve_assignment(const std::vector<double>& cost, std::size_t n,
                                         std::size_t m) {
    if (n == 0) return {};
    if (n > m) throw std::invalid_argument("solve_assignment: more rows than columns");
    if (cost.size() != n * m) throw std::invalid_argument("solve_assignment: bad cost size");
    constexpr double kInf = std::numeric_limits<double>::infinity();

    std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
    std::vector<int> match(m + 1, 0);  // match[j] = row (1-based) assigned to column j
    std::vector<int> way(m + 1, 0);

    for (std::size_t i = 1; i <= n; ++i) {
        match[0] = static_cast<int>(i);
        std::size_t j0 = 0;
        std::vector<double> minv(m + 1, kInf);
        std::vector<char> used(m + 1, 0);
        do {
            used[j0] = 1;
            std::size_t i0 = static_cast<std::size_t>(match[j0]), j1 = 0;
            double delta = kInf;
            for (std::size_t j = 1; j <= m; ++j) {
                if (used[j]) continue;
                double cur = cost[(i0 - 1) * m + (j - 1)] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = static_cast<int>(j0);
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= m; ++j) {
                if (used[j]) {
                    u[static_cast<std::size_t>(match[j])] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        do {
            std::size_t j1 = static_cast<std::size_t>(way[j0]);
            match[j0] = match[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    std::vector<int> row_to_col(n, -1);
    for (std::size_t j = 1; j <= m; ++j)
        if (match[j] != 0) row_to_col[static_cast<std::size_t>(match[j] - 1)] = static_cast<int>(j - 1);
    return row_to_col;
}

}  // namespace spex
