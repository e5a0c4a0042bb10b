#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "spex/analytic.hpp"
#include "spex/delaunay.hpp"
#include "spex/geometry.hpp"
#include "spex/sampling.hpp"

namespace spex {

struct RadicandNegative : std::runtime_error {
    RadicandNegative() : std::runtime_error("closed-form threshold: negative radicand") {}
};
struct BelowFormulaRegime : std::runtime_error {
    BelowFormulaRegime() : std::runtime_error("closed-form threshold below its v >= 1 regime") {}
};
struct NoRootInBracket : std::runtime_error {
    NoRootInBracket() : std::runtime_error("void-probability equation has no root in bracket") {}
};
struct GuardTooSmall : std::runtime_error {
    GuardTooSmall() : std::runtime_error("sampled region does not cover the required guard") {}
};

/// Exceedance process on the unit window: atoms are the rescaled centers
/// n^{-1/2} z, kept alongside the raw centers z in W_n.
struct ExceedanceProcess {
    double n = 0.0;
    double threshold = 0.0;
    std::vector<Point> atoms_rescaled;
    std::vector<Point> centers_raw;

    std::size_t count() const { return atoms_rescaled.size(); }
};

/// Per-atom multiplicities and the derived cluster statistics of an
/// exceedance process at cluster radius c_n.
struct ClusterStats {
    std::vector<int> multiplicities;          // per atom: atoms within c_n of it (incl. itself)
    std::vector<std::uint64_t> mult_hist;     // index i: atoms with multiplicity i
    std::vector<std::uint64_t> comp_hist;     // index s: components of size s
    std::uint64_t components = 0;
    double theta_hat = 1.0;                   // components / atoms, 1 when empty

    std::size_t atoms() const { return multiplicities.size(); }

    double p_hat(std::size_t i) const {
        if (multiplicities.empty() || i >= mult_hist.size()) return 0.0;
        return static_cast<double>(mult_hist[i]) / static_cast<double>(multiplicities.size());
    }
    double q_hat(std::size_t s) const {
        if (components == 0 || s >= comp_hist.size()) return 0.0;
        return static_cast<double>(comp_hist[s]) / static_cast<double>(components);
    }
};

/// Threshold for the small-angle application: v_n = sqrt(tau/n) / 2.
inline double angle_threshold(double n, double tau) {
    if (!(n > 0.0) || !(tau > 0.0))
        throw std::invalid_argument("angle_threshold: need n > 0, tau > 0");
    return 0.5 * std::sqrt(tau / n);
}

/// The published closed-form nearest-neighbor threshold for the
/// Gauss-Poisson process. Kept verbatim for comparison; it differs from
/// the exact void-probability inversion (factor ~sqrt(2) in the Poisson
/// limit), so nn_threshold_numeric is the authoritative value.
inline double nn_threshold_closed_form(double n, double tau, const GaussPoissonParams& params) {
    if (!(n > 0.0) || !(tau > 0.0))
        throw std::invalid_argument("nn_threshold_closed_form: need n > 0, tau > 0");
    params.validate();
    double p1 = params.p1, p2 = params.p2;
    double radicand = 8.0 * p2 * p2 +
                      8.0 * kPi * (p1 + p2) *
                          (std::log(p1 / (p1 + 2.0 * p2)) + std::log(n) - std::log(tau));
    if (radicand < 0.0) throw RadicandNegative{};
    double v = (4.0 * p2 + std::sqrt(radicand)) / (4.0 * kPi * (p1 + p2));
    if (v < 1.0) throw BelowFormulaRegime{};
    return v;
}

/// Root of n * gp_void_prob(v) = tau by bisection to 1e-12 in v. The
/// residual is checked afterwards: the void probability jumps down at
/// v = 1, and a target inside the gap has no root.
inline double nn_threshold_numeric(double n, double tau, const GaussPoissonParams& params) {
    if (!(n > 0.0) || !(tau > 0.0))
        throw std::invalid_argument("nn_threshold_numeric: need n > 0, tau > 0");
    params.validate();
    auto f = [&](double v) { return n * gp_void_prob(v, params) - tau; };
    if (f(0.0) <= 0.0) throw NoRootInBracket{};
    double hi = 1.0;
    int grow = 0;
    while (f(hi) > 0.0) {
        hi *= 2.0;
        if (++grow > 64) throw NoRootInBracket{};
    }
    double lo = 0.0;
    while (hi - lo > 1e-12) {
        double mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    double v = 0.5 * (lo + hi);
    if (std::abs(n * gp_void_prob(v, params) - tau) > 1e-9 * tau) throw NoRootInBracket{};
    return v;
}

namespace detail {

// Fixed-radius neighbor grid over [-H, H]^2 with exact 'any point within
// r' queries (cells no smaller than needed, ring radius derived from the
// cell size).
class NeighborGrid {
public:
    NeighborGrid(const std::vector<Point>& pts, double half, double radius)
        : pts_(pts), half_(half), radius_(radius) {
        double side = 2.0 * half;
        cell_ = std::max(radius, side / 2048.0);
        k_ = std::max(1, static_cast<int>(std::ceil(side / cell_)));
        cell_ = side / k_;
        ring_ = static_cast<int>(std::ceil(radius / cell_));
        heads_.assign(static_cast<std::size_t>(k_) * static_cast<std::size_t>(k_), -1);
        next_.assign(pts.size(), -1);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            std::size_t c = cell_index(pts[i]);
            next_[i] = heads_[c];
            heads_[c] = static_cast<int>(i);
        }
    }

    /// Any point other than `self` within distance radius of p?
    bool has_neighbor(Point p, int self) const {
        double r2 = radius_ * radius_;
        int cx = clamp_idx(p.x), cy = clamp_idx(p.y);
        for (int dy = -ring_; dy <= ring_; ++dy) {
            int y = cy + dy;
            if (y < 0 || y >= k_) continue;
            for (int dx = -ring_; dx <= ring_; ++dx) {
                int x = cx + dx;
                if (x < 0 || x >= k_) continue;
                for (int i = heads_[static_cast<std::size_t>(y) * k_ + x]; i >= 0;
                     i = next_[static_cast<std::size_t>(i)]) {
                    if (i == self) continue;
                    if (dist2(pts_[static_cast<std::size_t>(i)], p) <= r2) return true;
                }
            }
        }
        return false;
    }

private:
    int clamp_idx(double x) const {
        int i = static_cast<int>((x + half_) / cell_);
        return std::clamp(i, 0, k_ - 1);
    }
    std::size_t cell_index(Point p) const {
        return static_cast<std::size_t>(clamp_idx(p.y)) * k_ + clamp_idx(p.x);
    }

    const std::vector<Point>& pts_;
    double half_, radius_, cell_;
    int k_, ring_;
    std::vector<int> heads_;
    std::vector<int> next_;
};

}  // namespace detail

/// Nearest-neighbor exceedances: one atom per point of xi in W_n whose
/// nearest neighbor in the whole sample is farther than v. xi must have
/// been sampled on a window covering W_n dilated by at least v.
inline ExceedanceProcess nn_exceedances(const CountingMeasure& xi, double n, double v,
                                        const Window& sampled) {
    if (!(n > 0.0) || !(v > 0.0))
        throw std::invalid_argument("nn_exceedances: need n > 0, v > 0");
    double hw = std::sqrt(n) / 2.0;
    if (sampled.half_side() < hw + v - 1e-12) throw GuardTooSmall{};
    ExceedanceProcess proc;
    proc.n = n;
    proc.threshold = v;
    double inv_sqrt_n = 1.0 / std::sqrt(n);
    if (xi.size() == 1) {
        // Singleton: nearest-neighbor distance is +infinity.
        Point p = xi.points[0];
        if (std::abs(p.x) <= hw && std::abs(p.y) <= hw) {
            proc.centers_raw.push_back(p);
            proc.atoms_rescaled.push_back(inv_sqrt_n * p);
        }
        return proc;
    }
    detail::NeighborGrid grid(xi.points, sampled.half_side(), v);
    for (std::size_t i = 0; i < xi.size(); ++i) {
        Point p = xi.points[i];
        if (std::abs(p.x) > hw || std::abs(p.y) > hw) continue;
        if (grid.has_neighbor(p, static_cast<int>(i))) continue;
        proc.centers_raw.push_back(p);
        proc.atoms_rescaled.push_back(inv_sqrt_n * p);
    }
    return proc;
}

/// Small-angle exceedances from a prebuilt Delaunay triangulation of a
/// sample on the dilated window: one atom per triangle with circumcenter
/// in W_n and minimal angle below v. A qualifying triangle whose
/// circumdisk leaves the sampled region would be biased by unseen points.
inline ExceedanceProcess angle_exceedances(const Triangulation& tri, double n, double v,
                                           const Window& sampled) {
    if (!(n > 0.0) || !(v >= 0.0))
        throw std::invalid_argument("angle_exceedances: need n > 0, v >= 0");
    double hw = std::sqrt(n) / 2.0;
    if (sampled.half_side() < hw - 1e-12) throw GuardTooSmall{};
    double hs = sampled.half_side();
    ExceedanceProcess proc;
    proc.n = n;
    proc.threshold = v;
    double inv_sqrt_n = 1.0 / std::sqrt(n);
    for (const auto& t : tri.triangles()) {
        Point c = t.circumcenter;
        if (std::abs(c.x) > hw || std::abs(c.y) > hw) continue;
        if (t.min_angle >= v) continue;
        if (std::abs(c.x) + t.circumradius > hs || std::abs(c.y) + t.circumradius > hs)
            throw GuardTooSmall{};
        proc.centers_raw.push_back(c);
        proc.atoms_rescaled.push_back(inv_sqrt_n * c);
    }
    return proc;
}

inline ExceedanceProcess angle_exceedances(const CountingMeasure& points, double n, double v,
                                           const Window& sampled) {
    return angle_exceedances(triangulate(points), n, v, sampled);
}

/// Cluster decomposition at radius c_n on the raw (unscaled) centers:
/// per-atom multiplicities, the component-size law, and the extremal
/// index estimate #components / #atoms.
inline ClusterStats cluster_decompose(const ExceedanceProcess& proc, double c_n) {
    if (!(c_n > 0.0)) throw std::invalid_argument("cluster_decompose: need c_n > 0");
    const auto& z = proc.centers_raw;
    std::size_t k = z.size();
    ClusterStats stats;
    if (k == 0) return stats;

    stats.multiplicities.assign(k, 1);
    std::vector<std::size_t> parent(k);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t i) {
        while (parent[i] != i) {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        return i;
    };
    double c2 = c_n * c_n;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            if (dist2(z[i], z[j]) <= c2) {
                ++stats.multiplicities[i];
                ++stats.multiplicities[j];
                std::size_t ri = find(i), rj = find(j);
                if (ri != rj) parent[ri] = rj;
            }
        }
    }

    int max_mult = *std::max_element(stats.multiplicities.begin(), stats.multiplicities.end());
    stats.mult_hist.assign(static_cast<std::size_t>(max_mult) + 1, 0);
    for (int m : stats.multiplicities) ++stats.mult_hist[static_cast<std::size_t>(m)];

    std::vector<std::uint64_t> comp_size(k, 0);
    for (std::size_t i = 0; i < k; ++i) ++comp_size[find(i)];
    std::uint64_t max_size = *std::max_element(comp_size.begin(), comp_size.end());
    stats.comp_hist.assign(static_cast<std::size_t>(max_size) + 1, 0);
    for (std::size_t i = 0; i < k; ++i) {
        if (comp_size[i] > 0) {
            ++stats.comp_hist[static_cast<std::size_t>(comp_size[i])];
            ++stats.components;
        }
    }
    stats.theta_hat = static_cast<double>(stats.components) / static_cast<double>(k);
    return stats;
}

/// Order-statistic event {M^{(k)} <= v_n}: the k-th largest score is
/// below threshold iff at most k-1 exceedances remain.
inline bool order_statistic_test(const ExceedanceProcess& proc, int k) {
    if (k < 1) throw std::invalid_argument("order_statistic_test: k >= 1");
    return proc.count() <= static_cast<std::size_t>(k - 1);
}

}  // namespace spex
