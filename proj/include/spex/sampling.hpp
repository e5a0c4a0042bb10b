#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "spex/geometry.hpp"
#include "spex/pmf.hpp"
#include "spex/rng.hpp"

namespace spex {

struct WindowExcludesOrigin : std::runtime_error {
    WindowExcludesOrigin() : std::runtime_error("Palm sample window must contain the origin") {}
};

/// Gauss-Poisson cluster mark probabilities: a parent spawns 0, 1 or 2
/// points with probabilities p0, p1, p2; two-point clusters are unit
/// segments with uniform orientation centered at the parent.
struct GaussPoissonParams {
    double p0, p1, p2;

    GaussPoissonParams(double p1_, double p2_) : p0(1.0 - p1_ - p2_), p1(p1_), p2(p2_) {
        validate();
    }

    void validate() const {
        if (!(p0 > 0.0) || !(p1 > 0.0) || p2 < 0.0 || std::abs(p0 + p1 + p2 - 1.0) > 1e-12)
            throw std::invalid_argument("GaussPoissonParams: need p0>0, p1>0, p2>=0, sum 1");
    }

    double intensity() const { return p1 + 2.0 * p2; }
};

/// Stationary compound Poisson parameters: cluster-center intensity and a
/// finitely supported cluster-size law on {1, 2, ...}.
struct CompoundParams {
    double intensity;
    Pmf cluster_law;

    CompoundParams(double gamma, Pmf q) : intensity(gamma), cluster_law(std::move(q)) {
        if (!(intensity > 0.0)) throw std::invalid_argument("CompoundParams: intensity <= 0");
        if (cluster_law(0) != 0.0)
            throw std::invalid_argument("CompoundParams: cluster sizes start at 1");
    }
};

struct MarkedPoint {
    Point location;
    int multiplicity;
};

/// Circumscribed-circle form of the typical Poisson-Delaunay triangle:
/// circumradius R and three independent unit directions, R independent
/// of the directions.
struct TypicalTriangle {
    double circumradius;
    std::array<Point, 3> directions;

    std::array<Point, 3> vertices() const {
        return {circumradius * directions[0], circumradius * directions[1],
                circumradius * directions[2]};
    }

    double min_angle() const {
        auto v = vertices();
        return triangle_angles(v[0], v[1], v[2]).min();
    }
};

namespace detail {

// Poisson process on a rectangle by exact cell splitting: counts are
// Poisson per cell (target mean <= 32), positions uniform within the
// cell. Cells are visited row-major so draws are reproducible.
template <typename PerPoint>
void poisson_points(Rng& rng, double intensity, const Window& w, PerPoint&& emit) {
    double side = w.side();
    double mean_total = intensity * side * side;
    int k = std::max(1, static_cast<int>(std::ceil(std::sqrt(mean_total / 32.0))));
    double cell = side / k;
    double lo = -w.half_side();
    double cell_mean = intensity * cell * cell;
    for (int iy = 0; iy < k; ++iy) {
        for (int ix = 0; ix < k; ++ix) {
            std::uint64_t cnt = rng.poisson(cell_mean);
            for (std::uint64_t j = 0; j < cnt; ++j) {
                double x = lo + (ix + rng.uniform01()) * cell;
                double y = lo + (iy + rng.uniform01()) * cell;
                emit(Point{x, y});
            }
        }
    }
}

}  // namespace detail

/// Homogeneous Poisson point process restricted to the window.
inline CountingMeasure sample_poisson(double intensity, const Window& w, Seed seed) {
    if (!(intensity > 0.0)) throw std::invalid_argument("sample_poisson: intensity <= 0");
    Rng rng(seed);
    CountingMeasure out;
    out.points.reserve(static_cast<std::size_t>(intensity * w.area() * 1.2) + 16);
    detail::poisson_points(rng, intensity, w, [&](Point p) { out.add(p); });
    return out;
}

/// Gauss-Poisson process restricted to the window. Parents are laid down
/// on the window dilated by 0.5 (half the cluster diameter) so the
/// restriction is exactly the stationary process on the window.
inline CountingMeasure sample_gauss_poisson(const GaussPoissonParams& params, const Window& w,
                                            Seed seed) {
    params.validate();
    Rng rng(seed);
    Window parent_win = w.dilated(0.5);
    CountingMeasure out;
    out.points.reserve(static_cast<std::size_t>(params.intensity() * w.area() * 1.2) + 16);
    detail::poisson_points(rng, 1.0, parent_win, [&](Point parent) {
        double u = rng.uniform01();
        if (u < params.p0) return;
        if (u < params.p0 + params.p1) {
            if (w.contains(parent)) out.add(parent);
            return;
        }
        double theta = rng.uniform(0.0, 2.0 * kPi);
        Point h{0.5 * std::cos(theta), 0.5 * std::sin(theta)};
        Point q1 = parent + h, q2 = parent - h;
        if (w.contains(q1)) out.add(q1);
        if (w.contains(q2)) out.add(q2);
    });
    return out;
}

/// Palm cluster at the origin. A typical point belongs to a two-point
/// cluster with the size-biased probability 2 p2 / (p1 + 2 p2); in that
/// case the partner sits at unit distance in a uniform direction.
inline CountingMeasure gp_palm_cluster(const GaussPoissonParams& params, Seed seed) {
    params.validate();
    Rng rng(seed);
    CountingMeasure out;
    out.add(Point{0.0, 0.0});
    double pair_prob = 2.0 * params.p2 / params.intensity();
    if (rng.uniform01() < pair_prob) {
        double theta = rng.uniform(0.0, 2.0 * kPi);
        out.add(Point{std::cos(theta), std::sin(theta)});
    }
    return out;
}

/// Palm version of the Gauss-Poisson process on a window containing the
/// origin: an independent stationary sample union the origin cluster,
/// both restricted to the window.
inline CountingMeasure sample_palm_gauss_poisson(const GaussPoissonParams& params,
                                                 const Window& w, Seed seed) {
    if (!w.contains(Point{0.0, 0.0})) throw WindowExcludesOrigin{};
    CountingMeasure out = sample_gauss_poisson(params, w, seed);
    // Disjoint sub-stream for the origin cluster.
    CountingMeasure palm = gp_palm_cluster(params, Seed{seed.value ^ 0xA5A5A5A5A5A5A5A5ULL,
                                                        seed.replication_index});
    for (Point p : palm.points)
        if (w.contains(p)) out.add(p);
    return out;
}

/// Compound Poisson sample: Poisson cluster centers with i.i.d. integer
/// marks from the cluster-size law.
inline std::vector<MarkedPoint> sample_compound_poisson(const CompoundParams& params,
                                                        const Window& w, Seed seed) {
    Rng rng(seed);
    std::vector<MarkedPoint> out;
    detail::poisson_points(rng, params.intensity, w, [&](Point center) {
        double u = rng.uniform01();
        double cum = 0.0;
        int mark = 0;
        for (std::size_t i = 1; i < params.cluster_law.support_end(); ++i) {
            if (params.cluster_law(i) == 0.0) continue;
            mark = static_cast<int>(i);  // rounding target if u exhausts the mass
            cum += params.cluster_law(i);
            if (u < cum) break;
        }
        out.push_back({center, mark});
    });
    return out;
}

/// Typical Poisson-Delaunay triangle at intensity 1: R^2 ~ Gamma(2, pi),
/// directions by rejection on the three-fold circle with envelope
/// 3*sqrt(3)/4 (the inscribed equilateral area).
inline TypicalTriangle sample_typical_triangle(Seed seed) {
    Rng rng(seed);
    double r2 = (rng.exponential() + rng.exponential()) / kPi;
    double radius = std::sqrt(r2);
    constexpr double kEnvelope = 1.2990381056766580;  // 3*sqrt(3)/4
    std::array<Point, 3> u{};
    for (;;) {
        for (auto& d : u) {
            double theta = rng.uniform(0.0, 2.0 * kPi);
            d = Point{std::cos(theta), std::sin(theta)};
        }
        double area = 0.5 * std::abs(cross(u[1] - u[0], u[2] - u[0]));
        if (area > 0.0 && rng.uniform01() * kEnvelope < area) break;
    }
    return {radius, u};
}

}  // namespace spex
