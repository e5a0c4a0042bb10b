#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "spex/geometry.hpp"
#include "spex/predicates.hpp"

namespace spex {

struct TooFewPoints : std::runtime_error {
    TooFewPoints() : std::runtime_error("triangulation needs at least 3 points") {}
};
struct DegenerateConfiguration : std::runtime_error {
    DegenerateConfiguration() : std::runtime_error("all points collinear") {}
};

/// Delaunay triangulation of a planar pattern. Triangles are stored CCW
/// with vertex indices into the input; nb[k] is the neighbor across the
/// edge opposite vertex k, -1 on the hull.
class Triangulation {
public:
    struct Tri {
        std::array<int, 3> v;
        std::array<int, 3> nb;
        Point circumcenter;
        double circumradius;
        double min_angle;
    };

    const std::vector<Point>& points() const { return pts_; }
    const std::vector<Tri>& triangles() const { return tris_; }
    std::size_t hull_size() const { return hull_size_; }

    Triangle materialize(std::size_t t) const {
        const Tri& tr = tris_[t];
        return {pts_[static_cast<std::size_t>(tr.v[0])], pts_[static_cast<std::size_t>(tr.v[1])],
                pts_[static_cast<std::size_t>(tr.v[2])], tr.circumcenter, tr.circumradius,
                tr.min_angle};
    }

    std::vector<Point> pts_;
    std::vector<Tri> tris_;
    std::size_t hull_size_ = 0;
};

namespace detail {

struct BuildTri {
    std::array<int, 3> v;
    std::array<int, 3> nb;
    bool alive;
};

// Convex hull vertex count (monotone chain). Points strictly on a hull
// edge count as hull vertices, matching what any triangulation of the
// hull exposes on its boundary.
inline std::size_t hull_point_count(std::vector<Point> pts) {
    std::sort(pts.begin(), pts.end(), [](Point a, Point b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](Point a, Point b) { return a.x == b.x && a.y == b.y; }),
              pts.end());
    std::size_t n = pts.size();
    if (n < 3) return n;
    std::vector<Point> h(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 && orient(h[k - 2], h[k - 1], pts[i]) < 0) --k;
        h[k++] = pts[i];
    }
    for (std::size_t i = n - 1, lo = k + 1; i-- > 0;) {
        while (k >= lo && orient(h[k - 2], h[k - 1], pts[i]) < 0) --k;
        h[k++] = pts[i];
    }
    return k - 1;
}

class BowyerWatson {
public:
    BowyerWatson(const std::vector<Point>& input, double scale) : input_(input) {
        pts_ = input;
        n_real_ = static_cast<int>(pts_.size());
        double lox = pts_[0].x, hix = lox, loy = pts_[0].y, hiy = loy;
        for (const Point& p : pts_) {
            lox = std::min(lox, p.x);
            hix = std::max(hix, p.x);
            loy = std::min(loy, p.y);
            hiy = std::max(hiy, p.y);
        }
        double cx = 0.5 * (lox + hix), cy = 0.5 * (loy + hiy);
        double ext = std::max({hix - lox, hiy - loy, 1e-9});
        double s = scale * ext;
        pts_.push_back({cx - 2.6 * s, cy - 1.5 * s});
        pts_.push_back({cx + 2.6 * s, cy - 1.5 * s});
        pts_.push_back({cx, cy + 3.0 * s});
        tris_.push_back({{n_real_, n_real_ + 1, n_real_ + 2}, {-1, -1, -1}, true});
    }

    // Insert in a spatially sorted order so the locate walk stays short.
    void run() {
        std::vector<int> order(static_cast<std::size_t>(n_real_));
        for (int i = 0; i < n_real_; ++i) order[static_cast<std::size_t>(i)] = i;
        sort_snake(order);
        int hint = 0;
        for (int idx : order) hint = insert(idx, hint);
    }

    int inserted() const { return inserted_; }

    void extract(Triangulation& out) const {
        out.pts_ = input_;
        out.tris_.clear();
        std::vector<int> remap(tris_.size(), -1);
        for (std::size_t t = 0; t < tris_.size(); ++t) {
            const BuildTri& bt = tris_[t];
            if (!bt.alive || bt.v[0] >= n_real_ || bt.v[1] >= n_real_ || bt.v[2] >= n_real_)
                continue;
            remap[t] = static_cast<int>(out.tris_.size());
            out.tris_.push_back({});
        }
        std::size_t w = 0;
        for (std::size_t t = 0; t < tris_.size(); ++t) {
            if (remap[t] < 0) continue;
            const BuildTri& bt = tris_[t];
            Triangulation::Tri& dst = out.tris_[w++];
            dst.v = bt.v;
            for (int k = 0; k < 3; ++k) {
                int nb = bt.nb[static_cast<std::size_t>(k)];
                dst.nb[static_cast<std::size_t>(k)] =
                    (nb >= 0) ? remap[static_cast<std::size_t>(nb)] : -1;
            }
            Point a = input_[static_cast<std::size_t>(bt.v[0])];
            Point b = input_[static_cast<std::size_t>(bt.v[1])];
            Point c = input_[static_cast<std::size_t>(bt.v[2])];
            Circumcircle cc = circumcircle(a, b, c);
            dst.circumcenter = cc.center;
            dst.circumradius = cc.radius;
            dst.min_angle = triangle_angles(a, b, c).min();
        }
    }

private:
    void sort_snake(std::vector<int>& order) {
        if (order.size() < 64) return;
        double lox = input_[0].x, hix = lox, loy = input_[0].y, hiy = loy;
        for (const Point& p : input_) {
            lox = std::min(lox, p.x);
            hix = std::max(hix, p.x);
            loy = std::min(loy, p.y);
            hiy = std::max(hiy, p.y);
        }
        int k = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(order.size()) / 8.0)));
        double wx = (hix - lox) / k, wy = (hiy - loy) / k;
        if (wx <= 0.0 || wy <= 0.0) return;
        auto cell_key = [&](int i) {
            Point p = input_[static_cast<std::size_t>(i)];
            int cx = std::min(k - 1, static_cast<int>((p.x - lox) / wx));
            int cy = std::min(k - 1, static_cast<int>((p.y - loy) / wy));
            int col = (cy % 2 == 0) ? cx : (k - 1 - cx);  // snake rows
            return static_cast<std::int64_t>(cy) * k + col;
        };
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return cell_key(a) < cell_key(b); });
    }

    Point pt(int i) const { return pts_[static_cast<std::size_t>(i)]; }

    // Visibility walk from the hint triangle.
    int locate(Point p, int hint) const {
        int t = hint;
        for (std::size_t step = 0; step < tris_.size() + 16; ++step) {
            if (!tris_[static_cast<std::size_t>(t)].alive) break;
            const BuildTri& bt = tris_[static_cast<std::size_t>(t)];
            int next = -1;
            for (int k = 0; k < 3; ++k) {
                Point e1 = pt(bt.v[static_cast<std::size_t>((k + 1) % 3)]);
                Point e2 = pt(bt.v[static_cast<std::size_t>((k + 2) % 3)]);
                if (orient(e1, e2, p) < 0) {
                    next = bt.nb[static_cast<std::size_t>(k)];
                    break;
                }
            }
            if (next == -1) return t;
            t = next;
        }
        // Degenerate walk; fall back to scanning.
        for (std::size_t i = 0; i < tris_.size(); ++i) {
            const BuildTri& bt = tris_[i];
            if (!bt.alive) continue;
            bool inside = true;
            for (int k = 0; k < 3 && inside; ++k)
                inside = orient(pt(bt.v[static_cast<std::size_t>((k + 1) % 3)]),
                                pt(bt.v[static_cast<std::size_t>((k + 2) % 3)]), p) >= 0;
            if (inside) return static_cast<int>(i);
        }
        throw std::logic_error("delaunay: point location failed");
    }

    std::uint8_t get_mark(int t) const {
        std::size_t i = static_cast<std::size_t>(t);
        return mark_epoch_[i] == epoch_ ? mark_state_[i] : 0;
    }
    void set_mark(int t, std::uint8_t s) {
        std::size_t i = static_cast<std::size_t>(t);
        mark_epoch_[i] = epoch_;
        mark_state_[i] = s;
    }

    bool in_circumdisk(int t, Point p) const {
        const BuildTri& bt = tris_[static_cast<std::size_t>(t)];
        return incircle(pt(bt.v[0]), pt(bt.v[1]), pt(bt.v[2]), p) > 0;
    }

    // Returns a new triangle id usable as the next locate hint.
    int insert(int pi, int hint) {
        Point p = pt(pi);
        int t0 = locate(p, hint);
        {
            const BuildTri& bt = tris_[static_cast<std::size_t>(t0)];
            for (int k = 0; k < 3; ++k)
                if (pt(bt.v[static_cast<std::size_t>(k)]) == p) return t0;  // exact duplicate
        }
        ++inserted_;

        // Cavity BFS over strictly conflicting triangles. Marks are
        // epoch-versioned so nothing is cleared between insertions.
        ++epoch_;
        mark_epoch_.resize(tris_.size(), 0);
        mark_state_.resize(tris_.size(), 0);
        bad_.clear();
        stack_.assign(1, t0);
        set_mark(t0, 1);
        while (!stack_.empty()) {
            int t = stack_.back();
            stack_.pop_back();
            if (!in_circumdisk(t, p)) {
                set_mark(t, 2);  // visited, kept
                continue;
            }
            set_mark(t, 3);  // bad
            bad_.push_back(t);
            for (int nb : tris_[static_cast<std::size_t>(t)].nb) {
                if (nb >= 0 && get_mark(nb) == 0) {
                    set_mark(nb, 1);
                    stack_.push_back(nb);
                }
            }
        }
        if (bad_.empty()) {
            // p cocircular-or-outside everywhere near t0; the containing
            // triangle always strictly conflicts, so this means p is a
            // duplicate-within-rounding. Skip it.
            --inserted_;
            return t0;
        }

        // Cavity boundary: edges of bad triangles whose neighbor is kept.
        boundary_.clear();
        for (int t : bad_) {
            const BuildTri& bt = tris_[static_cast<std::size_t>(t)];
            for (int k = 0; k < 3; ++k) {
                int nb = bt.nb[static_cast<std::size_t>(k)];
                if (nb >= 0 && get_mark(nb) == 3) continue;
                boundary_.push_back({bt.v[static_cast<std::size_t>((k + 1) % 3)],
                                     bt.v[static_cast<std::size_t>((k + 2) % 3)], nb});
            }
        }

        for (int t : bad_) {
            tris_[static_cast<std::size_t>(t)].alive = false;
            free_.push_back(t);
        }

        // Fan p to every boundary edge; stitch via the boundary cycle.
        created_.clear();
        for (const BoundaryEdge& e : boundary_) {
            int id;
            if (!free_.empty()) {
                id = free_.back();
                free_.pop_back();
                tris_[static_cast<std::size_t>(id)] = {{pi, e.a, e.b}, {e.outer, -1, -1}, true};
            } else {
                id = static_cast<int>(tris_.size());
                tris_.push_back({{pi, e.a, e.b}, {e.outer, -1, -1}, true});
                mark_epoch_.push_back(0);
                mark_state_.push_back(0);
            }
            if (e.outer >= 0) {
                BuildTri& out = tris_[static_cast<std::size_t>(e.outer)];
                for (int k = 0; k < 3; ++k) {
                    int nb = out.nb[static_cast<std::size_t>(k)];
                    if (nb >= 0 && get_mark(nb) == 3) {
                        // Identify the slot by the shared edge, not the old id:
                        // several bad triangles may have bordered e.outer.
                        int u = out.v[static_cast<std::size_t>((k + 1) % 3)];
                        int w = out.v[static_cast<std::size_t>((k + 2) % 3)];
                        if ((u == e.b && w == e.a) || (u == e.a && w == e.b))
                            out.nb[static_cast<std::size_t>(k)] = id;
                    }
                }
            }
            created_.push_back(id);
        }
        // nb[1] is across edge (b, p); nb[2] across (p, a). Consecutive fan
        // triangles share these: match on the common boundary vertex.
        for (std::size_t i = 0; i < created_.size(); ++i) {
            const BuildTri& ti = tris_[static_cast<std::size_t>(created_[i])];
            for (std::size_t j = 0; j < created_.size(); ++j) {
                if (i == j) continue;
                const BuildTri& tj = tris_[static_cast<std::size_t>(created_[j])];
                if (ti.v[2] == tj.v[1]) {  // edge (b_i, p) == (p, a_j)
                    tris_[static_cast<std::size_t>(created_[i])].nb[1] = created_[j];
                    tris_[static_cast<std::size_t>(created_[j])].nb[2] = created_[i];
                }
            }
        }
        return created_.back();
    }

    struct BoundaryEdge {
        int a, b, outer;
    };

    const std::vector<Point>& input_;
    std::vector<Point> pts_;
    std::vector<BuildTri> tris_;
    std::vector<int> free_;
    std::vector<int> bad_;
    std::vector<int> stack_;
    std::vector<int> created_;
    std::vector<BoundaryEdge> boundary_;
    std::vector<std::uint32_t> mark_epoch_;
    std::vector<std::uint8_t> mark_state_;
    std::uint32_t epoch_ = 0;
    int n_real_ = 0;
    int inserted_ = 0;
};

}  // namespace detail

/// Delaunay triangulation by incremental Bowyer-Watson insertion with an
/// in-circle epsilon ladder backed by exact rational arithmetic. The
/// virtual enclosing triangle is huge (1e6 x data extent); if hull-edge
/// erosion is ever detected via the Euler count it is rebuilt larger.
inline Triangulation triangulate(const CountingMeasure& points) {
    if (points.size() < 3) throw TooFewPoints{};
    {
        bool any_area = false;
        const Point p0 = points.points[0];
        std::size_t j = 1;
        while (j < points.size() && points.points[j] == p0) ++j;
        for (std::size_t k = j + 1; k < points.size() && !any_area; ++k)
            any_area = detail::orient(p0, points.points[j], points.points[k]) != 0;
        if (!any_area) throw DegenerateConfiguration{};
    }

    double scale = 1e6;
    Triangulation out;
    for (int attempt = 0; attempt < 3; ++attempt, scale *= 100.0) {
        detail::BowyerWatson bw(points.points, scale);
        bw.run();
        bw.extract(out);
        std::size_t h = detail::hull_point_count(points.points);
        std::size_t expect = 2 * static_cast<std::size_t>(bw.inserted()) - h - 2;
        if (out.tris_.size() == expect) break;
        // Cocircular ties can legitimately change nothing on retry; the
        // Euler count is only guaranteed in general position.
        if (attempt == 2) break;
    }
    out.hull_size_ = detail::hull_point_count(points.points);
    return out;
}

/// Brute-force empty-circumdisk oracle: true iff no input point lies
/// strictly inside any triangle's circumdisk (strictly: closer to the
/// center than radius * (1 - 1e-9)).
inline bool verify_empty_circumdisk(const Triangulation& tri, const CountingMeasure& points) {
    for (const auto& t : tri.triangles()) {
        double lim = t.circumradius * (1.0 - 1e-9);
        double lim2 = lim * lim;
        for (const Point& p : points.points) {
            if (dist2(p, t.circumcenter) < lim2) return false;
        }
    }
    return true;
}

/// Triangles unaffected by unsampled points: circumcenter inside the
/// window and circumdisk inside the guard-extended sampled region.
inline std::vector<Triangle> interior_triangles(const Triangulation& tri, const Window& window,
                                                double guard) {
    if (guard < 0.0) throw std::invalid_argument("interior_triangles: negative guard");
    double hw = window.half_side();
    double hs = hw + guard;
    std::vector<Triangle> out;
    for (std::size_t i = 0; i < tri.triangles().size(); ++i) {
        const auto& t = tri.triangles()[i];
        Point c = t.circumcenter;
        double r = t.circumradius;
        if (std::abs(c.x) <= hw && std::abs(c.y) <= hw && std::abs(c.x) + r <= hs &&
            std::abs(c.y) + r <= hs)
            out.push_back(tri.materialize(i));
    }
    return out;
}

}  // namespace spex
