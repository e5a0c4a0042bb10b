#pragma once

#include <cmath>
#include <algorithm>
#include <stdexcept>
#include <vector>

namespace spex {

inline constexpr double kPi = 3.14159265358979323846;

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
inline bool operator==(Point a, Point b) { return a.x == b.x && a.y == b.y; }

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm2(Point p) { return p.x * p.x + p.y * p.y; }
inline double norm(Point p) { return std::hypot(p.x, p.y); }
inline double dist(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }
inline double dist2(Point a, Point b) {
    double dx = a.x - b.x, dy = a.y - b.y;
    return dx * dx + dy * dy;
}

/// Truncated point distance d0(x,y) = min(||y-x||, 1).
inline double d0(Point a, Point b) { return std::min(dist(a, b), 1.0); }

/// Finite multiset of planar points; the universal sample/pattern type.
/// Samples of simple processes carry no duplicates.
struct CountingMeasure {
    std::vector<Point> points;

    std::size_t size() const { return points.size(); }
    bool empty() const { return points.empty(); }
    void add(Point p) { points.push_back(p); }
};

/// Centered square observation window [-h, h]^2. The scale constructor
/// keeps the exact area n alongside the derived half side sqrt(n)/2.
class Window {
public:
    explicit Window(double half_side)
        : half_side_(half_side), area_(4.0 * half_side * half_side) {
        if (!(half_side > 0.0) || !std::isfinite(half_side))
            throw std::invalid_argument("Window: half_side must be positive and finite");
    }

    static Window from_scale(double n) {
        if (!(n > 0.0) || !std::isfinite(n))
            throw std::invalid_argument("Window: scale must be positive and finite");
        Window w(std::sqrt(n) / 2.0);
        w.area_ = n;
        return w;
    }

    double half_side() const { return half_side_; }
    double side() const { return 2.0 * half_side_; }
    double area() const { return area_; }

    bool contains(Point p) const {
        return std::abs(p.x) <= half_side_ && std::abs(p.y) <= half_side_;
    }

    Window dilated(double g) const {
        if (g < 0.0) throw std::invalid_argument("Window: negative dilation");
        return Window(half_side_ + g);
    }

private:
    double half_side_;
    double area_;
};

struct DegenerateTriangle : std::runtime_error {
    DegenerateTriangle() : std::runtime_error("degenerate (collinear) triangle") {}
};

// Collinearity test used by all triangle primitives: |signed area| below
// 1e-12 times the squared bounding-box diagonal of the three vertices.
inline bool collinear(Point a, Point b, Point c) {
    double area2 = cross(b - a, c - a);  // twice the signed area
    double lox = std::min({a.x, b.x, c.x}), hix = std::max({a.x, b.x, c.x});
    double loy = std::min({a.y, b.y, c.y}), hiy = std::max({a.y, b.y, c.y});
    double diag2 = (hix - lox) * (hix - lox) + (hiy - loy) * (hiy - loy);
    return std::abs(area2) * 0.5 < 1e-12 * diag2;
}

struct Circumcircle {
    Point center;
    double radius;
};

/// Circumcircle through three non-collinear points.
/// Solved relative to vertex a to avoid cancellation at large offsets.
inline Circumcircle circumcircle(Point a, Point b, Point c) {
    if (collinear(a, b, c)) throw DegenerateTriangle{};
    Point u = b - a, v = c - a;
    double d = 2.0 * cross(u, v);
    double u2 = norm2(u), v2 = norm2(v);
    double ox = (v.y * u2 - u.y * v2) / d;
    double oy = (u.x * v2 - v.x * u2) / d;
    return {Point{a.x + ox, a.y + oy}, std::hypot(ox, oy)};
}

struct TriangleAngles {
    double at_a;
    double at_b;
    double at_c;

    double min() const { return std::min({at_a, at_b, at_c}); }
};

/// Interior angles by the law of cosines; cos inputs clamped to [-1,1].
inline TriangleAngles triangle_angles(Point a, Point b, Point c) {
    if (collinear(a, b, c)) throw DegenerateTriangle{};
    double la2 = dist2(b, c), lb2 = dist2(a, c), lc2 = dist2(a, b);
    double la = std::sqrt(la2), lb = std::sqrt(lb2), lc = std::sqrt(lc2);
    auto clamped_acos = [](double t) { return std::acos(std::clamp(t, -1.0, 1.0)); };
    double aa = clamped_acos((lb2 + lc2 - la2) / (2.0 * lb * lc));
    double ab = clamped_acos((la2 + lc2 - lb2) / (2.0 * la * lc));
    double ac = clamped_acos((la2 + lb2 - lc2) / (2.0 * la * lb));
    return {aa, ab, ac};
}

/// A realized triangle with its circumdata, as carried by tessellations.
struct Triangle {
    Point a, b, c;
    Point circumcenter;
    double circumradius = 0.0;
    double min_angle = 0.0;

    static Triangle from_vertices(Point a, Point b, Point c) {
        Circumcircle cc = circumcircle(a, b, c);
        TriangleAngles ang = triangle_angles(a, b, c);
        return {a, b, c, cc.center, cc.radius, ang.min()};
    }
};

}  // namespace spex
