#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>

#include "spex/geometry.hpp"

namespace spex {
namespace detail {

using BigRational = boost::multiprecision::cpp_rational;

// Epsilon ladder shared by both predicates: the double-precision
// determinant is trusted when it exceeds 1e-12 times its term magnitude;
// otherwise the sign is recomputed in exact rational arithmetic.
inline constexpr double kLadderEps = 1e-12;

inline int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

template <typename T>
int exact_sign(const T& x) {
    return (x > 0) - (x < 0);
}

/// Orientation of c relative to the directed line a -> b:
/// +1 left (counterclockwise), -1 right, 0 collinear.
inline int orient(Point a, Point b, Point c) {
    double t1 = (b.x - a.x) * (c.y - a.y);
    double t2 = (b.y - a.y) * (c.x - a.x);
    double det = t1 - t2;
    double mag = std::abs(t1) + std::abs(t2);
    if (std::abs(det) > kLadderEps * mag) return sign_of(det);
    BigRational ax(a.x), ay(a.y), bx(b.x), by(b.y), cx(c.x), cy(c.y);
    BigRational e = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
    return exact_sign(e);
}

/// In-circle test: +1 when d lies strictly inside the circumcircle of the
/// counterclockwise triangle (a,b,c), -1 strictly outside, 0 cocircular.
inline int incircle(Point a, Point b, Point c, Point d) {
    double adx = a.x - d.x, ady = a.y - d.y;
    double bdx = b.x - d.x, bdy = b.y - d.y;
    double cdx = c.x - d.x, cdy = c.y - d.y;
    double ad2 = adx * adx + ady * ady;
    double bd2 = bdx * bdx + bdy * bdy;
    double cd2 = cdx * cdx + cdy * cdy;

    double m1 = bdy * cd2 - cdy * bd2;
    double m2 = bdx * cd2 - cdx * bd2;
    double m3 = bdx * cdy - cdx * bdy;
    double det = adx * m1 - ady * m2 + ad2 * m3;
    double mag = std::abs(adx) * (std::abs(bdy * cd2) + std::abs(cdy * bd2)) +
                 std::abs(ady) * (std::abs(bdx * cd2) + std::abs(cdx * bd2)) +
                 ad2 * (std::abs(bdx * cdy) + std::abs(cdx * bdy));
    if (std::abs(det) > kLadderEps * mag) return sign_of(det);

    BigRational radx(a.x), rady(a.y), rbdx(b.x), rbdy(b.y), rcdx(c.x), rcdy(c.y), rdx(d.x),
        rdy(d.y);
    radx -= rdx;
    rady -= rdy;
    rbdx -= rdx;
    rbdy -= rdy;
    rcdx -= rdx;
    rcdy -= rdy;
    BigRational rad2 = radx * radx + rady * rady;
    BigRational rbd2 = rbdx * rbdx + rbdy * rbdy;
    BigRational rcd2 = rcdx * rcdx + rcdy * rcdy;
    BigRational e = radx * (rbdy * rcd2 - rcdy * rbd2) - rady * (rbdx * rcd2 - rcdx * rbd2) +
                    rad2 * (rbdx * rcdy - rcdx * rbdy);
    return exact_sign(e);
}

}  // namespace detail
}  // namespace spex
