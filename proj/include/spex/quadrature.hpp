#pragma once

#include <cmath>
#include <cstddef>

namespace spex {

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0;
    std::size_t evaluations = 0;
};

namespace detail {

// 15-point Kronrod nodes/weights on [-1,1] with the embedded 7-point
// Gauss rule (QUADPACK dqk15 constants). Odd-index nodes are the Gauss
// nodes.
inline constexpr double kGK15Nodes[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691, 0.7415311855993944,
    0.5860872354676911, 0.4058451513773972, 0.2077849550078985, 0.0};
inline constexpr double kGK15WeightsK[8] = {
    0.0229353220105292, 0.0630920926299786, 0.1047900103222502, 0.1406532597155259,
    0.1690047266392679, 0.1903505780647854, 0.2044329400752989, 0.2094821410847278};
inline constexpr double kGK15WeightsG[4] = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189, 0.4179591836734694};

template <typename F>
void gk15_panel(F&& f, double a, double b, double& kronrod, double& err,
                std::size_t& evals) {
    double mid = 0.5 * (a + b);
    double half = 0.5 * (b - a);
    double fc = f(mid);
    double resk = kGK15WeightsK[7] * fc;
    double resg = kGK15WeightsG[3] * fc;
    for (int j = 0; j < 7; ++j) {
        double x = half * kGK15Nodes[j];
        double sum = f(mid - x) + f(mid + x);
        resk += kGK15WeightsK[j] * sum;
        if (j % 2 == 1) resg += kGK15WeightsG[j / 2] * sum;
    }
    evals += 15;
    kronrod = resk * half;
    err = std::abs((resk - resg) * half);
}

template <typename F>
void gk15_adaptive(F&& f, double a, double b, double tol, int depth, QuadResult& acc) {
    double k, e;
    gk15_panel(f, a, b, k, e, acc.evaluations);
    if (e <= tol || depth >= 52) {
        acc.value += k;
        acc.abs_error += e;
        return;
    }
    double mid = 0.5 * (a + b);
    gk15_adaptive(f, a, mid, 0.5 * tol, depth + 1, acc);
    gk15_adaptive(f, mid, b, 0.5 * tol, depth + 1, acc);
}

}  // namespace detail

/// Adaptive Gauss-Kronrod quadrature to an absolute tolerance.
template <typename F>
QuadResult integrate(F&& f, double a, double b, double abs_tol = 1e-10) {
    QuadResult acc;
    if (a == b) return acc;
    detail::gk15_adaptive(f, a, b, abs_tol, 0, acc);
    return acc;
}

/// Iterated 2-D quadrature over [ax,bx] x [ay,by]; inner integrals run at
/// a tighter tolerance so the outer error estimate stays meaningful.
template <typename F>
QuadResult integrate2d(F&& f, double ax, double bx, double ay, double by,
                       double abs_tol = 1e-8) {
    QuadResult acc;
    std::size_t inner_evals = 0;
    auto outer = [&](double x) {
        QuadResult r = integrate([&](double y) { return f(x, y); }, ay, by, abs_tol * 1e-2);
        inner_evals += r.evaluations;
        return r.value;
    };
    acc = integrate(outer, ax, bx, abs_tol);
    acc.evaluations += inner_evals;
    return acc;
}

}  // namespace spex
