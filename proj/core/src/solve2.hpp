#pragma once

// Internal 2-D root helper: damped fixed-point phase followed by Newton with a
// finite-difference Jacobian. Shared by the coupled-shell solver and the
// cluster resampling inverse maps.

#include <cmath>
#include <utility>

namespace kappaosc::detail {

struct Solve2Result {
    double a{0.0};
    double b{0.0};
    int iterations{0};
    double residual{0.0};
    bool converged{false};
};

// map(a, b) returns the fixed-point targets (A, B); the residual is
// max(|A - a|, |B - b|).
template <class Map>
Solve2Result solve_fixed_point_2d(Map&& map, double a, double b, double tol, int max_iter) {
    Solve2Result out;
    double previous_residual = std::numeric_limits<double>::infinity();
    double best_a = a, best_b = b;
    double best_residual = std::numeric_limits<double>::infinity();
    double damping = 1.0;
    int iter = 0;

    const int fixed_point_budget = max_iter / 2;
    for (; iter < fixed_point_budget; ++iter) {
        const auto [ta, tb] = map(a, b);
        const double residual = std::fmax(std::fabs(ta - a), std::fabs(tb - b));
        if (!std::isfinite(residual)) break;  // hand over to Newton from the best seen
        if (residual <= tol) {
            out = {ta, tb, iter + 1, residual, true};
            return out;
        }
        if (residual < best_residual) {
            best_residual = residual;
            best_a = a;
            best_b = b;
        }
        damping = residual > previous_residual ? 0.5 : 1.0;
        previous_residual = residual;
        a += damping * (ta - a);
        b += damping * (tb - b);
    }
    // Start Newton from the best iterate the fixed point reached.
    if (std::isfinite(best_residual)) {
        const auto [ta, tb] = map(a, b);
        const double current = std::fmax(std::fabs(ta - a), std::fabs(tb - b));
        if (!std::isfinite(current) || current > best_residual) {
            a = best_a;
            b = best_b;
        }
    }

    // Newton on F(a, b) = map(a, b) - (a, b), with the step clipped to a trust
    // radius and backtracked when it does not reduce the residual.
    auto F = [&map](double u, double v) {
        const auto [tu, tv] = map(u, v);
        return std::pair<double, double>{tu - u, tv - v};
    };
    double residual = std::numeric_limits<double>::infinity();
    for (; iter < max_iter; ++iter) {
        const auto [f1, f2] = F(a, b);
        residual = std::fmax(std::fabs(f1), std::fabs(f2));
        if (residual <= tol) {
            out = {a, b, iter + 1, residual, true};
            return out;
        }
        const double ha = 1e-7 * std::fmax(1.0, std::fabs(a));
        const double hb = 1e-7 * std::fmax(1.0, std::fabs(b));
        const auto [f1a, f2a] = F(a + ha, b);
        const auto [f1b, f2b] = F(a, b + hb);
        const double j11 = (f1a - f1) / ha, j12 = (f1b - f1) / hb;
        const double j21 = (f2a - f2) / ha, j22 = (f2b - f2) / hb;
        const double det = j11 * j22 - j12 * j21;
        if (det == 0.0 || !std::isfinite(det)) break;
        double da = (j22 * f1 - j12 * f2) / det;
        double db = (-j21 * f1 + j11 * f2) / det;
        const double radius = 2.0 * std::fmax(1.0, std::fmax(std::fabs(a), std::fabs(b)));
        const double norm = std::fmax(std::fabs(da), std::fabs(db));
        if (norm > radius) {
            da *= radius / norm;
            db *= radius / norm;
        }
        double step = 1.0;
        for (int backtrack = 0; backtrack < 8; ++backtrack) {
            const auto [g1, g2] = F(a - step * da, b - step * db);
            const double next = std::fmax(std::fabs(g1), std::fabs(g2));
            if (next < residual) break;
            step *= 0.5;
        }
        a -= step * da;
        b -= step * db;
    }

    const auto [f1, f2] = F(a, b);
    residual = std::fmax(std::fabs(f1), std::fabs(f2));
    out = {a, b, iter, residual, residual <= tol};
    return out;
}

}  // namespace kappaosc::detail
