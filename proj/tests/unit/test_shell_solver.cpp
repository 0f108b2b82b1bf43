#include <doctest.h>

#include <cmath>
#include <vector>

#include "kappaosc/flip.hpp"
#include "kappaosc/rng.hpp"
#include "kappaosc/shell_solver.hpp"

using namespace kappaosc;

namespace {

KappaContext make_ctx(double kappa, double m0) {
    KappaContext ctx;
    ctx.kappa = kappa;
    ctx.m0 = m0;
    ctx.tol_solver = 1e-13;
    return ctx;
}

// Independent residual of the coupled system, used by every oracle here.
std::pair<double, double> system_residual(const Vec3& kp, const Vec3& kq,
                                          const ShellAssignment& asg, double p0, double q0,
                                          const KappaContext& ctx) {
    const double half_kappa = 2.0 * ctx.kappa;
    return {omega_kappa(kp * std::exp(asg.sign_p * q0 / half_kappa), ctx) - p0,
            omega_kappa(kq * std::exp(asg.sign_q * p0 / half_kappa), ctx) - q0};
}

}  // namespace

TEST_CASE("zero momenta decouple the system for every assignment") {
    const KappaContext ctx = make_ctx(2.0, 1.5);
    const double expected = 2.0 * ctx.kappa * std::asinh(ctx.m0 / (2.0 * ctx.kappa));
    for (int sp : {-1, +1}) {
        for (int sq : {-1, +1}) {
            const ShellSolution sol = solve_coupled({}, {}, {sp, sq}, ctx);
            CHECK(sol.p0 == doctest::Approx(expected).epsilon(1e-14));
            CHECK(sol.q0 == doctest::Approx(expected).epsilon(1e-14));
        }
    }
}

TEST_CASE("classical regime recovers undeformed energies") {
    const KappaContext ctx = make_ctx(1e9, 1.0);
    const Vec3 kp{1.0, -0.5, 2.0};
    const Vec3 kq{0.3, 0.4, -0.1};
    const ShellSolution sol = solve_coupled(kp, kq, {+1, -1}, ctx);
    CHECK(std::fabs(sol.p0 - std::sqrt(kp.squared_norm() + 1.0)) <= 1e-8);
    CHECK(std::fabs(sol.q0 - std::sqrt(kq.squared_norm() + 1.0)) <= 1e-8);
}

TEST_CASE("documented fixture solves and back-substitutes") {
    const KappaContext ctx = make_ctx(1.0, 1.0);
    const Vec3 kp{1.0, 0.0, 0.0};
    const Vec3 kq{0.0, 1.0, 0.0};
    const ShellSolution sol = solve_coupled(kp, kq, {+1, -1}, ctx);

    // Frozen with an independent arbitrary-precision root find.
    CHECK(sol.p0 == doctest::Approx(1.7309032819367596).epsilon(1e-12));
    CHECK(sol.q0 == doctest::Approx(1.0377561013768143).epsilon(1e-12));

    const auto [rp, rq] = system_residual(kp, kq, {+1, -1}, sol.p0, sol.q0, ctx);
    CHECK(std::fabs(rp) <= 1e-12);
    CHECK(std::fabs(rq) <= 1e-12);
    CHECK(sol.residual <= ctx.tol_solver);
    CHECK(sol.iterations <= ctx.max_iter);
}

TEST_CASE("fixture root is unique in the search box") {
    // Dense scan over (0, 10kappa]^2 with local Newton polish from every cell;
    // all converged polishes must land on the same root.
    const KappaContext ctx = make_ctx(1.0, 1.0);
    const Vec3 kp{1.0, 0.0, 0.0};
    const Vec3 kq{0.0, 1.0, 0.0};
    const ShellAssignment asg{+1, -1};

    std::vector<std::pair<double, double>> roots;
    const int cells = 40;
    for (int i = 1; i <= cells; ++i) {
        for (int j = 1; j <= cells; ++j) {
            double p0 = 10.0 * ctx.kappa * i / cells;
            double q0 = 10.0 * ctx.kappa * j / cells;
            bool converged = false;
            for (int step = 0; step < 60; ++step) {
                const auto [f1, f2] = system_residual(kp, kq, asg, p0, q0, ctx);
                if (std::fmax(std::fabs(f1), std::fabs(f2)) < 1e-11) {
                    converged = true;
                    break;
                }
                const double h = 1e-7;
                const auto [f1a, f2a] = system_residual(kp, kq, asg, p0 + h, q0, ctx);
                const auto [f1b, f2b] = system_residual(kp, kq, asg, p0, q0 + h, ctx);
                const double j11 = (f1a - f1) / h, j12 = (f1b - f1) / h;
                const double j21 = (f2a - f2) / h, j22 = (f2b - f2) / h;
                const double det = j11 * j22 - j12 * j21;
                if (det == 0.0 || !std::isfinite(det)) break;
                p0 -= (j22 * f1 - j12 * f2) / det;
                q0 -= (-j21 * f1 + j11 * f2) / det;
                if (!std::isfinite(p0) || !std::isfinite(q0)) break;
            }
            if (!converged || p0 <= 0.0 || q0 <= 0.0 || p0 > 10.0 || q0 > 10.0) continue;
            bool known = false;
            for (const auto& [rp, rq] : roots) {
                if (std::fabs(rp - p0) < 1e-6 && std::fabs(rq - q0) < 1e-6) known = true;
            }
            if (!known) roots.push_back({p0, q0});
        }
    }
    REQUIRE(roots.size() == 1);
    CHECK(roots[0].first == doctest::Approx(1.7309032819367596).epsilon(1e-9));
    CHECK(roots[0].second == doctest::Approx(1.0377561013768143).epsilon(1e-9));
}

TEST_CASE("binary kind patterns select the documented assignments") {
    CHECK(binary_shell_assignment(+1, +1).sign_p == +1);  // a a
    CHECK(binary_shell_assignment(+1, +1).sign_q == -1);
    CHECK(binary_shell_assignment(-1, -1).sign_p == -1);  // creation pair
    CHECK(binary_shell_assignment(-1, -1).sign_q == +1);
    CHECK(binary_shell_assignment(-1, +1).sign_p == +1);  // creation then annihilation
    CHECK(binary_shell_assignment(-1, +1).sign_q == +1);
    CHECK(binary_shell_assignment(+1, -1).sign_p == -1);  // annihilation then creation
    CHECK(binary_shell_assignment(+1, -1).sign_q == -1);
    CHECK_THROWS_AS(binary_shell_assignment(0, 1), std::invalid_argument);

    const KappaContext ctx = make_ctx(1.0, 1.0);
    const Vec3 kp{0.3, 0.1, 0.0};
    const Vec3 kq{-0.2, 0.4, 0.1};
    const ShellSolution via_kinds = assign_binary_shells(-1, -1, kp, kq, ctx);
    const ShellSolution direct = solve_coupled(kp, kq, {-1, +1}, ctx);
    CHECK(via_kinds.p0 == direct.p0);
    CHECK(via_kinds.q0 == direct.q0);
}

TEST_CASE("frame transform then solve recovers the standard energies") {
    const KappaContext ctx = make_ctx(1.0, 1.0);
    SplitMix64 rng(23);
    for (int i = 0; i < 100; ++i) {
        const Vec3 p = rng.vec3(1.2);
        const Vec3 q = rng.vec3(1.2);
        const double p0 = omega_kappa(p, ctx);
        const double q0 = omega_kappa(q, ctx);
        const auto [pk, qk] =
            transform_to_flip_frame({p0, p}, {q0, q}, FlipFrameVariant::pair_aa, ctx);
        const ShellSolution sol = solve_coupled(pk, qk, {+1, -1}, ctx);
        CHECK(std::fabs(sol.p0 - p0) <= 1e-10);
        CHECK(std::fabs(sol.q0 - q0) <= 1e-10);
    }
}

TEST_CASE("solution error falls off linearly in the inverse scale") {
    const Vec3 kp{1.3, 0.2, 0.0};
    const Vec3 kq{0.4, -1.1, 0.5};
    auto error_at = [&](double kappa) {
        const ShellSolution sol = solve_coupled(kp, kq, {+1, -1}, make_ctx(kappa, 1.0));
        return std::fabs(sol.p0 - std::sqrt(kp.squared_norm() + 1.0)) +
               std::fabs(sol.q0 - std::sqrt(kq.squared_norm() + 1.0));
    };
    const double ratio = error_at(1e3) / error_at(1e6);
    CHECK(ratio > 500.0);
    CHECK(ratio < 2000.0);
}

TEST_CASE("identical inputs give identical iterates") {
    const KappaContext ctx = make_ctx(1.0, 1.0);
    const Vec3 kp{0.7, -0.3, 0.1};
    const Vec3 kq{-0.2, 0.9, 0.4};
    const ShellSolution a = solve_coupled(kp, kq, {+1, +1}, ctx);
    const ShellSolution b = solve_coupled(kp, kq, {+1, +1}, ctx);
    CHECK(a.p0 == b.p0);
    CHECK(a.q0 == b.q0);
    CHECK(a.iterations == b.iterations);
}

TEST_CASE("hopeless momentum-to-scale ratios fail loudly with a payload") {
    // Same-sign assignments have no solution once momenta exceed the scale.
    const KappaContext ctx = make_ctx(0.1, 1.0);
    try {
        solve_coupled({5.0, 0.0, 0.0}, {5.0, 0.0, 0.0}, {+1, +1}, ctx);
        FAIL("expected SolverError");
    } catch (const SolverError& e) {
        CHECK(std::string(e.what()).find("no convergence") != std::string::npos);
        CHECK(e.last_iterate.residual > ctx.tol_solver);
        CHECK(e.last_iterate.iterations > 0);
    }
}
