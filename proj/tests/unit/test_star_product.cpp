#include <doctest.h>

#include <cmath>
#include <complex>

#include "kappaosc/rng.hpp"
#include "kappaosc/star_product.hpp"

using namespace kappaosc;

namespace {

KappaContext make_ctx(double kappa, double m0) {
    KappaContext ctx;
    ctx.kappa = kappa;
    ctx.m0 = m0;
    ctx.tol_solver = 1e-13;
    return ctx;
}

}  // namespace

TEST_CASE("star plane-wave pair construction") {
    SUBCASE("classical regime is undeformed") {
        const KappaContext ctx = make_ctx(1e9, 1.0);
        const PlaneWavePair pair = star_planewaves({0.7, 0.1, 0.0}, {0.0, 1.2, 0.0}, ctx);
        CHECK(relative_deviation(pair.star_spatial_x, pair.p.k) <= 1e-9);
        CHECK(relative_deviation(pair.star_spatial_y, pair.q.k) <= 1e-9);
    }
    SUBCASE("zero first momentum") {
        const KappaContext ctx = make_ctx(1.0, 1.0);
        const Vec3 q{0.0, 0.8, 0.0};
        const PlaneWavePair pair = star_planewaves({}, q, ctx);
        CHECK(pair.star_spatial_x.norm() == 0.0);
        CHECK(pair.star_spatial_y ==
              q * std::exp(-omega_kappa({}, ctx) / (2.0 * ctx.kappa)));
    }
    SUBCASE("documented fixture") {
        const KappaContext ctx = make_ctx(1.0, 1.0);
        const PlaneWavePair pair = star_planewaves({1, 0, 0}, {0, 1, 0}, ctx);
        // e^{+-omega(1)/2}, independent evaluation
        CHECK(pair.star_spatial_x.x == doctest::Approx(1.9318516525781366).epsilon(1e-14));
        CHECK(pair.star_spatial_y.y == doctest::Approx(0.5176380902050415).epsilon(1e-14));
    }
}

TEST_CASE("symbol table") {
    const KappaContext ctx = make_ctx(1.3, 0.7);
    const PlaneWavePair pair = star_planewaves({0.5, -0.2, 0.1}, {0.3, 0.9, 0.0}, ctx);
    const double sinh_p = 2.0 * ctx.kappa * std::sinh(pair.p.e / (2.0 * ctx.kappa));
    const double sinh_q = 2.0 * ctx.kappa * std::sinh(pair.q.e / (2.0 * ctx.kappa));

    CHECK(symbol_eigenvalue(SymbolName::laplace_x, pair, ctx).real() ==
          doctest::Approx(-pair.star_spatial_x.squared_norm()));
    CHECK(symbol_eigenvalue(SymbolName::laplace_y, pair, ctx).real() ==
          doctest::Approx(-pair.star_spatial_y.squared_norm()));
    CHECK(symbol_eigenvalue(SymbolName::shift_x, pair, ctx).real() ==
          doctest::Approx(std::exp(+pair.p.e / ctx.kappa)));
    CHECK(symbol_eigenvalue(SymbolName::shift_y, pair, ctx).real() ==
          doctest::Approx(std::exp(-pair.q.e / ctx.kappa)));
    CHECK(symbol_eigenvalue(SymbolName::dalembert_x, pair, ctx).real() ==
          doctest::Approx(-sinh_p * sinh_p));
    CHECK(symbol_eigenvalue(SymbolName::dalembert_y, pair, ctx).real() ==
          doctest::Approx(-sinh_q * sinh_q));
}

TEST_CASE("bilocal brackets") {
    SUBCASE("massless brackets vanish for any scale") {
        SplitMix64 rng(53);
        for (double kappa : {0.5, 1.0, 10.0}) {
            const KappaContext ctx = make_ctx(kappa, 0.0);
            for (int i = 0; i < 100; ++i) {
                const PlaneWavePair pair = star_planewaves(rng.vec3(2.0), rng.vec3(2.0), ctx);
                for (const MassTerm mode : {MassTerm::augmented, MassTerm::literal}) {
                    const BracketEigenvalues b = bilocal_bracket_eigenvalues(pair, ctx, mode);
                    CHECK(std::abs(b.bx) <= 1e-12);
                    CHECK(std::abs(b.by) <= 1e-12);
                }
            }
        }
    }
    SUBCASE("the cross factor removes the partner dependence") {
        const KappaContext ctx = make_ctx(1.0, 1.0);
        const Vec3 p{1.0, 0.0, 0.0};
        for (const Vec3& q : {Vec3{}, Vec3{1, 0, 0}, Vec3{0, 2, 0}}) {
            const PlaneWavePair pair = star_planewaves(p, q, ctx);
            const std::complex<double> cross =
                symbol_eigenvalue(SymbolName::laplace_x, pair, ctx) *
                symbol_eigenvalue(SymbolName::shift_y, pair, ctx);
            CHECK(std::abs(cross - std::complex<double>{-p.squared_norm(), 0.0}) <= 1e-12);
        }
    }
    SUBCASE("massive shell values") {
        // The literal bracket leaves the squared mass behind; the augmented one
        // annihilates the on-shell wave.
        const KappaContext ctx = make_ctx(1.0, 1.0);
        const PlaneWavePair pair = star_planewaves({0.8, 0.0, 0.4}, {0.1, -0.6, 0.0}, ctx);
        const BracketEigenvalues literal =
            bilocal_bracket_eigenvalues(pair, ctx, MassTerm::literal);
        CHECK(std::abs(std::abs(literal.bx) - 1.0) <= 1e-12);
        CHECK(std::abs(std::abs(literal.by) - 1.0) <= 1e-12);
        const BracketEigenvalues augmented =
            bilocal_bracket_eigenvalues(pair, ctx, MassTerm::augmented);
        CHECK(std::abs(augmented.bx) <= 1e-12);
        CHECK(std::abs(augmented.by) <= 1e-12);
    }
}

TEST_CASE("time shift factors match the shift symbols") {
    const KappaContext ctx = make_ctx(1.0, 1.0);
    const PlaneWavePair pair = star_planewaves({0.8, -0.1, 0.4}, {0.3, 1.1, 0.0}, ctx);
    const std::complex<double> im{0.0, 1.0};
    CHECK(std::abs(symbol_eigenvalue(SymbolName::shift_x, pair, ctx) -
                   time_shift_factor(pair.p.e, -im / ctx.kappa)) <= 1e-12);
    CHECK(std::abs(symbol_eigenvalue(SymbolName::shift_y, pair, ctx) -
                   time_shift_factor(pair.q.e, +im / ctx.kappa)) <= 1e-12);
    // A real translation is a pure phase.
    CHECK(std::abs(time_shift_factor(2.0, 0.5)) == doctest::Approx(1.0));
}

TEST_CASE("mode measure") {
    const KappaContext ctx = make_ctx(1.0, 1.0);
    const double measure = mode_measure({0.7, 0.0, 0.0}, ctx);
    CHECK(measure ==
          doctest::Approx(2.0 * std::sinh(omega_kappa({0.7, 0, 0}, ctx))).epsilon(1e-14));
    CHECK(measure > 0.0);
}

TEST_CASE("the star and deformed-product kernels agree label by label") {
    SUBCASE("zero momenta") {
        const StarEquivalenceReport report =
            circ_star_equivalence({}, {}, make_ctx(1.0, 1.0));
        CHECK(report.max_deviation <= 1e-13);
    }
    SUBCASE("classical regime") {
        const StarEquivalenceReport report =
            circ_star_equivalence({0.4, 0, 0}, {-0.7, 0, 0}, make_ctx(1e9, 1.0));
        CHECK(report.max_deviation <= 1e-9);
    }
    SUBCASE("generic one-dimensional pairs at unit scale") {
        SplitMix64 rng(59);
        const KappaContext ctx = make_ctx(1.0, 1.0);
        for (int i = 0; i < 100; ++i) {
            const Vec3 p{rng.uniform(-2.0, 2.0), 0.0, 0.0};
            const Vec3 q{rng.uniform(-2.0, 2.0), 0.0, 0.0};
            const StarEquivalenceReport report = circ_star_equivalence(p, q, ctx);
            CHECK(report.max_deviation <= 1e-10);
            CHECK(report.relativistic_factor ==
                  doctest::Approx(std::exp(1.5 / ctx.kappa *
                                           (omega_kappa(p, ctx) - omega_kappa(q, ctx))))
                      .epsilon(1e-13));
        }
    }
}

TEST_CASE("constant-theta star phase") {
    const KappaContext ctx = make_ctx(1.0, 0.0);
    ThetaMatrix theta{};

    SUBCASE("zero theta and zero momenta give phase one") {
        const FourMomentum p{1.0, {0.3, 0.0, 0.0}};
        CHECK(moyal_star_planewaves(p, p, theta, ctx) == std::complex<double>{1.0, 0.0});
        theta[1] = 1.0;
        theta[4] = -1.0;
        CHECK(std::abs(moyal_star_planewaves(p, FourMomentum{}, theta, ctx) -
                       std::complex<double>{1.0, 0.0}) == 0.0);
    }
    SUBCASE("documented fixture phase") {
        theta[0 * 4 + 1] = 1.0;
        theta[1 * 4 + 0] = -1.0;
        const FourMomentum p{1.0, {0.0, 0.0, 0.0}};
        const FourMomentum q{0.9, {1.0, 0.0, 0.0}};
        const std::complex<double> phase = moyal_star_planewaves(p, q, theta, ctx);
        CHECK(std::abs(phase - std::exp(std::complex<double>{0.0, 1.0})) <= 1e-14);
    }
    SUBCASE("asymmetric theta is rejected") {
        theta[0 * 4 + 1] = 1.0;
        theta[1 * 4 + 0] = 0.5;
        CHECK_THROWS_WITH_AS(
            moyal_star_planewaves(FourMomentum{}, FourMomentum{}, theta, ctx),
            "theta not antisymmetric", std::invalid_argument);
    }
    SUBCASE("undeformed mass-shell symbols vanish on classical shells") {
        const double mass = 1.3;
        const Vec3 k{0.4, -0.9, 0.2};
        const FourMomentum on_shell{std::sqrt(k.squared_norm() + mass * mass), k};
        CHECK(std::fabs(moyal_kg_symbol(on_shell, mass)) <= 1e-12);
        CHECK(moyal_kg_symbol({2.0, k}, mass) != 0.0);
    }
}
