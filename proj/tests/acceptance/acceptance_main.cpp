// Acceptance suite: one pass/fail line per criterion, nonzero exit on failure.
// Every tolerance is pinned here; nothing is deferred to configuration.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <Eigen/SVD>

#include "kappaosc/cli.hpp"
#include "kappaosc/clusters.hpp"
#include "kappaosc/flip.hpp"
#include "kappaosc/rng.hpp"
#include "kappaosc/serialize.hpp"
#include "kappaosc/star_product.hpp"

using namespace kappaosc;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] %2d %-28s %s\n", pass ? "PASS" : "FAIL", number, name.c_str(),
                detail.c_str());
    if (!pass) ++failures;
}

std::string residual_line(double value, double threshold, const char* cmp = "<=") {
    char buffer[128];
    std::snprintf(buffer, sizeof(buffer), "worst %.3e %s %.1e", value, cmp, threshold);
    return buffer;
}

KappaContext make_ctx(double kappa, double m0) {
    KappaContext ctx;
    ctx.kappa = kappa;
    ctx.m0 = m0;
    ctx.tol_solver = 1e-13;
    ctx.max_iter = 200;
    return ctx;
}

// 1. Dispersion closure and classical limit.
void criterion_dispersion() {
    SplitMix64 rng(1001);
    double worst_residual = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const KappaContext ctx = make_ctx(rng.uniform(0.5, 10.0), rng.uniform(0.0, 10.0));
        const Vec3 k = rng.vec3(5.0);
        worst_residual = std::fmax(worst_residual,
                                   shell_residual({omega_kappa(k, ctx), k}, ctx));
    }
    double worst_classical = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const KappaContext ctx = make_ctx(1e9, rng.uniform(0.0, 10.0));
        const Vec3 k = rng.vec3(5.0);
        const double classical = std::sqrt(k.squared_norm() + ctx.m0 * ctx.m0);
        if (classical == 0.0) continue;
        worst_classical =
            std::fmax(worst_classical, std::fabs(omega_kappa(k, ctx) - classical) / classical);
    }
    const bool pass = worst_residual <= 1e-12 && worst_classical <= 1e-9;
    report(1, "dispersion closure", pass,
           residual_line(worst_residual, 1e-12) + "; classical " +
               residual_line(worst_classical, 1e-9));
}

// 2. Composition laws.
void criterion_composition() {
    const KappaContext ctx = make_ctx(1.0, 1.0);
    SplitMix64 rng(1002);
    double worst = 0.0;
    bool energy_exact = true;
    for (int i = 0; i < 1000; ++i) {
        const FourMomentum a{rng.uniform(0.0, 2.0), rng.vec3(2.0)};
        const FourMomentum b{rng.uniform(0.0, 2.0), rng.vec3(2.0)};
        const FourMomentum c{rng.uniform(0.0, 2.0), rng.vec3(2.0)};
        const FourMomentum left = compose(compose(a, b, ctx), c, ctx);
        const FourMomentum right = compose(a, compose(b, c, ctx), ctx);
        worst = std::fmax(worst, relative_deviation(left.k, right.k));
        worst = std::fmax(worst, relative_deviation(left.e, right.e));
        energy_exact = energy_exact && compose(a, b, ctx).e == a.e + b.e;
    }
    const FourMomentum p{1.0, {1.0, 0.0, 0.0}};
    const FourMomentum q{1.0, {0.0, 1.0, 0.0}};
    const double witness = distance(compose(p, q, ctx).k, compose(q, p, ctx).k);
    const bool pass = worst <= 1e-12 && energy_exact && witness > 0.1;
    report(2, "composition laws", pass,
           residual_line(worst, 1e-12) + "; witness " + residual_line(witness, 0.1, ">"));
}

// 3. Deformed product algebra.
void criterion_circ_algebra() {
    const KappaContext ctx = make_ctx(1.0, 1.0);
    SplitMix64 rng(1003);
    bool commutators_vanish = true;
    double worst_compensation = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const Vec3 pk = rng.vec3(2.0);
        const Vec3 qk = rng.vec3(2.0);
        const double p0 = omega_kappa(pk, ctx);
        const double q0 = omega_kappa(qk, ctx);
        for (const OscKind kind : {OscKind::annihilation, OscKind::creation}) {
            commutators_vanish =
                commutators_vanish &&
                circ_commutator({kind, pk, p0}, {kind, qk, q0}, ctx).terms.empty();
            const FourMomentum total =
                composed_total(circ_binary({kind, pk, p0}, {kind, qk, q0}, ctx), ctx);
            worst_compensation = std::fmax(worst_compensation,
                                           relative_deviation(total.k, pk + qk));
            worst_compensation = std::fmax(worst_compensation,
                                           relative_deviation(total.e, p0 + q0));
        }
    }
    double worst_fold = 0.0;
    for (int n = 2; n <= 5; ++n) {
        for (int rep = 0; rep < 100; ++rep) {
            std::vector<OscFactor> fs;
            for (int i = 0; i < n; ++i) {
                const Vec3 k = rng.vec3(1.5);
                fs.push_back(creation(k, omega_kappa(k, ctx)));
            }
            const Monomial direct = circ_nfold(fs, ctx);
            Monomial folded = as_monomial(fs[0]);
            for (int i = 1; i < n; ++i) folded = circ_monomials(folded, as_monomial(fs[i]), ctx);
            for (std::size_t i = 0; i < fs.size(); ++i) {
                worst_fold = std::fmax(
                    worst_fold, relative_deviation(direct.factors[i].k, folded.factors[i].k));
            }
        }
    }
    const bool pass = commutators_vanish && worst_compensation <= 1e-12 && worst_fold <= 1e-12;
    report(3, "deformed product algebra", pass,
           "compensation " + residual_line(worst_compensation, 1e-12) + "; fold " +
               residual_line(worst_fold, 1e-12));
}

// 4. Flip suite.
void criterion_flip() {
    const KappaContext ctx = make_ctx(1.0, 1.0);
    SplitMix64 rng(1004);
    double worst_involution = 0.0;
    double worst_conservation = 0.0;
    for (const auto [kx, ky] :
         {std::pair{OscKind::annihilation, OscKind::annihilation},
          std::pair{OscKind::annihilation, OscKind::creation},
          std::pair{OscKind::creation, OscKind::annihilation},
          std::pair{OscKind::creation, OscKind::creation}}) {
        for (int i = 0; i < 250; ++i) {
            const Vec3 kp = rng.vec3(0.5);
            const Vec3 kq = rng.vec3(0.5);
            const ShellSolution sol =
                assign_binary_shells(kind_sign(kx), kind_sign(ky), kp, kq, ctx);
            const OscFactor x{kx, kp, sol.p0};
            const OscFactor y{ky, kq, sol.q0};
            worst_involution = std::fmax(worst_involution, tau_involution_check(x, y, ctx));
            const ConservationDefect defect = flip_conservation(x, y, ctx);
            worst_conservation =
                std::fmax(worst_conservation, std::fmax(defect.momentum, defect.energy));
        }
    }
    const double contrast_unit = onshell_flip_energy_defect({1, 0, 0}, {0, 2, 0}, ctx);
    const double contrast_classical =
        onshell_flip_energy_defect({1, 0, 0}, {0, 2, 0}, make_ctx(1e9, 1.0));
    const bool pass = worst_involution <= 1e-10 && worst_conservation <= 1e-10 &&
                      contrast_unit > 1e-3 && contrast_classical <= 1e-9;
    report(4, "flip suite", pass,
           "tau^2 " + residual_line(worst_involution, 1e-10) + "; conservation " +
               residual_line(worst_conservation, 1e-10) + "; contrast " +
               residual_line(contrast_classical, 1e-9));
}

// 5. Equivalence of the two deformation pictures.
void criterion_equivalence() {
    const KappaContext ctx = make_ctx(1.0, 1.0);
    SplitMix64 rng(1005);
    double worst = 0.0;
    double worst_residual = 0.0;
    int worst_iterations = 0;
    for (int i = 0; i < 250; ++i) {
        const EquivalenceReport r = equivalence_check(rng.vec3(1.0), rng.vec3(1.0), ctx);
        worst = std::fmax(worst, r.max_deviation);
        worst_residual = std::fmax(worst_residual, r.shells.residual);
        worst_iterations = std::max(worst_iterations, r.shells.iterations);
    }
    const bool pass = worst <= 1e-10 && worst_residual <= 1e-12 && worst_iterations <= 200;
    report(5, "picture equivalence", pass,
           residual_line(worst, 1e-10) + "; solver " + residual_line(worst_residual, 1e-12) +
               "; iters <= " + std::to_string(worst_iterations));
}

// 6. Sector factorization shifts and mixed non-associativity.
void criterion_sector() {
    const KappaContext ctx = make_ctx(1.0, 1.0);
    SplitMix64 rng(1006);
    double worst_shift = 0.0;
    for (int i = 0; i < 200; ++i) {
        const Vec3 rk = rng.vec3(0.8);
        const Vec3 pk = rng.vec3(0.8);
        const Vec3 qk = rng.vec3(0.8);
        const OscFactor r = creation(rk, omega_kappa(rk, ctx));
        const OscFactor p = creation(pk, omega_kappa(pk, ctx));
        const OscFactor q = creation(qk, omega_kappa(qk, ctx));
        const Monomial baseline = circ_binary(p, q, ctx);

        const auto [left, lrhs] = sector_factorization(r, p, q, SectorSide::left_circ, ctx);
        const double down = std::exp(-r.e / (2.0 * ctx.kappa));
        worst_shift = std::fmax(worst_shift, relative_deviation(left.terms[0].factors[1].k,
                                                                baseline.factors[0].k * down));
        worst_shift = std::fmax(worst_shift, relative_deviation(left.terms[0].factors[2].k,
                                                                baseline.factors[1].k * down));

        const auto [right, rrhs] = sector_factorization(r, p, q, SectorSide::right_circ, ctx);
        const double up = std::exp(+r.e / (2.0 * ctx.kappa));
        worst_shift = std::fmax(worst_shift, relative_deviation(right.terms[0].factors[0].k,
                                                                baseline.factors[0].k * up));
        worst_shift = std::fmax(worst_shift, relative_deviation(right.terms[0].factors[1].k,
                                                                baseline.factors[1].k * up));
        if (!term_sum_sub(left, lrhs, ctx).terms.empty() ||
            !term_sum_sub(right, rrhs, ctx).terms.empty()) {
            worst_shift = std::numeric_limits<double>::infinity();
        }
    }
    const bool unit_unequal = !mixed_nonassociativity_witness(make_ctx(1.0, 1.0)).equal;
    const bool classical_equal = mixed_nonassociativity_witness(make_ctx(1e9, 1.0)).equal;
    const bool pass = worst_shift <= 1e-12 && unit_unequal && classical_equal;
    report(6, "sector factorization", pass,
           "shift " + residual_line(worst_shift, 1e-12) +
               (unit_unequal ? "; witness unequal at unit scale" : "; witness FAILED") +
               (classical_equal ? ", equal classically" : ", classical FAILED"));
}

// 7. Cluster non-factorizability on the 8-point grid.
void criterion_cluster() {
    const Grid2 grid = Grid2::uniform_1d(8, -2.0, 2.0);
    const Amplitude2 input = default_packet_fixture(grid);
    std::vector<double> metrics;
    for (const double kappa : {1.0, 4.0, 16.0}) {
        metrics.push_back(
            factorizability_metric(smear_cluster(input, grid, make_ctx(kappa, 0.0))));
    }
    const double classical =
        factorizability_metric(smear_cluster(input, grid, make_ctx(1e9, 0.0)));
    const bool pass = classical <= 1e-12 && metrics[0] > 1e-6 && metrics[0] > metrics[1] &&
                      metrics[1] > metrics[2];
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "metric(1)=%.3e > metric(4)=%.3e > metric(16)=%.3e; classical %.1e <= 1e-12",
                  metrics[0], metrics[1], metrics[2], classical);
    report(7, "cluster non-factorizability", pass, detail);
}

// 8. Bilocal equation and Moyal contrast.
void criterion_bilocal() {
    SplitMix64 rng(1008);
    double worst_bracket = 0.0;
    for (const double kappa : {0.5, 1.0, 10.0}) {
        const KappaContext ctx = make_ctx(kappa, 0.0);
        for (int i = 0; i < 100; ++i) {
            const PlaneWavePair pair = star_planewaves(rng.vec3(2.0), rng.vec3(2.0), ctx);
            const BracketEigenvalues b = bilocal_bracket_eigenvalues(pair, ctx);
            worst_bracket = std::fmax(worst_bracket, std::abs(b.bx));
            worst_bracket = std::fmax(worst_bracket, std::abs(b.by));
        }
    }
    const KappaContext unit = make_ctx(1.0, 1.0);
    double worst_independence = 0.0;
    const Vec3 p{1.0, 0.0, 0.0};
    for (const Vec3& q : {Vec3{}, Vec3{1, 0, 0}, Vec3{0, 2, 0}}) {
        const PlaneWavePair pair = star_planewaves(p, q, unit);
        const std::complex<double> cross =
            symbol_eigenvalue(SymbolName::laplace_x, pair, unit) *
            symbol_eigenvalue(SymbolName::shift_y, pair, unit);
        worst_independence =
            std::fmax(worst_independence,
                      std::abs(cross - std::complex<double>{-p.squared_norm(), 0.0}));
    }
    ThetaMatrix theta{};
    theta[0 * 4 + 1] = 1.0;
    theta[1 * 4 + 0] = -1.0;
    const std::complex<double> phase = moyal_star_planewaves(
        {1.0, {0.0, 0.0, 0.0}}, {0.9, {1.0, 0.0, 0.0}}, theta, make_ctx(1.0, 0.0));
    const double phase_dev = std::abs(phase - std::exp(std::complex<double>{0.0, 1.0}));
    const bool pass =
        worst_bracket <= 1e-12 && worst_independence <= 1e-12 && phase_dev <= 1e-14;
    report(8, "bilocal equation", pass,
           "brackets " + residual_line(worst_bracket, 1e-12) + "; moyal " +
               residual_line(phase_dev, 1e-14));
}

// 9. Star versus relativistic deformed product.
void criterion_star_equivalence() {
    const KappaContext ctx = make_ctx(1.0, 1.0);
    SplitMix64 rng(1009);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const Vec3 p{rng.uniform(-2.0, 2.0), 0.0, 0.0};
        const Vec3 q{rng.uniform(-2.0, 2.0), 0.0, 0.0};
        worst = std::fmax(worst, circ_star_equivalence(p, q, ctx).max_deviation);
    }
    report(9, "star/product equivalence", worst <= 1e-10, residual_line(worst, 1e-10));
}

// 10. Command-line verification determinism.
void criterion_cli() {
    RunConfig config;
    config.draws = 60;
    const CommandResult first = cmd_verify(config);
    const CommandResult second = cmd_verify(config);
    const bool pass =
        first.exit_code == 0 && second.exit_code == 0 && first.output == second.output;
    report(10, "cli verify", pass,
           std::string("exit ") + std::to_string(first.exit_code) +
               (first.output == second.output ? ", reports identical" : ", reports DIFFER"));
}

}  // namespace

int main() {
    criterion_dispersion();
    criterion_composition();
    criterion_circ_algebra();
    criterion_flip();
    criterion_equivalence();
    criterion_sector();
    criterion_cluster();
    criterion_bilocal();
    criterion_star_equivalence();
    criterion_cli();
    std::printf("ACCEPTANCE: %d/10 criteria passed\n", 10 - failures);
    return failures == 0 ? 0 : 1;
}
