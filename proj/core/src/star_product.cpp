#include "kappaosc/star_product.hpp"

#include <cmath>
#include <stdexcept>

namespace kappaosc {

PlaneWavePair star_planewaves(const Vec3& p, const Vec3& q, const KappaContext& ctx) {
    const double half_kappa = 2.0 * ctx.kappa;
    const double p0 = omega_kappa(p, ctx);
    const double q0 = omega_kappa(q, ctx);
    PlaneWavePair pair;
    pair.p = {p0, p};
    pair.q = {q0, q};
    pair.star_spatial_x = p * std::exp(+q0 / half_kappa);
    pair.star_spatial_y = q * std::exp(-p0 / half_kappa);
    return pair;
}

std::complex<double> symbol_eigenvalue(SymbolName name, const PlaneWavePair& pair,
                                       const KappaContext& ctx) {
    const double half_kappa = 2.0 * ctx.kappa;
    switch (name) {
        case SymbolName::laplace_x:
            return -pair.star_spatial_x.squared_norm();
        case SymbolName::laplace_y:
            return -pair.star_spatial_y.squared_norm();
        case SymbolName::shift_x:
            return std::exp(+pair.p.e / ctx.kappa);
        case SymbolName::shift_y:
            return std::exp(-pair.q.e / ctx.kappa);
        case SymbolName::dalembert_x: {
            const double s = 2.0 * ctx.kappa * std::sinh(pair.p.e / half_kappa);
            return -s * s;
        }
        case SymbolName::dalembert_y: {
            const double s = 2.0 * ctx.kappa * std::sinh(pair.q.e / half_kappa);
            return -s * s;
        }
    }
    throw std::invalid_argument("unknown symbol");
}

BracketEigenvalues bilocal_bracket_eigenvalues(const PlaneWavePair& pair,
                                               const KappaContext& ctx, MassTerm mode) {
    // The literal bracket evaluates to +m0^2 on the massive shell; subtracting
    // m0^2 makes it annihilate on-shell waves for any mass.
    const double mass_shift = mode == MassTerm::augmented ? -ctx.m0 * ctx.m0 : 0.0;
    BracketEigenvalues out;
    out.bx = symbol_eigenvalue(SymbolName::laplace_x, pair, ctx) *
                 symbol_eigenvalue(SymbolName::shift_y, pair, ctx) -
             symbol_eigenvalue(SymbolName::dalembert_x, pair, ctx) + mass_shift;
    out.by = symbol_eigenvalue(SymbolName::laplace_y, pair, ctx) *
                 symbol_eigenvalue(SymbolName::shift_x, pair, ctx) -
             symbol_eigenvalue(SymbolName::dalembert_y, pair, ctx) + mass_shift;
    return out;
}

double mode_measure(const Vec3& p, const KappaContext& ctx) {
    return 2.0 * ctx.kappa * std::sinh(omega_kappa(p, ctx) / ctx.kappa);
}

std::complex<double> time_shift_factor(double energy, std::complex<double> delta) {
    return std::exp(std::complex<double>{0.0, 1.0} * energy * delta);
}

StarEquivalenceReport circ_star_equivalence(const Vec3& p, const Vec3& q,
                                            const KappaContext& ctx) {
    const double half_kappa = 2.0 * ctx.kappa;
    StarEquivalenceReport report;

    // Coupled shells of the modified dispersion: p0 runs on the contracted
    // momentum, q0 on the expanded one.
    report.shells = solve_coupled(p, q, ShellAssignment{-1, +1}, ctx);
    const double p0 = report.shells.p0;
    const double q0 = report.shells.q0;

    report.star_label_x = p * std::exp(+q0 / half_kappa);
    report.star_label_y = q * std::exp(-p0 / half_kappa);
    report.relativistic_factor =
        std::exp(1.5 / ctx.kappa * (omega_kappa(p, ctx) - omega_kappa(q, ctx)));
    report.measure_p = mode_measure(p, ctx);
    report.measure_q = mode_measure(q, ctx);

    report.circ_word = circ_relativistic(creation(p, p0), creation(q, q0), ctx);

    double dev = 0.0;
    dev = std::fmax(dev, relative_deviation(report.star_label_x, report.circ_word.factors[0].k));
    dev = std::fmax(dev, relative_deviation(report.star_label_y, report.circ_word.factors[1].k));
    dev = std::fmax(dev, relative_deviation(p0, report.circ_word.factors[0].e));
    dev = std::fmax(dev, relative_deviation(q0, report.circ_word.factors[1].e));
    dev = std::fmax(dev,
                    std::abs(report.circ_word.coeff - std::complex<double>{
                                                          report.relativistic_factor, 0.0}) /
                        std::fmax(1.0, report.relativistic_factor));
    report.max_deviation = dev;
    return report;
}

bool theta_antisymmetric(const ThetaMatrix& theta, double tol) {
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu)
            if (std::fabs(theta[4 * mu + nu] + theta[4 * nu + mu]) > tol) return false;
    return true;
}

std::complex<double> moyal_star_planewaves(const FourMomentum& p, const FourMomentum& q,
                                           const ThetaMatrix& theta, const KappaContext& ctx) {
    if (!theta_antisymmetric(theta)) throw std::invalid_argument("theta not antisymmetric");
    const std::array<double, 4> pv{p.e, p.k.x, p.k.y, p.k.z};
    const std::array<double, 4> qv{q.e, q.k.x, q.k.y, q.k.z};
    double bilinear = 0.0;
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) bilinear += pv[mu] * theta[4 * mu + nu] * qv[nu];
    return std::exp(std::complex<double>{0.0, bilinear / (ctx.kappa * ctx.kappa)});
}

double moyal_kg_symbol(const FourMomentum& p, double mass) {
    return p.e * p.e - p.k.squared_norm() - mass * mass;
}

}  // namespace kappaosc
