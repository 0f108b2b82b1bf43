#include "kappaosc/flip.hpp"

#include <cmath>
#include <stdexcept>

namespace kappaosc {

namespace {

// Back-substitution residual of user-supplied energy labels in the coupled
// shells of the word's kind pattern.
double assignment_residual(const OscFactor& x, const OscFactor& y, const KappaContext& ctx) {
    const ShellAssignment asg = binary_shell_assignment(kind_sign(x.kind), kind_sign(y.kind));
    const double half_kappa = 2.0 * ctx.kappa;
    const double rp = omega_kappa(x.k * std::exp(asg.sign_p * y.e / half_kappa), ctx) - x.e;
    const double rq = omega_kappa(y.k * std::exp(asg.sign_q * x.e / half_kappa), ctx) - y.e;
    return std::fmax(std::fabs(rp), std::fabs(rq));
}

}  // namespace

FlipResult tau_kappa(const OscFactor& x, const OscFactor& y, const KappaContext& ctx) {
    ctx.validate();
    // A little slack over tol_solver: the labels typically come from a previous
    // solve that stopped exactly at the tolerance.
    if (assignment_residual(x, y, ctx) > 16.0 * ctx.tol_solver)
        throw std::invalid_argument("off-assignment input");

    const int eps = kind_sign(x.kind);
    const int eta = kind_sign(y.kind);
    const Vec3 k_first = y.k * std::exp(-eps * x.e / ctx.kappa);
    const Vec3 k_second = x.k * std::exp(+eta * y.e / ctx.kappa);

    // The flipped word has kind pattern (y.kind, x.kind); re-solve its shells.
    ShellSolution flipped = solve_coupled(k_first, k_second, binary_shell_assignment(eta, eps), ctx);

    // Closed form: the flipped energies are the original ones, swapped.
    const double agreement = std::fmax(std::fabs(flipped.p0 - y.e), std::fabs(flipped.q0 - x.e));
    if (agreement > std::fmax(1e-10, 100.0 * ctx.tol_solver))
        throw std::logic_error("flip table disagrees with re-solved shells");

    FlipResult out;
    out.word.factors = {{y.kind, k_first, flipped.p0}, {x.kind, k_second, flipped.q0}};
    Monomial input_word;
    input_word.factors = {x, y};
    out.conserved_momentum = composed_total(input_word, ctx);
    out.energy_total = x.e + y.e;
    out.flipped_shells = flipped;
    return out;
}

double tau_involution_check(const OscFactor& x, const OscFactor& y, const KappaContext& ctx) {
    const FlipResult once = tau_kappa(x, y, ctx);
    const FlipResult twice = tau_kappa(once.word.factors[0], once.word.factors[1], ctx);

    const OscFactor& rx = twice.word.factors[0];
    const OscFactor& ry = twice.word.factors[1];
    double dev = 0.0;
    dev = std::fmax(dev, relative_deviation(rx.k, x.k));
    dev = std::fmax(dev, relative_deviation(rx.e, x.e));
    dev = std::fmax(dev, relative_deviation(ry.k, y.k));
    dev = std::fmax(dev, relative_deviation(ry.e, y.e));
    return dev;
}

ConservationDefect flip_conservation(const OscFactor& x, const OscFactor& y,
                                     const KappaContext& ctx) {
    const FlipResult r = tau_kappa(x, y, ctx);
    const FourMomentum after = composed_total(r.word, ctx);
    return {distance(r.conserved_momentum.k, after.k),
            std::fabs(r.conserved_momentum.e - after.e)};
}

double onshell_flip_energy_defect(const Vec3& p, const Vec3& q, const KappaContext& ctx) {
    const double half_kappa = 2.0 * ctx.kappa;
    auto frame_energy = [&](const Vec3& a, const Vec3& b) {
        const double a0 = omega_kappa(a, ctx);
        const double b0 = omega_kappa(b, ctx);
        return omega_kappa(a * std::exp(-b0 / half_kappa), ctx) +
               omega_kappa(b * std::exp(+a0 / half_kappa), ctx);
    };
    return std::fabs(frame_energy(p, q) - frame_energy(q, p));
}

std::pair<Vec3, Vec3> transform_to_flip_frame(const FourMomentum& p, const FourMomentum& q,
                                              FlipFrameVariant variant, const KappaContext& ctx) {
    const double half_kappa = 2.0 * ctx.kappa;
    switch (variant) {
        case FlipFrameVariant::pair_aa:
            return {p.k * std::exp(-q.e / half_kappa), q.k * std::exp(+p.e / half_kappa)};
        case FlipFrameVariant::pair_cc:
            return {p.k * std::exp(+q.e / half_kappa), q.k * std::exp(-p.e / half_kappa)};
        case FlipFrameVariant::pair_ca:
            return {p.k * std::exp(-q.e / half_kappa), q.k * std::exp(-p.e / half_kappa)};
        case FlipFrameVariant::inverse_ac:
            return {p.k * std::exp(+q.e / ctx.kappa), q.k * std::exp(-p.e / ctx.kappa)};
    }
    throw std::invalid_argument("unknown flip frame variant");
}

std::pair<Vec3, Vec3> transform_from_flip_frame(const Vec3& pk, const Vec3& qk,
                                                FlipFrameVariant variant,
                                                const KappaContext& ctx) {
    const double half_kappa = 2.0 * ctx.kappa;
    ShellAssignment asg;
    switch (variant) {
        case FlipFrameVariant::pair_aa: asg = {+1, -1}; break;
        case FlipFrameVariant::pair_cc: asg = {-1, +1}; break;
        case FlipFrameVariant::pair_ca: asg = {+1, +1}; break;
        case FlipFrameVariant::inverse_ac:
            throw std::invalid_argument("inverse_ac has no shell-solved inverse");
    }
    const ShellSolution sol = solve_coupled(pk, qk, asg, ctx);
    // Undo the frame rescale; the exponent signs are the assignment signs.
    return {pk * std::exp(asg.sign_p * sol.q0 / half_kappa),
            qk * std::exp(asg.sign_q * sol.p0 / half_kappa)};
}

EquivalenceReport equivalence_check(const Vec3& p, const Vec3& q, const KappaContext& ctx) {
    const double p0 = omega_kappa(p, ctx);
    const double q0 = omega_kappa(q, ctx);
    const OscFactor ap = annihilation(p, p0);
    const OscFactor aq = annihilation(q, q0);

    EquivalenceReport report;
    report.circ_word = circ_binary(ap, aq, ctx);
    report.circ_word_swapped = circ_binary(aq, ap, ctx);

    const auto [pk, qk] =
        transform_to_flip_frame({p0, p}, {q0, q}, FlipFrameVariant::pair_aa, ctx);
    report.shells = solve_coupled(pk, qk, ShellAssignment{+1, -1}, ctx);

    double dev = std::fmax(relative_deviation(report.shells.p0, p0),
                           relative_deviation(report.shells.q0, q0));

    const FlipResult flipped =
        tau_kappa(annihilation(pk, report.shells.p0), annihilation(qk, report.shells.q0), ctx);
    report.flip_word = flipped.word;

    for (std::size_t i = 0; i < 2; ++i) {
        const OscFactor& a = report.flip_word.factors[i];
        const OscFactor& b = report.circ_word_swapped.factors[i];
        dev = std::fmax(dev, relative_deviation(a.k, b.k));
        dev = std::fmax(dev, relative_deviation(a.e, b.e));
    }
    report.max_deviation = dev;
    return report;
}

}  // namespace kappaosc
