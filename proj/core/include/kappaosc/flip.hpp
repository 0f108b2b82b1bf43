#pragma once

#include <utility>

#include "kappaosc/osc_algebra.hpp"
#include "kappaosc/shell_solver.hpp"

namespace kappaosc {

struct FlipResult {
    Monomial word;                    ///< flipped two-factor word
    FourMomentum conserved_momentum;  ///< composed total, invariant under the flip
    double energy_total{0.0};         ///< sum of the input energy labels
    ShellSolution flipped_shells;     ///< re-solved energies of the flipped pair
};

/// Deformed flip of a binary oscillator word. The factor order is exchanged and
/// the momentum labels pick up full partner-energy exponentials,
///   first  <- (y.kind, y.k e^{-sign(x.kind) x.e / kappa})
///   second <- (x.kind, x.k e^{+sign(y.kind) y.e / kappa}).
///
/// Precondition: the input energy labels satisfy the coupled shells of the input
/// kind pattern (back-substitution checked against tol_solver); otherwise throws
/// std::invalid_argument("off-assignment input"). The flipped energies are
/// re-solved through the coupled-shell solver rather than copied from the
/// closed form; the two must agree and a mismatch throws std::logic_error.
FlipResult tau_kappa(const OscFactor& x, const OscFactor& y, const KappaContext& ctx);

/// Applies tau_kappa twice; returns the max relative label deviation from the
/// original pair. Contract: <= 1e-10 inside the solver convergence region.
double tau_involution_check(const OscFactor& x, const OscFactor& y, const KappaContext& ctx);

struct ConservationDefect {
    double momentum{0.0};
    double energy{0.0};
};

/// Norm differences of the composed total three-momentum and total energy
/// before and after tau_kappa. Contract: both <= 1e-10.
ConservationDefect flip_conservation(const OscFactor& x, const OscFactor& y,
                                     const KappaContext& ctx);

/// Contrast mode: the exchange with every oscillator kept on the standard
/// (uncoupled) shell does not conserve the two-particle energy. Builds the
/// half-exponent frame pair for (p, q) and for (q, p), sums the standard-shell
/// energies of each, and returns the absolute difference. Zero for p = q,
/// strictly positive for generic unequal momenta at finite kappa, O(1/kappa)
/// in the classical regime.
double onshell_flip_energy_defect(const Vec3& p, const Vec3& q, const KappaContext& ctx);

/// Momentum-pair transforms connecting the deformed-product picture with the
/// flip picture, named by the kind pattern they serve (a annihilation,
/// c creation). The first three use half exponents with the standard-shell
/// energies carried by the inputs; inverse_ac is the full-exponent map that
/// rewrites the mixed product relation.
enum class FlipFrameVariant { pair_aa, pair_cc, pair_ca, inverse_ac };

std::pair<Vec3, Vec3> transform_to_flip_frame(const FourMomentum& p, const FourMomentum& q,
                                              FlipFrameVariant variant, const KappaContext& ctx);

/// Inverse of transform_to_flip_frame for the three pair variants: solves the
/// coupled shells of the variant's kind pattern and unscales. Throws for
/// inverse_ac, whose inverse needs caller-supplied energies.
std::pair<Vec3, Vec3> transform_from_flip_frame(const Vec3& pk, const Vec3& qk,
                                                FlipFrameVariant variant,
                                                const KappaContext& ctx);

struct EquivalenceReport {
    Monomial circ_word;          ///< deformed product of the on-shell pair
    Monomial circ_word_swapped;  ///< deformed product with exchanged arguments
    Monomial flip_word;          ///< tau applied to the frame-transformed pair
    ShellSolution shells;        ///< coupled energies recovered in the frame
    double max_deviation{0.0};   ///< worst label disagreement across the check
};

/// End-to-end equivalence of the two deformation pictures: the exchange
/// identity of the deformed product maps, under the frame transform plus
/// coupled-shell solving, onto the flip relation. The flipped word must equal
/// the exchanged product word label by label (<= 1e-10) and the recovered
/// energies must match the standard-shell inputs.
EquivalenceReport equivalence_check(const Vec3& p, const Vec3& q, const KappaContext& ctx);

}  // namespace kappaosc
