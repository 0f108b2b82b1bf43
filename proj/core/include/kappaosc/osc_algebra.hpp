#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "kappaosc/context.hpp"
#include "kappaosc/kinematics.hpp"
#include "kappaosc/vec3.hpp"

namespace kappaosc {

/// Oscillator kind, +1 annihilation, -1 creation.
enum class OscKind : int { annihilation = +1, creation = -1 };

constexpr int kind_sign(OscKind k) { return static_cast<int>(k); }

/// One oscillator symbol: kind plus momentum and energy labels. Labels are plain
/// numbers; nothing forces them on any shell.
struct OscFactor {
    OscKind kind{OscKind::creation};
    Vec3 k{};
    double e{0.0};
};

inline OscFactor creation(Vec3 k, double e) { return {OscKind::creation, k, e}; }
inline OscFactor annihilation(Vec3 k, double e) { return {OscKind::annihilation, k, e}; }

/// Momentum-space delta factor, stored as the concrete left-minus-right argument.
struct DeltaFactor {
    Vec3 arg{};
    bool supported(double tol) const { return arg.norm() <= tol; }
};

/// Ordered oscillator word with a complex coefficient and optional delta factors.
/// An empty factor list is a scalar term.
struct Monomial {
    std::complex<double> coeff{1.0, 0.0};
    std::vector<OscFactor> factors;
    std::vector<DeltaFactor> deltas;

    bool creation_only() const;
};

Monomial as_monomial(const OscFactor& f);
Monomial plain_concat(const Monomial& a, const Monomial& b);

/// Linear span of monomials. Canonical form: factor order normalized through the
/// exchange relations, terms sorted by a deterministic key, numerically equal
/// terms merged, and terms with |coeff| <= coeff_drop_tol dropped.
struct TermSum {
    std::vector<Monomial> terms;
};

inline constexpr double coeff_drop_tol = 1e-14;
/// Relative tolerance for treating two real labels as the same number.
inline constexpr double label_match_tol = 1e-12;

/// Exchange-normalized copy: adjacent same-kind factors are bubble-sorted by
/// energy label; each swap applies the plain-product exchange rescale
///   first  <- old second momentum times e^{-s u0 / kappa}
///   second <- old first  momentum times e^{+s v0 / kappa}
/// (s the common kind sign, u0/v0 the old first/second energies). Factors of
/// different kinds are never moved past each other.
Monomial canonical(const Monomial& m, const KappaContext& ctx);
TermSum canonical(const TermSum& sum, const KappaContext& ctx);

bool labels_equal(const Monomial& a, const Monomial& b, double tol = label_match_tol);
bool term_sums_equal(const TermSum& a, const TermSum& b, const KappaContext& ctx,
                     double tol = label_match_tol);

/// Max relative label deviation between canonicalized sums with identical term
/// structure; +infinity when the structures differ.
double max_label_deviation(const TermSum& a, const TermSum& b, const KappaContext& ctx);

/// a + (-1) b, canonicalized. Empty result means the sums are equal.
TermSum term_sum_sub(const TermSum& a, const TermSum& b, const KappaContext& ctx);

/// Kind-dispatched binary product: both momentum labels are rescaled by
/// partner-energy exponentials and the factors concatenated,
///   x.k *= e^{-sign(y.kind) y.e / 2kappa},  y.k *= e^{+sign(x.kind) x.e / 2kappa}.
/// Energy labels are unchanged. Accepts arbitrary (also off-shell) labels.
Monomial circ_binary(const OscFactor& x, const OscFactor& y, const KappaContext& ctx);

/// Commutator under the deformed product. For equal kinds the exchanged words
/// cancel label-exactly and the result is empty. For mixed kinds the value is
/// the defining relation of the algebra: a single scalar term carrying a
/// momentum delta, with the delta placed in [creation, annihilation].
TermSum circ_commutator(const OscFactor& x, const OscFactor& y, const KappaContext& ctx);

/// Product of two creation-only monomials: every factor of m1 has its momentum
/// multiplied by e^{+S2/2kappa}, every factor of m2 by e^{-S1/2kappa}, where S1,
/// S2 are the energy-label sums of the opposite monomial. Throws
/// std::invalid_argument("unsupported factor kind") on annihilation factors.
Monomial circ_monomials(const Monomial& m1, const Monomial& m2, const KappaContext& ctx);

/// n-fold product of single creation oscillators: factor k picks up the rescale
/// exp[(-sum_{l<k} e_l + sum_{j>k} e_j) / 2kappa]. Equivalent to folding
/// circ_monomials and to the neighbor rule (left neighbors contribute
/// e^{-e/2kappa}, right neighbors e^{+e/2kappa}).
Monomial circ_nfold(std::span<const OscFactor> factors, const KappaContext& ctx);

/// circ_binary with the coefficient multiplied by the relativistic factor
/// e^{(3/2kappa)(omega(x.k) - omega(y.k))}.
Monomial circ_relativistic(const OscFactor& x, const OscFactor& y, const KappaContext& ctx);

/// Composed total momentum of a word under the non-Abelian addition law.
/// Creation factors enter with conjugated (negated) labels; for a pure creation
/// word the negated total is returned, so both pure words yield the plain
/// Abelian sum of their original labels.
FourMomentum composed_total(const Monomial& m, const KappaContext& ctx);

/// Which multiplication binds the third oscillator to the exchange identity.
enum class SectorSide { left_plain, left_circ, right_circ };

/// The two expanded words of the three-oscillator exchange identity
/// r * (p q - q p): plain left multiplication, circ left multiplication, or circ
/// right multiplication. The returned sums are equal in canonical form; for the
/// circ sides the inner pair labels carry the shift e^{-r0/2kappa}
/// (left) respectively e^{+r0/2kappa} (right) on both momenta.
std::pair<TermSum, TermSum> sector_factorization(const OscFactor& r, const OscFactor& p,
                                                 const OscFactor& q, SectorSide side,
                                                 const KappaContext& ctx);

struct NonAssociativityReport {
    TermSum lhs;
    TermSum rhs;
    double max_deviation{0.0};
    double tolerance{0.0};
    bool equal{false};
};

/// Mixing plain and circ multiplication is not associative: compares the full
/// circ product of two 2-factor monomials against the bracketing that binds only
/// the middle pair. Reports equal under a 1e-9 relative label tolerance, which
/// holds in the classical regime and fails for generic labels at kappa = O(1).
NonAssociativityReport mixed_nonassociativity_witness(const KappaContext& ctx);
NonAssociativityReport mixed_nonassociativity_witness(const KappaContext& ctx,
                                                      const std::array<Vec3, 4>& momenta);

}  // namespace kappaosc
