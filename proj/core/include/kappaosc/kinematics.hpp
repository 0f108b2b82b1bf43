#pragma once

#include <span>
#include <vector>

#include "kappaosc/context.hpp"
#include "kappaosc/vec3.hpp"

namespace kappaosc {

/// Energy plus spatial momentum. On-shell status is always computed, never cached;
/// labels get rescaled constantly downstream and a cached flag would go stale.
struct FourMomentum {
    double e{0.0};
    Vec3 k{};

    friend constexpr bool operator==(const FourMomentum&, const FourMomentum&) = default;

    bool finite() const { return std::isfinite(e) && k.finite(); }
    bool on_shell(const KappaContext& ctx) const;
};

/// log(x + sqrt(x^2+1)) with a series branch near zero to avoid cancellation.
double arcsinh_stable(double x);

/// Positive root of the deformed mass-shell condition
///   (2 kappa sinh(e / 2 kappa))^2 - k.k = m0^2,
/// explicitly 2 kappa arcsinh(sqrt(k.k + m0^2) / (2 kappa)).
double omega_kappa(const Vec3& k, const KappaContext& ctx);

/// |k.k + m0^2 - (2 kappa sinh(e/2 kappa))^2|
double shell_residual(const FourMomentum& p, const KappaContext& ctx);

/// d omega / d|k|, used for Jacobians of momentum rescale maps.
double omega_kappa_radial_derivative(double knorm, const KappaContext& ctx);

/// Non-Abelian composition of momentum labels:
///   spatial: p.k e^{q.e/2kappa} + q.k e^{-p.e/2kappa},  energy: p.e + q.e.
/// Inputs may be off-shell; the result generally is, even for on-shell inputs.
FourMomentum compose(const FourMomentum& p, const FourMomentum& q, const KappaContext& ctx);

/// Composition with exchanged roles; equals compose(q, p) exactly.
FourMomentum compose_flipped(const FourMomentum& p, const FourMomentum& q, const KappaContext& ctx);

/// Left fold of compose. The composition is associative, so the bracketing is
/// irrelevant up to roundoff. Throws std::invalid_argument("empty composition")
/// for an empty list.
FourMomentum compose_n(std::span<const FourMomentum> momenta, const KappaContext& ctx);

}  // namespace kappaosc
