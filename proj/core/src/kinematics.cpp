#include "kappaosc/kinematics.hpp"

#include <cmath>
#include <stdexcept>

namespace kappaosc {

double arcsinh_stable(double x) {
    const double ax = std::fabs(x);
    if (ax < 1e-4) {
        // arcsinh(x) = x - x^3/6 + 3 x^5/40 - ...
        const double x2 = x * x;
        return x * (1.0 - x2 / 6.0 + 3.0 * x2 * x2 / 40.0);
    }
    return std::copysign(std::log(ax + std::sqrt(ax * ax + 1.0)), x);
}

double omega_kappa(const Vec3& k, const KappaContext& ctx) {
    const double arg = std::sqrt(k.squared_norm() + ctx.m0 * ctx.m0) / (2.0 * ctx.kappa);
    return 2.0 * ctx.kappa * arcsinh_stable(arg);
}

double shell_residual(const FourMomentum& p, const KappaContext& ctx) {
    const double s = 2.0 * ctx.kappa * std::sinh(p.e / (2.0 * ctx.kappa));
    return std::fabs(p.k.squared_norm() + ctx.m0 * ctx.m0 - s * s);
}

bool FourMomentum::on_shell(const KappaContext& ctx) const {
    return shell_residual(*this, ctx) <= ctx.tol_shell;
}

double omega_kappa_radial_derivative(double knorm, const KappaContext& ctx) {
    const double energy = std::sqrt(knorm * knorm + ctx.m0 * ctx.m0);
    if (energy == 0.0) return 0.0;
    // d/d|k| [2k asinh(E/2k)] = |k| / (E sqrt(1 + (E/2k)^2)), and the square root
    // is cosh(omega/2kappa).
    const double half = energy / (2.0 * ctx.kappa);
    return knorm / (energy * std::sqrt(1.0 + half * half));
}

FourMomentum compose(const FourMomentum& p, const FourMomentum& q, const KappaContext& ctx) {
    const double half_kappa = 2.0 * ctx.kappa;
    return {p.e + q.e,
            p.k * std::exp(q.e / half_kappa) + q.k * std::exp(-p.e / half_kappa)};
}

FourMomentum compose_flipped(const FourMomentum& p, const FourMomentum& q,
                             const KappaContext& ctx) {
    return compose(q, p, ctx);
}

FourMomentum compose_n(std::span<const FourMomentum> momenta, const KappaContext& ctx) {
    if (momenta.empty()) throw std::invalid_argument("empty composition");
    FourMomentum total = momenta.front();
    for (std::size_t i = 1; i < momenta.size(); ++i) total = compose(total, momenta[i], ctx);
    return total;
}

}  // namespace kappaosc
