#pragma once

#include <array>
#include <complex>

#include "kappaosc/context.hpp"
#include "kappaosc/kinematics.hpp"
#include "kappaosc/osc_algebra.hpp"
#include "kappaosc/shell_solver.hpp"

namespace kappaosc {

/// Deformed product of two spatial plane waves: the wave vectors pick up
/// partner-energy exponentials while the time frequencies stay the on-shell
/// energies, phase convention e^{i(p0 x0 + q0 y0)}.
struct PlaneWavePair {
    FourMomentum p;
    FourMomentum q;
    Vec3 star_spatial_x;  ///< p.k e^{+omega(q)/2kappa}
    Vec3 star_spatial_y;  ///< q.k e^{-omega(p)/2kappa}
};

PlaneWavePair star_planewaves(const Vec3& p, const Vec3& q, const KappaContext& ctx);

/// Momentum-representation symbols of the bilocal operators. Convention: spatial
/// derivatives pick up i times the star wave vector, i d/dx0 evaluates to -p0,
/// so the time shift operators e^{+-i d0/kappa} become the real factors
/// e^{-+p0/kappa}, and the deformed d'Alembert square evaluates to
/// -(2 kappa sinh(p0/2kappa))^2. This is the unique real-argument choice that
/// reduces the bilocal bracket to the deformed mass shell.
enum class SymbolName { laplace_x, laplace_y, shift_x, shift_y, dalembert_x, dalembert_y };

std::complex<double> symbol_eigenvalue(SymbolName name, const PlaneWavePair& pair,
                                       const KappaContext& ctx);

/// With `augmented` the bracket carries the -m0^2 term and annihilates on-shell
/// waves for any mass; `literal` keeps the massless form, which evaluates to
/// the squared mass on the massive shell.
enum class MassTerm { augmented, literal };

struct BracketEigenvalues {
    std::complex<double> bx;
    std::complex<double> by;
};

/// Eigenvalues of the two bilocal field-equation brackets on a star plane-wave
/// pair. The cross factor in laplace_x * shift_y cancels the partner
/// exponentials, so bx is independent of q (and by of p); both vanish on the
/// massless shell.
BracketEigenvalues bilocal_bracket_eigenvalues(const PlaneWavePair& pair, const KappaContext& ctx,
                                               MassTerm mode = MassTerm::augmented);

/// Mode-density measure 2 kappa sinh(omega(p)/kappa); reported alongside kernel
/// labels, not used in identity checks.
double mode_measure(const Vec3& p, const KappaContext& ctx);

/// Multiplicative factor the symbol table assigns to a (possibly complex) shift
/// of the time argument: e^{i energy delta}.
std::complex<double> time_shift_factor(double energy, std::complex<double> delta);

struct StarEquivalenceReport {
    ShellSolution shells;          ///< coupled energies of the modified dispersion
    Vec3 star_label_x;             ///< star-side spatial labels
    Vec3 star_label_y;
    double relativistic_factor{1.0};
    Monomial circ_word;            ///< relativistic deformed product, same labels
    double measure_p{0.0};
    double measure_q{0.0};
    double max_deviation{0.0};
};

/// Label-level equivalence of the star picture and the relativistic deformed
/// product: both kernels are built on the coupled shells and must agree label by
/// label (<= 1e-10), including the relativistic prefactor.
StarEquivalenceReport circ_star_equivalence(const Vec3& p, const Vec3& q,
                                            const KappaContext& ctx);

/// Row-major 4x4 constant noncommutativity matrix.
using ThetaMatrix = std::array<double, 16>;

bool theta_antisymmetric(const ThetaMatrix& theta, double tol = 1e-12);

/// Moyal-Weyl phase exp(i p_mu theta^{mu nu} q_nu / kappa^2) of two plane waves.
/// Throws std::invalid_argument("theta not antisymmetric") on invalid input.
std::complex<double> moyal_star_planewaves(const FourMomentum& p, const FourMomentum& q,
                                           const ThetaMatrix& theta, const KappaContext& ctx);

/// Undeformed Klein-Gordon symbol p0^2 - |k|^2 - m^2; the Moyal bilocal equation
/// factorizes into two of these.
double moyal_kg_symbol(const FourMomentum& p, double mass);

}  // namespace kappaosc
