#pragma once

#include <stdexcept>
#include <string>

#include "kappaosc/context.hpp"
#include "kappaosc/kinematics.hpp"
#include "kappaosc/vec3.hpp"

namespace kappaosc {

/// Sign pair selecting which partner-dependent dispersion relation each side of a
/// binary product satisfies. sign_p scales p's momentum with the partner energy
/// q0, sign_q scales q's momentum with p0.
struct ShellAssignment {
    int sign_p{+1};
    int sign_q{-1};

    bool valid() const {
        return (sign_p == 1 || sign_p == -1) && (sign_q == 1 || sign_q == -1);
    }
};

struct ShellSolution {
    double p0{0.0};
    double q0{0.0};
    int iterations{0};
    double residual{0.0};
};

/// Thrown when the coupled-shell iteration fails to reach tol_solver; carries the
/// last iterate so callers can report it.
class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& what, ShellSolution last)
        : std::runtime_error(what), last_iterate(last) {}

    ShellSolution last_iterate;
};

/// Solve the coupled deformed mass shells
///   p0 = omega_kappa(kp e^{sign_p q0 / 2kappa}),
///   q0 = omega_kappa(kq e^{sign_q p0 / 2kappa}).
///
/// Damped fixed-point iteration seeded at the uncoupled energies; after
/// max_iter/2 steps without convergence it switches to a 2x2 Newton iteration
/// with a finite-difference Jacobian. Deterministic: no randomized restarts.
ShellSolution solve_coupled(const Vec3& kp, const Vec3& kq, const ShellAssignment& asg,
                            const KappaContext& ctx);

/// Shell assignment induced by the kinds of a binary oscillator product,
/// kind +1 = annihilation, -1 = creation: (sign_p, sign_q) = (kind_right, -kind_left).
ShellAssignment binary_shell_assignment(int kind_left, int kind_right);

/// binary_shell_assignment followed by solve_coupled.
ShellSolution assign_binary_shells(int kind_left, int kind_right, const Vec3& kp,
                                   const Vec3& kq, const KappaContext& ctx);

}  // namespace kappaosc
