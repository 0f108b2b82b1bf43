#include "kappaosc/shell_solver.hpp"

#include <cmath>

#include "solve2.hpp"

namespace kappaosc {

ShellSolution solve_coupled(const Vec3& kp, const Vec3& kq, const ShellAssignment& asg,
                            const KappaContext& ctx) {
    ctx.validate();
    if (!asg.valid()) throw std::invalid_argument("shell assignment signs must be +-1");

    const double half_kappa = 2.0 * ctx.kappa;
    auto map = [&](double p0, double q0) {
        return std::pair<double, double>{
            omega_kappa(kp * std::exp(asg.sign_p * q0 / half_kappa), ctx),
            omega_kappa(kq * std::exp(asg.sign_q * p0 / half_kappa), ctx)};
    };

    const auto r = detail::solve_fixed_point_2d(map, omega_kappa(kp, ctx), omega_kappa(kq, ctx),
                                                ctx.tol_solver, ctx.max_iter);
    ShellSolution sol{r.a, r.b, r.iterations, r.residual};
    if (!r.converged) {
        throw SolverError("no convergence: coupled shell residual " +
                              std::to_string(r.residual) + " after " +
                              std::to_string(r.iterations) + " iterations",
                          sol);
    }
    return sol;
}

ShellAssignment binary_shell_assignment(int kind_left, int kind_right) {
    if ((kind_left != 1 && kind_left != -1) || (kind_right != 1 && kind_right != -1))
        throw std::invalid_argument("oscillator kinds must be +-1");
    return ShellAssignment{kind_right, -kind_left};
}

ShellSolution assign_binary_shells(int kind_left, int kind_right, const Vec3& kp, const Vec3& kq,
                                   const KappaContext& ctx) {
    return solve_coupled(kp, kq, binary_shell_assignment(kind_left, kind_right), ctx);
}

}  // namespace kappaosc
