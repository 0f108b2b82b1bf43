#pragma once

#include <stdexcept>
#include <string>

namespace kappaosc {

/// Deformation scale, mass and numeric tolerances threaded through every computation.
///
/// Units: hbar = c = 1, kappa carries energy units and all momenta are expressed
/// in the same unit.
struct KappaContext {
    double kappa{1.0};        ///< deformation parameter, > 0
    double m0{1.0};           ///< mass, >= 0
    double tol_shell{1e-9};   ///< accepted mass-shell residual
    double tol_solver{1e-12}; ///< coupled-shell solver residual target
    int max_iter{200};        ///< solver iteration budget

    /// Above this scale (momenta O(1)) the deformation is numerically invisible;
    /// limit tests treat such contexts as classical.
    static constexpr double classical_regime = 1e9;

    bool classical() const { return kappa >= classical_regime; }

    void validate() const {
        std::string problems;
        auto complain = [&problems](const char* msg) {
            if (!problems.empty()) problems += "; ";
            problems += msg;
        };
        if (!(kappa > 0.0)) complain("kappa must be > 0");
        if (!(m0 >= 0.0)) complain("m0 must be >= 0");
        if (!(tol_shell > 0.0)) complain("tol_shell must be > 0");
        if (!(tol_solver > 0.0)) complain("tol_solver must be > 0");
        if (max_iter <= 0) complain("max_iter must be positive");
        if (!problems.empty()) throw std::invalid_argument("invalid context: " + problems);
    }
};

}  // namespace kappaosc
