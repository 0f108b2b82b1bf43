#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kappaosc/clusters.hpp"
#include "kappaosc/serialize.hpp"
#include "kappaosc/star_product.hpp"

namespace kappaosc {

struct VerifyOptions {
    double kappa{1.0};
    double m0{1.0};
    std::uint64_t seed{12345};
    int draws{200};
    ExponentConvention convention{ExponentConvention::full};
    MassTerm massterm{MassTerm::augmented};
    /// Testing hook: perturbs the flipped word between the two flip
    /// applications so the involution suite must fail.
    bool inject_flip_fault{false};
};

/// One invariant check. `comparison` is "<=" for residual bounds and ">" for
/// witness magnitudes that must stay away from zero.
struct InvariantCheck {
    std::string suite;      ///< owning module
    std::string name;       ///< unique check name
    std::string relation;   ///< which algebraic relation is exercised
    std::string comparison; ///< "<=" or ">"
    double residual{0.0};
    double threshold{0.0};
    bool pass{false};
    std::string error;      ///< non-empty when the check aborted
};

/// Runs every invariant suite of every module once. Identity-style suites run
/// at the configured kappa and m0; fixture suites (witnesses, limits, trends)
/// pin their own scales so the outcome does not depend on the configuration.
std::vector<InvariantCheck> run_invariant_suites(const VerifyOptions& options);

/// Machine-readable report, schema version 1. Deterministic for fixed options.
Json verify_report(const VerifyOptions& options);

}  // namespace kappaosc
