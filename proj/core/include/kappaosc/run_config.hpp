#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kappaosc/clusters.hpp"
#include "kappaosc/kinematics.hpp"
#include "kappaosc/star_product.hpp"

namespace kappaosc {

/// Scenario configuration shared by every subcommand. Populated from a flat
/// key=value config file and/or command-line flags; validation aggregates all
/// problems into a single error.
struct RunConfig {
    double kappa{1.0};
    std::optional<double> m0;  ///< unset picks the command default (1, clusters 0)
    std::uint64_t seed{12345};

    int grid_points{8};
    double grid_min{-2.0};
    double grid_max{2.0};

    std::string out;              ///< output path, empty writes to stdout
    std::string format{"json"};   ///< "csv" or "json"
    ExponentConvention convention{ExponentConvention::full};
    MassTerm massterm{MassTerm::augmented};

    std::vector<double> kappa_list{1.0, 4.0, 16.0};
    ThetaMatrix theta{};  ///< zeros unless configured
    int draws{200};
    bool inject_flip_fault{false};

    FourMomentum p{1.0, {1.0, 0.0, 0.0}};  ///< compose operands
    FourMomentum q{1.0, {0.0, 1.0, 0.0}};
    Vec3 pk{1.0, 0.0, 0.0};  ///< momentum operands for circ/flip/star/solve-shells
    Vec3 qk{0.0, 1.0, 0.0};
    std::string kinds{"cc"};  ///< two letters of {a, c}
    std::string signs{"+-"};  ///< shell assignment for solve-shells

    double mass(double command_default) const { return m0.value_or(command_default); }
    KappaContext context(double command_default_m0) const;

    /// Throws std::invalid_argument listing every invalid field at once.
    void validate() const;
};

/// Parse one key=value line into the config; problems are appended to errors.
void apply_config_entry(RunConfig& config, const std::string& key, const std::string& value,
                        std::vector<std::string>& errors);

/// Flat key=value file, UTF-8, one pair per line, # starts a comment. Throws
/// std::invalid_argument with the aggregated problem list.
RunConfig parse_config_file(const std::string& path);

}  // namespace kappaosc
