// kappaosc: deformed oscillator kinematics and algebra from the command line.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kappaosc/cli.hpp"

namespace {

int write_output(const kappaosc::CommandResult& result, const std::string& path) {
    if (path.empty()) {
        std::cout << result.output;
    } else {
        std::ofstream out(path);
        if (!out) {
            std::cerr << "error: cannot write " << path << "\n";
            return 2;
        }
        out << result.output;
    }
    return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deformed oscillator kinematics, products, flips and clusters"};
    app.require_subcommand(1);

    std::string config_path;
    std::string grid_spec, theta_spec, kappas_spec, p_spec, q_spec, pk_spec, qk_spec;
    std::string kinds, signs, format, out_path, convention, massterm;
    double kappa = 0.0, m0 = 0.0;
    std::uint64_t seed = 0;
    int draws = 0;
    bool flip_fault = false;

    app.add_option("--config", config_path, "flat key=value config file");
    auto* kappa_opt = app.add_option("--kappa", kappa, "deformation scale");
    auto* m0_opt = app.add_option("--m0", m0, "mass");
    auto* seed_opt = app.add_option("--seed", seed, "random seed");
    auto* draws_opt = app.add_option("--draws", draws, "draws per randomized check");
    auto* grid_opt = app.add_option("--grid", grid_spec, "grid as points,min,max");
    auto* out_opt = app.add_option("--out", out_path, "output file (default stdout)");
    auto* format_opt =
        app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    auto* conv_opt = app.add_option("--exponent-convention", convention,
                                    "half or full cluster rescale exponents")
                         ->check(CLI::IsMember({"half", "full"}));
    auto* mass_opt = app.add_option("--massterm", massterm, "bilocal bracket mass term on/off")
                         ->check(CLI::IsMember({"on", "off"}));
    auto* kappas_opt = app.add_option("--kappas", kappas_spec, "comma list for cluster scans");
    auto* theta_opt = app.add_option("--theta", theta_spec, "16 reals, row-major 4x4");
    auto* p_opt = app.add_option("--p", p_spec, "four-momentum e,kx,ky,kz");
    auto* q_opt = app.add_option("--q", q_spec, "four-momentum e,kx,ky,kz");
    auto* pk_opt = app.add_option("--pk", pk_spec, "momentum kx,ky,kz");
    auto* qk_opt = app.add_option("--qk", qk_spec, "momentum kx,ky,kz");
    auto* kinds_opt = app.add_option("--kinds", kinds, "factor kinds, two of {a,c}");
    auto* signs_opt = app.add_option("--signs", signs, "shell assignment, two of {+,-}");
    auto* fault_flag = app.add_flag("--inject-flip-fault", flip_fault,
                                    "testing hook: corrupt the flip to force a failure");

    for (const char* name : {"dispersion", "compose", "circ", "flip", "solve-shells", "cluster",
                             "star", "verify"}) {
        app.add_subcommand(name)->fallthrough();
    }

    CLI11_PARSE(app, argc, argv);

    try {
        kappaosc::RunConfig config;
        std::vector<std::string> errors;
        if (!config_path.empty()) config = kappaosc::parse_config_file(config_path);

        if (*kappa_opt) config.kappa = kappa;
        if (*m0_opt) config.m0 = m0;
        if (*seed_opt) config.seed = seed;
        if (*draws_opt) config.draws = draws;
        if (*grid_opt) kappaosc::apply_config_entry(config, "grid", grid_spec, errors);
        if (*out_opt) config.out = out_path;
        if (*format_opt) config.format = format;
        if (*conv_opt)
            kappaosc::apply_config_entry(config, "exponent_convention", convention, errors);
        if (*mass_opt) kappaosc::apply_config_entry(config, "massterm", massterm, errors);
        if (*kappas_opt) kappaosc::apply_config_entry(config, "kappas", kappas_spec, errors);
        if (*theta_opt) kappaosc::apply_config_entry(config, "theta", theta_spec, errors);
        if (*p_opt) kappaosc::apply_config_entry(config, "p", p_spec, errors);
        if (*q_opt) kappaosc::apply_config_entry(config, "q", q_spec, errors);
        if (*pk_opt) kappaosc::apply_config_entry(config, "pk", pk_spec, errors);
        if (*qk_opt) kappaosc::apply_config_entry(config, "qk", qk_spec, errors);
        if (*kinds_opt) config.kinds = kinds;
        if (*signs_opt) config.signs = signs;
        if (*fault_flag) config.inject_flip_fault = flip_fault;

        if (!errors.empty()) {
            std::string joined = "invalid configuration:";
            for (const std::string& e : errors) joined += "\n  - " + e;
            throw std::invalid_argument(joined);
        }

        const std::string command = app.get_subcommands().front()->get_name();
        return write_output(kappaosc::run_command(command, config), config.out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
