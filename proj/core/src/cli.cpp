#include "kappaosc/cli.hpp"

#include <cmath>
#include <sstream>

#include "kappaosc/flip.hpp"
#include "kappaosc/serialize.hpp"
#include "kappaosc/verify.hpp"

namespace kappaosc {

namespace {

OscFactor make_operand(char kind, const Vec3& k, const KappaContext& ctx) {
    const double energy = omega_kappa(k, ctx);
    return kind == 'c' ? creation(k, energy) : annihilation(k, energy);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

CommandResult cmd_dispersion(const RunConfig& config) {
    config.validate();
    const KappaContext ctx = config.context(1.0);
    ctx.validate();

    const double lo = std::fmax(config.grid_min, 0.0);
    const double hi = config.grid_max;
    const int n = config.grid_points;

    struct Row {
        double k, omega, classical, residual;
    };
    std::vector<Row> rows;
    for (int i = 0; i < n; ++i) {
        const double k = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
        const Vec3 kv{k, 0.0, 0.0};
        const double omega = omega_kappa(kv, ctx);
        rows.push_back({k, omega, std::sqrt(k * k + ctx.m0 * ctx.m0),
                        shell_residual({omega, kv}, ctx)});
    }

    if (config.format == "csv") {
        std::ostringstream out;
        out.precision(17);
        out << "k,omega_kappa,omega_classical,shell_residual\n";
        for (const Row& r : rows)
            out << r.k << ',' << r.omega << ',' << r.classical << ',' << r.residual << '\n';
        return {0, out.str()};
    }
    Json j;
    j["schema"] = 1;
    j["command"] = "dispersion";
    j["rows"] = Json::array();
    for (const Row& r : rows)
        j["rows"].push_back(Json{{"k", r.k},
                                 {"omega_kappa", r.omega},
                                 {"omega_classical", r.classical},
                                 {"shell_residual", r.residual}});
    return {0, dump(j)};
}

CommandResult cmd_compose(const RunConfig& config) {
    config.validate();
    const KappaContext ctx = config.context(1.0);
    ctx.validate();

    const FourMomentum pq = compose(config.p, config.q, ctx);
    const FourMomentum qp = compose_flipped(config.p, config.q, ctx);
    Json j;
    j["schema"] = 1;
    j["command"] = "compose";
    j["p"] = json_of(config.p);
    j["q"] = json_of(config.q);
    j["composed"] = json_of(pq);
    j["composed_flipped"] = json_of(qp);
    j["spatial_difference"] = distance(pq.k, qp.k);
    return {0, dump(j)};
}

CommandResult cmd_circ(const RunConfig& config) {
    config.validate();
    const KappaContext ctx = config.context(1.0);
    ctx.validate();

    const OscFactor x = make_operand(config.kinds[0], config.pk, ctx);
    const OscFactor y = make_operand(config.kinds[1], config.qk, ctx);

    Json j;
    j["schema"] = 1;
    j["command"] = "circ";
    j["kinds"] = config.kinds;
    j["word"] = json_of(circ_binary(x, y, ctx));
    j["commutator"] = json_of(circ_commutator(x, y, ctx));
    j["relativistic_word"] = json_of(circ_relativistic(x, y, ctx));
    if (x.kind == OscKind::creation && y.kind == OscKind::creation) {
        j["composed_total"] = json_of(composed_total(circ_binary(x, y, ctx), ctx));
    }
    return {0, dump(j)};
}

CommandResult cmd_flip(const RunConfig& config) {
    config.validate();
    const KappaContext ctx = config.context(1.0);
    ctx.validate();

    const int kind_left = config.kinds[0] == 'c' ? -1 : +1;
    const int kind_right = config.kinds[1] == 'c' ? -1 : +1;
    const ShellSolution shells =
        assign_binary_shells(kind_left, kind_right, config.pk, config.qk, ctx);
    const OscFactor x{static_cast<OscKind>(kind_left), config.pk, shells.p0};
    const OscFactor y{static_cast<OscKind>(kind_right), config.qk, shells.q0};

    const FlipResult flip = tau_kappa(x, y, ctx);
    const ConservationDefect defect = flip_conservation(x, y, ctx);

    Json j;
    j["schema"] = 1;
    j["command"] = "flip";
    j["kinds"] = config.kinds;
    j["input_shells"] = json_of(shells);
    j["flip"] = json_of(flip);
    j["involution_residual"] = tau_involution_check(x, y, ctx);
    j["conservation"] = Json{{"momentum", defect.momentum}, {"energy", defect.energy}};
    j["onshell_energy_defect"] = onshell_flip_energy_defect(config.pk, config.qk, ctx);
    return {0, dump(j)};
}

CommandResult cmd_solve_shells(const RunConfig& config) {
    config.validate();
    const KappaContext ctx = config.context(1.0);
    ctx.validate();

    const ShellAssignment asg{config.signs[0] == '+' ? +1 : -1,
                              config.signs[1] == '+' ? +1 : -1};
    const ShellSolution sol = solve_coupled(config.pk, config.qk, asg, ctx);
    Json j;
    j["schema"] = 1;
    j["command"] = "solve-shells";
    j["assignment"] = config.signs;
    j["solution"] = json_of(sol);
    return {0, dump(j)};
}

CommandResult cmd_cluster(const RunConfig& config) {
    config.validate();
    if (config.kappa_list.empty())
        throw std::invalid_argument("usage: cluster needs a non-empty kappa list");

    const Grid2 grid = Grid2::uniform_1d(config.grid_points, config.grid_min, config.grid_max);
    const Amplitude2 input = default_packet_fixture(grid);

    struct Row {
        double kappa, metric;
        int points;
    };
    std::vector<Row> rows;
    for (const double kappa : config.kappa_list) {
        KappaContext ctx = config.context(0.0);  // massless packets by default
        ctx.kappa = kappa;
        ctx.validate();
        const Amplitude2 smeared = smear_cluster(input, grid, ctx, config.convention);
        rows.push_back({kappa, factorizability_metric(smeared), grid.size()});
    }

    if (config.format == "csv") {
        std::ostringstream out;
        out.precision(17);
        out << "kappa,metric,grid_points\n";
        for (const Row& r : rows) out << r.kappa << ',' << r.metric << ',' << r.points << '\n';
        return {0, out.str()};
    }
    Json j;
    j["schema"] = 1;
    j["command"] = "cluster";
    j["rows"] = Json::array();
    for (const Row& r : rows)
        j["rows"].push_back(
            Json{{"kappa", r.kappa}, {"metric", r.metric}, {"grid_points", r.points}});
    return {0, dump(j)};
}

CommandResult cmd_star(const RunConfig& config) {
    config.validate();
    const KappaContext ctx = config.context(1.0);
    ctx.validate();

    const PlaneWavePair pair = star_planewaves(config.pk, config.qk, ctx);
    const BracketEigenvalues brackets =
        bilocal_bracket_eigenvalues(pair, ctx, config.massterm);
    const StarEquivalenceReport equivalence =
        circ_star_equivalence(config.pk, config.qk, ctx);
    const std::complex<double> phase =
        moyal_star_planewaves(pair.p, pair.q, config.theta, ctx);

    Json j;
    j["schema"] = 1;
    j["command"] = "star";
    j["pair"] = Json{{"p", json_of(pair.p)},
                     {"q", json_of(pair.q)},
                     {"star_spatial_x", json_of(pair.star_spatial_x)},
                     {"star_spatial_y", json_of(pair.star_spatial_y)}};
    j["brackets"] = Json{{"bx", Json{{"re", brackets.bx.real()}, {"im", brackets.bx.imag()}}},
                         {"by", Json{{"re", brackets.by.real()}, {"im", brackets.by.imag()}}}};
    j["mode_measures"] = Json{{"p", mode_measure(config.pk, ctx)},
                              {"q", mode_measure(config.qk, ctx)}};
    j["equivalence"] = json_of(equivalence);
    j["moyal_phase"] = Json{{"re", phase.real()}, {"im", phase.imag()}};
    return {0, dump(j)};
}

CommandResult cmd_verify(const RunConfig& config) {
    config.validate();
    VerifyOptions options;
    options.kappa = config.kappa;
    options.m0 = config.mass(1.0);
    options.seed = config.seed;
    options.draws = config.draws;
    options.convention = config.convention;
    options.massterm = config.massterm;
    options.inject_flip_fault = config.inject_flip_fault;

    const Json report = verify_report(options);
    return {report.at("all_pass").get<bool>() ? 0 : 1, dump(report)};
}

CommandResult run_command(const std::string& name, const RunConfig& config) {
    if (name == "dispersion") return cmd_dispersion(config);
    if (name == "compose") return cmd_compose(config);
    if (name == "circ") return cmd_circ(config);
    if (name == "flip") return cmd_flip(config);
    if (name == "solve-shells") return cmd_solve_shells(config);
    if (name == "cluster") return cmd_cluster(config);
    if (name == "star") return cmd_star(config);
    if (name == "verify") return cmd_verify(config);
    throw std::invalid_argument("unknown command: " + name);
}

}  // namespace kappaosc
