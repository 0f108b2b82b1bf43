#include "kappaosc/run_config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace kappaosc {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::vector<double> parse_reals(const std::string& value) {
    std::vector<double> out;
    std::string token;
    std::istringstream in(value);
    while (std::getline(in, token, ',')) {
        token = trim(token);
        if (token.empty()) continue;
        std::size_t used = 0;
        out.push_back(std::stod(token, &used));
        if (used != token.size()) throw std::invalid_argument("trailing junk in number");
    }
    return out;
}

}  // namespace

KappaContext RunConfig::context(double command_default_m0) const {
    KappaContext ctx;
    ctx.kappa = kappa;
    ctx.m0 = mass(command_default_m0);
    ctx.tol_solver = 1e-13;
    ctx.max_iter = 200;
    return ctx;
}

void RunConfig::validate() const {
    std::vector<std::string> errors;
    if (!(kappa > 0.0)) errors.push_back("kappa must be > 0");
    if (m0 && !(*m0 >= 0.0)) errors.push_back("m0 must be >= 0");
    if (grid_points < 2) errors.push_back("grid needs at least 2 points");
    if (!(grid_max > grid_min)) errors.push_back("grid range must be increasing");
    if (format != "csv" && format != "json") errors.push_back("format must be csv or json");
    if (kinds.size() != 2 || kinds.find_first_not_of("ac") != std::string::npos)
        errors.push_back("kinds must be two letters of {a, c}");
    if (signs.size() != 2 || signs.find_first_not_of("+-") != std::string::npos)
        errors.push_back("signs must be two characters of {+, -}");
    for (double k : kappa_list)
        if (!(k > 0.0)) {
            errors.push_back("kappa list entries must be > 0");
            break;
        }
    if (!theta_antisymmetric(theta)) errors.push_back("theta not antisymmetric");
    if (draws < 1) errors.push_back("draws must be positive");
    if (!errors.empty()) {
        std::string joined = "invalid configuration:";
        for (const std::string& e : errors) joined += "\n  - " + e;
        throw std::invalid_argument(joined);
    }
}

void apply_config_entry(RunConfig& config, const std::string& key, const std::string& value,
                        std::vector<std::string>& errors) {
    try {
        if (key == "kappa") {
            config.kappa = std::stod(value);
        } else if (key == "m0") {
            config.m0 = std::stod(value);
        } else if (key == "seed") {
            config.seed = std::stoull(value);
        } else if (key == "draws") {
            config.draws = std::stoi(value);
        } else if (key == "grid") {
            const auto v = parse_reals(value);
            if (v.size() != 3) throw std::invalid_argument("grid wants points,min,max");
            config.grid_points = static_cast<int>(v[0]);
            config.grid_min = v[1];
            config.grid_max = v[2];
        } else if (key == "out") {
            config.out = value;
        } else if (key == "format") {
            config.format = value;
        } else if (key == "exponent_convention") {
            if (value == "half")
                config.convention = ExponentConvention::half;
            else if (value == "full")
                config.convention = ExponentConvention::full;
            else
                throw std::invalid_argument("expects half or full");
        } else if (key == "massterm") {
            if (value == "on")
                config.massterm = MassTerm::augmented;
            else if (value == "off")
                config.massterm = MassTerm::literal;
            else
                throw std::invalid_argument("expects on or off");
        } else if (key == "kappas") {
            config.kappa_list = parse_reals(value);
        } else if (key == "theta") {
            const auto v = parse_reals(value);
            if (v.size() != 16) throw std::invalid_argument("theta wants 16 reals");
            std::copy(v.begin(), v.end(), config.theta.begin());
        } else if (key == "p" || key == "q") {
            const auto v = parse_reals(value);
            if (v.size() != 4) throw std::invalid_argument("four-momentum wants e,kx,ky,kz");
            FourMomentum m{v[0], {v[1], v[2], v[3]}};
            (key == "p" ? config.p : config.q) = m;
        } else if (key == "pk" || key == "qk") {
            const auto v = parse_reals(value);
            if (v.size() != 3) throw std::invalid_argument("momentum wants kx,ky,kz");
            (key == "pk" ? config.pk : config.qk) = Vec3{v[0], v[1], v[2]};
        } else if (key == "kinds") {
            config.kinds = value;
        } else if (key == "signs") {
            config.signs = value;
        } else if (key == "inject_flip_fault") {
            config.inject_flip_fault = value == "1" || value == "true";
        } else {
            errors.push_back("unknown key: " + key);
        }
    } catch (const std::exception& e) {
        errors.push_back(key + ": " + e.what());
    }
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);

    RunConfig config;
    std::vector<std::string> errors;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            errors.push_back("line " + std::to_string(lineno) + ": expected key=value");
            continue;
        }
        apply_config_entry(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)), errors);
    }
    if (!errors.empty()) {
        std::string joined = "invalid configuration:";
        for (const std::string& e : errors) joined += "\n  - " + e;
        throw std::invalid_argument(joined);
    }
    return config;
}

}  // namespace kappaosc
