#include "kappaosc/serialize.hpp"

#include <sstream>
#include <stdexcept>

namespace kappaosc {

Json json_of(const Vec3& v) { return Json::array({v.x, v.y, v.z}); }

Json json_of(const FourMomentum& p) {
    Json j;
    j["e"] = p.e;
    j["k"] = json_of(p.k);
    return j;
}

Json json_of(const OscFactor& f) {
    Json j;
    j["kind"] = f.kind == OscKind::creation ? "creation" : "annihilation";
    j["k"] = json_of(f.k);
    j["e"] = f.e;
    return j;
}

Json json_of(const Monomial& m) {
    Json j;
    j["coeff"] = Json{{"re", m.coeff.real()}, {"im", m.coeff.imag()}};
    j["factors"] = Json::array();
    for (const OscFactor& f : m.factors) j["factors"].push_back(json_of(f));
    j["deltas"] = Json::array();
    for (const DeltaFactor& d : m.deltas) j["deltas"].push_back(Json{{"arg", json_of(d.arg)}});
    return j;
}

Json json_of(const TermSum& sum) {
    Json j;
    j["terms"] = Json::array();
    for (const Monomial& t : sum.terms) j["terms"].push_back(json_of(t));
    return j;
}

Json json_of(const ShellSolution& sol) {
    Json j;
    j["p0"] = sol.p0;
    j["q0"] = sol.q0;
    j["iterations"] = sol.iterations;
    j["residual"] = sol.residual;
    return j;
}

Json json_of(const FlipResult& r) {
    Json j;
    j["word"] = json_of(r.word);
    j["conserved_momentum"] = json_of(r.conserved_momentum);
    j["energy_total"] = r.energy_total;
    j["flipped_shells"] = json_of(r.flipped_shells);
    return j;
}

Json json_of(const EquivalenceReport& r) {
    Json j;
    j["circ_word"] = json_of(r.circ_word);
    j["circ_word_swapped"] = json_of(r.circ_word_swapped);
    j["flip_word"] = json_of(r.flip_word);
    j["shells"] = json_of(r.shells);
    j["max_deviation"] = r.max_deviation;
    return j;
}

Json json_of(const NonAssociativityReport& r) {
    Json j;
    j["lhs"] = json_of(r.lhs);
    j["rhs"] = json_of(r.rhs);
    j["max_deviation"] = r.max_deviation;
    j["tolerance"] = r.tolerance;
    j["equal"] = r.equal;
    return j;
}

Json json_of(const StarEquivalenceReport& r) {
    Json j;
    j["shells"] = json_of(r.shells);
    j["star_label_x"] = json_of(r.star_label_x);
    j["star_label_y"] = json_of(r.star_label_y);
    j["relativistic_factor"] = r.relativistic_factor;
    j["circ_word"] = json_of(r.circ_word);
    j["measure_p"] = r.measure_p;
    j["measure_q"] = r.measure_q;
    j["max_deviation"] = r.max_deviation;
    return j;
}

std::string amplitude_to_csv(const Amplitude2& a) {
    std::ostringstream out;
    out.precision(17);
    out << "i,j,re,im\n";
    for (Eigen::Index i = 0; i < a.values.rows(); ++i)
        for (Eigen::Index j = 0; j < a.values.cols(); ++j)
            out << i << ',' << j << ',' << a.values(i, j).real() << ','
                << a.values(i, j).imag() << '\n';
    return out.str();
}

Amplitude2 amplitude_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("empty amplitude csv");

    struct Entry {
        int i, j;
        std::complex<double> v;
    };
    std::vector<Entry> entries;
    int max_index = -1;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        Entry e;
        char comma;
        double re, im;
        if (!(row >> e.i >> comma >> e.j >> comma >> re >> comma >> im))
            throw std::invalid_argument("malformed amplitude csv row: " + line);
        e.v = {re, im};
        max_index = std::max({max_index, e.i, e.j});
        entries.push_back(e);
    }
    if (max_index < 0) throw std::invalid_argument("amplitude csv has no rows");
    Amplitude2 a;
    a.values = Eigen::MatrixXcd::Zero(max_index + 1, max_index + 1);
    for (const Entry& e : entries) a.values(e.i, e.j) = e.v;
    return a;
}

Json amplitude_to_json(const Amplitude2& a) {
    Json j;
    j["n"] = a.values.rows();
    j["entries"] = Json::array();
    for (Eigen::Index i = 0; i < a.values.rows(); ++i)
        for (Eigen::Index jj = 0; jj < a.values.cols(); ++jj)
            j["entries"].push_back(Json::array(
                {i, jj, a.values(i, jj).real(), a.values(i, jj).imag()}));
    return j;
}

Amplitude2 amplitude_from_json(const Json& j) {
    const int n = j.at("n").get<int>();
    Amplitude2 a;
    a.values = Eigen::MatrixXcd::Zero(n, n);
    for (const auto& e : j.at("entries")) {
        a.values(e[0].get<int>(), e[1].get<int>()) = {e[2].get<double>(), e[3].get<double>()};
    }
    return a;
}

}  // namespace kappaosc
