#include "kappaosc/osc_algebra.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace kappaosc {

namespace {

void require_creation_only(const Monomial& m) {
    if (!m.creation_only()) throw std::invalid_argument("unsupported factor kind");
}

double factor_deviation(const OscFactor& a, const OscFactor& b) {
    return std::fmax(relative_deviation(a.k, b.k), relative_deviation(a.e, b.e));
}

// Deterministic strict order on factors: kind, energy, momentum components.
bool factor_less(const OscFactor& a, const OscFactor& b) {
    if (a.kind != b.kind) return kind_sign(a.kind) < kind_sign(b.kind);
    if (a.e != b.e) return a.e < b.e;
    for (int i = 0; i < 3; ++i)
        if (a.k[i] != b.k[i]) return a.k[i] < b.k[i];
    return false;
}

bool monomial_less(const Monomial& a, const Monomial& b) {
    if (a.factors.size() != b.factors.size()) return a.factors.size() < b.factors.size();
    for (std::size_t i = 0; i < a.factors.size(); ++i) {
        if (factor_less(a.factors[i], b.factors[i])) return true;
        if (factor_less(b.factors[i], a.factors[i])) return false;
    }
    if (a.deltas.size() != b.deltas.size()) return a.deltas.size() < b.deltas.size();
    for (std::size_t i = 0; i < a.deltas.size(); ++i) {
        for (int c = 0; c < 3; ++c) {
            if (a.deltas[i].arg[c] != b.deltas[i].arg[c])
                return a.deltas[i].arg[c] < b.deltas[i].arg[c];
        }
    }
    if (a.coeff.real() != b.coeff.real()) return a.coeff.real() < b.coeff.real();
    return a.coeff.imag() < b.coeff.imag();
}

}  // namespace

bool Monomial::creation_only() const {
    return std::all_of(factors.begin(), factors.end(),
                       [](const OscFactor& f) { return f.kind == OscKind::creation; });
}

Monomial as_monomial(const OscFactor& f) {
    Monomial m;
    m.factors.push_back(f);
    return m;
}

Monomial plain_concat(const Monomial& a, const Monomial& b) {
    Monomial out;
    out.coeff = a.coeff * b.coeff;
    out.factors = a.factors;
    out.factors.insert(out.factors.end(), b.factors.begin(), b.factors.end());
    out.deltas = a.deltas;
    out.deltas.insert(out.deltas.end(), b.deltas.begin(), b.deltas.end());
    return out;
}

Monomial canonical(const Monomial& m, const KappaContext& ctx) {
    Monomial out = m;
    auto& fs = out.factors;
    // Bubble sort by energy label within maximal same-kind runs. Exchanges do not
    // touch energies, so the pass count is bounded as for a plain sort.
    bool swapped = true;
    while (swapped) {
        swapped = false;
        for (std::size_t i = 0; i + 1 < fs.size(); ++i) {
            OscFactor& u = fs[i];
            OscFactor& v = fs[i + 1];
            if (u.kind != v.kind || !(u.e > v.e)) continue;
            const double s = static_cast<double>(kind_sign(u.kind));
            OscFactor nf{u.kind, v.k * std::exp(-s * u.e / ctx.kappa), v.e};
            OscFactor ns{u.kind, u.k * std::exp(+s * v.e / ctx.kappa), u.e};
            u = nf;
            v = ns;
            swapped = true;
        }
    }
    return out;
}

bool labels_equal(const Monomial& a, const Monomial& b, double tol) {
    if (a.factors.size() != b.factors.size() || a.deltas.size() != b.deltas.size()) return false;
    for (std::size_t i = 0; i < a.factors.size(); ++i) {
        if (a.factors[i].kind != b.factors[i].kind) return false;
        if (factor_deviation(a.factors[i], b.factors[i]) > tol) return false;
    }
    for (std::size_t i = 0; i < a.deltas.size(); ++i) {
        if (relative_deviation(a.deltas[i].arg, b.deltas[i].arg) > tol) return false;
    }
    return true;
}

TermSum canonical(const TermSum& sum, const KappaContext& ctx) {
    std::vector<Monomial> terms;
    terms.reserve(sum.terms.size());
    for (const Monomial& t : sum.terms) terms.push_back(canonical(t, ctx));
    std::sort(terms.begin(), terms.end(), monomial_less);

    TermSum out;
    for (Monomial& t : terms) {
        bool merged = false;
        for (Monomial& kept : out.terms) {
            if (labels_equal(kept, t)) {
                kept.coeff += t.coeff;
                merged = true;
                break;
            }
        }
        if (!merged) out.terms.push_back(std::move(t));
    }
    std::erase_if(out.terms,
                  [](const Monomial& t) { return std::abs(t.coeff) <= coeff_drop_tol; });
    return out;
}

bool term_sums_equal(const TermSum& a, const TermSum& b, const KappaContext& ctx, double tol) {
    const TermSum ca = canonical(a, ctx);
    const TermSum cb = canonical(b, ctx);
    if (ca.terms.size() != cb.terms.size()) return false;
    for (std::size_t i = 0; i < ca.terms.size(); ++i) {
        if (!labels_equal(ca.terms[i], cb.terms[i], tol)) return false;
        if (std::abs(ca.terms[i].coeff - cb.terms[i].coeff) > tol) return false;
    }
    return true;
}

double max_label_deviation(const TermSum& a, const TermSum& b, const KappaContext& ctx) {
    const TermSum ca = canonical(a, ctx);
    const TermSum cb = canonical(b, ctx);
    if (ca.terms.size() != cb.terms.size()) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (std::size_t i = 0; i < ca.terms.size(); ++i) {
        const Monomial& ta = ca.terms[i];
        const Monomial& tb = cb.terms[i];
        if (ta.factors.size() != tb.factors.size())
            return std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < ta.factors.size(); ++j) {
            if (ta.factors[j].kind != tb.factors[j].kind)
                return std::numeric_limits<double>::infinity();
            worst = std::fmax(worst, factor_deviation(ta.factors[j], tb.factors[j]));
        }
        worst = std::fmax(worst, std::abs(ta.coeff - tb.coeff));
    }
    return worst;
}

TermSum term_sum_sub(const TermSum& a, const TermSum& b, const KappaContext& ctx) {
    TermSum diff = a;
    for (Monomial t : b.terms) {
        t.coeff = -t.coeff;
        diff.terms.push_back(std::move(t));
    }
    return canonical(diff, ctx);
}

Monomial circ_binary(const OscFactor& x, const OscFactor& y, const KappaContext& ctx) {
    const double half_kappa = 2.0 * ctx.kappa;
    Monomial out;
    out.factors = {
        {x.kind, x.k * std::exp(-kind_sign(y.kind) * y.e / half_kappa), x.e},
        {y.kind, y.k * std::exp(+kind_sign(x.kind) * x.e / half_kappa), y.e},
    };
    return out;
}

TermSum circ_commutator(const OscFactor& x, const OscFactor& y, const KappaContext& ctx) {
    if (x.kind == y.kind) {
        // Equal kinds: the exchanged words carry identical labels after
        // normalization, so the difference cancels term by term.
        TermSum sum;
        sum.terms.push_back(circ_binary(x, y, ctx));
        Monomial yx = circ_binary(y, x, ctx);
        yx.coeff = -yx.coeff;
        sum.terms.push_back(std::move(yx));
        return canonical(sum, ctx);
    }
    // Mixed kinds: the commutator value is the defining delta relation. The sign
    // convention puts the delta in [creation, annihilation].
    Monomial delta;  // scalar term
    if (x.kind == OscKind::creation) {
        delta.coeff = 1.0;
        delta.deltas.push_back(DeltaFactor{x.k - y.k});
    } else {
        delta.coeff = -1.0;
        delta.deltas.push_back(DeltaFactor{y.k - x.k});
    }
    return canonical(TermSum{{delta}}, ctx);
}

Monomial circ_monomials(const Monomial& m1, const Monomial& m2, const KappaContext& ctx) {
    require_creation_only(m1);
    require_creation_only(m2);
    const double half_kappa = 2.0 * ctx.kappa;

    double sum1 = 0.0, sum2 = 0.0;
    for (const OscFactor& f : m1.factors) sum1 += f.e;
    for (const OscFactor& f : m2.factors) sum2 += f.e;

    Monomial out;
    out.coeff = m1.coeff * m2.coeff;
    out.factors.reserve(m1.factors.size() + m2.factors.size());
    for (OscFactor f : m1.factors) {
        f.k = f.k * std::exp(+sum2 / half_kappa);
        out.factors.push_back(f);
    }
    for (OscFactor f : m2.factors) {
        f.k = f.k * std::exp(-sum1 / half_kappa);
        out.factors.push_back(f);
    }
    out.deltas = m1.deltas;
    out.deltas.insert(out.deltas.end(), m2.deltas.begin(), m2.deltas.end());
    return out;
}

Monomial circ_nfold(std::span<const OscFactor> factors, const KappaContext& ctx) {
    Monomial out;
    if (factors.empty()) return out;
    const double half_kappa = 2.0 * ctx.kappa;

    double right_sum = 0.0;
    for (const OscFactor& f : factors) {
        if (f.kind != OscKind::creation) throw std::invalid_argument("unsupported factor kind");
        right_sum += f.e;
    }
    double left_sum = 0.0;
    for (const OscFactor& f : factors) {
        right_sum -= f.e;
        OscFactor rescaled = f;
        rescaled.k = f.k * std::exp((right_sum - left_sum) / half_kappa);
        out.factors.push_back(rescaled);
        left_sum += f.e;
    }
    return out;
}

Monomial circ_relativistic(const OscFactor& x, const OscFactor& y, const KappaContext& ctx) {
    Monomial out = circ_binary(x, y, ctx);
    out.coeff *= std::exp(1.5 / ctx.kappa * (omega_kappa(x.k, ctx) - omega_kappa(y.k, ctx)));
    return out;
}

FourMomentum composed_total(const Monomial& m, const KappaContext& ctx) {
    std::vector<FourMomentum> eigenvalues;
    eigenvalues.reserve(m.factors.size());
    for (const OscFactor& f : m.factors) {
        const double s = static_cast<double>(kind_sign(f.kind));
        eigenvalues.push_back({s * f.e, s * f.k});
    }
    FourMomentum total = compose_n(eigenvalues, ctx);
    if (m.creation_only() && !m.factors.empty()) return {-total.e, -total.k};
    return total;
}

std::pair<TermSum, TermSum> sector_factorization(const OscFactor& r, const OscFactor& p,
                                                 const OscFactor& q, SectorSide side,
                                                 const KappaContext& ctx) {
    for (const OscFactor* f : {&r, &p, &q}) {
        if (f->kind != OscKind::creation) throw std::invalid_argument("unsupported factor kind");
    }
    const Monomial pq = circ_binary(p, q, ctx);
    const Monomial qp = circ_binary(q, p, ctx);
    const Monomial third = as_monomial(r);

    Monomial lhs, rhs;
    switch (side) {
        case SectorSide::left_plain:
            lhs = plain_concat(third, pq);
            rhs = plain_concat(third, qp);
            break;
        case SectorSide::left_circ:
            lhs = circ_monomials(third, pq, ctx);
            rhs = circ_monomials(third, qp, ctx);
            break;
        case SectorSide::right_circ:
            lhs = circ_monomials(pq, third, ctx);
            rhs = circ_monomials(qp, third, ctx);
            break;
    }
    return {TermSum{{lhs}}, TermSum{{rhs}}};
}

NonAssociativityReport mixed_nonassociativity_witness(const KappaContext& ctx,
                                                      const std::array<Vec3, 4>& momenta) {
    const auto on_shell = [&ctx](const Vec3& k) { return creation(k, omega_kappa(k, ctx)); };
    const OscFactor p1 = on_shell(momenta[0]);
    const OscFactor p2 = on_shell(momenta[1]);
    const OscFactor q1 = on_shell(momenta[2]);
    const OscFactor q2 = on_shell(momenta[3]);

    // Full circ product of the two pairs versus binding only the middle pair.
    Monomial pair_left = plain_concat(as_monomial(p1), as_monomial(p2));
    Monomial pair_right = plain_concat(as_monomial(q1), as_monomial(q2));
    const Monomial full = circ_monomials(pair_left, pair_right, ctx);
    const Monomial middle =
        plain_concat(plain_concat(as_monomial(p1), circ_binary(p2, q1, ctx)), as_monomial(q2));

    NonAssociativityReport report;
    report.lhs = TermSum{{full}};
    report.rhs = TermSum{{middle}};
    report.tolerance = 1e-9;
    report.max_deviation = max_label_deviation(report.lhs, report.rhs, ctx);
    report.equal = report.max_deviation <= report.tolerance;
    return report;
}

NonAssociativityReport mixed_nonassociativity_witness(const KappaContext& ctx) {
    return mixed_nonassociativity_witness(
        ctx,
        {Vec3{0.2, 0.0, 0.0}, Vec3{0.5, 0.0, 0.0}, Vec3{0.35, 0.0, 0.0}, Vec3{0.65, 0.0, 0.0}});
}

}  // namespace kappaosc
