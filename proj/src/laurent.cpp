#include "fanoforge/laurent.hpp"

#include <algorithm>
#include <set>

namespace ff {

namespace {

void check_vars(const Laurent& f, const Laurent& g) {
    if (f.n_vars != g.n_vars)
        throw DomainError("VarCountMismatch", "operands have different variable counts");
}

Int dot(const Vec& a, const Vec& b) {
    Int s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

Laurent add(const Laurent& f, const Laurent& g) {
    check_vars(f, g);
    Laurent r = f;
    for (const auto& [e, c] : g.terms) r.add_term(e, c);
    return r;
}

Laurent sub(const Laurent& f, const Laurent& g) {
    check_vars(f, g);
    Laurent r = f;
    for (const auto& [e, c] : g.terms) r.add_term(e, -c);
    return r;
}

Laurent mul(const Laurent& f, const Laurent& g) {
    check_vars(f, g);
    Laurent r(f.n_vars);
    for (const auto& [e1, c1] : f.terms)
        for (const auto& [e2, c2] : g.terms) {
            Vec e(f.n_vars);
            for (int i = 0; i < f.n_vars; ++i) e[i] = e1[i] + e2[i];
            r.add_term(e, c1 * c2);
        }
    return r;
}

Laurent scale(const Laurent& f, const Rat& c) {
    Laurent r(f.n_vars);
    if (c == 0) return r;
    for (const auto& [e, a] : f.terms) r.terms[e] = a * c;
    return r;
}

Laurent pow(const Laurent& f, long d) {
    if (d < 0) throw DomainError("NegativeExponent", "pow needs d >= 0");
    Laurent r = Laurent::constant(f.n_vars, 1);
    for (long i = 0; i < d; ++i) r = mul(r, f);
    return r;
}

LatticePolytope newton_polytope(const Laurent& f) {
    if (f.is_zero()) throw DomainError("ZeroPolynomial", "zero polynomial has no Newton polytope");
    std::vector<Vec> pts;
    for (const auto& [e, c] : f.terms) pts.push_back(e);
    return hull(pts);
}

namespace {

// Can monomial m still reach the origin using between 1 and k_max more factors
// of a polynomial with Newton polytope p?  (k_max = 0 admits only m = 0.)
bool reachable(const LatticePolytope& p, const std::vector<LatticePolytope>& dilates,
               const Vec& m, long k_max) {
    bool m_zero = true;
    for (const Int& x : m)
        if (x != 0) { m_zero = false; break; }
    if (m_zero) return true;
    Vec neg(m.size());
    for (size_t i = 0; i < m.size(); ++i) neg[i] = -m[i];
    if (p.full_dimensional()) {
        for (long k = 1; k <= k_max; ++k) {
            bool in = true;
            for (const Facet& fc : p.facets)
                if (dot(fc.normal, neg) < Int(k) * fc.offset) { in = false; break; }
            if (in) return true;
        }
        return false;
    }
    for (long k = 1; k <= k_max; ++k)
        if (dilates[k].contains(neg)) return true;
    return false;
}

}  // namespace

PeriodSequence classical_period(const Laurent& f, int d_max) {
    PeriodSequence seq;
    seq.coefficients.assign(d_max + 1, Rat(0));
    seq.coefficients[0] = 1;
    if (d_max == 0 || f.is_zero()) return seq;

    LatticePolytope p = newton_polytope(f);
    std::vector<LatticePolytope> dilates;
    if (!p.full_dimensional())
        for (int k = 0; k <= d_max; ++k) dilates.push_back(dilate(p, k));

    bool integral = true;
    for (const auto& [e, c] : f.terms)
        if (c.get_den() != 1) { integral = false; break; }

    if (integral) {
        std::map<Vec, Int> part;
        part[Vec(f.n_vars)] = 1;
        for (int j = 1; j <= d_max; ++j) {
            std::map<Vec, Int> next;
            for (const auto& [e1, c1] : part)
                for (const auto& [e2, c2] : f.terms) {
                    Vec e(f.n_vars);
                    for (int i = 0; i < f.n_vars; ++i) e[i] = e1[i] + e2[i];
                    Int& slot = next[e];
                    slot += c1 * c2.get_num();
                }
            part.clear();
            for (auto& [e, c] : next) {
                if (c == 0) continue;
                if (reachable(p, dilates, e, d_max - j)) part.emplace(e, std::move(c));
            }
            auto it = part.find(Vec(f.n_vars));
            if (it != part.end()) seq.coefficients[j] = Rat(it->second);
        }
        return seq;
    }

    Laurent part = Laurent::constant(f.n_vars, 1);
    for (int j = 1; j <= d_max; ++j) {
        Laurent prod = mul(part, f);
        part = Laurent(f.n_vars);
        for (const auto& [e, c] : prod.terms)
            if (reachable(p, dilates, e, d_max - j)) part.terms.emplace(e, c);
        seq.coefficients[j] = part.constant_term();
    }
    return seq;
}

bool is_normalised(const Laurent& f) {
    if (f.is_zero()) return false;
    LatticePolytope p = newton_polytope(f);
    for (const Vec& v : p.vertices)
        if (f.coefficient(v) != 1) return false;
    return true;
}

bool is_centered(const Laurent& f) {
    if (f.is_zero()) return false;
    if (f.constant_term() != 0) return false;
    LatticePolytope p = newton_polytope(f);
    if (!p.full_dimensional()) return false;
    for (const Facet& fc : p.facets)
        if (fc.offset >= 0) return false;
    return true;
}

Laurent monomial_substitute(const Laurent& f, const IntMatrix& u) {
    if (!is_unimodular(u)) throw DomainError("NonUnimodular", "substitution matrix must be unimodular");
    if (u.cols != f.n_vars) throw DomainError("VarCountMismatch", "matrix size does not match variable count");
    Laurent r(f.n_vars);
    for (const auto& [e, c] : f.terms) r.set(ff::apply(u, e), c);
    return r;
}

SliceDecomposition slice_decompose(const Laurent& f, const Vec& w) {
    if (!is_primitive(w)) throw DomainError("NonPrimitiveWeight", "slice weight must be primitive");
    SliceDecomposition d;
    d.basis = complete_to_basis(w);
    IntMatrix inv = unimodular_inverse(d.basis);
    int n = f.n_vars;
    bool first = true;
    for (const auto& [e, c] : f.terms) {
        Vec y = ff::apply(inv, e);
        Int h = y[n - 1];
        y.pop_back();
        auto [it, fresh] = d.slices.try_emplace(h, Laurent(n - 1));
        it->second.add_term(y, c);
        if (first || -h > d.a) d.a = -h;
        if (first || h > d.b) d.b = h;
        first = false;
    }
    for (auto it = d.slices.begin(); it != d.slices.end();)
        it = it->second.is_zero() ? d.slices.erase(it) : std::next(it);
    return d;
}

std::optional<Laurent> divide_exact(const Laurent& f, const Laurent& h) {
    check_vars(f, h);
    if (h.is_zero()) throw DomainError("ZeroPolynomial", "division by zero polynomial");
    Laurent q(f.n_vars);
    if (f.is_zero()) return q;

    // Any quotient is supported on the Minkowski difference
    // { e : e + Newt(h) is contained in Newt(f) }, which bounds the run.
    LatticePolytope nf = newton_polytope(f);
    LatticePolytope nh = newton_polytope(h);
    std::set<Vec> allowed;
    const Vec& anchor = nh.vertices.front();
    for (const Vec& p : lattice_points(nf)) {
        Vec cand(p.size());
        for (size_t i = 0; i < p.size(); ++i) cand[i] = p[i] - anchor[i];
        bool ok = true;
        for (const Vec& v : nh.vertices) {
            Vec s(v.size());
            for (size_t i = 0; i < v.size(); ++i) s[i] = cand[i] + v[i];
            if (!nf.contains(s)) { ok = false; break; }
        }
        if (ok) allowed.insert(cand);
    }

    Laurent rem = f;
    const auto& [lead_e, lead_c] = *h.terms.rbegin();
    while (!rem.is_zero()) {
        const auto& [top_e, top_c] = *rem.terms.rbegin();
        Vec qe(top_e.size());
        for (size_t i = 0; i < top_e.size(); ++i) qe[i] = top_e[i] - lead_e[i];
        if (!allowed.count(qe)) return std::nullopt;
        Rat qc = top_c / lead_c;
        q.add_term(qe, qc);
        rem = sub(rem, mul(Laurent::monomial(qe, qc), h));
    }
    return q;
}

}  // namespace ff
