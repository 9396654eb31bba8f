#include "fanoforge/mutation.hpp"

#include <functional>
#include <set>

namespace ff {

namespace {

Int dot(const Vec& a, const Vec& b) {
    Int s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

Laurent factor_in_slice_coords(const MutationData& m, const IntMatrix& u) {
    int n = static_cast<int>(m.weight.size());
    if (m.slice_basis.rows == 0 || m.slice_basis == u) return m.factor;
    if (m.slice_basis.rows != n || m.slice_basis.cols != n)
        throw DomainError("DimensionMismatch", "slice basis has the wrong size");
    IntMatrix inv = unimodular_inverse(u);
    Laurent out(n - 1);
    for (const auto& [e, c] : m.factor.terms) {
        Vec amb(n, Int(0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n - 1; ++j) amb[i] += m.slice_basis.at(i, j) * e[j];
        Vec y = ff::apply(inv, amb);
        if (y[n - 1] != 0)
            throw DomainError("FactorNotInHyperplane", "factor exponent has nonzero height");
        y.pop_back();
        out.add_term(y, c);
    }
    return out;
}

bool is_mutable(const Laurent& f, const MutationData& m) {
    if (!is_primitive(m.weight))
        throw DomainError("NonPrimitiveWeight", "mutation weight must be primitive");
    if (m.is_trivial()) return true;
    SliceDecomposition d = slice_decompose(f, m.weight);
    Laurent h = factor_in_slice_coords(m, d.basis);
    for (Int k = 1; k <= d.a; ++k) {
        auto it = d.slices.find(-k);
        if (it == d.slices.end()) continue;
        if (!divide_exact(it->second, pow(h, k.get_si())).has_value()) return false;
    }
    return true;
}

Laurent mutate(const Laurent& f, const MutationData& m) {
    if (!is_primitive(m.weight))
        throw DomainError("NonPrimitiveWeight", "mutation weight must be primitive");
    SliceDecomposition d = slice_decompose(f, m.weight);
    Laurent h = factor_in_slice_coords(m, d.basis);
    int n = f.n_vars;
    Laurent g(n);
    for (const auto& [k, fk] : d.slices) {
        Laurent gk(n - 1);
        if (k >= 0) {
            gk = mul(fk, pow(h, k.get_si()));
        } else {
            std::optional<Laurent> q = divide_exact(fk, pow(h, Int(-k).get_si()));
            if (!q) throw DomainError("NotMutable", "factor does not divide a negative slice");
            gk = *q;
        }
        for (const auto& [e, c] : gk.terms) {
            Vec y = e;
            y.push_back(k);
            g.add_term(ff::apply(d.basis, y), c);
        }
    }
    return g;
}

std::vector<Vec> candidate_weights(const LatticePolytope& p) {
    if (!p.full_dimensional())
        throw DomainError("NotFullDimensional", "candidate weights need a full-dimensional polytope");
    for (const Facet& f : p.facets)
        if (f.offset >= 0)
            throw DomainError("OriginNotInterior", "candidate weights need the origin inside");

    Int a_max = 0;
    std::vector<LatticePolytope> faces = proper_faces_dim_ge1(p);
    for (const LatticePolytope& f : faces) a_max = std::max(a_max, lattice_diameter(f));
    std::vector<Vec> out;
    if (a_max == 0) return out;

    // a(w) <= a_max exactly when w lies in the a_max-fold dilate of the dual.
    for (const Vec& w : dilated_lattice_points(dual(p), a_max)) {
        if (gcd_all(w) != 1) continue;
        LatticePolytope face = minimal_face(p, w);
        if (face.affine_dim < 1) continue;
        Int a = -dot(w, face.vertices.front());
        if (a < 1 || a > lattice_diameter(face)) continue;
        out.push_back(w);
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

Laurent all_ones_polynomial(const LatticePolytope& q) {
    Laurent f(q.ambient_dim);
    for (const Vec& e : lattice_points(q)) f.set(e, 1);
    return f;
}

LatticePolytope embed_plane(const LatticePolytope& p) {
    std::vector<Vec> pts;
    for (const Vec& v : p.vertices) pts.push_back({v[0], Int(0)});
    return hull(pts);
}

std::vector<Laurent> factors_in_plane(const std::vector<LatticePolytope>& hulls) {
    std::vector<Laurent> out;
    const LatticePolytope& s1 = hulls[0];
    if (s1.empty() || s1.affine_dim == 0) return out;
    std::vector<LatticePolytope> inds = indecomposable_summands(s1);

    std::set<std::map<Vec, Rat>> seen;
    std::vector<int> counts(inds.size(), 0);

    std::function<void(size_t, const LatticePolytope&, const Laurent&)> rec =
        [&](size_t i, const LatticePolytope& q, const Laurent& h) {
            if (i == inds.size()) {
                if (q.affine_dim <= 0) return;  // empty multiset
                for (size_t k = 2; k <= hulls.size(); ++k) {
                    const LatticePolytope& sk = hulls[k - 1];
                    if (sk.empty()) continue;  // zero slice imposes no constraint
                    if (!is_minkowski_summand(dilate(q, Int(static_cast<long>(k))), sk)) return;
                }
                if (seen.insert(h.terms).second) out.push_back(h);
                return;
            }
            rec(i + 1, q, h);
            LatticePolytope cur = q;
            Laurent prod = h;
            while (true) {
                cur = minkowski_sum(cur, inds[i]);
                if (!is_minkowski_summand(cur, s1)) break;
                prod = mul(prod, all_ones_polynomial(inds[i]));
                rec(i + 1, cur, prod);
            }
        };
    LatticePolytope origin = hull({Vec(2)});
    rec(0, origin, Laurent::constant(2, 1));
    return out;
}

}  // namespace

std::vector<Laurent> candidate_factors(const std::vector<LatticePolytope>& slice_hulls) {
    std::vector<Laurent> out;
    if (slice_hulls.empty()) return out;
    int amb = slice_hulls[0].ambient_dim;
    if (amb == 2) return factors_in_plane(slice_hulls);
    if (amb != 1)
        throw DomainError("NotLowDimensional", "factor candidates need slices of dimension at most 2");
    std::vector<LatticePolytope> planar;
    for (const LatticePolytope& s : slice_hulls)
        planar.push_back(s.empty() ? s : embed_plane(s));
    for (const Laurent& h : factors_in_plane(planar)) {
        Laurent proj(1);
        for (const auto& [e, c] : h.terms) proj.add_term(Vec{e[0]}, c);
        out.push_back(proj);
    }
    return out;
}

std::vector<Laurent> candidate_factors(const LatticePolytope& p, const Vec& w) {
    Int a = 0;
    for (const Vec& v : p.vertices) a = std::max(a, Int(-dot(w, v)));
    std::vector<LatticePolytope> hulls;
    for (Int k = 1; k <= a; ++k) hulls.push_back(slice(p, w, -k));
    return candidate_factors(hulls);
}

std::vector<MutationData> admitted_mutations(const Laurent& f) {
    if (!is_normalised(f))
        throw DomainError("NotNormalised", "admitted mutations need a normalised polynomial");
    if (!is_centered(f))
        throw DomainError("NotCentered", "admitted mutations need a centered polynomial");
    std::vector<MutationData> out;
    LatticePolytope p = newton_polytope(f);
    for (const Vec& w : candidate_weights(p)) {
        SliceDecomposition d = slice_decompose(f, w);
        std::vector<LatticePolytope> hulls;
        bool usable = true;
        for (Int k = 1; k <= d.a; ++k) {
            auto it = d.slices.find(-k);
            if (it == d.slices.end()) {
                LatticePolytope none;
                none.ambient_dim = f.n_vars - 1;
                if (k == 1) usable = false;  // no support to derive factors from
                hulls.push_back(none);
            } else {
                hulls.push_back(newton_polytope(it->second));
            }
        }
        if (!usable || hulls.empty()) continue;
        for (const Laurent& h : candidate_factors(hulls)) {
            MutationData m{w, h, d.basis};
            if (m.is_trivial()) continue;
            if (is_mutable(f, m)) out.push_back(m);
        }
    }
    return out;
}

}  // namespace ff
