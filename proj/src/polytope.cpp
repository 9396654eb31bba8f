#include "fanoforge/polytope.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "fanoforge/ratlin.hpp"

namespace ff {

namespace {

Vec sub(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Vec add(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Int dot(const Vec& a, const Vec& b) {
    Int s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Vec primitive(Vec v) {
    Int g = gcd_all(v);
    if (g > 1)
        for (Int& x : v) x /= g;
    return v;
}

// Integer solve basis * y = x for a full-column-rank matrix; nullopt when x is
// not an integral combination.
std::optional<Vec> solve_integral(const IntMatrix& basis, const Vec& x) {
    RatMat a(basis.rows, RatRow(basis.cols));
    RatRow b(basis.rows);
    for (int i = 0; i < basis.rows; ++i) {
        for (int j = 0; j < basis.cols; ++j) a[i][j] = Rat(basis.at(i, j));
        b[i] = Rat(x[i]);
    }
    LinearSolveResult r = solve_affine(a, b);
    if (!r.consistent || r.dimension != 0) return std::nullopt;
    Vec y(basis.cols);
    for (int j = 0; j < basis.cols; ++j) {
        if (r.particular[j].get_den() != 1) return std::nullopt;
        y[j] = r.particular[j].get_num();
    }
    return y;
}

// Brute-force facet enumeration for a full-dimensional point set.
std::vector<Facet> enumerate_facets(const std::vector<Vec>& pts, int dim) {
    std::vector<Facet> facets;
    std::set<std::pair<Vec, Int>> seen;
    int n = static_cast<int>(pts.size());
    std::vector<int> idx(dim);
    // Iterate over all subsets of size dim.
    std::vector<int> c(dim);
    for (int i = 0; i < dim; ++i) c[i] = i;
    auto advance = [&]() {
        int i = dim - 1;
        while (i >= 0 && c[i] == n - dim + i) --i;
        if (i < 0) return false;
        ++c[i];
        for (int j = i + 1; j < dim; ++j) c[j] = c[j - 1] + 1;
        return true;
    };
    if (n < dim) return facets;
    do {
        IntMatrix d(dim - 1, dim);
        for (int i = 1; i < dim; ++i)
            for (int j = 0; j < dim; ++j) d.at(i - 1, j) = pts[c[i]][j] - pts[c[0]][j];
        IntMatrix ker = saturated_kernel(d);
        if (ker.rows != 1) continue;  // chosen points not affinely independent
        Vec nrm = ker.row(0);
        Int off = dot(nrm, pts[c[0]]);
        bool lo = false, hi = false;
        for (const Vec& p : pts) {
            int cmp = sgn(Int(dot(nrm, p) - off));
            if (cmp > 0) hi = true;
            else if (cmp < 0) lo = true;
            if (lo && hi) break;
        }
        if (lo && hi) continue;
        if (lo) {
            for (Int& x : nrm) x = -x;
            off = -off;
        }
        if (seen.insert({nrm, off}).second) facets.push_back({nrm, off});
    } while (advance());
    return facets;
}

}  // namespace

bool LatticePolytope::contains(const Vec& x) const {
    if (empty()) return false;
    if (affine_dim == 0) return x == vertices[0];
    if (full_dimensional()) {
        for (const Facet& f : facets)
            if (dot(f.normal, x) < f.offset) return false;
        return true;
    }
    std::optional<Vec> y = solve_integral(basis, sub(x, base));
    if (!y) return false;
    return intrinsic->contains(*y);
}

LatticePolytope hull(const std::vector<Vec>& points) {
    LatticePolytope p;
    if (points.empty()) return p;
    size_t dim = points[0].size();
    for (const Vec& v : points)
        if (v.size() != dim) throw DomainError("DimensionMismatch", "mixed point dimensions");
    p.ambient_dim = static_cast<int>(dim);

    std::vector<Vec> pts = points;
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    // Affine dimension from the saturated span of differences.
    IntMatrix diffs(static_cast<int>(pts.size()) - 1, p.ambient_dim);
    for (size_t i = 1; i < pts.size(); ++i)
        for (int j = 0; j < p.ambient_dim; ++j) diffs.at(static_cast<int>(i) - 1, j) = pts[i][j] - pts[0][j];
    int adim = pts.size() > 1 ? rank(diffs) : 0;
    p.affine_dim = adim;

    if (adim == 0) {
        p.vertices = {pts[0]};
        p.base = pts[0];
        return p;
    }

    if (adim == p.ambient_dim) {
        p.facets = enumerate_facets(pts, adim);
        // Vertices: points whose active facet normals span the space.
        for (const Vec& x : pts) {
            std::vector<Vec> act;
            for (const Facet& f : p.facets)
                if (dot(f.normal, x) == f.offset) act.push_back(f.normal);
            if (static_cast<int>(act.size()) >= adim &&
                rank(IntMatrix::from_rows(act)) == adim)
                p.vertices.push_back(x);
        }
        std::sort(p.vertices.begin(), p.vertices.end());
        return p;
    }

    // Lower-dimensional: build intrinsic coordinates from a saturated lattice
    // basis of the affine span, recurse there.
    IntMatrix span = saturated_kernel(saturated_kernel(diffs));
    p.base = pts[0];
    p.basis = transpose(span);  // ambient x adim
    std::vector<Vec> intr;
    for (const Vec& x : pts) {
        std::optional<Vec> y = solve_integral(p.basis, sub(x, p.base));
        if (!y) throw DomainError("DimensionMismatch", "point outside saturated span");
        intr.push_back(*y);
    }
    p.intrinsic = std::make_shared<LatticePolytope>(hull(intr));
    for (const Vec& y : p.intrinsic->vertices)
        p.vertices.push_back(add(p.base, ff::apply(p.basis, y)));
    std::sort(p.vertices.begin(), p.vertices.end());
    return p;
}

namespace {

void scan_points(const LatticePolytope& p, int coord, Vec& prefix, std::vector<Vec>& out) {
    int n = p.ambient_dim;
    if (coord == n - 1) {
        // Last coordinate: exact interval from the facet inequalities.
        bool any = true;
        std::optional<Int> lo, hi;
        for (const Facet& f : p.facets) {
            Int partial = 0;
            for (int j = 0; j < n - 1; ++j) partial += f.normal[j] * prefix[j];
            Int c = f.normal[n - 1];
            Int rhs = f.offset - partial;
            if (c == 0) {
                if (rhs > 0) { any = false; break; }
            } else if (c > 0) {
                Int b;
                mpz_cdiv_q(b.get_mpz_t(), rhs.get_mpz_t(), c.get_mpz_t());
                if (!lo || b > *lo) lo = b;
            } else {
                Int b;
                mpz_fdiv_q(b.get_mpz_t(), rhs.get_mpz_t(), c.get_mpz_t());
                if (!hi || b < *hi) hi = b;
            }
        }
        if (!any || !lo || !hi) return;
        for (Int y = *lo; y <= *hi; ++y) {
            prefix[n - 1] = y;
            out.push_back(prefix);
        }
        return;
    }
    Int mn = p.vertices[0][coord], mx = mn;
    for (const Vec& v : p.vertices) {
        if (v[coord] < mn) mn = v[coord];
        if (v[coord] > mx) mx = v[coord];
    }
    for (Int y = mn; y <= mx; ++y) {
        prefix[coord] = y;
        scan_points(p, coord + 1, prefix, out);
    }
}

}  // namespace

std::vector<Vec> lattice_points(const LatticePolytope& p) {
    std::vector<Vec> out;
    if (p.empty()) return out;
    if (p.affine_dim == 0) return {p.vertices[0]};
    if (p.full_dimensional()) {
        Vec prefix(p.ambient_dim);
        scan_points(p, 0, prefix, out);
        std::sort(out.begin(), out.end());
        return out;
    }
    for (const Vec& y : lattice_points(*p.intrinsic))
        out.push_back(add(p.base, ff::apply(p.basis, y)));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Vec> interior_points(const LatticePolytope& p) {
    if (!p.full_dimensional())
        throw DomainError("NotFullDimensional", "interior of a lower-dimensional polytope");
    std::vector<Vec> out;
    for (const Vec& x : lattice_points(p)) {
        bool strict = true;
        for (const Facet& f : p.facets)
            if (dot(f.normal, x) == f.offset) { strict = false; break; }
        if (strict) out.push_back(x);
    }
    return out;
}

bool is_canonical(const LatticePolytope& p) {
    std::vector<Vec> in = interior_points(p);
    return in.size() == 1 && gcd_all(in[0]) == 0;
}

RationalPolytope dual(const LatticePolytope& p) {
    if (!p.full_dimensional() || !p.contains(Vec(p.ambient_dim)))
        throw DomainError("OriginNotInterior", "dual needs the origin strictly inside");
    for (const Facet& f : p.facets)
        if (f.offset >= 0)
            throw DomainError("OriginNotInterior", "dual needs the origin strictly inside");
    RationalPolytope q;
    q.ambient_dim = p.ambient_dim;
    for (const Facet& f : p.facets) {
        std::vector<Rat> y(p.ambient_dim);
        for (int j = 0; j < p.ambient_dim; ++j) {
            y[j] = Rat(f.normal[j], -f.offset);
            y[j].canonicalize();
        }
        q.vertices.push_back(y);
    }
    return q;
}

std::vector<Vec> dilated_lattice_points(const RationalPolytope& q, const Int& k) {
    if (k == 0) return {Vec(q.ambient_dim)};
    // Clear denominators: Q = L*q is a lattice polytope, then
    // y in k*q  iff  <n,y> >= ceil(k*offset / L) for each facet of Q.
    Int lcm_den = 1;
    for (const auto& v : q.vertices)
        for (const Rat& x : v) lcm_den = lcm(lcm_den, Int(x.get_den()));
    std::vector<Vec> scaled;
    for (const auto& v : q.vertices) {
        Vec w(q.ambient_dim);
        for (int j = 0; j < q.ambient_dim; ++j) {
            Rat s = v[j] * Rat(lcm_den);
            w[j] = s.get_num();
        }
        scaled.push_back(w);
    }
    LatticePolytope big = hull(scaled);
    if (!big.full_dimensional())
        throw DomainError("NotFullDimensional", "dilated point scan needs a full-dimensional polytope");
    LatticePolytope shell;
    shell.ambient_dim = big.ambient_dim;
    shell.affine_dim = big.ambient_dim;
    for (const Facet& f : big.facets) {
        Int rhs;
        Int num = k * f.offset;
        mpz_cdiv_q(rhs.get_mpz_t(), num.get_mpz_t(), lcm_den.get_mpz_t());
        shell.facets.push_back({f.normal, rhs});
    }
    for (const Vec& v : big.vertices) {
        Vec w(v.size());
        for (size_t j = 0; j < v.size(); ++j) {
            Int num = k * v[j];
            // Either rounding is fine for the bounding box.
            mpz_fdiv_q(w[j].get_mpz_t(), num.get_mpz_t(), lcm_den.get_mpz_t());
        }
        shell.vertices.push_back(w);
        for (size_t j = 0; j < v.size(); ++j) w[j] += 1;
        shell.vertices.push_back(w);
    }
    Vec prefix(shell.ambient_dim);
    std::vector<Vec> pts;
    scan_points(shell, 0, prefix, pts);
    std::sort(pts.begin(), pts.end());
    return pts;
}

EhrhartPrefix ehrhart_prefix(const RationalPolytope& q, int k_max) {
    EhrhartPrefix e;
    e.coefficients.assign(k_max + 1, 0);
    e.coefficients[0] = 1;
    for (int k = 1; k <= k_max; ++k)
        e.coefficients[k] = static_cast<long>(dilated_lattice_points(q, k).size());
    return e;
}

Int genus_from_hilbert(const EhrhartPrefix& e) {
    if (e.coefficients.size() < 2)
        throw DomainError("DimensionMismatch", "Hilbert prefix too short for genus");
    return e.coefficients[1] - 2;
}

LatticePolytope slice(const LatticePolytope& p, const Vec& w, const Int& k) {
    IntMatrix u = complete_to_basis(w);
    IntMatrix uinv = unimodular_inverse(u);
    std::vector<Vec> pts;
    for (const Vec& x : lattice_points(p)) {
        if (dot(w, x) != k) continue;
        Vec y = ff::apply(uinv, x);
        y.pop_back();  // last coordinate is the height k
        pts.push_back(y);
    }
    if (pts.empty()) {
        LatticePolytope e;
        e.ambient_dim = p.ambient_dim - 1;
        return e;
    }
    return hull(pts);
}

LatticePolytope dilate(const LatticePolytope& p, const Int& k) {
    if (k == 0) {
        Vec z(p.ambient_dim);
        return hull({z});
    }
    std::vector<Vec> vs;
    for (const Vec& v : p.vertices) {
        Vec w(v.size());
        for (size_t j = 0; j < v.size(); ++j) w[j] = k * v[j];
        vs.push_back(w);
    }
    return hull(vs);
}

// ---------------------------------------------------------------------------
// Polygon Minkowski machinery.

namespace {

struct EdgeVec {
    Vec dir;   // primitive, 2-dim
    Int mult;
};

// Angle order starting from direction (1,0) going counterclockwise.
bool angle_less(const Vec& a, const Vec& b) {
    auto half = [](const Vec& v) {
        // 0 for upper half (y>0 or y==0,x>0), 1 for lower
        if (v[1] > 0 || (v[1] == 0 && v[0] > 0)) return 0;
        return 1;
    };
    int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb;
    Int cross = a[0] * b[1] - a[1] * b[0];
    return cross > 0;
}

// Counterclockwise edge multiset of a 2-d polygon/segment (in ambient dim 2).
std::vector<EdgeVec> edge_vectors(const LatticePolytope& p) {
    std::vector<EdgeVec> out;
    if (p.affine_dim <= 0) return out;
    if (p.affine_dim == 1) {
        Vec d = sub(p.vertices.back(), p.vertices.front());
        Int len = gcd_all(d);
        Vec pd = primitive(d);
        Vec nd(pd.size());
        for (size_t i = 0; i < pd.size(); ++i) nd[i] = -pd[i];
        out.push_back({pd, len});
        out.push_back({nd, len});
        std::sort(out.begin(), out.end(), [](const EdgeVec& a, const EdgeVec& b) {
            return angle_less(a.dir, b.dir);
        });
        return out;
    }
    // Order vertices counterclockwise around the centroid.
    std::vector<Vec> vs = p.vertices;
    Rat cx(0), cy(0);
    for (const Vec& v : vs) { cx += Rat(v[0]); cy += Rat(v[1]); }
    cx /= Rat(static_cast<long>(vs.size()));
    cy /= Rat(static_cast<long>(vs.size()));
    std::sort(vs.begin(), vs.end(), [&](const Vec& a, const Vec& b) {
        Rat ax = Rat(a[0]) - cx, ay = Rat(a[1]) - cy;
        Rat bx = Rat(b[0]) - cx, by = Rat(b[1]) - cy;
        auto half = [](const Rat& x, const Rat& y) {
            if (y > 0 || (y == 0 && x > 0)) return 0;
            return 1;
        };
        int ha = half(ax, ay), hb = half(bx, by);
        if (ha != hb) return ha < hb;
        return ax * by - ay * bx > 0;
    });
    std::map<Vec, Int> acc;
    for (size_t i = 0; i < vs.size(); ++i) {
        Vec d = sub(vs[(i + 1) % vs.size()], vs[i]);
        Int len = gcd_all(d);
        acc[primitive(d)] += len;
    }
    for (auto& [dir, mult] : acc) out.push_back({dir, mult});
    std::sort(out.begin(), out.end(), [](const EdgeVec& a, const EdgeVec& b) {
        return angle_less(a.dir, b.dir);
    });
    return out;
}

// Rebuild the polygon with lexicographically-minimal vertex at the origin from
// an edge multiset (assumed to close up).
LatticePolytope polygon_from_edges(const std::vector<EdgeVec>& edges) {
    std::vector<EdgeVec> es = edges;
    std::sort(es.begin(), es.end(), [](const EdgeVec& a, const EdgeVec& b) {
        return angle_less(a.dir, b.dir);
    });
    std::vector<Vec> vs;
    Vec cur(2);
    vs.push_back(cur);
    for (const EdgeVec& e : es) {
        cur = add(cur, Vec{e.dir[0] * e.mult, e.dir[1] * e.mult});
        vs.push_back(cur);
    }
    LatticePolytope p = hull(vs);
    // Translate so the lex-min vertex is the origin.
    Vec shift = p.vertices.front();
    std::vector<Vec> moved;
    for (const Vec& v : p.vertices) moved.push_back(sub(v, shift));
    return hull(moved);
}

using Multiplicities = std::vector<Int>;  // parallel to a fixed edge direction list

bool closes_up(const std::vector<Vec>& dirs, const Multiplicities& m) {
    Int sx = 0, sy = 0;
    for (size_t i = 0; i < dirs.size(); ++i) {
        sx += dirs[i][0] * m[i];
        sy += dirs[i][1] * m[i];
    }
    return sx == 0 && sy == 0;
}

bool is_zero(const Multiplicities& m) {
    for (const Int& x : m)
        if (x != 0) return false;
    return true;
}

// All nonzero closed sub-multisets b <= m.
std::vector<Multiplicities> closed_subsets(const std::vector<Vec>& dirs, const Multiplicities& m) {
    std::vector<Multiplicities> out;
    Multiplicities cur(m.size(), Int(0));
    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == m.size()) {
            if (!is_zero(cur) && closes_up(dirs, cur)) out.push_back(cur);
            return;
        }
        for (Int b = 0; b <= m[i]; ++b) {
            cur[i] = b;
            rec(i + 1);
        }
        cur[i] = 0;
    };
    rec(0);
    return out;
}

bool is_indecomposable_multiset(const std::vector<Vec>& dirs, const Multiplicities& m) {
    for (const Multiplicities& s : closed_subsets(dirs, m)) {
        if (s == m) continue;
        return false;  // any proper nonzero closed subset decomposes m
    }
    return true;
}

void decompose_rec(const std::vector<Vec>& dirs,
                   const std::vector<Multiplicities>& indecomposables,
                   Multiplicities remaining, size_t min_part,
                   std::vector<size_t>& chosen,
                   std::vector<std::vector<size_t>>& out) {
    if (is_zero(remaining)) {
        out.push_back(chosen);
        return;
    }
    for (size_t i = min_part; i < indecomposables.size(); ++i) {
        const Multiplicities& part = indecomposables[i];
        bool fits = true;
        for (size_t j = 0; j < part.size(); ++j)
            if (part[j] > remaining[j]) { fits = false; break; }
        if (!fits) continue;
        Multiplicities next = remaining;
        for (size_t j = 0; j < part.size(); ++j) next[j] -= part[j];
        chosen.push_back(i);
        decompose_rec(dirs, indecomposables, next, i, chosen, out);
        chosen.pop_back();
    }
}

}  // namespace

bool is_minkowski_summand(const LatticePolytope& s, const LatticePolytope& p) {
    if (s.empty() || p.empty()) return false;
    if (s.affine_dim == 0) return true;
    if (s.affine_dim > p.affine_dim) return false;
    std::vector<EdgeVec> es = edge_vectors(s);
    std::vector<EdgeVec> ep = edge_vectors(p);
    for (const EdgeVec& e : es) {
        bool ok = false;
        for (const EdgeVec& f : ep)
            if (f.dir == e.dir && f.mult >= e.mult) { ok = true; break; }
        if (!ok) return false;
    }
    return true;
}

LatticePolytope minkowski_sum(const LatticePolytope& a, const LatticePolytope& b) {
    if (a.ambient_dim != b.ambient_dim)
        throw DomainError("DimensionMismatch", "Minkowski sum of different ambient dimensions");
    std::vector<Vec> pts;
    for (const Vec& u : a.vertices)
        for (const Vec& v : b.vertices) pts.push_back(add(u, v));
    return hull(pts);
}

std::vector<LatticePolytope> indecomposable_summands(const LatticePolytope& poly) {
    if (poly.ambient_dim != 2 || poly.affine_dim > 2)
        throw DomainError("NotLowDimensional", "summand enumeration works on polygons in the plane");
    std::vector<LatticePolytope> out;
    if (poly.affine_dim <= 0) return out;
    std::vector<EdgeVec> edges = edge_vectors(poly);
    std::vector<Vec> dirs;
    Multiplicities total;
    for (const EdgeVec& e : edges) {
        dirs.push_back(e.dir);
        total.push_back(e.mult);
    }
    std::set<std::vector<Vec>> seen;
    for (const Multiplicities& s : closed_subsets(dirs, total)) {
        if (!is_indecomposable_multiset(dirs, s)) continue;
        std::vector<EdgeVec> es;
        for (size_t i = 0; i < dirs.size(); ++i)
            if (s[i] != 0) es.push_back({dirs[i], s[i]});
        LatticePolytope q = polygon_from_edges(es);
        if (seen.insert(q.vertices).second) out.push_back(q);
    }
    return out;
}

std::vector<std::vector<LatticePolytope>> minkowski_summand_decompositions(const LatticePolytope& poly) {
    if (poly.affine_dim > 2)
        throw DomainError("NotLowDimensional", "Minkowski decomposition limited to polygons");
    std::vector<std::vector<LatticePolytope>> out;
    if (poly.empty()) return out;

    // Work in 2-d coordinates: native when ambient is 2, intrinsic otherwise.
    LatticePolytope work;
    if (poly.ambient_dim == 2) {
        work = poly;
    } else if (poly.affine_dim == 0) {
        Vec z(1);
        out.push_back({hull({z})});
        return out;
    } else {
        work = *poly.intrinsic;
        if (work.ambient_dim == 1) {
            // Promote a segment to ambient 2 so the edge machinery applies.
            std::vector<Vec> vs;
            for (const Vec& v : work.vertices) vs.push_back({v[0], Int(0)});
            work = hull(vs);
        }
    }
    if (work.affine_dim == 0) {
        out.push_back({work});
        return out;
    }

    std::vector<EdgeVec> edges = edge_vectors(work);
    std::vector<Vec> dirs;
    Multiplicities total;
    for (const EdgeVec& e : edges) {
        dirs.push_back(e.dir);
        total.push_back(e.mult);
    }

    std::vector<Multiplicities> indec;
    for (const Multiplicities& s : closed_subsets(dirs, total))
        if (is_indecomposable_multiset(dirs, s)) indec.push_back(s);

    std::vector<std::vector<size_t>> partitions;
    std::vector<size_t> chosen;
    decompose_rec(dirs, indec, total, 0, chosen, partitions);

    auto part_to_polytope = [&](const Multiplicities& m) {
        std::vector<EdgeVec> es;
        for (size_t i = 0; i < dirs.size(); ++i)
            if (m[i] != 0) es.push_back({dirs[i], m[i]});
        return polygon_from_edges(es);
    };

    std::set<std::vector<std::vector<Vec>>> seen;
    auto push_decomposition = [&](std::vector<LatticePolytope> parts) {
        std::sort(parts.begin(), parts.end(), [](const LatticePolytope& a, const LatticePolytope& b) {
            return a.vertices < b.vertices;
        });
        std::vector<std::vector<Vec>> key;
        for (const auto& q : parts) key.push_back(q.vertices);
        if (seen.insert(key).second) out.push_back(parts);
    };

    // Trivial decomposition first, then the complete ones.
    push_decomposition({part_to_polytope(total)});
    for (const auto& partition : partitions) {
        std::vector<LatticePolytope> parts;
        for (size_t i : partition) parts.push_back(part_to_polytope(indec[i]));
        push_decomposition(parts);
    }
    return out;
}

namespace {

// Find all unimodular U with U p = q (vertex sets).
std::vector<IntMatrix> equivalence_maps_all(const LatticePolytope& p, const LatticePolytope& q) {
    std::vector<IntMatrix> out;
    if (p.ambient_dim != q.ambient_dim || p.vertices.size() != q.vertices.size()) return out;
    int n = p.ambient_dim;
    // Greedy linearly independent spanning set among p's vertices.
    std::vector<Vec> basis_vs;
    std::vector<int> basis_idx;
    for (size_t i = 0; i < p.vertices.size() && static_cast<int>(basis_vs.size()) < n; ++i) {
        basis_vs.push_back(p.vertices[i]);
        if (rank(IntMatrix::from_rows(basis_vs)) != static_cast<int>(basis_vs.size())) {
            basis_vs.pop_back();
        } else {
            basis_idx.push_back(static_cast<int>(i));
        }
    }
    if (static_cast<int>(basis_vs.size()) < n) return out;  // not full-dimensional
    IntMatrix v = IntMatrix::from_cols(basis_vs);

    std::set<std::vector<Int>> qset;
    for (const Vec& w : q.vertices) qset.insert(w);

    std::vector<int> pick(n, 0);
    size_t m = q.vertices.size();
    std::vector<int> stack;
    std::function<void()> rec = [&]() {
        if (static_cast<int>(stack.size()) == n) {
            std::vector<Vec> imgs;
            for (int i : stack) imgs.push_back(q.vertices[i]);
            IntMatrix w = IntMatrix::from_cols(imgs);
            // U = W V^{-1}; integrality via rational solve.
            RatMat a(n, RatRow(n));
            IntMatrix u(n, n);
            bool ok = true;
            // Solve V^T U^T = W^T row by row: U row_i satisfies U row_i * V = W row_i.
            for (int i = 0; i < n && ok; ++i) {
                RatMat at(n, RatRow(n));
                RatRow b(n);
                for (int r = 0; r < n; ++r) {
                    for (int c2 = 0; c2 < n; ++c2) at[r][c2] = Rat(v.at(c2, r));
                    b[r] = Rat(w.at(i, r));
                }
                std::optional<std::vector<Rat>> sol = solve_unique(at, b);
                if (!sol) { ok = false; break; }
                for (int c2 = 0; c2 < n; ++c2) {
                    if ((*sol)[c2].get_den() != 1) { ok = false; break; }
                    u.at(i, c2) = (*sol)[c2].get_num();
                }
            }
            if (!ok || !is_unimodular(u)) return;
            for (const Vec& x : p.vertices)
                if (!qset.count(ff::apply(u, x))) return;
            out.push_back(u);
            return;
        }
        for (size_t i = 0; i < m; ++i) {
            stack.push_back(static_cast<int>(i));
            rec();
            stack.pop_back();
        }
    };
    rec();
    return out;
}

}  // namespace

std::vector<IntMatrix> automorphisms(const LatticePolytope& p) {
    return equivalence_maps_all(p, p);
}

Fingerprint fingerprint(const LatticePolytope& p) {
    Fingerprint f;
    f.vertex_count = static_cast<int>(p.vertices.size());
    f.lattice_point_count = static_cast<int>(lattice_points(p).size());
    f.facet_count = static_cast<int>(p.facets.size());
    bool origin_interior = true;
    for (const Facet& fc : p.facets)
        if (fc.offset >= 0) origin_interior = false;
    if (p.full_dimensional() && origin_interior)
        f.dual_ehrhart = ehrhart_prefix(dual(p), 3).coefficients;
    for (const Facet& fc : p.facets) f.facet_heights.push_back(-fc.offset);
    std::sort(f.facet_heights.begin(), f.facet_heights.end());
    return f;
}

std::optional<IntMatrix> equivalence_map(const LatticePolytope& p, const LatticePolytope& q) {
    if (!(fingerprint(p) == fingerprint(q))) return std::nullopt;
    std::vector<IntMatrix> all = equivalence_maps_all(p, q);
    if (all.empty()) return std::nullopt;
    return all.front();
}

bool equivalent(const LatticePolytope& p, const LatticePolytope& q) {
    return equivalence_map(p, q).has_value();
}

Int lattice_diameter(const LatticePolytope& p) {
    std::vector<Vec> pts = lattice_points(p);
    Int best = 0;
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j) {
            Int g = gcd_all(sub(pts[j], pts[i]));
            if (g > best) best = g;
        }
    return best;
}

std::vector<LatticePolytope> proper_faces_dim_ge1(const LatticePolytope& p) {
    if (!p.full_dimensional())
        throw DomainError("NotFullDimensional", "face enumeration needs a full-dimensional polytope");
    // Faces are intersections of facet vertex sets; close under intersection.
    std::set<std::vector<Vec>> sets;
    for (const Facet& f : p.facets) {
        std::vector<Vec> vs;
        for (const Vec& v : p.vertices)
            if (dot(f.normal, v) == f.offset) vs.push_back(v);
        sets.insert(vs);
    }
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::vector<Vec>> cur(sets.begin(), sets.end());
        for (size_t i = 0; i < cur.size(); ++i)
            for (size_t j = i + 1; j < cur.size(); ++j) {
                std::vector<Vec> inter;
                std::set_intersection(cur[i].begin(), cur[i].end(), cur[j].begin(), cur[j].end(),
                                      std::back_inserter(inter));
                if (!inter.empty() && sets.insert(inter).second) grew = true;
            }
    }
    std::vector<LatticePolytope> out;
    for (const auto& vs : sets) {
        LatticePolytope f = hull(vs);
        if (f.affine_dim >= 1) out.push_back(f);
    }
    return out;
}

LatticePolytope minimal_face(const LatticePolytope& p, const Vec& w) {
    Int mn = dot(w, p.vertices[0]);
    for (const Vec& v : p.vertices) mn = std::min(mn, dot(w, v));
    std::vector<Vec> vs;
    for (const Vec& v : p.vertices)
        if (dot(w, v) == mn) vs.push_back(v);
    return hull(vs);
}

}  // namespace ff
