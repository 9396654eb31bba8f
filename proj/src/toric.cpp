#include "fanoforge/toric.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "fanoforge/ratlin.hpp"

namespace ff {

namespace {

Int dot(const Vec& a, const Vec& b) {
    Int s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

std::vector<std::vector<int>> subsets_of_size(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> c(k);
    for (int i = 0; i < k; ++i) c[i] = i;
    if (k > n) return out;
    while (true) {
        out.push_back(c);
        int i = k - 1;
        while (i >= 0 && c[i] == n - k + i) --i;
        if (i < 0) break;
        ++c[i];
        for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
    }
    return out;
}

IntMatrix columns(const IntMatrix& w, const std::vector<int>& cols) {
    IntMatrix m(w.rows, static_cast<int>(cols.size()));
    for (int i = 0; i < w.rows; ++i)
        for (size_t j = 0; j < cols.size(); ++j) m.at(i, static_cast<int>(j)) = w.at(i, cols[j]);
    return m;
}

// Unique coefficients of v over independent columns; nullopt if inconsistent.
std::optional<std::vector<Rat>> solve_in_columns(const IntMatrix& w, const std::vector<int>& cols,
                                                 const Vec& v) {
    RatMat a(w.rows, RatRow(cols.size()));
    RatRow b(w.rows);
    for (int i = 0; i < w.rows; ++i) {
        for (size_t j = 0; j < cols.size(); ++j) a[i][j] = Rat(w.at(i, cols[j]));
        b[i] = Rat(v[i]);
    }
    LinearSolveResult r = solve_affine(a, b);
    if (!r.consistent || r.dimension != 0) return std::nullopt;
    return r.particular;
}

}  // namespace

IntMatrix rays_from_weights(const IntMatrix& w) {
    if (rank(w) != w.rows) throw DomainError("RankDeficient", "weight matrix must have full row rank");
    return saturated_kernel(w);
}

bool in_column_cone(const IntMatrix& w, const std::vector<int>& cols, const Vec& v, bool strict) {
    std::vector<int> use = cols;
    if (use.empty())
        for (int j = 0; j < w.cols; ++j) use.push_back(j);
    if (strict) {
        if (static_cast<int>(use.size()) == w.rows) {
            std::optional<std::vector<Rat>> sol = solve_in_columns(w, use, v);
            if (!sol) return false;
            for (const Rat& x : *sol)
                if (x <= 0) return false;
            return true;
        }
        // Interior of a (necessarily full dimensional) cone: strictly inside
        // every facet-supporting hyperplane.
        if (rank(columns(w, use)) != w.rows) return false;
        if (!in_column_cone(w, use, v, false)) return false;
        for (const std::vector<int>& pick : subsets_of_size(static_cast<int>(use.size()), w.rows - 1)) {
            std::vector<int> sub;
            for (int i : pick) sub.push_back(use[i]);
            IntMatrix ker = saturated_kernel(transpose(columns(w, sub)));
            if (ker.rows != 1) continue;
            Vec h = ker.row(0);
            int pos = 0, neg = 0;
            for (int j : use) {
                Int s = dot(h, w.col(j));
                if (s > 0) ++pos;
                if (s < 0) ++neg;
            }
            if (pos && neg) continue;  // not a supporting hyperplane
            Int s = dot(h, v);
            if (neg) s = -s;
            if (s <= 0) return false;
        }
        return true;
    }
    // Caratheodory: v is in the cone iff it sits in some simplicial subcone.
    for (int k = 0; k <= std::min<int>(w.rows, static_cast<int>(use.size())); ++k) {
        if (k == 0) {
            bool zero = true;
            for (const Int& x : v)
                if (x != 0) zero = false;
            if (zero) return true;
            continue;
        }
        for (const std::vector<int>& pick : subsets_of_size(static_cast<int>(use.size()), k)) {
            std::vector<int> sub;
            for (int i : pick) sub.push_back(use[i]);
            if (rank(columns(w, sub)) != k) continue;
            std::optional<std::vector<Rat>> sol = solve_in_columns(w, sub, v);
            if (!sol) continue;
            bool ok = true;
            for (const Rat& x : *sol)
                if (x < 0) { ok = false; break; }
            if (ok) return true;
        }
    }
    return false;
}

bool on_wall(const IntMatrix& w, const Vec& v) {
    int rho = w.rows;
    if (rho == 1) {  // the only wall is the origin
        for (const Int& x : v)
            if (x != 0) return false;
        return true;
    }
    for (const std::vector<int>& tau : subsets_of_size(w.cols, rho - 1))
        if (in_column_cone(w, tau, v, false)) return true;
    return false;
}

std::vector<std::vector<int>> maximal_charts(const IntMatrix& w, const Vec& stability) {
    if (w.rows > 3) throw DomainError("UnsupportedRank", "secondary fans supported up to rank 3");
    if (on_wall(w, stability))
        throw DomainError("StabilityOnWall", "stability condition lies on a wall");
    std::vector<std::vector<int>> out;
    for (const std::vector<int>& sigma : subsets_of_size(w.cols, w.rows)) {
        IntMatrix sub = columns(w, sigma);
        if (rank(sub) != w.rows) continue;
        std::optional<std::vector<Rat>> sol = solve_in_columns(w, sigma, stability);
        if (!sol) continue;
        bool ok = true;
        for (const Rat& x : *sol)
            if (x < 0) { ok = false; break; }
        if (ok) out.push_back(sigma);
    }
    return out;
}

bool is_nef(const IntMatrix& w, const Vec& stability, const DivisorClass& d) {
    for (const std::vector<int>& sigma : maximal_charts(w, stability)) {
        std::optional<std::vector<Rat>> sol = solve_in_columns(w, sigma, d);
        if (!sol) return false;
        for (const Rat& x : *sol)
            if (x < 0) return false;
    }
    return true;
}

bool is_ample(const IntMatrix& w, const Vec& stability, const DivisorClass& d) {
    for (const std::vector<int>& sigma : maximal_charts(w, stability)) {
        std::optional<std::vector<Rat>> sol = solve_in_columns(w, sigma, d);
        if (!sol) return false;
        for (const Rat& x : *sol)
            if (x <= 0) return false;
    }
    return true;
}

DivisorClass anticanonical(const IntMatrix& w) {
    DivisorClass d(w.rows, Int(0));
    for (int i = 0; i < w.rows; ++i)
        for (int j = 0; j < w.cols; ++j) d[i] += w.at(i, j);
    return d;
}

ToricModel make_model(const IntMatrix& w, const Vec& stability) {
    ToricModel m;
    m.weights = {w, stability};
    m.rays = rays_from_weights(w);
    for (const std::vector<int>& sigma : maximal_charts(w, stability)) {
        std::vector<int> comp;
        for (int j = 0; j < w.cols; ++j)
            if (std::find(sigma.begin(), sigma.end(), j) == sigma.end()) comp.push_back(j);
        m.max_cones.push_back(comp);
    }
    return m;
}

bool is_q_factorial(const ToricModel& m) {
    if (on_wall(m.weights.w, m.weights.stability)) return false;
    for (const std::vector<int>& cone : m.max_cones)
        if (det(columns(m.rays, cone)) == 0) return false;
    return true;
}

QuotientType chart_quotient_type(const ToricModel& m, const std::vector<int>& sigma) {
    std::vector<int> comp;
    for (int j = 0; j < m.weights.w.cols; ++j)
        if (std::find(sigma.begin(), sigma.end(), j) == sigma.end()) comp.push_back(j);
    IntMatrix v = columns(m.rays, comp);
    SnfResult snf = smith_normal_form(v);
    QuotientType q;
    int n = m.rays.rows;
    int nontrivial = 0;
    for (int i = 0; i < n; ++i) {
        Int di = abs(snf.s.at(i, i));
        if (di == 0) throw DomainError("NotSimplicial", "chart rays are linearly dependent");
        q.index *= di;
        if (di != 1) ++nontrivial;
    }
    if (q.index == 1) return q;
    if (nontrivial > 1) {
        q.cyclic = false;
        return q;
    }
    // Generator of Z^n modulo the ray sublattice, then its coordinates over
    // the rays give the action weights (denominators divide the index).
    IntMatrix uinv = unimodular_inverse(snf.u);
    Vec g = uinv.col(n - 1);
    RatMat a(n, RatRow(n));
    RatRow b(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a[i][j] = Rat(v.at(i, j));
        b[i] = Rat(g[i]);
    }
    std::optional<std::vector<Rat>> x = solve_unique(a, b);
    if (!x) throw DomainError("InternalError", "singular chart ray matrix");
    Vec weights(n);
    for (int i = 0; i < n; ++i) {
        Rat scaled = (*x)[i] * Rat(q.index);
        if (scaled.get_den() != 1)
            throw DomainError("InternalError", "quotient weight is not integral");
        Int r = scaled.get_num() % q.index;
        if (r < 0) r += q.index;
        weights[i] = r;
    }
    // Canonical representative over coprime rescalings of the generator.
    Vec best = weights;
    for (Int t = 2; t < q.index; ++t) {
        if (gcd(t, q.index) != 1) continue;
        Vec cand(n);
        for (int i = 0; i < n; ++i) cand[i] = (t * weights[i]) % q.index;
        if (cand < best) best = cand;
    }
    q.weights = best;
    return q;
}

std::vector<Vec> cox_monomials(const IntMatrix& w, const DivisorClass& d) {
    int rho = w.rows, r = w.cols;
    // A strictly positive grading certifies finiteness.
    std::vector<Int> lambda;
    {
        std::vector<Int> cur(rho);
        std::function<bool(int)> search = [&](int i) -> bool {
            if (i == rho) {
                for (int j = 0; j < r; ++j) {
                    Int s = 0;
                    for (int k = 0; k < rho; ++k) s += cur[k] * w.at(k, j);
                    if (s < 1) return false;
                }
                lambda = cur;
                return true;
            }
            for (long t = -12; t <= 12; ++t) {
                cur[i] = t;
                if (search(i + 1)) return true;
            }
            return false;
        };
        if (!search(0))
            throw DomainError("InfiniteFamily", "no positive grading found; section space may be infinite");
    }
    Int budget = dot(lambda, d);
    std::vector<Vec> out;
    Vec e(r, Int(0));
    std::function<void(int, Vec, Int)> rec = [&](int j, Vec rem, Int left) {
        if (j == r) {
            for (const Int& x : rem)
                if (x != 0) return;
            out.push_back(e);
            return;
        }
        Int cost = 0;
        for (int k = 0; k < rho; ++k) cost += lambda[k] * w.at(k, j);
        Int max_e;
        mpz_fdiv_q(max_e.get_mpz_t(), left.get_mpz_t(), cost.get_mpz_t());
        for (Int t = 0; t <= max_e; ++t) {
            e[j] = t;
            Vec next = rem;
            for (int k = 0; k < rho; ++k) next[k] -= t * w.at(k, j);
            rec(j + 1, next, left - t * cost);
        }
        e[j] = 0;
    };
    if (budget >= 0) rec(0, d, budget);
    std::sort(out.begin(), out.end());
    return out;
}

ChartIncidence section_chart_incidence(const ToricModel& m, const DivisorClass& d,
                                       const std::vector<int>& sigma) {
    ChartIncidence inc;
    std::set<int> in_sigma(sigma.begin(), sigma.end());
    for (const Vec& e : cox_monomials(m.weights.w, d)) {
        bool inside = true;
        for (int j = 0; j < m.weights.w.cols; ++j)
            if (e[j] != 0 && !in_sigma.count(j)) { inside = false; break; }
        if (inside) {
            inc.passes_through_origin = false;
            inc.witness = e;
            return inc;
        }
    }
    return inc;
}

SingularityReport singular_strata_report(const ToricModel& m, const DivisorClass& d) {
    SingularityReport rep;
    int n = m.rays.rows;
    int r = m.rays.cols;
    if (n > 4) throw DomainError("UnsupportedRank", "strata analysis supported up to dimension 4");
    std::vector<Vec> monos = cox_monomials(m.weights.w, d);

    std::set<std::vector<int>> faces;
    for (const std::vector<int>& cone : m.max_cones) {
        int sz = static_cast<int>(cone.size());
        for (int mask = 1; mask < (1 << sz); ++mask) {
            std::vector<int> tau;
            for (int i = 0; i < sz; ++i)
                if (mask & (1 << i)) tau.push_back(cone[i]);
            faces.insert(tau);
        }
    }

    for (const std::vector<int>& tau : faces) {
        IntMatrix sub = columns(m.rays, tau);
        SnfResult snf = smith_normal_form(sub);
        Int index = 1;
        int mn = std::min(static_cast<int>(tau.size()), n);
        for (int i = 0; i < mn; ++i) index *= abs(snf.s.at(i, i));
        if (index == 1) continue;  // saturated: smooth along this stratum

        StratumReport sr;
        sr.rays = tau;
        sr.dim = n - static_cast<int>(tau.size());
        sr.quotient.index = index;

        // Monomials surviving on the stratum closure.
        std::vector<Vec> rest;
        for (const Vec& e : monos) {
            bool lives = true;
            for (int j : tau)
                if (e[j] != 0) { lives = false; break; }
            if (lives) rest.push_back(e);
        }

        if (sr.dim == 0) {
            // Chart origin: the chart is the complement of tau.
            std::vector<int> sigma;
            for (int j = 0; j < r; ++j)
                if (std::find(tau.begin(), tau.end(), j) == tau.end()) sigma.push_back(j);
            sr.quotient = chart_quotient_type(m, sigma);
            sr.point_count = section_chart_incidence(m, d, sigma).passes_through_origin ? 1 : 0;
        } else if (sr.dim == 1) {
            if (rest.empty()) {
                sr.isolated = false;
                sr.note = "section vanishes on the stratum";
            } else if (rest.size() == 1) {
                sr.point_count = 0;  // a single monomial has no torus zeros
            } else {
                // Exponent differences live in the rank-1 kernel of the
                // restricted weight matrix; generic zero count is the spread
                // in primitive units.
                std::vector<int> keep;
                for (int j = 0; j < r; ++j)
                    if (std::find(tau.begin(), tau.end(), j) == tau.end()) keep.push_back(j);
                IntMatrix wr = columns(m.weights.w, keep);
                IntMatrix ker = saturated_kernel(wr);
                if (ker.rows != 1)
                    throw DomainError("InternalError", "expected a rank-1 character lattice");
                Vec g = ker.row(0);
                int pivot = 0;
                while (g[pivot] == 0) ++pivot;
                std::optional<Int> tmin, tmax;
                for (const Vec& e : rest) {
                    Int t = (e[keep[pivot]] - rest[0][keep[pivot]]) / g[pivot];
                    if (!tmin || t < *tmin) tmin = t;
                    if (!tmax || t > *tmax) tmax = t;
                }
                sr.point_count = Int(*tmax - *tmin).get_si();
                sr.note = "generic-coefficient count";
            }
        } else {
            if (rest.empty()) {
                sr.isolated = false;
                sr.note = "section vanishes on the stratum";
            } else if (rest.size() == 1) {
                sr.point_count = 0;
            } else {
                sr.isolated = false;
                sr.note = "section meets the stratum in positive dimension";
            }
        }

        rep.all_isolated = rep.all_isolated && sr.isolated;
        rep.total_points += sr.point_count;
        rep.strata.push_back(sr);
    }
    return rep;
}

}  // namespace ff
