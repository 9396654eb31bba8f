#include "fanoforge/mmlp.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "fanoforge/ratlin.hpp"

namespace ff {

namespace {

Int dot(const Vec& a, const Vec& b) {
    Int s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Quotient support for division by h inside the slice polytope s.
std::vector<Vec> quotient_support(const LatticePolytope& s, const LatticePolytope& nh) {
    std::vector<Vec> out;
    const Vec& anchor = nh.vertices.front();
    for (const Vec& p : lattice_points(s)) {
        Vec cand(p.size());
        for (size_t i = 0; i < p.size(); ++i) cand[i] = p[i] - anchor[i];
        bool ok = true;
        for (const Vec& v : nh.vertices) {
            Vec shifted(v.size());
            for (size_t i = 0; i < v.size(); ++i) shifted[i] = cand[i] + v[i];
            if (!s.contains(shifted)) { ok = false; break; }
        }
        if (ok) out.push_back(cand);
    }
    return out;
}

}  // namespace

SolutionSpace solution_space(const LatticePolytope& p, const std::vector<MutationData>& s) {
    SolutionSpace res;
    std::vector<Vec> pts = lattice_points(p);
    std::map<Vec, int> a_idx;
    for (const Vec& q : pts) a_idx[q] = static_cast<int>(a_idx.size());
    int n_a = static_cast<int>(pts.size());

    struct Row {
        std::map<int, Rat> entries;
        Rat rhs;
    };
    std::vector<Row> rows;

    for (const Vec& v : p.vertices) {
        Row r;
        r.entries[a_idx.at(v)] = 1;
        r.rhs = 1;
        rows.push_back(r);
    }
    {
        Vec origin(p.ambient_dim);
        auto it = a_idx.find(origin);
        if (it != a_idx.end()) {
            Row r;
            r.entries[it->second] = 1;
            r.rhs = 0;
            rows.push_back(r);
        }
    }

    int next_col = n_a;
    for (const MutationData& m : s) {
        if (m.is_trivial()) continue;
        IntMatrix u = complete_to_basis(m.weight);
        Laurent h = factor_in_slice_coords(m, u);
        Int a = 0;
        for (const Vec& v : p.vertices) a = std::max(a, Int(-dot(m.weight, v)));
        for (Int k = 1; k <= a; ++k) {
            LatticePolytope sk = slice(p, m.weight, -k);
            if (sk.empty()) continue;
            Laurent hk = pow(h, k.get_si());
            LatticePolytope nhk = newton_polytope(hk);
            std::vector<Vec> quot = quotient_support(sk, nhk);
            std::map<Vec, int> g_idx;
            for (const Vec& q : quot) g_idx[q] = next_col++;
            for (const Vec& e : lattice_points(sk)) {
                Row r;
                Vec y = e;
                y.push_back(-k);
                Vec amb = ff::apply(u, y);
                r.entries[a_idx.at(amb)] = 1;
                for (const auto& [q, col] : g_idx) {
                    Vec diff(e.size());
                    for (size_t i = 0; i < e.size(); ++i) diff[i] = e[i] - q[i];
                    Rat c = hk.coefficient(diff);
                    if (c != 0) r.entries[col] = -c;
                }
                r.rhs = 0;
                rows.push_back(r);
            }
        }
    }

    int n_cols = next_col;
    RatMat mat(rows.size(), RatRow(n_cols, Rat(0)));
    RatRow rhs(rows.size(), Rat(0));
    for (size_t i = 0; i < rows.size(); ++i) {
        for (const auto& [j, c] : rows[i].entries) mat[i][j] = c;
        rhs[i] = rows[i].rhs;
    }
    LinearSolveResult sol = solve_affine(mat, rhs);
    if (!sol.consistent) return res;  // dimension -1
    // Auxiliary quotient unknowns are determined by the coefficient unknowns
    // (multiplication by a nonzero polynomial is injective), so the solution
    // dimension equals the dimension of its coefficient projection.
    res.dimension = sol.dimension;
    if (sol.dimension == 0) {
        Laurent f(p.ambient_dim);
        for (const auto& [q, j] : a_idx) f.set(q, sol.particular[j]);
        res.unique = f;
    }
    return res;
}

RigidCertificate is_rigid_mmlp(const Laurent& f) {
    RigidCertificate cert;
    if (!is_normalised(f) || !is_centered(f)) return cert;
    cert.mutations = admitted_mutations(f);
    SolutionSpace ss = solution_space(newton_polytope(f), cert.mutations);
    cert.dimension = ss.dimension;
    cert.rigid = ss.dimension == 0 && ss.unique.has_value() && *ss.unique == f;
    return cert;
}

namespace {

// Keep only factors not properly dividing another candidate.
std::vector<Laurent> maximal_factors(const std::vector<Laurent>& cands) {
    std::vector<Laurent> out;
    for (size_t i = 0; i < cands.size(); ++i) {
        bool dominated = false;
        for (size_t j = 0; j < cands.size() && !dominated; ++j) {
            if (i == j) continue;
            if (cands[j].terms.size() <= cands[i].terms.size()) continue;
            if (divide_exact(cands[j], cands[i]).has_value()) dominated = true;
        }
        if (!dominated) out.push_back(cands[i]);
    }
    return out;
}

}  // namespace

std::vector<Laurent> find_rigid_mmlps(const LatticePolytope& p, long node_budget) {
    std::vector<Vec> ws = candidate_weights(p);
    std::vector<std::vector<Laurent>> options;
    for (const Vec& w : ws) options.push_back(maximal_factors(candidate_factors(p, w)));

    std::set<std::map<Vec, Rat>> seen;
    std::vector<Laurent> found;
    std::vector<MutationData> chosen;
    long nodes = 0;

    auto consider = [&](const Laurent& f) {
        if (!seen.insert(f.terms).second) return;
        if (newton_polytope(f).vertices != p.vertices) return;
        if (is_rigid_mmlp(f).rigid) found.push_back(f);
    };

    std::function<void(size_t)> rec = [&](size_t i) {
        if (++nodes > node_budget)
            throw DomainError("BudgetExceeded", "rigid search exceeded its node budget");
        if (!chosen.empty()) {
            SolutionSpace ss = solution_space(p, chosen);
            if (ss.dimension < 0) return;
            if (ss.dimension == 0) {
                // Further constraints either keep this solution or kill it.
                consider(*ss.unique);
                return;
            }
        }
        if (i == options.size()) return;
        rec(i + 1);
        for (const Laurent& h : options[i]) {
            chosen.push_back(MutationData{ws[i], h, IntMatrix()});
            rec(i + 1);
            chosen.pop_back();
        }
    };
    rec(0);

    std::sort(found.begin(), found.end(), [](const Laurent& a, const Laurent& b) {
        return a.terms < b.terms;
    });
    return found;
}

std::vector<std::vector<Laurent>> orbit_classes(const std::vector<Laurent>& fs,
                                                const std::vector<IntMatrix>& aut) {
    std::vector<std::vector<Laurent>> orbits;
    std::vector<bool> used(fs.size(), false);
    for (size_t i = 0; i < fs.size(); ++i) {
        if (used[i]) continue;
        std::vector<Laurent> orbit{fs[i]};
        used[i] = true;
        for (const IntMatrix& u : aut) {
            Laurent g = monomial_substitute(fs[i], u);
            for (size_t j = i + 1; j < fs.size(); ++j)
                if (!used[j] && fs[j] == g) {
                    used[j] = true;
                    orbit.push_back(fs[j]);
                }
        }
        orbits.push_back(orbit);
    }
    return orbits;
}

}  // namespace ff
