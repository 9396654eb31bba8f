#include "fanoforge/inversion.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace ff {

namespace {

bool is_zero_vec(const Vec& v) {
    for (const Int& x : v)
        if (x != 0) return false;
    return true;
}

// Index of the single unit entry, or -1 when not a standard basis vector.
int unit_index(const Vec& v) {
    int idx = -1;
    for (size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) continue;
        if (v[i] != 1 || idx >= 0) return -1;
        idx = static_cast<int>(i);
    }
    return idx;
}

std::vector<Laurent> theta_polynomials(const Scaffolding& s, int n) {
    std::vector<Laurent> out;
    for (size_t k = 0; k < s.theta.thetas.size(); ++k) {
        Laurent th(n);
        for (const ScaffoldTerm& t : s.theta.thetas[k]) {
            if (t.tpow.size() != k)
                throw DomainError("BadScaffolding", "theta term references a later theta");
            Laurent term = Laurent::monomial(t.mono);
            for (size_t m = 0; m < k; ++m) {
                if (t.tpow[m] < 0)
                    throw DomainError("BadScaffolding", "negative theta power");
                term = mul(term, pow(out[m], Int(t.tpow[m]).get_si()));
            }
            th = add(th, term);
        }
        out.push_back(th);
    }
    return out;
}

}  // namespace

Laurent expand_scaffolding(const Scaffolding& s) {
    if (s.struts.empty()) throw DomainError("BadScaffolding", "a scaffolding needs a strut");
    int n = static_cast<int>(s.struts.front().mono.size());
    size_t c = s.theta.thetas.size();
    std::vector<Laurent> th = theta_polynomials(s, n);
    Laurent f = Laurent::constant(n, Rat(s.constant));
    for (const ScaffoldTerm& t : s.struts) {
        if (t.mono.size() != static_cast<size_t>(n) || t.tpow.size() != c)
            throw DomainError("BadScaffolding", "strut shape mismatch");
        Laurent term = Laurent::monomial(t.mono);
        for (size_t m = 0; m < c; ++m) {
            if (t.tpow[m] < 0) throw DomainError("BadScaffolding", "negative theta power");
            term = mul(term, pow(th[m], Int(t.tpow[m]).get_si()));
        }
        f = add(f, term);
    }
    return f;
}

CIModel reconstruct(const Scaffolding& s) {
    int c = static_cast<int>(s.theta.thetas.size());
    if (s.struts.empty()) throw DomainError("BadScaffolding", "a scaffolding needs a strut");
    int n = static_cast<int>(s.struts.front().mono.size());
    int s0 = static_cast<int>(s.struts.size());
    int r = s0;
    for (const auto& th : s.theta.thetas) {
        if (th.empty()) throw DomainError("BadScaffolding", "empty theta");
        r += static_cast<int>(th.size());
    }
    int n_amb = n + c;       // dimension of the ambient toric variety
    int rho = r - n_amb;     // rank of the class lattice
    if (rho < 0 || rho > s0)
        throw DomainError("HomogenizationFailure", "scaffolding shape admits no basis");

    // Column layout: struts first, then the theta terms in order.
    std::vector<std::vector<int>> partition(c + 1);
    for (int j = 0; j < s0; ++j) partition[0].push_back(j);
    int next_col = s0;
    for (int k = 0; k < c; ++k)
        for (size_t t = 0; t < s.theta.thetas[k].size(); ++t) partition[k + 1].push_back(next_col++);

    // Each theta has one constant term (the chart column) and otherwise
    // distinct single chart variables.
    std::vector<int> chart;                  // column per theta
    std::vector<int> var_column(n, -1);      // owning column per chart variable
    for (int k = 0; k < c; ++k) {
        int f_col = -1;
        for (size_t t = 0; t < s.theta.thetas[k].size(); ++t) {
            const ScaffoldTerm& term = s.theta.thetas[k][t];
            int col = partition[k + 1][t];
            if (is_zero_vec(term.mono)) {
                if (f_col >= 0) throw DomainError("BadScaffolding", "two chart terms in a theta");
                f_col = col;
            } else {
                int v = unit_index(term.mono);
                if (v < 0 || var_column[v] >= 0)
                    throw DomainError("BadScaffolding", "theta term is not a fresh variable");
                var_column[v] = col;
            }
        }
        if (f_col < 0) throw DomainError("BadScaffolding", "theta has no chart term");
        chart.push_back(f_col);
    }

    // Variables not claimed by any theta belong to basis-complement struts.
    std::vector<bool> strut_in_basis(s0, true);
    for (int v = 0; v < n; ++v) {
        if (var_column[v] >= 0) continue;
        int found = -1;
        for (int j = 0; j < s0 && found < 0; ++j) {
            if (!strut_in_basis[j]) continue;
            const ScaffoldTerm& st = s.struts[j];
            if (unit_index(st.mono) == v && is_zero_vec(st.tpow)) found = j;
        }
        if (found < 0)
            throw DomainError("HomogenizationFailure", "no strut carries an unclaimed variable");
        strut_in_basis[found] = false;
        var_column[v] = found;
    }
    std::vector<int> basis;
    for (int j = 0; j < s0; ++j)
        if (strut_in_basis[j]) basis.push_back(j);
    if (static_cast<int>(basis.size()) != rho)
        throw DomainError("HomogenizationFailure", "basis strut count mismatch");

    // Tower weight rows from the recorded theta powers.
    IntMatrix zeta(c, r);
    for (int j = 0; j < s0; ++j) {
        if (s.struts[j].tpow.size() != static_cast<size_t>(c))
            throw DomainError("BadScaffolding", "strut powers mismatch");
        for (int m = 0; m < c; ++m) zeta.at(m, j) = -s.struts[j].tpow[m];
    }
    for (int k = 0; k < c; ++k)
        for (size_t t = 0; t < s.theta.thetas[k].size(); ++t) {
            int col = partition[k + 1][t];
            for (int m = 0; m < k; ++m) zeta.at(m, col) = -s.theta.thetas[k][t].tpow[m];
            zeta.at(k, col) = 1;
        }

    // Ambient coordinates: the non-basis columns in ascending order.
    std::vector<int> bprime;
    for (int j = 0; j < s0; ++j)
        if (!strut_in_basis[j]) bprime.push_back(j);
    for (int k = 0; k < c; ++k)
        for (int col : partition[k + 1]) bprime.push_back(col);
    std::sort(bprime.begin(), bprime.end());
    std::map<int, int> coord_of;
    for (size_t i = 0; i < bprime.size(); ++i) coord_of[bprime[i]] = static_cast<int>(i);

    IntMatrix rays(n_amb, r);
    for (int col : bprime) rays.at(coord_of[col], col) = 1;
    for (int j : basis) {
        const ScaffoldTerm& st = s.struts[j];
        // Chart-variable exponents are read off; the F exponents follow from
        // weight-zero homogeneity, solved bottom-up (the F columns of the
        // tower are unitriangular).
        Vec t(c);
        for (int k = c - 1; k >= 0; --k) {
            Int acc = 0;
            for (int v = 0; v < n; ++v) acc += st.mono[v] * zeta.at(k, var_column[v]);
            for (int k2 = k + 1; k2 < c; ++k2) acc += t[k2] * zeta.at(k, chart[k2]);
            t[k] = zeta.at(k, j) - acc;
        }
        for (int v = 0; v < n; ++v) rays.at(coord_of[var_column[v]], j) = st.mono[v];
        for (int k = 0; k < c; ++k) rays.at(coord_of[chart[k]], j) = t[k];
    }

    IntMatrix kern = saturated_kernel(rays);
    IntMatrix kb(rho, rho);
    for (int i = 0; i < rho; ++i)
        for (int j = 0; j < rho; ++j) kb.at(i, j) = kern.at(i, basis[j]);
    if (!is_unimodular(kb))
        throw DomainError("HomogenizationFailure", "basis columns are not unimodular");
    IntMatrix weights = mul(unimodular_inverse(kb), kern);

    CIModel m;
    m.rays = rays;
    m.weights = weights;
    m.partition = partition;
    for (int k = 1; k <= c; ++k) {
        Vec l(rho);
        for (int col : partition[k])
            for (int i = 0; i < rho; ++i) l[i] += weights.at(i, col);
        m.bundles.push_back(l);
    }
    m.basis = basis;
    m.chart = chart;
    m.tower.zeta = zeta;
    return m;
}

CIModel eliminate_toric_divisor_bundle(const CIModel& m) {
    int rho = m.weights.rows;
    int r = m.weights.cols;
    for (size_t i = 0; i < m.bundles.size(); ++i)
        for (int j = 0; j < r; ++j) {
            if (m.bundles[i] != m.weights.col(j)) continue;
            CIModel out;
            out.weights = IntMatrix(rho, r - 1);
            int jj = 0;
            for (int col = 0; col < r; ++col) {
                if (col == j) continue;
                for (int row = 0; row < rho; ++row) out.weights.at(row, jj) = m.weights.at(row, col);
                ++jj;
            }
            out.rays = saturated_kernel(out.weights);
            out.partition.emplace_back();
            for (int col = 0; col < r - 1; ++col) out.partition[0].push_back(col);
            for (size_t k = 0; k < m.bundles.size(); ++k)
                if (k != i) out.bundles.push_back(m.bundles[k]);
            return out;
        }
    throw DomainError("NoEliminableBundle", "no bundle matches a weight column");
}

namespace {

// Add multiples of lower tower rows to upper ones so that every block of
// starred entries has maximum zero.  This is the twist equivalence of the
// underlying projective bundles.
IntMatrix gauge_normalize(IntMatrix z, const std::vector<std::vector<int>>& partition) {
    int c = z.rows;
    for (int m = 0; m < c; ++m)
        for (int k = m + 1; k < c; ++k) {
            Int mx;
            bool first = true;
            for (int j : partition[k + 1]) {
                if (first || z.at(m, j) > mx) mx = z.at(m, j);
                first = false;
            }
            for (int j = 0; j < z.cols; ++j) z.at(m, j) -= mx * z.at(k, j);
        }
    return z;
}

// All column permutations that fix each block and preserve the row span of
// the weight matrix.
std::vector<std::vector<int>> block_symmetries(const IntMatrix& w,
                                               const std::vector<std::vector<int>>& partition) {
    int r = w.cols;
    IntMatrix ref = hermite_normal_form(w).h;
    std::vector<std::vector<int>> perms;
    std::vector<int> perm(r);
    for (int j = 0; j < r; ++j) perm[j] = j;
    std::function<void(size_t)> rec = [&](size_t b) {
        if (b == partition.size()) {
            IntMatrix wp(w.rows, r);
            for (int j = 0; j < r; ++j)
                for (int i = 0; i < w.rows; ++i) wp.at(i, j) = w.at(i, perm[j]);
            if (hermite_normal_form(wp).h == ref) perms.push_back(perm);
            return;
        }
        std::vector<int> block = partition[b];
        std::sort(block.begin(), block.end());
        std::vector<int> images = block;
        do {
            for (size_t i = 0; i < block.size(); ++i) perm[block[i]] = images[i];
            rec(b + 1);
        } while (std::next_permutation(images.begin(), images.end()));
        for (int j : block) perm[j] = j;
    };
    rec(0);
    return perms;
}

}  // namespace

std::vector<TowerSpec> enumerate_towers(const IntMatrix& weights,
                                        const std::vector<std::vector<int>>& partition,
                                        long entry_bound) {
    int rho = weights.rows;
    int r = weights.cols;
    int c = static_cast<int>(partition.size()) - 1;
    if (c == 0) {
        TowerSpec t;
        t.zeta = IntMatrix(0, r);
        return {t};
    }

    // Rows are independent: row m must annihilate the weight columns, with
    // the block S_{m+1} fixed to ones and earlier blocks to zero.
    std::vector<std::vector<Vec>> row_options(c);
    for (int m = 0; m < c; ++m) {
        Vec row(r);
        std::vector<int> free_cols;
        Vec target(rho);
        for (int j : partition[m + 1]) {
            row[j] = 1;
            for (int i = 0; i < rho; ++i) target[i] -= weights.at(i, j);
        }
        for (int b = 0; b <= c; ++b) {
            if (b >= 1 && b <= m + 1) continue;
            for (int j : partition[b]) free_cols.push_back(j);
        }
        std::sort(free_cols.begin(), free_cols.end());
        // Interval bounds of what the remaining free columns can contribute.
        std::function<void(size_t, Vec)> rec = [&](size_t idx, Vec rem) {
            bool feasible = true;
            for (int i = 0; i < rho && feasible; ++i) {
                Int lo = 0, hi = 0;
                for (size_t idx2 = idx; idx2 < free_cols.size(); ++idx2) {
                    Int contrib = -Int(entry_bound) * weights.at(i, free_cols[idx2]);
                    if (contrib < 0) lo += contrib;
                    else hi += contrib;
                }
                if (rem[i] < lo || rem[i] > hi) feasible = false;
            }
            if (!feasible) return;
            if (idx == free_cols.size()) {
                if (is_zero_vec(rem)) row_options[m].push_back(row);
                return;
            }
            int j = free_cols[idx];
            for (long v = 0; v >= -entry_bound; --v) {
                row[j] = v;
                Vec next = rem;
                for (int i = 0; i < rho; ++i) next[i] -= v * weights.at(i, j);
                rec(idx + 1, next);
            }
            row[j] = 0;
        };
        rec(0, target);
    }

    std::vector<std::vector<int>> syms = block_symmetries(weights, partition);

    // Cartesian product of row choices, deduplicated by gauge and symmetry.
    std::map<std::vector<Int>, IntMatrix> classes;  // canonical key -> lex-min raw
    std::vector<int> pick(c, 0);
    std::function<void(int)> assemble = [&](int m) {
        if (m == c) {
            IntMatrix z(c, r);
            for (int i = 0; i < c; ++i)
                for (int j = 0; j < r; ++j) z.at(i, j) = row_options[i][pick[i]][j];
            std::vector<Int> key;
            bool first = true;
            for (const std::vector<int>& perm : syms) {
                IntMatrix zp(c, r);
                for (int j = 0; j < r; ++j)
                    for (int i = 0; i < c; ++i) zp.at(i, j) = z.at(i, perm[j]);
                IntMatrix norm = gauge_normalize(zp, partition);
                if (first || norm.a < key) key = norm.a;
                first = false;
            }
            auto it = classes.find(key);
            if (it == classes.end() || z.a < it->second.a) classes[key] = z;
            return;
        }
        for (size_t i = 0; i < row_options[m].size(); ++i) {
            pick[m] = static_cast<int>(i);
            assemble(m + 1);
        }
    };
    for (int m = 0; m < c; ++m)
        if (row_options[m].empty()) return {};
    assemble(0);

    std::vector<TowerSpec> out;
    for (auto& [key, z] : classes) out.push_back(TowerSpec{z});
    std::sort(out.begin(), out.end(),
              [](const TowerSpec& a, const TowerSpec& b) { return a.zeta.a < b.zeta.a; });
    return out;
}

TowerLaurent laurent_from_tower(const IntMatrix& weights,
                                const std::vector<std::vector<int>>& partition,
                                const TowerSpec& tower, const std::vector<int>& f_chart) {
    int rho = weights.rows;
    int r = weights.cols;
    int c = static_cast<int>(partition.size()) - 1;
    int n_amb = r - rho;
    int n = n_amb - c;
    if (tower.zeta.rows != c || tower.zeta.cols != r)
        throw DomainError("BadTower", "tower shape mismatch");
    if (static_cast<int>(f_chart.size()) != c)
        throw DomainError("BadTower", "chart needs one column per bundle");

    // Lexicographically first unimodular basis inside S_0.
    std::vector<int> s0 = partition[0];
    std::sort(s0.begin(), s0.end());
    std::vector<int> basis;
    std::function<bool(size_t)> pick_basis = [&](size_t start) {
        if (static_cast<int>(basis.size()) == rho) {
            IntMatrix sub(rho, rho);
            for (int i = 0; i < rho; ++i)
                for (int j = 0; j < rho; ++j) sub.at(i, j) = weights.at(i, basis[j]);
            return is_unimodular(sub);
        }
        for (size_t i = start; i < s0.size(); ++i) {
            basis.push_back(s0[i]);
            if (pick_basis(i + 1)) return true;
            basis.pop_back();
        }
        return false;
    };
    if (!pick_basis(0))
        throw DomainError("NoBasis", "no unimodular basis among the strut columns");

    std::vector<int> bprime;
    for (int j = 0; j < r; ++j)
        if (std::find(basis.begin(), basis.end(), j) == basis.end()) bprime.push_back(j);
    std::map<int, int> coord_of;
    for (size_t i = 0; i < bprime.size(); ++i) coord_of[bprime[i]] = static_cast<int>(i);

    // Rays normalised to the identity on the complement of the basis.
    IntMatrix kern = saturated_kernel(weights);
    IntMatrix kb(n_amb, n_amb);
    for (int i = 0; i < n_amb; ++i)
        for (int j = 0; j < n_amb; ++j) kb.at(i, j) = kern.at(i, bprime[j]);
    if (!is_unimodular(kb))
        throw DomainError("NoBasis", "ray normalisation failed");
    IntMatrix rays = mul(unimodular_inverse(kb), kern);

    // Chart variables: non-basis columns outside F, ascending.
    std::set<int> in_f(f_chart.begin(), f_chart.end());
    std::vector<int> fvars;
    for (int j : bprime)
        if (!in_f.count(j)) fvars.push_back(j);
    if (static_cast<int>(fvars.size()) != n)
        throw DomainError("BadTower", "chart does not leave the right variable count");
    std::map<int, int> var_of;
    for (size_t v = 0; v < fvars.size(); ++v) var_of[fvars[v]] = static_cast<int>(v);

    Scaffolding scaf;
    std::vector<Laurent> th;
    for (int k = 0; k < c; ++k) {
        std::vector<ScaffoldTerm> terms;
        Laurent poly(n);
        for (int j : partition[k + 1]) {
            ScaffoldTerm t;
            t.mono = Vec(n);
            if (!in_f.count(j)) t.mono[var_of.at(j)] = 1;
            for (int m = 0; m < k; ++m) {
                Int w = tower.zeta.at(m, j);
                if (w > 0) throw DomainError("BadTower", "positive starred entry");
                t.tpow.push_back(-w);
            }
            Laurent term = Laurent::monomial(t.mono);
            for (int m = 0; m < k; ++m) term = mul(term, pow(th[m], t.tpow[m].get_si()));
            poly = add(poly, term);
            terms.push_back(t);
        }
        th.push_back(poly);
        scaf.theta.thetas.push_back(terms);
    }

    Laurent f = Laurent::constant(n, Rat(c));
    scaf.constant = c;
    for (int j : partition[0]) {
        ScaffoldTerm t;
        t.mono = Vec(n);
        for (int i = 0; i < n_amb; ++i) {
            if (rays.at(i, j) == 0) continue;
            int col = bprime[i];
            if (!in_f.count(col)) t.mono[var_of.at(col)] = rays.at(i, j);
        }
        for (int m = 0; m < c; ++m) {
            Int w = tower.zeta.at(m, j);
            if (w > 0) throw DomainError("BadTower", "positive starred entry");
            t.tpow.push_back(-w);
        }
        Laurent term = Laurent::monomial(t.mono);
        for (int m = 0; m < c; ++m) term = mul(term, pow(th[m], t.tpow[m].get_si()));
        f = add(f, term);
        scaf.struts.push_back(t);
    }
    return TowerLaurent{f, scaf};
}

std::vector<Binomial> binomial_degeneration(const CIModel& m) {
    std::vector<Binomial> out;
    int r = m.weights.cols;
    int c = static_cast<int>(m.partition.size()) - 1;
    for (int i = 1; i <= c; ++i) {
        Binomial b;
        b.lhs = Vec(r);
        b.rhs = Vec(r);
        std::set<int> in_s(m.partition[i].begin(), m.partition[i].end());
        for (int j = 0; j < r; ++j) {
            if (in_s.count(j)) b.lhs[j] = 1;
            else b.rhs[j] = -m.tower.zeta.at(i - 1, j);
        }
        out.push_back(b);
    }
    return out;
}

namespace {

// Lex-minimal presentation over unimodular class-lattice changes given by
// column bases, with columns and bundles sorted.
std::pair<std::vector<Vec>, std::vector<Vec>> canonical_presentation(const CIModel& m) {
    int rho = m.weights.rows;
    int r = m.weights.cols;
    std::pair<std::vector<Vec>, std::vector<Vec>> best;
    bool first = true;
    std::vector<int> sel;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(sel.size()) == rho) {
            IntMatrix sub(rho, rho);
            for (int i = 0; i < rho; ++i)
                for (int j = 0; j < rho; ++j) sub.at(i, j) = m.weights.at(i, sel[j]);
            if (!is_unimodular(sub)) return;
            IntMatrix t = unimodular_inverse(sub);
            IntMatrix w = mul(t, m.weights);
            std::vector<Vec> cols;
            for (int j = 0; j < r; ++j) cols.push_back(w.col(j));
            std::sort(cols.begin(), cols.end());
            std::vector<Vec> bundles;
            for (const Vec& l : m.bundles) bundles.push_back(ff::apply(t, l));
            std::sort(bundles.begin(), bundles.end());
            auto cand = std::make_pair(cols, bundles);
            if (first || cand < best) best = cand;
            first = false;
            return;
        }
        for (int j = start; j < r; ++j) {
            sel.push_back(j);
            rec(j + 1);
            sel.pop_back();
        }
    };
    rec(0);
    if (first) throw DomainError("NoBasis", "weight matrix has no unimodular column basis");
    return best;
}

}  // namespace

bool models_equivalent(const CIModel& a, const CIModel& b) {
    if (a.weights.rows != b.weights.rows || a.weights.cols != b.weights.cols) return false;
    if (a.bundles.size() != b.bundles.size()) return false;
    return canonical_presentation(a) == canonical_presentation(b);
}

}  // namespace ff
