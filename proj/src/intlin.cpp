#include "fanoforge/intlin.hpp"

#include <algorithm>
#include <utility>

namespace ff {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> init) {
    rows = static_cast<int>(init.size());
    cols = rows ? static_cast<int>(init.begin()->size()) : 0;
    a.reserve(static_cast<size_t>(rows) * cols);
    for (const auto& r : init) {
        if (static_cast<int>(r.size()) != cols)
            throw DomainError("DimensionMismatch", "ragged initializer");
        for (long x : r) a.emplace_back(x);
    }
}

Vec IntMatrix::row(int i) const {
    Vec r(cols);
    for (int j = 0; j < cols; ++j) r[j] = at(i, j);
    return r;
}

Vec IntMatrix::col(int j) const {
    Vec c(rows);
    for (int i = 0; i < rows; ++i) c[i] = at(i, j);
    return c;
}

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<Vec>& rs) {
    IntMatrix m(static_cast<int>(rs.size()), rs.empty() ? 0 : static_cast<int>(rs[0].size()));
    for (int i = 0; i < m.rows; ++i) {
        if (static_cast<int>(rs[i].size()) != m.cols)
            throw DomainError("DimensionMismatch", "ragged row list");
        for (int j = 0; j < m.cols; ++j) m.at(i, j) = rs[i][j];
    }
    return m;
}

IntMatrix IntMatrix::from_cols(const std::vector<Vec>& cs) {
    IntMatrix m(cs.empty() ? 0 : static_cast<int>(cs[0].size()), static_cast<int>(cs.size()));
    for (int j = 0; j < m.cols; ++j) {
        if (static_cast<int>(cs[j].size()) != m.rows)
            throw DomainError("DimensionMismatch", "ragged column list");
        for (int i = 0; i < m.rows; ++i) m.at(i, j) = cs[j][i];
    }
    return m;
}

IntMatrix mul(const IntMatrix& x, const IntMatrix& y) {
    if (x.cols != y.rows) throw DomainError("DimensionMismatch", "matrix product shape");
    IntMatrix z(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const Int& xik = x.at(i, k);
            if (xik == 0) continue;
            for (int j = 0; j < y.cols; ++j) z.at(i, j) += xik * y.at(k, j);
        }
    return z;
}

IntMatrix transpose(const IntMatrix& m) {
    IntMatrix t(m.cols, m.rows);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) t.at(j, i) = m.at(i, j);
    return t;
}

Vec apply(const IntMatrix& m, const Vec& v) {
    if (m.cols != static_cast<int>(v.size()))
        throw DomainError("DimensionMismatch", "matrix-vector shape");
    Vec r(m.rows);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) r[i] += m.at(i, j) * v[j];
    return r;
}

// Fraction-free Gaussian elimination (Bareiss) for the determinant.
Int det(const IntMatrix& m) {
    if (m.rows != m.cols) throw DomainError("DimensionMismatch", "determinant of non-square");
    int n = m.rows;
    if (n == 0) return 1;
    IntMatrix w = m;
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (w.at(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (w.at(i, k) != 0) { p = i; break; }
            if (p < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(w.at(k, j), w.at(p, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                Int t = w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j);
                mpz_divexact(w.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        prev = w.at(k, k);
    }
    return sign > 0 ? w.at(n - 1, n - 1) : Int(-w.at(n - 1, n - 1));
}

namespace {

// Shared core: bring m to row echelon over Q by integer row operations while
// mirroring them on u.  Used for rank only; HNF does its own reduction.
int echelon_rank(IntMatrix m) {
    int r = 0;
    for (int j = 0; j < m.cols && r < m.rows; ++j) {
        int p = -1;
        for (int i = r; i < m.rows; ++i)
            if (m.at(i, j) != 0) { p = i; break; }
        if (p < 0) continue;
        for (int jj = 0; jj < m.cols; ++jj) std::swap(m.at(r, jj), m.at(p, jj));
        for (int i = r + 1; i < m.rows; ++i) {
            if (m.at(i, j) == 0) continue;
            Int a = m.at(r, j), b = m.at(i, j);
            Int g = gcd(a, b);
            Int ca = a / g, cb = b / g;
            for (int jj = 0; jj < m.cols; ++jj)
                m.at(i, jj) = m.at(i, jj) * ca - m.at(r, jj) * cb;
        }
        ++r;
    }
    return r;
}

}  // namespace

int rank(const IntMatrix& m) { return echelon_rank(m); }

bool is_unimodular(const IntMatrix& m) {
    if (m.rows != m.cols) return false;
    Int d = det(m);
    return d == 1 || d == -1;
}

IntMatrix unimodular_inverse(const IntMatrix& m) {
    if (!is_unimodular(m)) throw DomainError("NonUnimodular", "inverse of non-unimodular matrix");
    int n = m.rows;
    // Row reduce [m | I] to [I | m^-1] using exact integer steps via HNF:
    // for unimodular m, HNF is the identity and u is the inverse.
    HnfResult h = hermite_normal_form(m);
    if (!(h.h == IntMatrix::identity(n)))
        throw DomainError("NonUnimodular", "HNF of unimodular matrix not identity");
    return h.u;
}

HnfResult hermite_normal_form(const IntMatrix& m) {
    IntMatrix h = m;
    IntMatrix u = IntMatrix::identity(m.rows);
    auto swap_rows = [&](int i, int k) {
        for (int j = 0; j < h.cols; ++j) std::swap(h.at(i, j), h.at(k, j));
        for (int j = 0; j < u.cols; ++j) std::swap(u.at(i, j), u.at(k, j));
    };
    auto add_row = [&](int dst, int src, const Int& c) {
        if (c == 0) return;
        for (int j = 0; j < h.cols; ++j) h.at(dst, j) += c * h.at(src, j);
        for (int j = 0; j < u.cols; ++j) u.at(dst, j) += c * u.at(src, j);
    };
    auto negate_row = [&](int i) {
        for (int j = 0; j < h.cols; ++j) h.at(i, j) = -h.at(i, j);
        for (int j = 0; j < u.cols; ++j) u.at(i, j) = -u.at(i, j);
    };

    int r = 0;
    for (int j = 0; j < h.cols && r < h.rows; ++j) {
        // Euclidean elimination within column j below row r.
        while (true) {
            int p = -1;
            for (int i = r; i < h.rows; ++i)
                if (h.at(i, j) != 0 && (p < 0 || abs(h.at(i, j)) < abs(h.at(p, j)))) p = i;
            if (p < 0) break;
            swap_rows(r, p);
            if (h.at(r, j) < 0) negate_row(r);
            bool cleared = true;
            for (int i = r + 1; i < h.rows; ++i) {
                if (h.at(i, j) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), h.at(i, j).get_mpz_t(), h.at(r, j).get_mpz_t());
                add_row(i, r, -q);
                if (h.at(i, j) != 0) cleared = false;
            }
            if (cleared) break;
        }
        if (h.at(r, j) == 0) continue;
        // Reduce entries above the pivot into [0, pivot).
        for (int i = 0; i < r; ++i) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), h.at(i, j).get_mpz_t(), h.at(r, j).get_mpz_t());
            add_row(i, r, -q);
        }
        ++r;
    }
    return {h, u};
}

SnfResult smith_normal_form(const IntMatrix& m) {
    IntMatrix s = m;
    IntMatrix u = IntMatrix::identity(m.rows);
    IntMatrix v = IntMatrix::identity(m.cols);
    auto row_op = [&](int dst, int src, const Int& c) {
        for (int j = 0; j < s.cols; ++j) s.at(dst, j) += c * s.at(src, j);
        for (int j = 0; j < u.cols; ++j) u.at(dst, j) += c * u.at(src, j);
    };
    auto col_op = [&](int dst, int src, const Int& c) {
        for (int i = 0; i < s.rows; ++i) s.at(i, dst) += c * s.at(i, src);
        for (int i = 0; i < v.rows; ++i) v.at(i, dst) += c * v.at(i, src);
    };
    auto swap_rows = [&](int i, int k) {
        for (int j = 0; j < s.cols; ++j) std::swap(s.at(i, j), s.at(k, j));
        for (int j = 0; j < u.cols; ++j) std::swap(u.at(i, j), u.at(k, j));
    };
    auto swap_cols = [&](int j, int k) {
        for (int i = 0; i < s.rows; ++i) std::swap(s.at(i, j), s.at(i, k));
        for (int i = 0; i < v.rows; ++i) std::swap(v.at(i, j), v.at(i, k));
    };

    int n = std::min(s.rows, s.cols);
    for (int t = 0; t < n; ++t) {
        // Find a nonzero pivot of minimal absolute value in the trailing block.
        int pi = -1, pj = -1;
        for (int i = t; i < s.rows; ++i)
            for (int j = t; j < s.cols; ++j)
                if (s.at(i, j) != 0 &&
                    (pi < 0 || abs(s.at(i, j)) < abs(s.at(pi, pj)))) { pi = i; pj = j; }
        if (pi < 0) break;
        swap_rows(t, pi);
        swap_cols(t, pj);
        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (int i = t + 1; i < s.rows; ++i) {
                if (s.at(i, t) == 0) continue;
                Int q = s.at(i, t) / s.at(t, t);
                row_op(i, t, -q);
                if (s.at(i, t) != 0) { swap_rows(t, i); dirty = true; }
            }
            for (int j = t + 1; j < s.cols; ++j) {
                if (s.at(t, j) == 0) continue;
                Int q = s.at(t, j) / s.at(t, t);
                col_op(j, t, -q);
                if (s.at(t, j) != 0) { swap_cols(t, j); dirty = true; }
            }
        }
        // Divisibility fix-up: fold any non-divisible trailing entry into the pivot.
        bool redo = false;
        for (int i = t + 1; i < s.rows && !redo; ++i)
            for (int j = t + 1; j < s.cols && !redo; ++j)
                if (s.at(i, j) % s.at(t, t) != 0) {
                    row_op(t, i, 1);
                    redo = true;
                }
        if (redo) { --t; continue; }
        if (s.at(t, t) < 0) {
            for (int j = 0; j < s.cols; ++j) s.at(t, j) = -s.at(t, j);
            for (int j = 0; j < u.cols; ++j) u.at(t, j) = -u.at(t, j);
        }
    }
    return {s, u, v};
}

IntMatrix saturated_kernel(const IntMatrix& m) {
    // Column-reduce m by a unimodular matrix; columns that become zero give a
    // saturated kernel basis.  Realized through the row HNF of the transpose.
    HnfResult h = hermite_normal_form(transpose(m));
    std::vector<Vec> basis;
    for (int i = 0; i < h.h.rows; ++i) {
        bool zero = true;
        for (int j = 0; j < h.h.cols; ++j)
            if (h.h.at(i, j) != 0) { zero = false; break; }
        if (zero) basis.push_back(h.u.row(i));
    }
    IntMatrix k = IntMatrix::from_rows(basis);
    if (k.rows == 0) k.cols = m.cols;
    return k;
}

Int gcd_all(const Vec& v) {
    Int g = 0;
    for (const Int& x : v) g = gcd(g, x);
    return g;
}

bool is_primitive(const Vec& v) { return gcd_all(v) == 1; }

IntMatrix complete_to_basis(const Vec& w) {
    if (!is_primitive(w)) throw DomainError("NonPrimitiveWeight", "weight is not primitive");
    int n = static_cast<int>(w.size());
    // Row HNF of w^T gives unimodular u with u * w^T = e_1, i.e. w * u^T = e_1^T.
    IntMatrix wt(n, 1);
    for (int i = 0; i < n; ++i) wt.at(i, 0) = w[i];
    HnfResult h = hermite_normal_form(wt);
    IntMatrix ut = transpose(h.u);
    // Move the crossing column to the last slot; swap two others to keep det sign
    // irrelevant (only |det| = 1 matters).
    IntMatrix u(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j + 1 < n; ++j) u.at(i, j) = ut.at(i, j + 1);
        u.at(i, n - 1) = ut.at(i, 0);
    }
    return u;
}

}  // namespace ff
