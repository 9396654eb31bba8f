#ifndef FANOFORGE_INTLIN_HPP
#define FANOFORGE_INTLIN_HPP

#include <gmpxx.h>
#include <stdexcept>
#include <string>
#include <vector>

namespace ff {

using Int = mpz_class;
using Rat = mpq_class;
using Vec = std::vector<Int>;

// Domain errors carry a stable code string so the CLI can emit machine-readable
// diagnostics without string-matching free-form messages.
struct DomainError : std::runtime_error {
    std::string code;
    DomainError(std::string c, const std::string& msg)
        : std::runtime_error(msg), code(std::move(c)) {}
};

// Dense matrix of arbitrary-precision integers, row major.  Immutable by
// convention: operations return fresh values.
struct IntMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<Int> a;

    IntMatrix() = default;
    IntMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
    IntMatrix(std::initializer_list<std::initializer_list<long>> init);

    Int& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const Int& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    bool operator==(const IntMatrix& o) const {
        return rows == o.rows && cols == o.cols && a == o.a;
    }

    Vec row(int i) const;
    Vec col(int j) const;

    static IntMatrix identity(int n);
    static IntMatrix from_rows(const std::vector<Vec>& rs);
    static IntMatrix from_cols(const std::vector<Vec>& cs);
};

IntMatrix mul(const IntMatrix& x, const IntMatrix& y);
IntMatrix transpose(const IntMatrix& m);
Vec apply(const IntMatrix& m, const Vec& v);  // m * v
Int det(const IntMatrix& m);
int rank(const IntMatrix& m);
bool is_unimodular(const IntMatrix& m);

// Exact inverse of a unimodular integer matrix (error if |det| != 1).
IntMatrix unimodular_inverse(const IntMatrix& m);

struct HnfResult {
    IntMatrix h;  // row Hermite normal form
    IntMatrix u;  // unimodular, u*m = h
};
// Row HNF with lexicographic column order, positive pivots, and entries above
// each pivot reduced into [0, pivot).
HnfResult hermite_normal_form(const IntMatrix& m);

struct SnfResult {
    IntMatrix s;  // diagonal, d1 | d2 | ...
    IntMatrix u;  // unimodular
    IntMatrix v;  // unimodular, u*m*v = s
};
SnfResult smith_normal_form(const IntMatrix& m);

// Basis of the saturated right kernel { v : m v^T = 0 }, one basis vector per
// row.  Rows come from a unimodular column reduction, so the quotient of Z^cols
// by the row span is torsion free.
IntMatrix saturated_kernel(const IntMatrix& m);

// For primitive w returns unimodular U with <w, U e_i> = 0 for i < n and
// <w, U e_n> = 1: the last column crosses the hyperplane w = 0 once, the
// others span it.
IntMatrix complete_to_basis(const Vec& w);

Int gcd_all(const Vec& v);
bool is_primitive(const Vec& v);

}  // namespace ff

#endif
