#ifndef FANOFORGE_RATLIN_HPP
#define FANOFORGE_RATLIN_HPP

#include <optional>
#include <vector>

#include "fanoforge/intlin.hpp"

namespace ff {

// Small dense exact-rational linear algebra used by several modules.

using RatRow = std::vector<Rat>;
using RatMat = std::vector<RatRow>;

// Reduced row echelon form in place; returns pivot column indices.
inline std::vector<int> rref(RatMat& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    int rows = static_cast<int>(m.size());
    int cols = static_cast<int>(m[0].size());
    int r = 0;
    for (int j = 0; j < cols && r < rows; ++j) {
        int p = -1;
        for (int i = r; i < rows; ++i)
            if (m[i][j] != 0) { p = i; break; }
        if (p < 0) continue;
        std::swap(m[r], m[p]);
        Rat inv = m[r][j];
        for (int jj = j; jj < cols; ++jj) m[r][jj] /= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || m[i][j] == 0) continue;
            Rat c = m[i][j];
            for (int jj = j; jj < cols; ++jj) m[i][jj] -= c * m[r][jj];
        }
        pivots.push_back(j);
        ++r;
    }
    return pivots;
}

struct LinearSolveResult {
    bool consistent = false;
    int dimension = -1;              // affine dimension of solution set, -1 if empty
    std::vector<Rat> particular;     // one solution when consistent
    std::vector<int> free_columns;   // columns not pivotal
};

// Solve A x = b exactly.
inline LinearSolveResult solve_affine(const RatMat& a, const RatRow& b) {
    LinearSolveResult res;
    int rows = static_cast<int>(a.size());
    int cols = rows ? static_cast<int>(a[0].size()) : 0;
    if (rows == 0) {
        res.consistent = true;
        res.dimension = cols;
        res.particular.assign(cols, Rat(0));
        for (int j = 0; j < cols; ++j) res.free_columns.push_back(j);
        return res;
    }
    RatMat aug(rows, RatRow(cols + 1));
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) aug[i][j] = a[i][j];
        aug[i][cols] = b[i];
    }
    std::vector<int> pivots = rref(aug);
    // Inconsistent iff a pivot lands in the augmented column.
    if (!pivots.empty() && pivots.back() == cols) return res;
    res.consistent = true;
    std::vector<bool> is_pivot(cols, false);
    for (int p : pivots) is_pivot[p] = true;
    res.particular.assign(cols, Rat(0));
    for (size_t i = 0; i < pivots.size(); ++i) res.particular[pivots[i]] = aug[i][cols];
    for (int j = 0; j < cols; ++j)
        if (!is_pivot[j]) res.free_columns.push_back(j);
    res.dimension = static_cast<int>(res.free_columns.size());
    return res;
}

// Solve the square system exactly; nullopt if singular.
inline std::optional<std::vector<Rat>> solve_unique(const RatMat& a, const RatRow& b) {
    LinearSolveResult r = solve_affine(a, b);
    if (!r.consistent || r.dimension != 0) return std::nullopt;
    return r.particular;
}

}  // namespace ff

#endif
