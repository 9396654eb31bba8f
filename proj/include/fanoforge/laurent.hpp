#ifndef FANOFORGE_LAURENT_HPP
#define FANOFORGE_LAURENT_HPP

#include <map>
#include <optional>

#include "fanoforge/polytope.hpp"

namespace ff {

// Sparse Laurent polynomial: exponent vector -> nonzero rational coefficient.
// Exponent-lexicographic map order makes iteration and serialization
// deterministic.
struct Laurent {
    int n_vars = 0;
    std::map<Vec, Rat> terms;

    Laurent() = default;
    explicit Laurent(int n) : n_vars(n) {}

    bool is_zero() const { return terms.empty(); }
    Rat coefficient(const Vec& e) const {
        auto it = terms.find(e);
        return it == terms.end() ? Rat(0) : it->second;
    }
    Rat constant_term() const { return coefficient(Vec(n_vars)); }
    void set(const Vec& e, const Rat& c) {
        if (c == 0) terms.erase(e);
        else terms[e] = c;
    }
    void add_term(const Vec& e, const Rat& c) {
        auto [it, fresh] = terms.try_emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }

    bool operator==(const Laurent& o) const {
        return n_vars == o.n_vars && terms == o.terms;
    }

    static Laurent constant(int n, const Rat& c) {
        Laurent f(n);
        f.set(Vec(n), c);
        return f;
    }
    static Laurent monomial(const Vec& e, const Rat& c = Rat(1)) {
        Laurent f(static_cast<int>(e.size()));
        f.set(e, c);
        return f;
    }
};

Laurent add(const Laurent& f, const Laurent& g);
Laurent sub(const Laurent& f, const Laurent& g);
Laurent mul(const Laurent& f, const Laurent& g);
Laurent scale(const Laurent& f, const Rat& c);
Laurent pow(const Laurent& f, long d);

LatticePolytope newton_polytope(const Laurent& f);

struct PeriodSequence {
    std::vector<Rat> coefficients;  // index d holds the constant term of f^d
    bool operator==(const PeriodSequence&) const = default;
};

PeriodSequence classical_period(const Laurent& f, int d_max);

// All Newton-polytope vertex coefficients equal 1.
bool is_normalised(const Laurent& f);
// Origin strictly inside Newt(f) and zero constant term.
bool is_centered(const Laurent& f);

// Exponents mapped by a unimodular u (x^e -> x^{u e}).
Laurent monomial_substitute(const Laurent& f, const IntMatrix& u);

// f = sum_k slices[k] * y^k in the coordinates of complete_to_basis(w): the
// last coordinate is the height <w, e>, slices live in the first n-1.
struct SliceDecomposition {
    std::map<Int, Laurent> slices;
    Int a;            // -min height
    Int b;            // max height
    IntMatrix basis;  // the complete_to_basis(w) matrix used
};

SliceDecomposition slice_decompose(const Laurent& f, const Vec& w);

// Exact division: returns f / h when the remainder is zero, nullopt otherwise.
std::optional<Laurent> divide_exact(const Laurent& f, const Laurent& h);

}  // namespace ff

#endif
