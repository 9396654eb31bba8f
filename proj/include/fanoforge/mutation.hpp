#ifndef FANOFORGE_MUTATION_HPP
#define FANOFORGE_MUTATION_HPP

#include "fanoforge/laurent.hpp"

namespace ff {

// A mutation is a primitive weight plus a factor supported in the height-0
// hyperplane.  The factor is stored in the slice coordinates of slice_basis
// (by default complete_to_basis(weight)); its exponents are (n-1)-dimensional.
struct MutationData {
    Vec weight;
    Laurent factor;
    IntMatrix slice_basis;

    bool is_trivial() const { return factor.terms.size() == 1; }
};

// The factor re-expressed in the slice coordinates of the given basis
// (typically complete_to_basis(weight)).
Laurent factor_in_slice_coords(const MutationData& m, const IntMatrix& basis);

// True iff factor^k exactly divides the height -k part of f for all k >= 1.
bool is_mutable(const Laurent& f, const MutationData& m);

// Apply the mutation: slice k of the result is factor^k times slice k of f.
Laurent mutate(const Laurent& f, const MutationData& m);

// Finite set of weights that can admit a non-trivial mutation factor: the
// minimal face must have dimension >= 1 and the depth a = -min<w,P> must not
// exceed that face's lattice diameter.
std::vector<Vec> candidate_weights(const LatticePolytope& p);

// Normalised factor candidates for a given weight: products of multisets of
// indecomposable Minkowski summands of the bottom slice, each summand
// contributing the all-ones polynomial on its lattice points.  Every returned
// factor h satisfies: k * Newt(h) is a summand of the height -k slice hull for
// k = 1..a.  slice_hulls[k-1] is the height -(k) slice in slice coordinates.
std::vector<Laurent> candidate_factors(const std::vector<LatticePolytope>& slice_hulls);

// Factor candidates for a bare polytope (uses the full slice hulls).
std::vector<Laurent> candidate_factors(const LatticePolytope& p, const Vec& w);

// All non-trivial mutations of f over the bounded candidate set.
std::vector<MutationData> admitted_mutations(const Laurent& f);

}  // namespace ff

#endif
