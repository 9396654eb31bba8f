#ifndef FANOFORGE_POLYTOPE_HPP
#define FANOFORGE_POLYTOPE_HPP

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "fanoforge/intlin.hpp"

namespace ff {

// Facet inequality <normal, x> >= offset with primitive inward normal.
struct Facet {
    Vec normal;
    Int offset;
};

// Lattice polytope given by its hull vertices.  Facets are computed eagerly
// for full-dimensional polytopes; lower-dimensional hulls carry an intrinsic
// representation (a lattice basis of the affine hull) instead.
struct LatticePolytope {
    int ambient_dim = 0;
    int affine_dim = -1;  // -1: empty polytope
    std::vector<Vec> vertices;   // deduplicated, lexicographically sorted
    std::vector<Facet> facets;   // only when affine_dim == ambient_dim

    // For lower-dimensional polytopes: x = base + basis * y with y in the
    // intrinsic polytope of dimension affine_dim.
    Vec base;
    IntMatrix basis;  // ambient_dim x affine_dim
    std::shared_ptr<LatticePolytope> intrinsic;

    bool empty() const { return affine_dim < 0; }
    bool full_dimensional() const { return affine_dim == ambient_dim; }
    bool contains(const Vec& x) const;
};

LatticePolytope hull(const std::vector<Vec>& points);

// Lexicographically ordered lattice points of p.
std::vector<Vec> lattice_points(const LatticePolytope& p);

// Strict-interior lattice points (full-dimensional p only).
std::vector<Vec> interior_points(const LatticePolytope& p);
bool is_canonical(const LatticePolytope& p);

struct RationalPolytope {
    int ambient_dim = 0;
    std::vector<std::vector<Rat>> vertices;
};

// P* = { y : <y,x> >= -1 for all x in P }; requires the origin strictly inside.
RationalPolytope dual(const LatticePolytope& p);

struct EhrhartPrefix {
    std::vector<Int> coefficients;  // coefficients[k] = #(k q ∩ Z^n)
};

EhrhartPrefix ehrhart_prefix(const RationalPolytope& q, int k_max);

// Lattice points of the dilate k*q of a full-dimensional rational polytope.
std::vector<Vec> dilated_lattice_points(const RationalPolytope& q, const Int& k);
Int genus_from_hilbert(const EhrhartPrefix& e);

// Hull of the lattice points of p at height k w.r.t. w, expressed in the
// (n-1)-dim slice coordinates given by complete_to_basis(w).
LatticePolytope slice(const LatticePolytope& p, const Vec& w, const Int& k);

// Intrinsic 2-d view of a polygon given in arbitrary ambient dimension.
// The decomposition machinery below works on these.
using Polygon = LatticePolytope;

// All decompositions of a polygon (affine dim <= 2) into multisets of
// lattice-indecomposable summands, via edge-vector partitioning, plus the
// trivial decomposition {poly}.  Summands are translated to have
// lexicographically minimal vertex at the origin.
std::vector<std::vector<LatticePolytope>> minkowski_summand_decompositions(const LatticePolytope& poly);

// Is s a Minkowski summand of p (both polygons, affine dim <= 2)?
bool is_minkowski_summand(const LatticePolytope& s, const LatticePolytope& p);

// Hull of pairwise vertex sums.
LatticePolytope minkowski_sum(const LatticePolytope& a, const LatticePolytope& b);

// Distinct lattice-indecomposable summands of a polygon (ambient dim 2),
// each translated to have its lexicographically minimal vertex at the origin.
std::vector<LatticePolytope> indecomposable_summands(const LatticePolytope& poly);

// Dilate by a nonnegative integer factor.
LatticePolytope dilate(const LatticePolytope& p, const Int& k);

// All unimodular U with U p = p (vertex sets); requires interior origin.
std::vector<IntMatrix> automorphisms(const LatticePolytope& p);

// Cheap invariant tuple used to prune equivalence searches.
struct Fingerprint {
    int vertex_count = 0;
    int lattice_point_count = 0;
    int facet_count = 0;
    std::vector<Int> dual_ehrhart;     // depth 3
    std::vector<Int> facet_heights;    // sorted multiset of -offset
    bool operator==(const Fingerprint&) const = default;
    bool operator<(const Fingerprint&) const = default;
};

Fingerprint fingerprint(const LatticePolytope& p);

// Is there unimodular U with U p = q?  Returns a witness when found.
std::optional<IntMatrix> equivalence_map(const LatticePolytope& p, const LatticePolytope& q);
bool equivalent(const LatticePolytope& p, const LatticePolytope& q);

// Largest lattice-length of a segment contained in p (0 for a point).
Int lattice_diameter(const LatticePolytope& p);

// Face lattice entries of dimension >= 1 (including facets and p itself is
// excluded; faces are proper).  Each face is returned as a vertex subset hull.
std::vector<LatticePolytope> proper_faces_dim_ge1(const LatticePolytope& p);

// Minimal face of p w.r.t. w (the face where <w,.> attains its minimum).
LatticePolytope minimal_face(const LatticePolytope& p, const Vec& w);

}  // namespace ff

#endif
