#ifndef FANOFORGE_MMLP_HPP
#define FANOFORGE_MMLP_HPP

#include "fanoforge/mutation.hpp"

namespace ff {

// Affine solution set of the coefficient system on a polytope: vertex
// coefficients 1, origin coefficient 0, and for every mutation datum the
// divisibility conditions linearised through auxiliary quotient unknowns.
struct SolutionSpace {
    int dimension = -1;            // -1: infeasible
    std::optional<Laurent> unique; // present exactly when dimension == 0
};

SolutionSpace solution_space(const LatticePolytope& p, const std::vector<MutationData>& s);

struct RigidCertificate {
    bool rigid = false;
    std::vector<MutationData> mutations;  // the admitted mutation set used
    int dimension = -1;                   // solution-space dimension for that set
};

RigidCertificate is_rigid_mmlp(const Laurent& f);

// Backtracking over one-factor-per-weight choices (maximal factors only),
// collecting unique solutions that are fixed points of is_rigid_mmlp.
std::vector<Laurent> find_rigid_mmlps(const LatticePolytope& p, long node_budget = 200000);

// Partition fs into orbits under f -> monomial_substitute(f, u) for u in aut.
std::vector<std::vector<Laurent>> orbit_classes(const std::vector<Laurent>& fs,
                                                const std::vector<IntMatrix>& aut);

}  // namespace ff

#endif
