#ifndef FANOFORGE_INVERSION_HPP
#define FANOFORGE_INVERSION_HPP

#include "fanoforge/laurent.hpp"

namespace ff {

// One summand of a theta function or of the scaffolded polynomial: a monomial
// in the chart variables times powers of previously defined thetas.
struct ScaffoldTerm {
    Vec mono;  // exponents in the chart variables
    Vec tpow;  // nonnegative theta powers (theta_1..theta_{k-1} for the k-th
               // theta's terms, theta_1..theta_c for struts)
};

struct ThetaSpec {
    std::vector<std::vector<ScaffoldTerm>> thetas;  // index k-1 holds theta_k
};

struct Scaffolding {
    ThetaSpec theta;
    std::vector<ScaffoldTerm> struts;
    Int constant = 0;
};

// The c x r weight matrix of a tower of projective bundles: block k carries a
// unit row k, zeros below, and nonpositive entries above and on the leading
// block.
struct TowerSpec {
    IntMatrix zeta;
};

// A complete-intersection model X subset Y: Y is the GIT quotient with the
// given weights and X is cut out by sections of the bundles.
struct CIModel {
    IntMatrix rays;     // n x r, identity on the complement of the basis
    IntMatrix weights;  // rho x r, identity on the basis columns
    std::vector<std::vector<int>> partition;  // S_0, S_1, ..., S_c
    std::vector<Vec> bundles;                 // L_1..L_c (column sums over S_i)
    std::vector<int> basis;                   // B, subset of S_0
    std::vector<int> chart;                   // F, one column per S_i, i >= 1
    TowerSpec tower;
};

// Evaluates constant + sum over struts of mono * prod theta^tpow with the
// thetas expanded recursively.
Laurent expand_scaffolding(const Scaffolding& s);

// Rebuilds the toric complete-intersection model from a scaffolding: the
// theta powers fix the tower weights, homogenisation fixes the missing chart
// exponents of each strut, and the weights are the saturated kernel of the
// rays normalised to the identity on the basis columns.
CIModel reconstruct(const Scaffolding& s);

// When some bundle equals a single weight column, drop that column and that
// bundle (solving the corresponding section for its linear variable).  The
// partition, basis, chart and tower are no longer meaningful afterwards and
// are cleared.  Throws NoEliminableBundle when no column matches.
CIModel eliminate_toric_divisor_bundle(const CIModel& m);

// All towers over the ambient with the given weights and partition: fillings
// of the free entries in [-entry_bound, 0] whose rows annihilate the weight
// columns, deduplicated up to adding lower rows to upper ones and
// weight-preserving column permutations within blocks.
std::vector<TowerSpec> enumerate_towers(const IntMatrix& weights,
                                        const std::vector<std::vector<int>>& partition,
                                        long entry_bound = 6);

struct TowerLaurent {
    Laurent f;
    Scaffolding scaffolding;
};

// The Laurent polynomial of a tower on the chart where the f_chart variables
// (one per S_i, i >= 1) are set to one, together with its scaffolding.
TowerLaurent laurent_from_tower(const IntMatrix& weights,
                                const std::vector<std::vector<int>>& partition,
                                const TowerSpec& tower, const std::vector<int>& f_chart);

// Exponent vectors of the binomial equations z^lhs = z^rhs cutting out the
// toric degeneration, one per bundle.
struct Binomial {
    Vec lhs;
    Vec rhs;
};
std::vector<Binomial> binomial_degeneration(const CIModel& m);

// Same ambient and bundles up to column permutation and a unimodular change
// of the class lattice.
bool models_equivalent(const CIModel& a, const CIModel& b);

}  // namespace ff

#endif
