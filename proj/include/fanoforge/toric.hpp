#ifndef FANOFORGE_TORIC_HPP
#define FANOFORGE_TORIC_HPP

#include <string>

#include "fanoforge/polytope.hpp"

namespace ff {

// GIT weight data: each column of w is the divisor class of one coordinate;
// stability picks the chamber of the secondary fan.
struct WeightData {
    IntMatrix w;  // rho x r
    Vec stability;
};

using DivisorClass = Vec;

// Saturated Gale dual: n x r matrix of rays (one per column) with
// w * rays^T = 0, n = r - rho.
IntMatrix rays_from_weights(const IntMatrix& w);

// Does v lie in the cone spanned by the given columns of w (all columns when
// empty)?  strict additionally requires positive coefficients.
bool in_column_cone(const IntMatrix& w, const std::vector<int>& cols, const Vec& v, bool strict);

// v lies on a wall: it is a nonnegative combination of some rho-1 columns.
bool on_wall(const IntMatrix& w, const Vec& v);

// All rho-subsets sigma of column indices (independent columns) whose cone
// contains the stability chamber.  sigma lists the coordinates set to 1 in
// the corresponding chart; the chart coordinates are the complement.
std::vector<std::vector<int>> maximal_charts(const IntMatrix& w, const Vec& stability);

bool is_nef(const IntMatrix& w, const Vec& stability, const DivisorClass& d);
bool is_ample(const IntMatrix& w, const Vec& stability, const DivisorClass& d);

DivisorClass anticanonical(const IntMatrix& w);

struct ToricModel {
    WeightData weights;
    IntMatrix rays;
    std::vector<std::vector<int>> max_cones;  // ray index sets (chart complements)
};

ToricModel make_model(const IntMatrix& w, const Vec& stability);

// Every chart complement spans a full-rank ray sublattice and the stability
// avoids all walls.
bool is_q_factorial(const ToricModel& m);

struct QuotientType {
    Int index = 1;                 // 1 means smooth
    bool cyclic = true;
    Vec weights;                   // action weights for cyclic quotients
    bool smooth() const { return index == 1; }
};

// Quotient singularity type at the origin of the chart sigma (indices set
// to 1); computed from the complementary ray columns.
QuotientType chart_quotient_type(const ToricModel& m, const std::vector<int>& sigma);

// All e >= 0 with w * e = d; throws InfiniteFamily when the solution set is
// not finite.
std::vector<Vec> cox_monomials(const IntMatrix& w, const DivisorClass& d);

struct ChartIncidence {
    bool passes_through_origin = true;
    Vec witness;  // a monomial supported inside sigma, when missed
};

ChartIncidence section_chart_incidence(const ToricModel& m, const DivisorClass& d,
                                       const std::vector<int>& sigma);

// One entry per singular stratum of the ambient variety.
struct StratumReport {
    std::vector<int> rays;     // vanishing coordinates cutting the stratum
    int dim = 0;               // stratum dimension
    QuotientType quotient;
    long point_count = 0;      // singular points contributed to the section
    bool isolated = true;      // false when the contribution has positive dim
    std::string note;
};

struct SingularityReport {
    std::vector<StratumReport> strata;
    bool all_isolated = true;
    long total_points = 0;
};

// Singular strata of the ambient model and the generic degree-d section's
// contact with them.  Point counts are generic-coefficient counts.
SingularityReport singular_strata_report(const ToricModel& m, const DivisorClass& d);

}  // namespace ff

#endif
