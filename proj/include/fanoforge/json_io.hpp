#ifndef FANOFORGE_JSON_IO_HPP
#define FANOFORGE_JSON_IO_HPP

#include <json.hpp>

#include "fanoforge/inversion.hpp"
#include "fanoforge/mutation.hpp"

namespace ff {

using Json = nlohmann::ordered_json;

// Exact decimal serialization: integers plain, non-integers as "p/q".
std::string rat_to_string(const Rat& x);
Rat rat_from_string(const std::string& s);

Json vec_to_json(const Vec& v);
Vec vec_from_json(const Json& j);
Json matrix_to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const Json& j);

// {"vars": n, "terms": [{"e": [...], "c": "coeff"}, ...]}
Json laurent_to_json(const Laurent& f);
Laurent laurent_from_json(const Json& j);

// {"weight": [...], "factor": <laurent>, "slice_basis": [[...]] (optional)}
Json mutation_to_json(const MutationData& m);
MutationData mutation_from_json(const Json& j);

// {"vertices": [[...], ...]}
Json polytope_to_json(const LatticePolytope& p);
LatticePolytope polytope_from_json(const Json& j);

// {"c": int, "theta": [[{"mono": [...], "tpow": [...]}...]...],
//  "struts": [...], "constant": int}
Json scaffolding_to_json(const Scaffolding& s);
Scaffolding scaffolding_from_json(const Json& j);

Json model_to_json(const CIModel& m);
CIModel model_from_json(const Json& j);

}  // namespace ff

#endif
