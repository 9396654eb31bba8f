#include "fanoforge/json_io.hpp"

namespace ff {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw DomainError("SchemaViolation", what);
}

Int int_from_json(const Json& j) {
    if (j.is_number_integer()) return Int(static_cast<long>(j.get<long long>()));
    require(j.is_string(), "expected integer or decimal string");
    return Int(j.get<std::string>());
}

Json int_to_json(const Int& x) {
    if (x.fits_slong_p()) return Json(x.get_si());
    return Json(x.get_str());
}

std::vector<int> ints_from_json(const Json& j) {
    require(j.is_array(), "expected array of indices");
    std::vector<int> out;
    for (const Json& e : j) {
        require(e.is_number_integer(), "expected integer index");
        out.push_back(e.get<int>());
    }
    return out;
}

}  // namespace

std::string rat_to_string(const Rat& x) {
    return x.get_str();
}

Rat rat_from_string(const std::string& s) {
    Rat x;
    if (x.set_str(s, 10) != 0) throw DomainError("SchemaViolation", "bad rational: " + s);
    x.canonicalize();
    return x;
}

Json vec_to_json(const Vec& v) {
    Json j = Json::array();
    for (const Int& x : v) j.push_back(int_to_json(x));
    return j;
}

Vec vec_from_json(const Json& j) {
    require(j.is_array(), "expected integer vector");
    Vec v;
    for (const Json& e : j) v.push_back(int_from_json(e));
    return v;
}

Json matrix_to_json(const IntMatrix& m) {
    Json j = Json::array();
    for (int i = 0; i < m.rows; ++i) j.push_back(vec_to_json(m.row(i)));
    return j;
}

IntMatrix matrix_from_json(const Json& j) {
    require(j.is_array() && !j.empty(), "expected non-empty matrix");
    std::vector<Vec> rows;
    for (const Json& r : j) rows.push_back(vec_from_json(r));
    for (const Vec& r : rows)
        require(r.size() == rows[0].size(), "ragged matrix");
    return IntMatrix::from_rows(rows);
}

Json laurent_to_json(const Laurent& f) {
    Json j;
    j["vars"] = f.n_vars;
    Json terms = Json::array();
    for (const auto& [e, c] : f.terms) {
        Json t;
        t["e"] = vec_to_json(e);
        t["c"] = rat_to_string(c);
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    return j;
}

Laurent laurent_from_json(const Json& j) {
    require(j.is_object() && j.contains("vars") && j.contains("terms"),
            "laurent needs \"vars\" and \"terms\"");
    Laurent f(j.at("vars").get<int>());
    require(f.n_vars >= 0, "negative variable count");
    for (const Json& t : j.at("terms")) {
        require(t.is_object() && t.contains("e") && t.contains("c"),
                "term needs \"e\" and \"c\"");
        Vec e = vec_from_json(t.at("e"));
        require(static_cast<int>(e.size()) == f.n_vars, "exponent length mismatch");
        Rat c = t.at("c").is_string() ? rat_from_string(t.at("c").get<std::string>())
                                      : Rat(Int(static_cast<long>(t.at("c").get<long long>())));
        f.add_term(e, c);
    }
    return f;
}

Json mutation_to_json(const MutationData& m) {
    Json j;
    j["weight"] = vec_to_json(m.weight);
    j["factor"] = laurent_to_json(m.factor);
    if (m.slice_basis.rows > 0) j["slice_basis"] = matrix_to_json(m.slice_basis);
    return j;
}

MutationData mutation_from_json(const Json& j) {
    require(j.is_object() && j.contains("weight") && j.contains("factor"),
            "mutation needs \"weight\" and \"factor\"");
    MutationData m;
    m.weight = vec_from_json(j.at("weight"));
    m.factor = laurent_from_json(j.at("factor"));
    if (j.contains("slice_basis")) m.slice_basis = matrix_from_json(j.at("slice_basis"));
    return m;
}

Json polytope_to_json(const LatticePolytope& p) {
    Json j;
    Json verts = Json::array();
    for (const Vec& v : p.vertices) verts.push_back(vec_to_json(v));
    j["vertices"] = std::move(verts);
    return j;
}

LatticePolytope polytope_from_json(const Json& j) {
    require(j.is_object() && j.contains("vertices"), "polytope needs \"vertices\"");
    std::vector<Vec> pts;
    for (const Json& v : j.at("vertices")) pts.push_back(vec_from_json(v));
    require(!pts.empty(), "empty vertex list");
    return hull(pts);
}

namespace {

Json scaffold_term_to_json(const ScaffoldTerm& t) {
    Json j;
    j["mono"] = vec_to_json(t.mono);
    j["tpow"] = vec_to_json(t.tpow);
    return j;
}

ScaffoldTerm scaffold_term_from_json(const Json& j) {
    require(j.is_object() && j.contains("mono") && j.contains("tpow"),
            "scaffold term needs \"mono\" and \"tpow\"");
    ScaffoldTerm t;
    t.mono = vec_from_json(j.at("mono"));
    t.tpow = vec_from_json(j.at("tpow"));
    return t;
}

}  // namespace

Json scaffolding_to_json(const Scaffolding& s) {
    Json j;
    j["c"] = s.theta.thetas.size();
    Json thetas = Json::array();
    for (const auto& th : s.theta.thetas) {
        Json terms = Json::array();
        for (const ScaffoldTerm& t : th) terms.push_back(scaffold_term_to_json(t));
        thetas.push_back(std::move(terms));
    }
    j["theta"] = std::move(thetas);
    Json struts = Json::array();
    for (const ScaffoldTerm& t : s.struts) struts.push_back(scaffold_term_to_json(t));
    j["struts"] = std::move(struts);
    j["constant"] = int_to_json(s.constant);
    return j;
}

Scaffolding scaffolding_from_json(const Json& j) {
    require(j.is_object() && j.contains("theta") && j.contains("struts") &&
                j.contains("constant"),
            "scaffolding needs \"theta\", \"struts\", \"constant\"");
    Scaffolding s;
    for (const Json& th : j.at("theta")) {
        std::vector<ScaffoldTerm> terms;
        for (const Json& t : th) terms.push_back(scaffold_term_from_json(t));
        s.theta.thetas.push_back(std::move(terms));
    }
    for (const Json& t : j.at("struts")) s.struts.push_back(scaffold_term_from_json(t));
    s.constant = int_from_json(j.at("constant"));
    if (j.contains("c"))
        require(j.at("c").get<size_t>() == s.theta.thetas.size(), "theta count mismatch");
    return s;
}

Json model_to_json(const CIModel& m) {
    Json j;
    j["weights"] = matrix_to_json(m.weights);
    j["rays"] = matrix_to_json(m.rays);
    Json part = Json::array();
    for (const auto& block : m.partition) part.push_back(block);
    j["partition"] = std::move(part);
    Json bundles = Json::array();
    for (const Vec& b : m.bundles) bundles.push_back(vec_to_json(b));
    j["bundles"] = std::move(bundles);
    j["basis"] = m.basis;
    j["chart"] = m.chart;
    j["tower"] = m.tower.zeta.rows > 0 ? matrix_to_json(m.tower.zeta) : Json::array();
    return j;
}

CIModel model_from_json(const Json& j) {
    require(j.is_object() && j.contains("weights"), "model needs \"weights\"");
    CIModel m;
    m.weights = matrix_from_json(j.at("weights"));
    if (j.contains("rays")) m.rays = matrix_from_json(j.at("rays"));
    if (j.contains("partition"))
        for (const Json& block : j.at("partition")) m.partition.push_back(ints_from_json(block));
    if (j.contains("bundles"))
        for (const Json& b : j.at("bundles")) m.bundles.push_back(vec_from_json(b));
    if (j.contains("basis")) m.basis = ints_from_json(j.at("basis"));
    if (j.contains("chart")) m.chart = ints_from_json(j.at("chart"));
    if (j.contains("tower") && !j.at("tower").empty())
        m.tower.zeta = matrix_from_json(j.at("tower"));
    return m;
}

}  // namespace ff
