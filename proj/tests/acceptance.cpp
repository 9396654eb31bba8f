// End-to-end acceptance checks, one printed line per criterion.
#include <array>
#include <chrono>
#include <iostream>
#include <set>
#include <sstream>

#include "fanoforge/pipeline.hpp"

using namespace ff;

namespace {

int failures = 0;

void report(int criterion, bool ok, const std::string& detail) {
    std::cout << "criterion " << criterion << ": " << (ok ? "pass" : "fail");
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << "\n" << std::flush;
    if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Laurent from_terms(int n, std::initializer_list<std::pair<Vec, long>> ts) {
    Laurent f(n);
    for (const auto& [e, c] : ts) f.add_term(e, Rat(c));
    return f;
}

Laurent ten_term(long c) {
    return from_terms(3, {{{1, 0, 0}, 1},
                          {{0, 1, 1}, 1},
                          {{0, 1, 0}, 1},
                          {{-1, 1, 0}, 1},
                          {{-1, 0, 1}, 1},
                          {{-1, 0, 0}, c},
                          {{-1, 0, -1}, 1},
                          {{-1, -1, 1}, 1},
                          {{-1, -1, 0}, 2},
                          {{-1, -1, -1}, 1}});
}

ScaffoldTerm term(std::initializer_list<long> mono, std::initializer_list<long> tpow) {
    ScaffoldTerm t;
    for (long m : mono) t.mono.push_back(m);
    for (long p : tpow) t.tpow.push_back(p);
    return t;
}

Scaffolding surface_scaffolding() {
    Scaffolding s;
    s.theta.thetas = {{term({0, 0}, {}), term({1, 0}, {}), term({0, 1}, {})}};
    s.struts = {term({-1, -1}, {2}), term({0, 0}, {1})};
    s.constant = -3;
    return s;
}

Scaffolding wedge_scaffolding() {
    Scaffolding s;
    s.theta.thetas = {{term({0, 0}, {}), term({1, 0}, {})},
                      {term({0, 0}, {2}), term({0, 1}, {1})}};
    s.struts = {term({-1, 0}, {0, 1}), term({-1, -1}, {0, 1})};
    s.constant = 2;
    return s;
}

Scaffolding threefold_one() {
    Scaffolding s;
    s.theta.thetas = {{term({0, 0, 0}, {}), term({0, 0, 1}, {})},
                      {term({0, 0, 0}, {1}), term({0, 1, 0}, {0})}};
    s.struts = {term({0, 1, -1}, {1, 0}), term({-1, -1, -1}, {1, 1}),
                term({-1, 0, 0}, {0, 1}), term({1, 0, 0}, {0, 0})};
    s.constant = 2;
    return s;
}

Scaffolding threefold_two() {
    Scaffolding s;
    s.theta.thetas = {{term({0, 0, 0}, {}), term({0, 0, 1}, {})},
                      {term({0, 0, 0}, {0}), term({0, 1, 0}, {0})}};
    s.struts = {term({0, 1, 0}, {1, 0}), term({-1, -1, -1}, {2, 1}),
                term({-1, 0, 0}, {0, 1}), term({1, 0, 0}, {0, 0})};
    s.constant = 2;
    return s;
}

CIModel bare_model(const IntMatrix& w, const std::vector<Vec>& bundles) {
    CIModel m;
    m.weights = w;
    m.bundles = bundles;
    return m;
}

LatticePolytope big_polytope() {
    return hull({{1, -2, 5}, {1, -2, 4}, {0, -2, 3}, {-2, 0, -3}, {-2, 1, -4}, {-2, 1, -5},
                 {0, 1, 0}, {1, 1, 1}, {1, 0, 3}, {0, 1, -3}, {1, 1, -1}, {1, 0, 0}});
}

bool period_matches(const Laurent& f, const std::vector<long>& want) {
    PeriodSequence p = classical_period(f, static_cast<int>(want.size()) - 1);
    for (size_t i = 0; i < want.size(); ++i)
        if (p.coefficients[i] != want[i]) return false;
    return true;
}

// Dense 3-d convolution oracle, independent of the sparse polynomial engine.
struct DenseCube {
    std::array<long, 3> lo{}, hi{};
    std::vector<Int> a;

    long span(int i) const { return hi[i] - lo[i] + 1; }
    Int& at(long x, long y, long z) {
        return a[((x - lo[0]) * span(1) + (y - lo[1])) * span(2) + (z - lo[2])];
    }
    Int get(long x, long y, long z) const {
        if (x < lo[0] || x > hi[0] || y < lo[1] || y > hi[1] || z < lo[2] || z > hi[2])
            return 0;
        return a[((x - lo[0]) * span(1) + (y - lo[1])) * span(2) + (z - lo[2])];
    }
    static DenseCube from_terms(const std::vector<std::pair<std::array<long, 3>, long>>& ts) {
        DenseCube c;
        c.lo = {ts[0].first[0], ts[0].first[1], ts[0].first[2]};
        c.hi = c.lo;
        for (const auto& [e, v] : ts)
            for (int i = 0; i < 3; ++i) {
                c.lo[i] = std::min(c.lo[i], e[i]);
                c.hi[i] = std::max(c.hi[i], e[i]);
            }
        c.a.assign(c.span(0) * c.span(1) * c.span(2), Int(0));
        for (const auto& [e, v] : ts) c.at(e[0], e[1], e[2]) += v;
        return c;
    }
};

DenseCube dense_mul(const DenseCube& f, const DenseCube& g) {
    DenseCube h;
    for (int i = 0; i < 3; ++i) {
        h.lo[i] = f.lo[i] + g.lo[i];
        h.hi[i] = f.hi[i] + g.hi[i];
    }
    h.a.assign(h.span(0) * h.span(1) * h.span(2), Int(0));
    for (long x = f.lo[0]; x <= f.hi[0]; ++x)
        for (long y = f.lo[1]; y <= f.hi[1]; ++y)
            for (long z = f.lo[2]; z <= f.hi[2]; ++z) {
                Int c = f.get(x, y, z);
                if (c == 0) continue;
                for (long u = g.lo[0]; u <= g.hi[0]; ++u)
                    for (long v = g.lo[1]; v <= g.hi[1]; ++v)
                        for (long t = g.lo[2]; t <= g.hi[2]; ++t) {
                            Int d = g.get(u, v, t);
                            if (d != 0) h.at(x + u, y + v, z + t) += c * d;
                        }
            }
    return h;
}

void criterion_1_and_2() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok1 = period_matches(ten_term(2),
                              {1, 0, 4, 18, 60, 600, 2470, 18900, 118300, 723240});
    double s1 = seconds_since(t0);
    std::ostringstream d1;
    d1 << "depth 9 in " << s1 << "s";
    report(1, ok1 && s1 < 5.0, d1.str());

    t0 = std::chrono::steady_clock::now();
    bool ok2 = period_matches(ten_term(3),
                              {1, 0, 6, 18, 90, 780, 3210, 28560, 164010, 1146600});
    double s2 = seconds_since(t0);
    std::ostringstream d2;
    d2 << "depth 9 in " << s2 << "s";
    report(2, ok2 && s2 < 5.0, d2.str());
}

void criterion_3() {
    MutationData m;
    m.weight = Vec{0, 1};
    m.factor = from_terms(1, {{{0}, 1}, {{1}, 1}});
    m.slice_basis = IntMatrix{{1, 0}, {0, 1}};
    bool ok = true;
    for (long a = 0; a <= 3; ++a) {
        Laurent f = from_terms(2, {{{0, 1}, 1}, {{-1, -1}, 1}, {{0, -1}, a}, {{1, -1}, 1}});
        ok = ok && (is_mutable(f, m) == (a == 2));
    }
    report(3, ok, "mutable exactly at the middle coefficient 2");
}

void criterion_4() {
    auto t0 = std::chrono::steady_clock::now();
    LatticePolytope p = big_polytope();
    std::vector<Laurent> fs = find_rigid_mmlps(p);
    std::vector<IntMatrix> aut = automorphisms(p);
    size_t orbits = orbit_classes(fs, aut).size();

    std::vector<Vec> hex_normals;
    for (const Facet& fc : p.facets) {
        int on = 0;
        for (const Vec& v : p.vertices) {
            Int s = 0;
            for (int j = 0; j < 3; ++j) s += fc.normal[j] * v[j];
            if (s == fc.offset) ++on;
        }
        if (on == 6) hex_normals.push_back(fc.normal);
    }
    // A solution is "uniform at value c" when every hexagonal facet carries
    // coefficients {1x6, 2x3, cx3}.
    auto uniform_at = [&](const Laurent& f, long c) {
        std::multiset<Rat> want{1, 1, 1, 1, 1, 1, 2, 2, 2, Rat(c), Rat(c), Rat(c)};
        for (const Vec& w : hex_normals) {
            std::multiset<Rat> got;
            for (const auto& [e, coeff] : f.terms) {
                Int s = 0;
                for (int j = 0; j < 3; ++j) s += w[j] * e[j];
                if (s == -1) got.insert(coeff);
            }
            if (got != want) return false;
        }
        return true;
    };
    int found4 = 0, found5 = 0;
    for (const Laurent& f : fs) {
        if (uniform_at(f, 4)) ++found4;
        if (uniform_at(f, 5)) ++found5;
    }
    double s = seconds_since(t0);
    std::ostringstream d;
    d << fs.size() << " solutions, " << orbits << " orbits, |aut|=" << aut.size() << ", "
      << found4 << "/" << found5 << " uniform solutions, " << s << "s";
    report(4, fs.size() == 16 && orbits == 5 && aut.size() == 24 && hex_normals.size() == 4 &&
                  found4 == 1 && found5 == 1 && s < 60.0,
           d.str());
}

void criterion_5() {
    CIModel m = reconstruct(surface_scaffolding());
    bool ok = m.weights == IntMatrix{{1, 0, 0, 1, 1}, {0, 1, 1, 0, 0}} &&
              m.bundles == std::vector<Vec>{{2, 1}};
    std::vector<Binomial> bins = binomial_degeneration(m);
    ok = ok && bins.size() == 1;
    if (ok) {
        // z1^2 z2 = z3 z4 z5, in either orientation.
        Vec a{2, 1, 0, 0, 0}, b{0, 0, 1, 1, 1};
        ok = (bins[0].lhs == a && bins[0].rhs == b) || (bins[0].lhs == b && bins[0].rhs == a);
    }
    report(5, ok, "5-column weights, bundle (2,1), binomial z1^2 z2 = z3 z4 z5");
}

void criterion_6() {
    CIModel m = reconstruct(wedge_scaffolding());
    // The paper states the bundles in a different class-lattice basis; in the
    // basis normalised here the classes are (2,1) and (1,1).
    bool ok = m.weights.cols == 6 &&
              m.weights == IntMatrix{{1, 0, 1, 1, 1, 0}, {0, 1, 0, 1, 0, 1}} &&
              m.bundles == std::vector<Vec>{{2, 1}, {1, 1}};
    CIModel reduced = eliminate_toric_divisor_bundle(m);
    ok = ok && models_equivalent(reduced, reconstruct(surface_scaffolding()));
    report(6, ok, "6-column weights, bundles (2,1) and (1,1), elimination recovers the "
                  "5-column model");
}

void criterion_7() {
    IntMatrix wa{{1, 0, 0, 1, 1, 1, -1}, {0, 1, 0, 0, 1, 0, 1}, {0, 0, 1, 1, 0, 1, 0}};
    IntMatrix wb{{1, 0, 0, 1, 0, 1, -1}, {0, 1, 0, 1, 1, 0, 1}, {0, 0, 1, 0, 0, 1, 0}};

    CIModel m1 = reconstruct(threefold_one());
    CIModel m2 = reconstruct(threefold_two());
    bool ok = m1.weights.cols == 8 && m2.weights.cols == 8 &&
              m1.weights == IntMatrix{{1, 0, 0, 0, 1, 1, 1, -1},
                                      {0, 1, 0, 1, 0, 1, 0, 1},
                                      {0, 0, 1, 1, 1, 0, 1, 0}} &&
              m2.weights == IntMatrix{{1, 0, 0, 0, 1, 0, 1, -1},
                                      {0, 1, 0, 1, 1, 1, 0, 1},
                                      {0, 0, 1, 1, 0, 0, 1, 0}} &&
              m1.bundles[0] == Vec{2, 1, 1} && m2.bundles[0] == Vec{1, 2, 0} &&
              models_equivalent(eliminate_toric_divisor_bundle(m1),
                                bare_model(wa, {{2, 1, 1}})) &&
              models_equivalent(eliminate_toric_divisor_bundle(m2),
                                bare_model(wb, {{1, 2, 0}}));

    Vec stab{1, 2, 2};
    auto singular_sets = [&](const IntMatrix& w) {
        ToricModel model = make_model(w, stab);
        std::set<std::vector<int>> out;
        for (const auto& sigma : maximal_charts(w, stab))
            if (!chart_quotient_type(model, sigma).smooth()) out.insert(sigma);
        return out;
    };
    ok = ok && maximal_charts(wa, stab).size() == 12 && maximal_charts(wb, stab).size() == 12;
    ok = ok && singular_sets(wa) ==
                   std::set<std::vector<int>>{{2, 4, 6}, {3, 4, 6}, {4, 5, 6}};
    ok = ok && singular_sets(wb) == std::set<std::vector<int>>{{2, 3, 6}, {3, 5, 6}};

    auto two_index2_points = [&](const IntMatrix& w, const Vec& d) {
        SingularityReport r = singular_strata_report(make_model(w, stab), d);
        if (!r.all_isolated || r.total_points != 2) return false;
        for (const StratumReport& s : r.strata)
            if (s.point_count > 0 && s.quotient.index != 2) return false;
        return true;
    };
    ok = ok && two_index2_points(wa, {2, 1, 1}) && two_index2_points(wb, {1, 2, 0});
    report(7, ok, "8-column reconstructions, 12 charts each, pinned singular chart sets, "
                  "two index-2 isolated points each");
}

void criterion_8() {
    IntMatrix w{{1, 0, 1, 0, 1, 0}, {0, 1, 0, 1, 0, 1}};
    std::vector<std::vector<int>> part{{0, 1}, {2, 3}, {4, 5}};
    std::vector<TowerSpec> towers = enumerate_towers(w, part, 6);
    bool ok = towers.size() == 2;
    if (ok) {
        Laurent f0 = laurent_from_tower(w, part, towers[0], {2, 4}).f;
        Laurent f1 = laurent_from_tower(w, part, towers[1], {2, 4}).f;
        ok = f0 != f1 && classical_period(f0, 10) == classical_period(f1, 10);
    }
    report(8, ok, "two towers with equal periods to depth 10");
}

void criterion_9() {
    std::vector<Laurent> queue{
        from_terms(2, {{{1, 0}, 1}, {{0, 1}, 1}, {{-1, -1}, 1}}),
        from_terms(2, {{{0, 1}, 1}, {{-1, -1}, 1}, {{0, -1}, 2}, {{1, -1}, 1}}),
        from_terms(2, {{{1, 0}, 1}, {{0, 1}, 1}, {{1, -1}, 1}, {{0, -1}, 2}, {{-1, -1}, 1},
                       {{-1, 0}, 2}, {{-1, 1}, 1}}),
        ten_term(2), ten_term(3)};
    std::set<std::map<Vec, Rat>> seen;
    long pairs = 0, agreed = 0;
    for (size_t qi = 0; qi < queue.size() && pairs < 60; ++qi) {
        Laurent f = queue[qi];
        if (!seen.insert(f.terms).second) continue;
        std::vector<MutationData> ms;
        try {
            ms = admitted_mutations(f);
        } catch (const DomainError&) {
            continue;
        }
        for (const MutationData& m : ms) {
            if (pairs >= 60) break;
            Laurent g = mutate(f, m);
            ++pairs;
            if (classical_period(f, 8) == classical_period(g, 8)) ++agreed;
            if (queue.size() < 200) queue.push_back(g);
        }
    }
    std::ostringstream d;
    d << agreed << "/" << pairs << " pairs period-invariant to depth 8";
    report(9, pairs >= 50 && agreed == pairs, d.str());
}

void criterion_10() {
    LatticePolytope tri = hull({{1, 0}, {0, 1}, {-1, -1}});
    EhrhartPrefix tp = ehrhart_prefix(dual(tri), 3);
    bool ok = tp.coefficients == std::vector<Int>{1, 10, 28, 55};
    LatticePolytope oct =
        hull({{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}});
    EhrhartPrefix op = ehrhart_prefix(dual(oct), 2);
    ok = ok && op.coefficients == std::vector<Int>{1, 27, 125};
    ok = ok && genus_from_hilbert(tp) == 8 && genus_from_hilbert(op) == 25;
    report(10, ok, "triangle dual (1,10,28,55), octahedron dual (1,27,125), genus = "
                   "second coefficient minus 2");
}

void criterion_11() {
    SampleConfig cfg;
    cfg.seed = 9157;
    cfg.count = 50000;
    std::ostringstream s1, s2, s3;
    run(cfg, nullptr, s1, 1);
    run(cfg, nullptr, s2, 1);
    run(cfg, nullptr, s3, 8);
    bool deterministic = s1.str() == s2.str() && s1.str() == s3.str();

    long step2_pass = 0, survivors = 0, reverified = 0;
    RecordSet rs;
    {
        std::istringstream in(s1.str());
        std::string line;
        while (std::getline(in, line)) rs.records.push_back(Json::parse(line));
    }
    for (const Json& rec : rs.records) {
        if (rec.at("verdicts").at("step2").at("pass").get<bool>()) ++step2_pass;
        if (rec.at("survivor").get<bool>()) {
            ++survivors;
            IntMatrix w = matrix_from_json(rec.at("w"));
            Vec d = vec_from_json(rec.at("d"));
            Laurent f = laurent_from_json(rec.at("mirror"));
            if (step2_filter(w, d).pass && step4_filter(f).verdict.pass &&
                step5_screen(w, d).verdict.pass)
                ++reverified;
        }
    }
    double rate = double(step2_pass) / double(cfg.count);
    bool rate_ok = rate >= 0.01 && rate <= 0.06;

    // Classification refines exact period equality: deeper truncation never
    // merges classes that a shallower truncation separates.
    auto coarse = classify(rs, 5);
    auto fine = classify(rs, 10);
    std::map<std::size_t, std::size_t> coarse_of;
    for (std::size_t ci = 0; ci < coarse.size(); ++ci)
        for (std::size_t rec : coarse[ci]) coarse_of[rec] = ci;
    bool refines = true;
    for (const auto& cls : fine) {
        for (std::size_t rec : cls)
            if (coarse_of.at(rec) != coarse_of.at(cls.front())) refines = false;
    }

    std::ostringstream d;
    d << "determinism " << (deterministic ? "pass" : "FAIL") << "; survivors " << reverified
      << "/" << survivors << " re-verified; step-2 rate " << rate * 100
      << "% vs required [1%,6%]; refinement " << (refines ? "pass" : "FAIL");
    report(11, deterministic && survivors == reverified && rate_ok && refines, d.str());
}

void criterion_12() {
    // (x^2 + 2x + yz^3 + 3yz^2 + 3yz + y + 1)^2 / (xyz) - 12.
    std::vector<std::pair<std::array<long, 3>, long>> g_terms{
        {{2, 0, 0}, 1}, {{1, 0, 0}, 2}, {{0, 1, 3}, 1}, {{0, 1, 2}, 3},
        {{0, 1, 1}, 3}, {{0, 1, 0}, 1}, {{0, 0, 0}, 1}};

    Laurent g(3);
    for (const auto& [e, c] : g_terms) g.add_term(Vec{e[0], e[1], e[2]}, Rat(c));
    Laurent f = mul(g, g);
    {
        Laurent shifted(3);
        for (const auto& [e, c] : f.terms)
            shifted.add_term(Vec{e[0] - 1, e[1] - 1, e[2] - 1}, c);
        f = shifted;
    }
    f.add_term(Vec(3), Rat(-12));
    PeriodSequence p = classical_period(f, 8);

    // Oracle: dense convolution from scratch on the same term data.
    DenseCube gd = DenseCube::from_terms(g_terms);
    DenseCube fd = dense_mul(gd, gd);
    for (int i = 0; i < 3; ++i) {
        --fd.lo[i];
        --fd.hi[i];
    }
    fd.at(0, 0, 0) += -12;
    DenseCube power = DenseCube::from_terms({{{0, 0, 0}, 1}});
    bool ok = p.coefficients[0] == 1;
    for (int dgr = 1; dgr <= 8; ++dgr) {
        power = dense_mul(power, fd);
        ok = ok && p.coefficients[dgr] == power.get(0, 0, 0);
    }
    report(12, ok, "period to depth 8 matches the dense-convolution oracle");
}

}  // namespace

int main() {
    criterion_1_and_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12();
    if (failures > 0) {
        std::cout << failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all criteria passed\n";
    return 0;
}
