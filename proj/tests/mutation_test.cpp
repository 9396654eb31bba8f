#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "fanoforge/mutation.hpp"

using namespace ff;

namespace {

Laurent from_terms(int n, std::initializer_list<std::pair<Vec, long>> ts) {
    Laurent f(n);
    for (const auto& [e, c] : ts) f.add_term(e, Rat(c));
    return f;
}

// f = y + (1 + a x + x^2) / (x y)
Laurent f_param(long a) {
    return from_terms(2, {{{0, 1}, 1}, {{-1, -1}, 1}, {{0, -1}, a}, {{1, -1}, 1}});
}

// Mutation along (0,1) by 1+x, with an explicit slice basis so the factor is
// literally 1+x in the ambient x variable.
MutationData vertical_by_one_plus_x(long sign) {
    MutationData m;
    m.weight = Vec{0, sign};
    m.factor = from_terms(1, {{{0}, 1}, {{1}, 1}});
    m.slice_basis = IntMatrix{{1, 0}, {0, sign}};
    return m;
}

// Translate so the lexicographically minimal Newton-polytope vertex sits at
// the origin; removes the monomial ambiguity when comparing factors.
Laurent monomial_normalise(const Laurent& f) {
    Vec shift = newton_polytope(f).vertices.front();
    Laurent g(f.n_vars);
    for (const auto& [e, c] : f.terms) {
        Vec y(e.size());
        for (size_t i = 0; i < e.size(); ++i) y[i] = e[i] - shift[i];
        g.set(y, c);
    }
    return g;
}

}  // namespace

TEST_CASE("divisibility criterion on the one-parameter family") {
    MutationData m = vertical_by_one_plus_x(1);
    CHECK(is_mutable(f_param(2), m));
    CHECK(!is_mutable(f_param(3), m));
    CHECK(!is_mutable(f_param(0), m));
}

TEST_CASE("monomial factors are always admissible") {
    MutationData m;
    m.weight = Vec{0, 1};
    m.factor = Laurent::monomial(Vec{1});
    CHECK(is_mutable(f_param(3), m));
    CHECK(is_mutable(f_param(0), m));
}

TEST_CASE("mutation of the a=2 polynomial") {
    Laurent f = f_param(2);
    MutationData m = vertical_by_one_plus_x(1);
    Laurent g = mutate(f, m);
    // y + xy + 1/(xy) + 1/y
    CHECK(g == from_terms(2, {{{0, 1}, 1}, {{1, 1}, 1}, {{-1, -1}, 1}, {{0, -1}, 1}}));
    // Period is preserved.
    CHECK(classical_period(g, 8).coefficients == classical_period(f, 8).coefficients);
    // Inverse mutation with the opposite weight recovers f.
    CHECK(mutate(g, vertical_by_one_plus_x(-1)) == f);
}

TEST_CASE("mutate refuses a non-divisible factor") {
    CHECK_THROWS_AS(mutate(f_param(3), vertical_by_one_plus_x(1)), DomainError);
}

TEST_CASE("candidate weights of the reflexive triangle") {
    LatticePolytope p = hull({{1, 0}, {0, 1}, {-1, -1}});
    std::vector<Vec> ws = candidate_weights(p);
    std::vector<Vec> want{{-1, -1}, {-1, 2}, {2, -1}};
    std::sort(want.begin(), want.end());
    CHECK(ws == want);
}

TEST_CASE("candidate factors of a triangle edge slice") {
    // Slice of the triangle mirror along an edge normal is a unit segment:
    // the only candidate is 1+x.
    LatticePolytope p = hull({{1, 0}, {0, 1}, {-1, -1}});
    std::vector<Laurent> hs = candidate_factors(p, Vec{-1, -1});
    REQUIRE(hs.size() == 1);
    CHECK(monomial_normalise(hs[0]) == from_terms(1, {{{0}, 1}, {{1}, 1}}));
}

TEST_CASE("candidate factors of the big hexagon") {
    // Hexagon with vertices (1,0),(3,0),(3,1),(1,3),(0,3),(0,1); its complete
    // Minkowski decompositions give two famous degree-4 factors.
    LatticePolytope hex = hull({{1, 0}, {3, 0}, {3, 1}, {1, 3}, {0, 3}, {0, 1}});
    std::vector<Laurent> hs = candidate_factors(std::vector<LatticePolytope>{hex});

    Laurent xy = from_terms(2, {{{1, 0}, 1}, {{0, 1}, 1}});
    Laurent oy = from_terms(2, {{{0, 0}, 1}, {{0, 1}, 1}});
    Laurent ox = from_terms(2, {{{0, 0}, 1}, {{1, 0}, 1}});
    Laurent oxy = from_terms(2, {{{0, 0}, 1}, {{1, 0}, 1}, {{0, 1}, 1}});
    Laurent xyxy = from_terms(2, {{{1, 0}, 1}, {{0, 1}, 1}, {{1, 1}, 1}});
    Laurent h1 = mul(mul(xy, oy), mul(ox, oxy));
    Laurent h2 = mul(xyxy, mul(oxy, oxy));

    auto contains = [&](const Laurent& h) {
        Laurent want = monomial_normalise(h);
        return std::any_of(hs.begin(), hs.end(), [&](const Laurent& c) {
            return monomial_normalise(c) == want;
        });
    };
    CHECK(contains(h1));
    CHECK(contains(h2));
    // Full-hexagon candidates are exactly the two complete decompositions.
    std::vector<Vec> hex_at_origin;
    for (const Vec& v : hex.vertices) hex_at_origin.push_back(Vec{v[0] - 0, v[1] - 1});
    int full = 0;
    for (const Laurent& c : hs)
        if (newton_polytope(monomial_normalise(c)).vertices == hull(hex_at_origin).vertices) ++full;
    CHECK(full == 2);
}

TEST_CASE("admitted mutations of the a=2 polynomial") {
    std::vector<MutationData> ms = admitted_mutations(f_param(2));
    bool found = false;
    for (const MutationData& m : ms) {
        if (m.weight != Vec{0, 1}) continue;
        if (m.factor.terms.size() == 2) found = true;
        CHECK(is_mutable(f_param(2), m));
    }
    CHECK(found);
}

TEST_CASE("generic coefficients block the vertical mutation") {
    Laurent f = from_terms(2, {{{0, 1}, 1}, {{-1, -1}, 1}, {{0, -1}, 7}, {{1, -1}, 1}});
    for (const MutationData& m : admitted_mutations(f)) {
        CHECK(m.weight != Vec{0, 1});
        // Anything that is admitted must genuinely preserve the period.
        CHECK(classical_period(mutate(f, m), 8).coefficients ==
              classical_period(f, 8).coefficients);
    }
}

TEST_CASE("period invariance across admitted mutations") {
    Laurent f = f_param(2);
    for (const MutationData& m : admitted_mutations(f)) {
        Laurent g = mutate(f, m);
        CHECK(classical_period(g, 8).coefficients == classical_period(f, 8).coefficients);
    }
}
