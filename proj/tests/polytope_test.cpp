#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "fanoforge/polytope.hpp"

using namespace ff;

namespace {

LatticePolytope square(long k) {
    return hull({{-k, -k}, {k, -k}, {-k, k}, {k, k}});
}

}  // namespace

TEST_CASE("hull drops interior and duplicate points") {
    LatticePolytope p = hull({{0, 0}, {2, 0}, {0, 2}, {1, 1}, {2, 0}, {1, 0}});
    CHECK(p.affine_dim == 2);
    CHECK(p.vertices == std::vector<Vec>{{0, 0}, {0, 2}, {2, 0}});
    CHECK(p.facets.size() == 3);
}

TEST_CASE("hull of collinear points is a segment") {
    LatticePolytope p = hull({{0, 0, 0}, {1, 2, 3}, {2, 4, 6}, {3, 6, 9}});
    CHECK(p.affine_dim == 1);
    CHECK(p.vertices.size() == 2);
    CHECK(lattice_points(p).size() == 4);
    CHECK(p.contains(Vec{2, 4, 6}));
    CHECK(!p.contains(Vec{2, 4, 5}));
    CHECK(!p.contains(Vec{4, 8, 12}));
}

TEST_CASE("lattice point counts on squares") {
    CHECK(lattice_points(square(1)).size() == 9);
    CHECK(lattice_points(square(2)).size() == 25);
    CHECK(interior_points(square(1)).size() == 1);
    CHECK(interior_points(square(2)).size() == 9);
    CHECK(is_canonical(square(1)));
    CHECK(!is_canonical(square(2)));
}

TEST_CASE("lattice points of a 3-d simplex") {
    // Standard simplex scaled by 3: C(3+3,3) = 20 points, none interior.
    LatticePolytope p = hull({{0, 0, 0}, {3, 0, 0}, {0, 3, 0}, {0, 0, 3}});
    CHECK(lattice_points(p).size() == 20);
    CHECK(interior_points(p).empty());
    LatticePolytope p4 = hull({{0, 0, 0}, {4, 0, 0}, {0, 4, 0}, {0, 0, 4}});
    CHECK(interior_points(p4) == std::vector<Vec>{{1, 1, 1}});
}

TEST_CASE("dual of the standard square") {
    // Dual of [-1,1]^2 is the diamond with vertices (+-1,0),(0,+-1).
    RationalPolytope d = dual(square(1));
    CHECK(d.vertices.size() == 4);
    for (const auto& v : d.vertices) CHECK(abs(v[0]) + abs(v[1]) == 1);
}

TEST_CASE("dual requires interior origin") {
    LatticePolytope p = hull({{0, 0}, {2, 0}, {0, 2}});
    CHECK_THROWS_AS(dual(p), DomainError);
}

TEST_CASE("ehrhart prefix of a lattice square") {
    RationalPolytope q;
    q.ambient_dim = 2;
    for (long x : {-1, 1})
        for (long y : {-1, 1}) q.vertices.push_back({Rat(x), Rat(y)});
    EhrhartPrefix e = ehrhart_prefix(q, 3);
    CHECK(e.coefficients == std::vector<Int>{1, 9, 25, 49});
}

TEST_CASE("ehrhart prefix of a rational polytope") {
    // Half-square [-1/2,1/2]^2: k-th dilate has (2*floor(k/2)+1)^2 points.
    RationalPolytope q;
    q.ambient_dim = 2;
    for (int x : {-1, 1})
        for (int y : {-1, 1}) q.vertices.push_back({Rat(x, 2), Rat(y, 2)});
    EhrhartPrefix e = ehrhart_prefix(q, 4);
    CHECK(e.coefficients == std::vector<Int>{1, 1, 9, 9, 25});
}

TEST_CASE("slice extracts a level set in slice coordinates") {
    LatticePolytope p = hull({{0, 0, 0}, {2, 0, 0}, {0, 2, 0}, {0, 0, 2}});
    Vec w{0, 0, 1};
    LatticePolytope s = slice(p, w, 1);
    CHECK(s.ambient_dim == 2);
    CHECK(lattice_points(s).size() == 3);
    LatticePolytope top = slice(p, w, 2);
    CHECK(top.affine_dim == 0);
    LatticePolytope none = slice(p, w, 5);
    CHECK(none.empty());
}

TEST_CASE("square has the two expected Minkowski decompositions") {
    // Unit square = segment + segment, plus the trivial one.
    LatticePolytope p = hull({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    auto decs = minkowski_summand_decompositions(p);
    CHECK(decs.size() == 2);
    bool saw_trivial = false, saw_segments = false;
    for (const auto& parts : decs) {
        if (parts.size() == 1 && parts[0].vertices.size() == 4) saw_trivial = true;
        if (parts.size() == 2 && parts[0].affine_dim == 1 && parts[1].affine_dim == 1)
            saw_segments = true;
    }
    CHECK(saw_trivial);
    CHECK(saw_segments);
}

TEST_CASE("triangle is indecomposable") {
    LatticePolytope p = hull({{0, 0}, {1, 0}, {0, 1}});
    auto decs = minkowski_summand_decompositions(p);
    CHECK(decs.size() == 1);
    CHECK(decs[0].size() == 1);
}

TEST_CASE("minkowski summand recognition") {
    LatticePolytope p = hull({{0, 0}, {2, 0}, {0, 1}, {2, 1}});
    LatticePolytope seg = hull({{0, 0}, {1, 0}});
    LatticePolytope seg2 = hull({{0, 0}, {2, 0}});
    LatticePolytope tri = hull({{0, 0}, {1, 0}, {0, 1}});
    CHECK(is_minkowski_summand(seg, p));
    CHECK(is_minkowski_summand(seg2, p));
    CHECK(!is_minkowski_summand(tri, p));
}

TEST_CASE("automorphism group of the square has order 8") {
    CHECK(automorphisms(square(1)).size() == 8);
}

TEST_CASE("equivalence detects unimodular images") {
    LatticePolytope p = square(1);
    // Shear by [[1,1],[0,1]].
    std::vector<Vec> imgs;
    for (const Vec& v : p.vertices) imgs.push_back({v[0] + v[1], v[1]});
    LatticePolytope q = hull(imgs);
    CHECK(equivalent(p, q));
    std::optional<IntMatrix> u = equivalence_map(p, q);
    REQUIRE(u.has_value());
    std::set<Vec> want(q.vertices.begin(), q.vertices.end());
    for (const Vec& v : p.vertices) CHECK(want.count(ff::apply(*u, v)));
    LatticePolytope tri = hull({{1, 0}, {-1, 0}, {0, 1}});
    CHECK(!equivalent(p, tri));
}

TEST_CASE("lattice diameter") {
    CHECK(lattice_diameter(square(1)) == 2);
    CHECK(lattice_diameter(hull({{0, 0}, {1, 0}, {0, 1}})) == 1);
    CHECK(lattice_diameter(hull({{0, 0}})) == 0);
}

TEST_CASE("proper faces of a cube") {
    std::vector<Vec> vs;
    for (long x : {0, 1})
        for (long y : {0, 1})
            for (long z : {0, 1}) vs.push_back({x, y, z});
    LatticePolytope cube = hull(vs);
    auto faces = proper_faces_dim_ge1(cube);
    int d1 = 0, d2 = 0;
    for (const auto& f : faces) {
        if (f.affine_dim == 1) ++d1;
        if (f.affine_dim == 2) ++d2;
    }
    CHECK(d1 == 12);
    CHECK(d2 == 6);
}

TEST_CASE("minimal face picks the support face") {
    LatticePolytope p = square(1);
    LatticePolytope f = minimal_face(p, Vec{1, 0});
    CHECK(f.affine_dim == 1);
    CHECK(f.vertices == std::vector<Vec>{{-1, -1}, {-1, 1}});
    LatticePolytope v = minimal_face(p, Vec{1, 1});
    CHECK(v.affine_dim == 0);
}

TEST_CASE("dilate scales vertex sets") {
    LatticePolytope p = dilate(square(1), 3);
    CHECK(p.vertices == square(3).vertices);
    CHECK(dilate(square(1), 0).affine_dim == 0);
}
