#include <svlab/datasets.hpp>
#include <svlab/homology.hpp>
#include <svlab/manifold.hpp>
#include <svlab/subdivision.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracle.hpp"

using namespace svlab;

TEST_CASE("closed orientable surfaces pass the manifold check") {
    ManifoldComplex t = manifold_check(torus7());
    CHECK(t.is_closed());
    CHECK(t.is_connected());
    CHECK(t.orientation().size() == 14);
    Chain fund = fundamental_cycle(t);
    CHECK(l1_norm(fund) == Rational(14));
    CHECK(boundary(t.complex(), fund).is_zero());

    ManifoldComplex s = manifold_check(sphere(2));
    CHECK(s.is_closed());
    // The shipped sphere tuples are already coherent.
    for (int sign : s.orientation()) CHECK(sign == 1);
    CHECK(boundary(s.complex(), fundamental_cycle(s)).is_zero());

    ManifoldComplex s3 = manifold_check(sphere(3));
    CHECK(boundary(s3.complex(), fundamental_cycle(s3)).is_zero());
}

TEST_CASE("non-orientable surfaces are refused with a named facet") {
    CHECK_THROWS_AS(manifold_check(rp2_6()), NotOrientable);
    CHECK_THROWS_AS(manifold_check(mobius()), NotOrientable);
    CHECK_THROWS_WITH(manifold_check(rp2_6()),
                      Catch::Matchers::ContainsSubstring("orientation"));
}

TEST_CASE("ridge shared by three facets is rejected") {
    Complex bad("fan", 2, 5, {{0, 1, 2}, {0, 1, 3}, {0, 1, 4}});
    CHECK_THROWS_AS(manifold_check(bad), NotManifold);
    CHECK_THROWS_WITH(manifold_check(bad),
                      Catch::Matchers::ContainsSubstring("ridge"));
}

TEST_CASE("boundary decomposition of bounded surfaces") {
    ManifoldComplex a = manifold_check(annulus());
    CHECK_FALSE(a.is_closed());
    REQUIRE(a.boundary_components().size() == 2);
    auto support0 = a.boundary_components()[0].complex.support();
    auto support1 = a.boundary_components()[1].complex.support();
    CHECK(((support0 == std::vector<int>{0, 1, 2} &&
            support1 == std::vector<int>{3, 4, 5}) ||
           (support0 == std::vector<int>{3, 4, 5} &&
            support1 == std::vector<int>{0, 1, 2})));

    // The induced cycles add up to the boundary of the fundamental cycle.
    Chain fund = fundamental_cycle(a);
    Chain bd = boundary(a.complex(), fund);
    Chain induced(1);
    for (const auto& component : a.boundary_components())
        induced += component.induced_cycle;
    CHECK(bd == induced);
    for (const auto& component : a.boundary_components()) {
        CHECK(component.complex.dim() == 1);
        CHECK(l1_norm(component.induced_cycle) == Rational(3));
        // Each induced cycle is itself a cycle.
        CHECK(boundary(a.complex(), component.induced_cycle).is_zero());
    }

    ManifoldComplex pt = manifold_check(punctured_torus());
    REQUIRE(pt.boundary_components().size() == 1);
    CHECK(pt.boundary_components()[0].complex.support() ==
          std::vector<int>{1, 2, 6});
}

TEST_CASE("low dimensional edge cases") {
    ManifoldComplex point = manifold_check(delta(0));
    CHECK(point.is_closed());
    CHECK(l1_norm(fundamental_cycle(point)) == Rational(1));

    ManifoldComplex seg = manifold_check(interval());
    REQUIRE(seg.boundary_components().size() == 2);
    Chain bd = boundary(seg.complex(), fundamental_cycle(seg));
    CHECK(l1_norm(bd) == Rational(2));

    ManifoldComplex s0 = manifold_check(sphere(0));
    CHECK(s0.is_closed());
    CHECK_FALSE(s0.is_connected());

    ManifoldComplex circle = manifold_check(circle3());
    CHECK(circle.is_closed());
    CHECK(circle.is_connected());
    CHECK(boundary(circle.complex(), fundamental_cycle(circle)).is_zero());
}

TEST_CASE("disconnected input is oriented componentwise") {
    Complex s2 = sphere(2);
    std::vector<VertexTuple> facets = s2.facets();
    for (auto facet : s2.facets()) {
        for (auto& v : facet) v += 4;
        facets.push_back(facet);
    }
    Complex two("S2+S2", 2, 8, facets);
    ManifoldComplex m = manifold_check(two);
    CHECK(m.is_closed());
    CHECK_FALSE(m.is_connected());
    CHECK(boundary(m.complex(), fundamental_cycle(m)).is_zero());
    CHECK(l1_norm(fundamental_cycle(m)) == Rational(8));
}

TEST_CASE("barycentric subdivision multiplies facets by (dim+1)!") {
    auto [sd, map] = barycentric_subdivide(torus7());
    CHECK(sd.facet_count() == 14 * 6);
    CHECK(sd.euler_characteristic() == 0);
    ManifoldComplex m = manifold_check(sd);
    CHECK(m.is_closed());

    auto [sda, mapa] = barycentric_subdivide(annulus());
    CHECK(sda.facet_count() == 36);
    CHECK(sda.euler_characteristic() == 0);
    CHECK(manifold_check(sda).boundary_components().size() == 2);

    auto [sdd, mapd] = barycentric_subdivide(delta(3));
    CHECK(sdd.facet_count() == 24);
    CHECK(sdd.euler_characteristic() == 1);
}

TEST_CASE("subdivision chain map commutes with the boundary") {
    std::mt19937 rng(99173);
    Complex t = torus7();
    auto [sd, map] = barycentric_subdivide(t);
    for (int trial = 0; trial < 20; ++trial) {
        Chain c = oracle::random_chain(t, 2, rng);
        CHECK(boundary(sd, map(c)) == map(boundary(t, c)));
    }
    Complex d3 = delta(3);
    auto [sd3, map3] = barycentric_subdivide(d3);
    for (int trial = 0; trial < 10; ++trial) {
        Chain c = oracle::random_chain(d3, 3, rng);
        CHECK(boundary(sd3, map3(c)) == map3(boundary(d3, c)));
    }
}

TEST_CASE("subdivided fundamental cycle is the subdivision's fundamental cycle") {
    ManifoldComplex t = manifold_check(torus7());
    auto [sd, map] = barycentric_subdivide(torus7());
    Chain image = map(fundamental_cycle(t));
    CHECK(l1_norm(image) == Rational(84));
    CHECK(boundary(sd, image).is_zero());
    ManifoldComplex sdm = manifold_check(sd);
    Chain fund = fundamental_cycle(sdm);
    CHECK((image == fund || image == -fund));
}

TEST_CASE("star subdivision keeps chi and the boundary subcomplex") {
    Complex d2 = delta(2);
    Complex starred = star_subdivide_facets(d2, {0});
    CHECK(starred.facet_count() == 3);
    CHECK(starred.euler_characteristic() == 1);
    ManifoldComplex m = manifold_check(starred);
    REQUIRE(m.boundary_components().size() == 1);
    CHECK(m.boundary_components()[0].complex.support() ==
          std::vector<int>{0, 1, 2});

    Complex t7 = torus7();
    Complex st = star_subdivide_facets(t7, {0, 5});
    CHECK(st.facet_count() == 14 - 2 + 6);
    CHECK(st.euler_characteristic() == 0);
    CHECK(manifold_check(st).is_closed());
    CHECK_THROWS_AS(star_subdivide_facets(t7, {99}), InvalidComplex);
}
