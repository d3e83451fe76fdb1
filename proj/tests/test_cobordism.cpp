#include <svlab/cobordism.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace svlab;

namespace {

struct Fixture {
    Registry registry;
    CobordismCategory category;
    Fixture() : category(registry) { install_surface_generators(category); }
};

std::vector<std::pair<std::string, std::string>> composable_pairs() {
    std::vector<std::pair<std::string, std::string>> pairs;
    for (int a = 0; a <= 3; ++a)
        for (int b = 0; b <= 3; ++b)
            for (int c = 0; c <= 3; ++c)
                pairs.emplace_back("G" + std::to_string(a) + std::to_string(b),
                                   "G" + std::to_string(b) + std::to_string(c));
    return pairs;
}

}  // namespace

TEST_CASE("the surface generators cover all arities up to three") {
    Fixture f;
    CHECK(f.category.labels().size() == 16);
    CHECK(f.category.has("G00"));
    CHECK(f.category.has("G33"));
    CHECK(f.registry.has("S1"));
    CHECK(f.registry.query("G23").chi == -3);
    const Cobordism& pants = f.category.at("G12");
    CHECK(pants.incoming.components == std::vector<std::string>{"S1"});
    CHECK(pants.outgoing.components ==
          std::vector<std::string>{"S1", "S1"});
}

TEST_CASE("membership needs amenable objects and injective boundaries") {
    Fixture f;
    int members = 0;
    for (const std::string& label : f.category.labels())
        if (f.category.is_member(label)) ++members;
    CHECK(members == 14);
    CHECK(f.category.is_member("G00"));
    CHECK(f.category.is_member("G22"));
    CHECK_FALSE(f.category.is_member("G10"));
    CHECK_FALSE(f.category.is_member("G01"));
    CHECK(f.category.membership_failure(f.category.at("G10")).find("pi1") !=
          std::string::npos);
}

TEST_CASE("composition glues along the shared object") {
    Fixture f;
    const Cobordism& torus = f.category.compose("G02", "G20");
    CHECK(torus.label == "(G02;G20)");
    CHECK(torus.incoming.components.empty());
    CHECK(torus.outgoing.components.empty());
    CHECK(f.registry.query(torus.label).chi == 0);
    f.registry.propagate();
    CHECK(to_string(f.category.sv_functor(torus.label)) == "[0, 0]");

    const Cobordism& genus2 = f.category.compose("G03", "G30");
    f.registry.propagate();
    CHECK(f.category.chi_functor(genus2.label) == -2);
    CHECK(to_string(f.category.sv_functor(genus2.label)) == "[4, 4]");
}

TEST_CASE("composing a morphism with itself uses two distinct copies") {
    Fixture f;
    const Cobordism& twice = f.category.compose("G22", "G22");
    CHECK(f.category.chi_functor(twice.label) == -4);
    CHECK(f.registry.has("G22'"));
}

TEST_CASE("mismatched objects cannot be composed") {
    Fixture f;
    CHECK_THROWS_AS(f.category.compose("G01", "G20"), CobordismError);
}

TEST_CASE("amenable-mode composition refuses non-members") {
    Fixture f;
    CHECK_THROWS_AS(f.category.compose("G01", "G10", true), CobordismError);
    const Cobordism& sphere = f.category.compose("G01", "G10", false);
    CHECK(f.category.chi_functor(sphere.label) == 2);
}

TEST_CASE("the Euler characteristic is functorial under composition") {
    Fixture f;
    for (const auto& [left, right] : composable_pairs()) {
        long long separate = f.category.chi_functor(left) +
                             f.category.chi_functor(right);
        const Cobordism& composite = f.category.compose(left, right);
        CHECK(f.category.chi_functor(composite.label) == separate);
    }
}

TEST_CASE("simplicial volume is additive on the amenable subcategory") {
    Fixture f;
    int checked = 0;
    for (const auto& [left, right] : composable_pairs()) {
        if (!f.category.is_member(left) || !f.category.is_member(right))
            continue;
        const Cobordism& composite = f.category.compose(left, right);
        f.registry.propagate();
        Interval sum =
            add(f.category.sv_functor(left), f.category.sv_functor(right));
        Interval whole = f.category.sv_functor(composite.label);
        CHECK(to_string(whole) == to_string(sum));
        ++checked;
    }
    CHECK(checked == 50);
}

TEST_CASE("the volume functor refuses morphisms outside the subcategory") {
    Fixture f;
    CHECK_THROWS_AS(f.category.sv_functor("G10"), CobordismError);
    try {
        f.category.sv_functor("G01");
    } catch (const CobordismError& e) {
        CHECK(std::string(e.what()).find("pi1") != std::string::npos);
    }
}

TEST_CASE("composition order does not change the invariants") {
    Fixture f;
    std::mt19937 rng(404);
    std::uniform_int_distribution<int> pick(0, 3);
    for (int trial = 0; trial < 12; ++trial) {
        int a = pick(rng), b = pick(rng), c = pick(rng), d = pick(rng);
        auto name = [](int i, int j) {
            return "G" + std::to_string(i) + std::to_string(j);
        };
        const Cobordism& lr =
            f.category.compose(f.category.compose(name(a, b), name(b, c)).label,
                               name(c, d));
        const Cobordism& rl = f.category.compose(
            name(a, b), f.category.compose(name(b, c), name(c, d)).label);
        CHECK(f.category.chi_functor(lr.label) ==
              f.category.chi_functor(rl.label));
        // Membership is a certificate, not an invariant: with a disk in the
        // word one association order may fail to certify the other's glueing.
        const bool all_members = f.category.is_member(name(a, b)) &&
                                 f.category.is_member(name(b, c)) &&
                                 f.category.is_member(name(c, d));
        if (all_members) {
            REQUIRE(f.category.is_member(lr.label));
            REQUIRE(f.category.is_member(rl.label));
            f.registry.propagate();
            CHECK(to_string(f.category.sv_functor(lr.label)) ==
                  to_string(f.category.sv_functor(rl.label)));
        }
    }
}

TEST_CASE("cobordisms must exhaust the boundary of their body") {
    Fixture f;
    Cobordism wrong;
    wrong.label = "G12";
    wrong.incoming = {1, {"S1"}};
    wrong.outgoing = {1, {"S1"}};  // one outgoing circle is missing
    wrong.incoming_injective = {Flag::yes};
    wrong.outgoing_injective = {Flag::yes};
    CHECK_THROWS_AS(f.category.add(wrong), CobordismError);

    Cobordism ghost;
    ghost.label = "Ghost";
    CHECK_THROWS_AS(f.category.add(ghost), CobordismError);
}

TEST_CASE("Reinhart coordinates classify low-dimensional bordism") {
    Fixture f;
    SECTION("circles count mod two") {
        ReinhartClass cls = reinhart_class(f.registry, "S1", 1);
        CHECK(cls.coordinates == std::vector<long long>{1});
    }
    SECTION("surfaces record half the Euler characteristic") {
        CHECK(reinhart_class(f.registry, "G00", 2).coordinates ==
              std::vector<long long>{1});
        for (int genus = 1; genus <= 5; ++genus) {
            ManifoldDescription sigma;
            sigma.name = "Sigma" + std::to_string(genus);
            sigma.dim = 2;
            sigma.closed = Flag::yes;
            sigma.oriented = Flag::yes;
            sigma.connected = Flag::yes;
            sigma.aspherical = Flag::yes;
            sigma.declared_chi = 2 - 2 * genus;
            f.registry.add_manifold(sigma);
            CHECK(reinhart_class(f.registry, sigma.name, 2).coordinates ==
                  std::vector<long long>{1 - genus});
        }
    }
    SECTION("points carry their signed count") {
        ManifoldDescription points;
        points.name = "pts";
        points.dim = 0;
        points.closed = Flag::yes;
        points.oriented = Flag::yes;
        points.signed_points = 3;
        f.registry.add_manifold(points);
        CHECK(reinhart_class(f.registry, "pts", 0).coordinates ==
              std::vector<long long>{3});
    }
    SECTION("dimension three is a trivial bordism group") {
        ManifoldDescription m;
        m.name = "M3";
        m.dim = 3;
        m.closed = Flag::yes;
        m.oriented = Flag::yes;
        f.registry.add_manifold(m);
        CHECK(reinhart_class(f.registry, "M3", 3).coordinates.empty());
    }
    SECTION("dimension four pairs chi with the signature") {
        ManifoldDescription m;
        m.name = "M4";
        m.dim = 4;
        m.closed = Flag::yes;
        m.oriented = Flag::yes;
        m.declared_chi = 4;
        m.signature = 0;
        f.registry.add_manifold(m);
        CHECK(reinhart_class(f.registry, "M4", 4).coordinates ==
              std::vector<long long>{4, 0});
    }
    SECTION("open manifolds have no Reinhart class") {
        ManifoldDescription open_m;
        open_m.name = "Open";
        open_m.dim = 2;
        open_m.closed = Flag::no;
        f.registry.add_manifold(open_m);
        CHECK_THROWS_AS(reinhart_class(f.registry, "Open", 2),
                        CobordismError);
        CHECK_THROWS_AS(reinhart_class(f.registry, "S1", 2), CobordismError);
    }
}

TEST_CASE("positive volume obstructs extension to open cobordism") {
    Fixture f;
    ManifoldDescription sigma;
    sigma.name = "Sigma2";
    sigma.dim = 2;
    sigma.closed = Flag::yes;
    sigma.oriented = Flag::yes;
    sigma.connected = Flag::yes;
    sigma.aspherical = Flag::yes;
    sigma.declared_chi = -2;
    f.registry.add_manifold(sigma);
    f.registry.propagate();

    ObstructionReport report = extension_obstruction(f.registry, "Sigma2");
    CHECK(report.target == "Sigma2");
    CHECK(report.steps.size() >= 5);
    CHECK(to_string(report.sv) == "[4, 4]");
    bool doubled_value = false;
    for (const std::string& step : report.steps)
        doubled_value = doubled_value || step.find("[8, 8]") != std::string::npos;
    CHECK(doubled_value);
    CHECK(report.steps.back().find("contradiction") != std::string::npos);

    // Vanishing volume gives no obstruction; the construction is the point.
    const Cobordism& torus = f.category.compose("G01", "G10");
    f.registry.propagate();
    CHECK_THROWS_AS(extension_obstruction(f.registry, torus.label),
                    CobordismError);
}

TEST_CASE("the connected-sum monoid refuses surfaces") {
    Fixture f;
    CHECK_THROWS_AS(connsum_monoid_eval(f.registry, {}, 2), CobordismError);
    CHECK(to_string(connsum_monoid_eval(f.registry, {}, 3)) == "[0, 0]");

    for (const char* name : {"A", "B"}) {
        ManifoldDescription m;
        m.name = name;
        m.dim = 3;
        m.closed = Flag::yes;
        m.oriented = Flag::yes;
        m.connected = Flag::yes;
        m.declared_sv = Rational(5);
        f.registry.add_manifold(m);
    }
    f.registry.propagate();
    CHECK(to_string(connsum_monoid_eval(f.registry, {"A", "B", "A"}, 3)) ==
          "[15, 15]");
    CHECK_THROWS_AS(connsum_monoid_eval(f.registry, {"S1"}, 3),
                    CobordismError);
}
