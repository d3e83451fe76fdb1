#include <svlab/certificates.hpp>
#include <svlab/datasets.hpp>
#include <svlab/inference.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

using namespace svlab;

namespace {

ManifoldDescription closed_surface(const std::string& name, int genus) {
    ManifoldDescription d;
    d.name = name;
    d.dim = 2;
    d.closed = Flag::yes;
    d.oriented = Flag::yes;
    d.connected = Flag::yes;
    d.aspherical = genus >= 1 ? Flag::yes : Flag::no;
    d.declared_chi = 2 - 2 * genus;
    return d;
}

ManifoldDescription torus_description() {
    ManifoldDescription d = closed_surface("T2", 1);
    d.pi1_amenable = Flag::yes;
    d.pi1_residually_finite = Flag::yes;
    return d;
}

std::string interval_text(const Registry& registry, const std::string& name,
                          Inv inv) {
    return to_string(registry.query(name, inv));
}

}  // namespace

TEST_CASE("amenable fundamental groups kill the simplicial volume") {
    Registry registry;
    registry.add_manifold(torus_description());
    registry.propagate();
    CHECK(interval_text(registry, "T2", Inv::sv) == "[0, 0]");
    CHECK(interval_text(registry, "T2", Inv::sv_stable) == "[0, 0]");

    const TrackedInterval& tracked = registry.query("T2").slot(Inv::sv);
    REQUIRE_FALSE(tracked.hi_chain.empty());
    CHECK(tracked.hi_chain.back().rule == "R-amenable");
}

TEST_CASE("oriented closed surfaces get exact simplicial volume") {
    Registry registry;
    registry.add_manifold(closed_surface("S2", 0));
    registry.add_manifold(closed_surface("Sigma2", 2));
    registry.add_manifold(closed_surface("Sigma5", 5));
    registry.propagate();
    CHECK(interval_text(registry, "S2", Inv::sv) == "[0, 0]");
    CHECK(interval_text(registry, "Sigma2", Inv::sv) == "[4, 4]");
    CHECK(interval_text(registry, "Sigma5", Inv::sv) == "[16, 16]");
    CHECK(interval_text(registry, "Sigma2", Inv::sv_stable) == "[4, 4]");
}

TEST_CASE("bounded aspherical surfaces get exact relative volume") {
    Registry registry;
    ManifoldDescription circle;
    circle.name = "S1";
    circle.dim = 1;
    circle.closed = Flag::yes;
    circle.pi1_amenable = Flag::yes;
    registry.add_manifold(circle);

    ManifoldDescription pants;
    pants.name = "P";
    pants.dim = 2;
    pants.closed = Flag::no;
    pants.oriented = Flag::yes;
    pants.connected = Flag::yes;
    pants.aspherical = Flag::yes;
    pants.boundary = {{"S1"}, {"S1"}, {"S1"}};
    pants.declared_chi = -1;
    registry.add_manifold(pants);
    registry.propagate();
    CHECK(interval_text(registry, "P", Inv::sv_rel) == "[2, 2]");
    CHECK(interval_text(registry, "P", Inv::sv_rel_stable) == "[2, 2]");
}

TEST_CASE("the stable equality needs non-positive Euler characteristic") {
    Registry registry;
    ManifoldDescription circle;
    circle.name = "S1";
    circle.dim = 1;
    circle.closed = Flag::yes;
    circle.pi1_amenable = Flag::yes;
    registry.add_manifold(circle);

    // The disk is aspherical with chi = 1; it has no nontrivial connected
    // covers, so its stable integral volume stays away from zero even
    // though its relative simplicial volume vanishes.
    ManifoldDescription disk;
    disk.name = "D2";
    disk.dim = 2;
    disk.closed = Flag::no;
    disk.oriented = Flag::yes;
    disk.connected = Flag::yes;
    disk.aspherical = Flag::yes;
    disk.pi1_amenable = Flag::yes;
    disk.boundary = {{"S1"}};
    disk.declared_chi = 1;
    registry.add_manifold(disk);
    registry.propagate();
    CHECK(interval_text(registry, "D2", Inv::sv_rel) == "[0, 0]");
    CHECK(registry.query("D2", Inv::sv_rel_stable).lo ==
          Rational(1) / Rational(3));
    CHECK_FALSE(registry.query("D2", Inv::sv_rel_stable).hi.has_value());
}

TEST_CASE("hyperbolic manifolds have strictly positive volume") {
    Registry registry;
    ManifoldDescription m;
    m.name = "H";
    m.dim = 3;
    m.closed = Flag::yes;
    m.oriented = Flag::yes;
    m.connected = Flag::yes;
    m.hyperbolic = Flag::yes;
    registry.add_manifold(m);
    registry.propagate();
    Interval sv = registry.query("H", Inv::sv);
    CHECK(sv.lo == Rational(0));
    CHECK(sv.lo_strict);
}

TEST_CASE("connected sums add simplicial volume in high dimensions") {
    Registry registry;
    for (const char* name : {"A", "B"}) {
        ManifoldDescription m;
        m.name = name;
        m.dim = 4;
        m.closed = Flag::yes;
        m.oriented = Flag::yes;
        m.connected = Flag::yes;
        m.declared_sv = Rational(6);
        m.declared_chi = 3;
        registry.add_manifold(m);
    }
    ManifoldDescription sum;
    sum.name = "A#B";
    sum.dim = 4;
    sum.closed = Flag::yes;
    sum.oriented = Flag::yes;
    sum.connected = Flag::yes;
    sum.connsum_factors = {"A", "B"};
    registry.add_manifold(sum);
    registry.propagate();
    CHECK(interval_text(registry, "A#B", Inv::sv) == "[12, 12]");
    // chi(A # B) = chi(A) + chi(B) - chi(S^4) for one separating sphere.
    CHECK(registry.query("A#B").chi == 4);
}

TEST_CASE("covering degree scales volume and Euler characteristic") {
    Registry registry;
    registry.add_manifold(closed_surface("Sigma2", 2));
    ManifoldDescription cover;
    cover.name = "N";
    cover.dim = 2;
    cover.closed = Flag::yes;
    cover.oriented = Flag::yes;
    cover.connected = Flag::yes;
    cover.aspherical = Flag::yes;
    cover.cover_of = CoverRelation{"Sigma2", 3};
    registry.add_manifold(cover);
    registry.propagate();
    CHECK(registry.query("N").chi == -6);
    CHECK(interval_text(registry, "N", Inv::sv) == "[12, 12]");
}

TEST_CASE("an impossible covering degree is reported as inconsistent") {
    Registry registry;
    ManifoldDescription base;
    base.name = "B";
    base.dim = 4;
    base.closed = Flag::yes;
    registry.add_manifold(base);
    ManifoldDescription cover;
    cover.name = "N";
    cover.dim = 4;
    cover.closed = Flag::yes;
    cover.declared_chi = 3;
    cover.cover_of = CoverRelation{"B", 2};
    registry.add_manifold(cover);
    CHECK_THROWS_AS(registry.propagate(), InconsistencyError);
}

TEST_CASE("fibrations with amenable small fibers kill volume and chi") {
    Registry registry;
    ManifoldDescription circle;
    circle.name = "S1";
    circle.dim = 1;
    circle.closed = Flag::yes;
    circle.pi1_amenable = Flag::yes;
    circle.amcat_upper = 1;
    circle.aspherical = Flag::yes;
    registry.add_manifold(circle);
    ManifoldDescription base = closed_surface("Sigma2", 2);
    registry.add_manifold(base);
    ManifoldDescription total;
    total.name = "E";
    total.dim = 3;
    total.closed = Flag::yes;
    total.oriented = Flag::yes;
    total.aspherical = Flag::yes;
    total.fibre_bundle = FibreBundle{"S1", "Sigma2"};
    registry.add_manifold(total);
    registry.propagate();
    CHECK(interval_text(registry, "E", Inv::sv) == "[0, 0]");
    CHECK(registry.query("E").chi == 0);
}

TEST_CASE("Euler characteristics multiply over products") {
    Registry registry;
    registry.add_manifold(closed_surface("Sigma2", 2));
    registry.add_manifold(closed_surface("Sigma3", 3));
    ManifoldDescription prod;
    prod.name = "P";
    prod.dim = 4;
    prod.closed = Flag::yes;
    prod.oriented = Flag::yes;
    prod.connected = Flag::yes;
    prod.product_factors = {"Sigma2", "Sigma3"};
    registry.add_manifold(prod);
    registry.propagate();
    CHECK(registry.query("P").chi == 8);
    // Product inequalities: sv(A)sv(B) <= sv(P) <= C(4,2) sv(A)sv(B).
    Interval sv = registry.query("P", Inv::sv);
    CHECK(sv.lo == Rational(32));
    CHECK(*sv.hi == Rational(192));
}

TEST_CASE("amenable glueings are subadditive and chi is exact") {
    Registry registry;
    ManifoldDescription circle;
    circle.name = "S1";
    circle.dim = 1;
    circle.closed = Flag::yes;
    circle.pi1_amenable = Flag::yes;
    circle.declared_chi = 0;
    registry.add_manifold(circle);
    for (const char* name : {"P1", "P2"}) {
        ManifoldDescription pants;
        pants.name = name;
        pants.dim = 2;
        pants.closed = Flag::no;
        pants.oriented = Flag::yes;
        pants.connected = Flag::yes;
        pants.aspherical = Flag::yes;
        pants.boundary = {{"S1"}, {"S1"}, {"S1"}};
        pants.declared_chi = -1;
        registry.add_manifold(pants);
    }
    ManifoldDescription glued;
    glued.name = "Z";
    glued.dim = 2;
    glued.closed = Flag::no;
    glued.oriented = Flag::yes;
    glued.connected = Flag::yes;
    glued.aspherical = Flag::yes;
    glued.boundary = {{"S1"}, {"S1"}};
    GlueRelation relation;
    relation.left = "P1";
    relation.right = "P2";
    relation.along = {"S1", "S1"};
    relation.amenable = Flag::yes;
    relation.pi1_injective = Flag::yes;
    glued.glued = relation;
    registry.add_manifold(glued);
    registry.propagate();
    CHECK(registry.query("Z").chi == -2);
    CHECK(registry.query("Z").chi_rel == -2);
    // Additivity under pi1-injective amenable glueing, and the surface
    // formula, independently pin [4, 4].
    CHECK(interval_text(registry, "Z", Inv::sv_rel) == "[4, 4]");
}

TEST_CASE("relative volume bounds the boundary from below") {
    Registry registry;
    ManifoldDescription boundary = closed_surface("Sigma2", 2);
    registry.add_manifold(boundary);
    ManifoldDescription filling;
    filling.name = "W";
    filling.dim = 3;
    filling.closed = Flag::no;
    filling.oriented = Flag::yes;
    filling.boundary = {{"Sigma2"}};
    registry.add_manifold(filling);
    registry.propagate();
    CHECK(registry.query("W", Inv::sv_rel).lo == Rational(1));
}

TEST_CASE("chi gives stable and integral lower bounds") {
    Registry registry;
    registry.add_manifold(closed_surface("Sigma3", 3));
    registry.propagate();
    // |chi| / (n+1) = 4/3 is dominated by the exact value 8, but the
    // integral slot must at least reach it on its own.
    CHECK(registry.query("Sigma3", Inv::sv_int).lo >= Rational(4) / 3);
    CHECK(registry.query("Sigma3", Inv::sv_stable).lo >= Rational(4) / 3);
}

TEST_CASE("integral bounds dominate real bounds") {
    Registry registry;
    ManifoldDescription m;
    m.name = "M";
    m.dim = 5;
    m.closed = Flag::yes;
    m.oriented = Flag::yes;
    m.declared_sv = Rational(7);
    registry.add_manifold(m);
    registry.propagate();
    CHECK(registry.query("M", Inv::sv_stable).lo == Rational(7));
    CHECK(registry.query("M", Inv::sv_int).lo == Rational(7));
}

TEST_CASE("odd-dimensional closed manifolds have zero chi") {
    Registry registry;
    ManifoldDescription m;
    m.name = "M";
    m.dim = 3;
    m.closed = Flag::yes;
    registry.add_manifold(m);
    registry.propagate();
    CHECK(registry.query("M").chi == 0);
}

TEST_CASE("chi_rel flips sign with the dimension parity") {
    Registry registry;
    registry.add_manifold(closed_surface("Sigma2", 2));
    ManifoldDescription w;
    w.name = "W";
    w.dim = 3;
    w.closed = Flag::no;
    w.boundary = {{"Sigma2"}};
    w.declared_chi = -1;
    registry.add_manifold(w);
    registry.propagate();
    CHECK(registry.query("W").chi_rel == 1);
}

TEST_CASE("the signature parity check flags impossible four-manifolds") {
    SECTION("declared chi and signature are validated up front") {
        Registry registry;
        ManifoldDescription m;
        m.name = "X";
        m.dim = 4;
        m.closed = Flag::yes;
        m.oriented = Flag::yes;
        m.signature = 1;
        m.declared_chi = 2;
        CHECK_THROWS_AS(registry.add_manifold(m), InferenceError);
    }
    SECTION("a derived chi clashes with the signature during propagation") {
        Registry registry;
        registry.add_manifold(torus_description());
        registry.add_manifold(closed_surface("Sigma2", 2));
        ManifoldDescription m;
        m.name = "X";
        m.dim = 4;
        m.closed = Flag::yes;
        m.oriented = Flag::yes;
        m.connected = Flag::yes;
        m.signature = 1;
        m.product_factors = {"Sigma2", "T2"};
        registry.add_manifold(m);
        CHECK_THROWS_AS(registry.propagate(), InconsistencyError);
    }
}

TEST_CASE("contradictory bounds raise an inconsistency naming both chains") {
    Registry registry;
    ManifoldDescription m;
    m.name = "X";
    m.dim = 3;
    m.closed = Flag::yes;
    m.oriented = Flag::yes;
    m.connected = Flag::yes;
    m.hyperbolic = Flag::yes;
    m.declared_sv = Rational(0);
    registry.add_manifold(m);
    try {
        registry.propagate();
        FAIL("expected an inconsistency");
    } catch (const InconsistencyError& e) {
        std::string what = e.what();
        CHECK(what.find("R-positive") != std::string::npos);
        CHECK(what.find("declared") != std::string::npos);
    }
}

TEST_CASE("declared triangulations merge and conflicts are caught") {
    Registry registry;
    ManifoldDescription torus = torus_description();
    torus.name = "Torus7";
    registry.add_manifold(torus);
    registry.attach_triangulation("Torus7", manifold_check(torus7()));
    registry.propagate();
    CHECK(registry.query("Torus7").betti ==
          std::vector<long long>{1, 2, 1});
    CHECK(registry.query("Torus7").chi == 0);

    ManifoldDescription wrong;
    wrong.name = "Open";
    wrong.dim = 2;
    wrong.closed = Flag::no;
    registry.add_manifold(wrong);
    CHECK_THROWS_AS(
        registry.attach_triangulation("Open", manifold_check(torus7())),
        InconsistencyError);
}

TEST_CASE("certificates imported from a ledger narrow the intervals") {
    Ledger ledger;
    ledger.add_manifold(manifold_check(torus7()));
    CertifyResult certs = certify_from_triangulation(ledger, "Torus7");
    cover_stable_bound(ledger, "Torus7", {{certs.integral, 1}});

    Registry registry;
    ManifoldDescription torus = torus_description();
    torus.name = "Torus7";
    registry.add_manifold(torus);
    registry.import_certificates(ledger);
    registry.propagate();
    CHECK(*registry.query("Torus7", Inv::sv_int).hi <= Rational(14));
    const TrackedInterval& tracked =
        registry.query("Torus7").slot(Inv::sv_int);
    REQUIRE_FALSE(tracked.hi_chain.empty());
    CHECK(tracked.hi_chain.front().rule == "certificate");
}

TEST_CASE("tampered ledgers are rejected wholesale on import") {
    Ledger ledger;
    ledger.add_manifold(manifold_check(torus7()));
    CertifyResult certs = certify_from_triangulation(ledger, "Torus7");
    Certificate bad = ledger.certificate(certs.integral);
    bad.bound = Rational(2);
    ledger.append(bad);

    Registry registry;
    ManifoldDescription torus = torus_description();
    torus.name = "Torus7";
    registry.add_manifold(torus);
    CHECK_THROWS_AS(registry.import_certificates(ledger), InferenceError);
}

TEST_CASE("Betti numbers bound the integral volume from below") {
    Registry registry;
    ManifoldDescription sigma = closed_surface("Genus2", 2);
    registry.add_manifold(sigma);
    ManifoldComplex doubled =
        double_manifold(manifold_check(punctured_torus())).doubled;
    Complex renamed("Genus2", doubled.complex().dim(),
                    doubled.complex().vertex_count(),
                    doubled.complex().facets());
    registry.attach_triangulation("Genus2", manifold_check(renamed));
    registry.propagate();
    CHECK(registry.query("Genus2").betti == std::vector<long long>{1, 4, 1});
    CHECK(registry.query("Genus2", Inv::sv_int).lo >= Rational(4));
}

TEST_CASE("the Gromov question is classified per manifold") {
    Registry registry;
    registry.add_manifold(torus_description());
    ManifoldDescription sigma = closed_surface("Sigma2", 2);
    registry.add_manifold(sigma);
    ManifoldDescription candidate;
    candidate.name = "C";
    candidate.dim = 4;
    candidate.closed = Flag::yes;
    candidate.oriented = Flag::yes;
    candidate.connected = Flag::yes;
    candidate.aspherical = Flag::yes;
    candidate.declared_sv = Rational(0);
    candidate.declared_chi = 4;
    registry.add_manifold(candidate);
    ManifoldDescription vague;
    vague.name = "V";
    vague.dim = 4;
    vague.closed = Flag::yes;
    registry.add_manifold(vague);
    registry.propagate();

    CHECK(to_string(registry.gromov_check("T2").status) == "SVCHI-holds");
    CHECK(to_string(registry.gromov_check("Sigma2").status) ==
          "SVCHI-vacuous");
    CHECK(to_string(registry.gromov_check("C").status) ==
          "counterexample-candidate");
    CHECK(to_string(registry.gromov_check("V").status) == "unknown");

    ManifoldDescription nonhyp;
    nonhyp.name = "N";
    nonhyp.dim = 4;
    nonhyp.closed = Flag::yes;
    nonhyp.oriented = Flag::yes;
    nonhyp.connected = Flag::yes;
    nonhyp.aspherical = Flag::no;
    nonhyp.declared_sv = Rational(0);
    nonhyp.declared_chi = 2;
    registry.add_manifold(nonhyp);
    registry.propagate();
    CHECK(to_string(registry.gromov_check("N").status) == "non-hypothesis");
}

TEST_CASE("chi can be filled in from bounding manifolds") {
    Registry registry;
    ManifoldDescription target;
    target.name = "B";
    target.dim = 3;
    target.closed = Flag::yes;
    target.oriented = Flag::yes;
    target.connected = Flag::yes;
    target.aspherical = Flag::yes;
    registry.add_manifold(target);
    for (int i = 0; i < 2; ++i) {
        ManifoldDescription filling;
        filling.name = "W" + std::to_string(i);
        filling.dim = 4;
        filling.closed = Flag::no;
        filling.aspherical = Flag::yes;
        filling.boundary = {{"B", Flag::yes, Flag::yes}};
        filling.declared_chi = i == 0 ? -3 : -1;
        registry.add_manifold(filling);
    }
    registry.propagate();
    CHECK(registry.fill_chi("B", {"W0", "W1"}) == 1);
    CHECK_THROWS_AS(registry.fill_chi("B", {}), InferenceError);
}

TEST_CASE("rule order does not change the fixpoint") {
    auto build = []() {
        Registry registry;
        registry.add_manifold(torus_description());
        registry.add_manifold(closed_surface("Sigma2", 2));
        registry.add_manifold(closed_surface("Sigma3", 3));
        ManifoldDescription prod;
        prod.name = "P";
        prod.dim = 4;
        prod.closed = Flag::yes;
        prod.oriented = Flag::yes;
        prod.connected = Flag::yes;
        prod.product_factors = {"Sigma2", "Sigma3"};
        registry.add_manifold(prod);
        ManifoldDescription cover;
        cover.name = "N";
        cover.dim = 2;
        cover.closed = Flag::yes;
        cover.oriented = Flag::yes;
        cover.connected = Flag::yes;
        cover.aspherical = Flag::yes;
        cover.cover_of = CoverRelation{"Sigma2", 5};
        registry.add_manifold(cover);
        return registry;
    };
    auto fingerprint = [](const Registry& registry) {
        std::string print;
        for (const std::string& name : registry.names()) {
            const InvariantState& state = registry.query(name);
            print += name + ":";
            for (Inv inv : all_invariants())
                print += to_string(state.slot(inv).interval) + ";";
            print += state.chi ? std::to_string(*state.chi) : "?";
            print += state.chi_rel ? std::to_string(*state.chi_rel) : "?";
            print += "\n";
        }
        return print;
    };

    Registry reference = build();
    reference.propagate();
    std::string expected = fingerprint(reference);

    std::vector<std::string> order;
    for (const RuleInfo& rule : Registry::rule_catalog())
        order.push_back(rule.id);
    std::mt19937 rng(20240817);
    for (int trial = 0; trial < 25; ++trial) {
        std::shuffle(order.begin(), order.end(), rng);
        Registry registry = build();
        registry.propagate(order);
        CHECK(fingerprint(registry) == expected);
    }
}

TEST_CASE("the rule catalog lists every rule exactly once") {
    std::vector<std::string> ids;
    for (const RuleInfo& rule : Registry::rule_catalog())
        ids.push_back(rule.id);
    std::vector<std::string> sorted = ids;
    std::sort(sorted.begin(), sorted.end());
    CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
    CHECK(ids.size() >= 30);
    Registry registry;
    CHECK_THROWS_AS(registry.propagate({"no-such-rule"}), InferenceError);
}

TEST_CASE("descriptions are validated on registration") {
    Registry registry;
    SECTION("boundary references must already be registered") {
        ManifoldDescription m;
        m.name = "W";
        m.dim = 3;
        m.closed = Flag::no;
        m.boundary = {{"Ghost"}};
        CHECK_THROWS_AS(registry.add_manifold(m), InferenceError);
    }
    SECTION("signatures only exist in dimension four") {
        ManifoldDescription m;
        m.name = "M";
        m.dim = 3;
        m.signature = 0;
        CHECK_THROWS_AS(registry.add_manifold(m), InferenceError);
    }
    SECTION("closed manifolds cannot carry boundary lists") {
        ManifoldDescription s = closed_surface("S", 0);
        registry.add_manifold(s);
        ManifoldDescription m;
        m.name = "M";
        m.dim = 3;
        m.closed = Flag::yes;
        m.boundary = {{"S"}};
        CHECK_THROWS_AS(registry.add_manifold(m), InferenceError);
    }
    SECTION("connectedness must match the component count") {
        ManifoldDescription m;
        m.name = "M";
        m.dim = 2;
        m.connected = Flag::yes;
        m.component_count = 2;
        CHECK_THROWS_AS(registry.add_manifold(m), InferenceError);
    }
}
