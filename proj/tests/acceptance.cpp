// Acceptance gate: one deterministic pass/fail line per criterion.
// Tolerances are zero everywhere; all comparisons are exact rationals
// or integers.

#include <svlab/certificates.hpp>
#include <svlab/cobordism.hpp>
#include <svlab/constructions.hpp>
#include <svlab/datasets.hpp>
#include <svlab/evaluate.hpp>
#include <svlab/homology.hpp>
#include <svlab/inference.hpp>
#include <svlab/subdivision.hpp>

#include <algorithm>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "oracle.hpp"

using namespace svlab;

namespace {

struct Criterion {
    bool ok = true;
    std::string first_failure;

    void expect(bool condition, const std::string& what) {
        if (condition) return;
        if (ok) first_failure = what;
        ok = false;
    }
};

ManifoldDescription torus_flags(const std::string& name) {
    ManifoldDescription d;
    d.name = name;
    d.dim = 2;
    d.closed = Flag::yes;
    d.oriented = Flag::yes;
    d.connected = Flag::yes;
    d.aspherical = Flag::yes;
    d.pi1_amenable = Flag::yes;
    d.pi1_residually_finite = Flag::yes;
    return d;
}

// 1. chi and homology of a connected sum of two tori, with an
//    independent Betti recount.
Criterion criterion_connected_sum() {
    Criterion c;
    ManifoldComplex left = manifold_check(torus7());
    ManifoldComplex right = manifold_check(torus7());
    ManifoldComplex sum = connected_sum(left, right);
    c.expect(sum.complex().euler_characteristic() == -2, "chi != -2");
    std::vector<long long> expected = {1, 4, 1};
    c.expect(homology(sum.complex()).betti == expected, "library betti");
    c.expect(oracle::betti(sum.complex()) == expected, "oracle betti");
    c.expect(sum.is_closed() && sum.is_connected(), "sum not closed");
    return c;
}

// 2. The double of the punctured torus and its ledger bound 26 = 2 * 13.
Criterion criterion_double() {
    Criterion c;
    ManifoldComplex pt = manifold_check(punctured_torus());
    ManifoldComplex doubled = double_manifold(pt).doubled;
    c.expect(doubled.is_closed(), "double not closed");
    long long chi = doubled.complex().euler_characteristic();
    long long chi_rel = pt.complex().euler_characteristic();
    for (const auto& component : pt.boundary_components())
        chi_rel -= component.complex.euler_characteristic();
    c.expect(chi == -2, "chi(double) != -2");
    c.expect(chi_rel == -1, "chi_rel != -1");
    c.expect(chi == 2 * chi_rel, "chi != 2 chi_rel");

    Ledger ledger;
    ledger.add_manifold(pt);
    CertifyResult half = certify_from_triangulation(ledger, "PuncturedTorus");
    c.expect(ledger.certificate(half.integral).bound == Rational(13),
             "relative bound != 13");
    std::size_t id = double_bound(ledger, half.integral);
    c.expect(ledger.certificate(id).bound == Rational(26), "bound != 26");
    c.expect(verify(ledger, id).pass, "double certificate fails");
    return c;
}

// 3. l1(boundary c) <= (n+1) l1(c) for relative fundamental cycles of
//    the bounded datasets and 20 random subdivisions, exactly.
Criterion criterion_boundary_estimate() {
    Criterion c;
    const std::vector<std::string> bounded = {
        "Interval", "Delta[1]", "Delta[2]",
        "Delta[3]", "Annulus",  "PuncturedTorus"};
    auto check = [&](const Complex& complex) {
        ManifoldComplex m = manifold_check(complex);
        Chain cycle = fundamental_cycle(m);
        Rational lhs = l1_norm(boundary(m.complex(), cycle));
        Rational rhs = Rational(m.dim() + 1) * l1_norm(cycle);
        c.expect(lhs <= rhs, complex.name() + ": estimate fails");
    };
    for (const auto& name : bounded) check(dataset(name));
    std::mt19937 rng(271828);
    for (int trial = 0; trial < 20; ++trial) {
        Complex complex = dataset(bounded[trial % bounded.size()]);
        std::uniform_int_distribution<int> rounds(1, 2);
        for (int r = rounds(rng); r > 0; --r) {
            std::uniform_int_distribution<std::size_t> pick(
                0, complex.facet_count() - 1);
            complex = star_subdivide_facets(complex, {pick(rng)});
        }
        check(complex);
    }
    return c;
}

// 4. The staircase product of two triangulated circles: 18 facets and a
//    shuffle image that verifies as a fundamental cycle.
Criterion criterion_product() {
    Criterion c;
    ProductResult prod = product(circle3(), circle3());
    c.expect(prod.complex.facet_count() == 18, "facets != 18");
    c.expect(Rational(binomial(2, 1) * 3 * 3) == Rational(18),
             "binomial constant");

    ManifoldComplex checked = manifold_check(prod.complex);
    Ledger ledger;
    ledger.add_manifold(checked);
    Chain circle_cycle = fundamental_cycle(manifold_check(circle3()));
    Chain shuffled = prod.shuffle_map(circle_cycle, circle_cycle);
    Certificate cert;
    cert.target = checked.complex().name();
    cert.kind = CertKind::integral;
    cert.bound = l1_norm(shuffled);
    cert.chain = shuffled;
    std::size_t id = ledger.append(cert);
    c.expect(ledger.certificate(id).bound == Rational(18), "norm != 18");
    c.expect(verify(ledger, id).pass, "shuffle is not a fundamental cycle");
    return c;
}

// 5. Stable bounds 14/d from recognized cyclic covers, compatible with
//    the engine's conclusion that the stable volume of the torus is 0.
Criterion criterion_stable_covers() {
    Criterion c;
    Ledger ledger;
    ledger.add_manifold(manifold_check(torus7()));
    CertifyResult base = certify_from_triangulation(ledger, "Torus7");
    std::size_t base_model = recognize_surface_model(ledger, "Torus7");
    (void)base;

    std::vector<std::pair<long long, Rational>> expected = {
        {1, Rational(14)},
        {2, Rational(7)},
        {3, Rational(14) / 3},
        {5, Rational(14) / 5},
        {7, Rational(2)}};
    for (const auto& [degree, bound] : expected) {
        std::size_t input = base_model;
        if (degree > 1) {
            CoverResult cover = cyclic_cover(
                ledger.manifold("Torus7").complex(),
                torus7_meridian(static_cast<int>(degree)));
            const std::string name = cover.cover.complex().name();
            ledger.add_manifold(cover.cover);
            ledger.register_cover(name, "Torus7", degree);
            certify_from_triangulation(ledger, name);
            input = recognize_surface_model(ledger, name);
        }
        std::size_t id =
            cover_stable_bound(ledger, "Torus7", {{input, degree}});
        c.expect(ledger.certificate(id).bound == bound,
                 "degree " + std::to_string(degree) + " bound");
    }
    for (std::size_t id = 0; id < ledger.size(); ++id)
        c.expect(verify(ledger, id).pass,
                 "certificate " + std::to_string(id) + " fails");

    Registry registry;
    registry.add_manifold(torus_flags("Torus7"));
    try {
        registry.import_certificates(ledger);
        registry.propagate();
    } catch (const InconsistencyError&) {
        c.expect(false, "certificates clash with the zero interval");
        return c;
    }
    c.expect(to_string(registry.query("Torus7", Inv::sv_stable)) == "[0, 0]",
             "stable volume != [0, 0]");
    return c;
}

// 6. Triple products of bounded pieces: vanishing relative volume,
//    chi_rel = -1, and the stable-integral floor 1/7 in dimension 6.
Criterion criterion_triple_product() {
    Criterion c;
    EvalResult result = evaluate(parse(R"(
manifold S1 {
  dim: 1
  closed: yes
  pi1_amenable: yes
  chi: 0
}
manifold V1 {
  dim: 2
  closed: no
  oriented: yes
  connected: yes
  aspherical: yes
  boundary: [S1]
  chi: -1
}
manifold V2 {
  dim: 2
  closed: no
  oriented: yes
  connected: yes
  aspherical: yes
  boundary: [S1]
  chi: -1
}
manifold V3 {
  dim: 2
  closed: no
  oriented: yes
  connected: yes
  aspherical: yes
  boundary: [S1]
  chi: -1
}
manifold P {
  dim: 6
  closed: no
  oriented: yes
  product_factors: [V1, V2, V3]
}
query P.sv_rel
query P.sv_rel_stable
query P.chi_rel
)"),
                                    "triple-product");
    c.expect(result.exit_code == 0, "script failed");
    const Json& queries = result.report["queries"];
    c.expect(queries[0]["interval"]["text"] == "[0, 0]", "sv_rel");
    c.expect(queries[1]["interval"]["text"] == "[1/7, inf)", "stable floor");
    c.expect(queries[2]["value"] == -1, "chi_rel");
    return c;
}

// 7. Gluing bookkeeping in dimension four: chi(M) = 1 from a declared
//    vanishing relative characteristic, with the glueing rule cited.
Criterion criterion_glue_chi() {
    Criterion c;
    EvalResult result = evaluate(parse(R"(
manifold B {
  dim: 3
  closed: yes
  oriented: yes
}
manifold W {
  dim: 4
  closed: no
  oriented: yes
  boundary: [B]
  chi: 1
}
manifold W' {
  dim: 4
  closed: no
  oriented: yes
  boundary: [B]
  chi_rel: 0
}
manifold M {
  dim: 4
  closed: yes
  oriented: yes
  glued: W + W' along [B]
}
query M.chi
query W'.chi_rel
)"),
                                    "glue-chi");
    c.expect(result.exit_code == 0, "script failed");
    const Json& queries = result.report["queries"];
    c.expect(queries[0]["value"] == 1, "chi(M) != 1");
    bool cites_glue = false;
    for (const auto& step : queries[0]["chain"])
        cites_glue = cites_glue || step["rule"] == "R-glue-chi";
    c.expect(cites_glue, "no R-glue-chi citation");
    c.expect(queries[1]["value"] == 0, "declared chi_rel lost");
    bool declared = false;
    for (const auto& step : queries[1]["chain"])
        declared = declared || step["rule"] == "declared";
    c.expect(declared, "chi_rel provenance is not the declaration");
    return c;
}

// 8. Functor laws on the surface generators: chi on all 64 composable
//    pairs, sv additivity on the amenable ones, refusal outside.
Criterion criterion_functor_laws() {
    Criterion c;
    Registry registry;
    CobordismCategory category(registry);
    install_surface_generators(category);

    int pairs = 0, amenable_pairs = 0;
    for (int a = 0; a <= 3; ++a)
        for (int b = 0; b <= 3; ++b)
            for (int d = 0; d <= 3; ++d) {
                std::string f = "G" + std::to_string(a) + std::to_string(b);
                std::string g = "G" + std::to_string(b) + std::to_string(d);
                const Cobordism& fg = category.compose(f, g);
                ++pairs;
                c.expect(category.chi_functor(fg.label) ==
                             category.chi_functor(f) + category.chi_functor(g),
                         "chi not functorial at " + fg.label);
                if (!category.is_member(f) || !category.is_member(g)) continue;
                ++amenable_pairs;
                registry.propagate();
                Interval sum =
                    add(category.sv_functor(f), category.sv_functor(g));
                c.expect(to_string(category.sv_functor(fg.label)) ==
                             to_string(sum),
                         "sv not additive at " + fg.label);
            }
    c.expect(pairs == 64, "expected 64 composable pairs");
    c.expect(amenable_pairs == 50, "expected 50 amenable pairs");

    bool refused = false;
    try {
        category.sv_functor("G01");
    } catch (const CobordismError&) {
        refused = true;
    }
    c.expect(refused, "non-member evaluation not refused");
    bool composition_refused = false;
    try {
        category.compose("G01", "G10", true);
    } catch (const CobordismError&) {
        composition_refused = true;
    }
    c.expect(composition_refused, "amenable composition not refused");
    return c;
}

// 9. Reinhart coordinates and the extension obstruction.
Criterion criterion_reinhart() {
    Criterion c;
    Registry registry;
    ManifoldDescription sphere;
    sphere.name = "S2";
    sphere.dim = 2;
    sphere.closed = Flag::yes;
    sphere.oriented = Flag::yes;
    sphere.connected = Flag::yes;
    sphere.declared_chi = 2;
    registry.add_manifold(sphere);
    c.expect(reinhart_class(registry, "S2", 2).coordinates ==
                 std::vector<long long>{1},
             "sphere class");
    for (int genus = 1; genus <= 5; ++genus) {
        ManifoldDescription sigma;
        sigma.name = "Sigma" + std::to_string(genus);
        sigma.dim = 2;
        sigma.closed = Flag::yes;
        sigma.oriented = Flag::yes;
        sigma.connected = Flag::yes;
        sigma.aspherical = Flag::yes;
        sigma.declared_chi = 2 - 2 * genus;
        registry.add_manifold(sigma);
        c.expect(reinhart_class(registry, sigma.name, 2).coordinates ==
                     std::vector<long long>{1 - genus},
                 "genus " + std::to_string(genus));
    }
    ManifoldDescription pair;
    pair.name = "M u -M";
    pair.dim = 4;
    pair.closed = Flag::yes;
    pair.oriented = Flag::yes;
    pair.connected = Flag::no;
    pair.component_count = 2;
    pair.declared_chi = 10;
    pair.signature = 0;
    registry.add_manifold(pair);
    c.expect(reinhart_class(registry, "M u -M", 4).coordinates ==
                 std::vector<long long>{10, 0},
             "d=4 class");

    registry.propagate();
    ObstructionReport report = extension_obstruction(registry, "Sigma2");
    c.expect(report.steps.size() >= 5, "obstruction too short");
    c.expect(report.steps.back().find("contradiction") != std::string::npos,
             "no contradiction step");
    bool doubled = false;
    for (const auto& step : report.steps)
        doubled = doubled || step.find("[8, 8]") != std::string::npos;
    c.expect(doubled, "doubled volume missing");
    return c;
}

// 10. Property suites: boundary squares to zero, propagation is
//     confluent, certificates re-verify, chi equals its Betti sum.
Criterion criterion_properties() {
    Criterion c;
    std::mt19937 rng(314159);
    const std::vector<std::string> names = {
        "Delta[2]", "Delta[3]", "Sphere[2]", "Sphere[3]",
        "Torus7",   "Annulus",  "PuncturedTorus"};
    int produced = 0;
    while (produced < 1000) {
        Complex complex = dataset(names[produced % names.size()]);
        std::uniform_int_distribution<int> deg(1, complex.dim());
        Chain chain = oracle::random_chain(complex, deg(rng), rng);
        if (chain.is_zero()) continue;
        Chain dd = boundary(complex, boundary(complex, chain));
        c.expect(dd.is_zero(), "boundary square != 0 on " + complex.name());
        ++produced;
    }

    auto build = []() {
        Registry registry;
        registry.add_manifold(torus_flags("T2"));
        ManifoldDescription sigma2;
        sigma2.name = "Sigma2";
        sigma2.dim = 2;
        sigma2.closed = Flag::yes;
        sigma2.oriented = Flag::yes;
        sigma2.connected = Flag::yes;
        sigma2.aspherical = Flag::yes;
        sigma2.declared_chi = -2;
        registry.add_manifold(sigma2);
        ManifoldDescription cover;
        cover.name = "N";
        cover.dim = 2;
        cover.closed = Flag::yes;
        cover.oriented = Flag::yes;
        cover.connected = Flag::yes;
        cover.aspherical = Flag::yes;
        cover.cover_of = CoverRelation{"Sigma2", 3};
        registry.add_manifold(cover);
        ManifoldDescription product;
        product.name = "P";
        product.dim = 4;
        product.closed = Flag::yes;
        product.oriented = Flag::yes;
        product.connected = Flag::yes;
        product.product_factors = {"Sigma2", "T2"};
        registry.add_manifold(product);
        ManifoldDescription filling;
        filling.name = "W";
        filling.dim = 3;
        filling.closed = Flag::no;
        filling.oriented = Flag::yes;
        filling.boundary = {{"Sigma2", Flag::yes, Flag::yes}};
        registry.add_manifold(filling);
        return registry;
    };
    auto fingerprint = [](const Registry& registry) {
        std::ostringstream out;
        for (const std::string& name : registry.names()) {
            const InvariantState& state = registry.query(name);
            out << name << ":";
            for (Inv inv : all_invariants())
                out << to_string(state.slot(inv).interval) << ";";
            if (state.chi) out << *state.chi;
            out << "/";
            if (state.chi_rel) out << *state.chi_rel;
            out << "\n";
        }
        return out.str();
    };
    Registry reference = build();
    reference.propagate();
    const std::string expected = fingerprint(reference);
    std::vector<std::string> order;
    for (const RuleInfo& rule : Registry::rule_catalog())
        order.push_back(rule.id);
    for (int trial = 0; trial < 100; ++trial) {
        std::shuffle(order.begin(), order.end(), rng);
        Registry registry = build();
        registry.propagate(order);
        if (fingerprint(registry) != expected) {
            c.expect(false, "fixpoint differs at trial " +
                                std::to_string(trial));
            break;
        }
    }

    Ledger ledger;
    ledger.add_manifold(manifold_check(torus7()));
    ledger.add_manifold(manifold_check(punctured_torus()));
    ledger.add_manifold(manifold_check(circle3()));
    CertifyResult t = certify_from_triangulation(ledger, "Torus7");
    CertifyResult pt =
        certify_from_triangulation(ledger, "PuncturedTorus");
    CertifyResult circle = certify_from_triangulation(ledger, "Circle3");
    double_bound(ledger, pt.integral);
    product_bound(ledger, circle.integral, circle.integral);
    boundary_bound(ledger, pt.integral);
    recognize_surface_model(ledger, "Torus7");
    cover_stable_bound(ledger, "Torus7", {{t.integral, 1}});
    for (std::size_t id = 0; id < ledger.size(); ++id)
        c.expect(verify(ledger, id).pass,
                 "re-verify failed at " + std::to_string(id));
    c.expect(ledger.size() >= 9, "too few certificates emitted");

    const std::vector<std::string> all = {
        "Delta[1]", "Delta[2]",       "Delta[3]",  "Sphere[1]",
        "Sphere[2]", "Sphere[3]",     "Torus7",    "PuncturedTorus",
        "Annulus",   "Mobius",        "RP2-6",     "Interval",
        "Circle3"};
    for (const auto& name : all) {
        Complex complex = dataset(name);
        Complex fine = barycentric_subdivide(complex).complex;
        for (const Complex* cx : {&complex, &fine})
            c.expect(cx->euler_characteristic() ==
                         homology(*cx).euler_characteristic(),
                     name + ": chi via counts != chi via Betti");
    }
    return c;
}

}  // namespace

int main() {
    struct Entry {
        const char* label;
        Criterion (*run)();
    };
    const Entry entries[] = {
        {"1 connected-sum chi and homology", criterion_connected_sum},
        {"2 double of the punctured torus", criterion_double},
        {"3 boundary estimate on chains", criterion_boundary_estimate},
        {"4 product certificate constant", criterion_product},
        {"5 stable bounds from cyclic covers", criterion_stable_covers},
        {"6 triple-product tension", criterion_triple_product},
        {"7 glueing chi bookkeeping", criterion_glue_chi},
        {"8 cobordism functor laws", criterion_functor_laws},
        {"9 Reinhart classes and obstruction", criterion_reinhart},
        {"10 property suites", criterion_properties},
    };
    bool all = true;
    for (const Entry& entry : entries) {
        Criterion result;
        std::string crashed;
        try {
            result = entry.run();
        } catch (const std::exception& e) {
            result.ok = false;
            crashed = e.what();
        }
        all = all && result.ok;
        std::cout << "CRITERION " << entry.label << ": "
                  << (result.ok ? "PASS" : "FAIL") << "\n";
        if (!result.ok && !result.first_failure.empty())
            std::cout << "    first failure: " << result.first_failure << "\n";
        if (!crashed.empty()) std::cout << "    exception: " << crashed << "\n";
    }
    std::cout << (all ? "ALL CRITERIA PASS" : "CRITERIA FAILED") << "\n";
    return all ? 0 : 1;
}
