#pragma once

#include "chain.hpp"
#include "complex.hpp"
#include "constructions.hpp"
#include "datasets.hpp"
#include "io.hpp"
#include "manifold.hpp"
#include "rational.hpp"

#include <map>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace svlab {

struct CertificateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/** Which norm a certificate bounds from above. */
enum class CertKind {
    real,              // ||M||
    integral,          // ||M||_Z
    relative_real,     // ||M, dM||
    relative_integral, // ||M, dM||_Z
    stable_integral    // ||M, dM||_Z^infty
};

inline std::string to_string(CertKind kind) {
    switch (kind) {
        case CertKind::real: return "real";
        case CertKind::integral: return "integral";
        case CertKind::relative_real: return "relative-real";
        case CertKind::relative_integral: return "relative-integral";
        case CertKind::stable_integral: return "stable-integral";
    }
    throw CertificateError("unreachable certificate kind");
}

inline CertKind cert_kind_from_string(const std::string& text) {
    if (text == "real") return CertKind::real;
    if (text == "integral") return CertKind::integral;
    if (text == "relative-real") return CertKind::relative_real;
    if (text == "relative-integral") return CertKind::relative_integral;
    if (text == "stable-integral") return CertKind::stable_integral;
    throw CertificateError("unknown certificate kind '" + text + "'");
}

inline bool is_relative(CertKind kind) {
    return kind == CertKind::relative_real ||
           kind == CertKind::relative_integral;
}

inline bool is_integral_kind(CertKind kind) {
    return kind == CertKind::integral || kind == CertKind::relative_integral;
}

/** One audited covering used by a stable-integral certificate. */
struct CoverEntry {
    std::size_t certificate;  // ledger id of the cover's integral certificate
    long long degree;
};

/**
 * An upper-bound certificate for one of the norm invariants. The witness is
 * either an explicit chain on the target complex (re-checked from scratch by
 * verify) or a derivation: a rule name plus the input certificates whose
 * arithmetic is replayed.
 */
struct Certificate {
    std::string target;
    CertKind kind = CertKind::integral;
    Rational bound = 0;

    std::optional<Chain> chain;       // explicit witness
    std::string rule;                 // derivation rule, empty for explicit
    std::vector<std::size_t> inputs;  // derivation input certificates
    std::vector<CoverEntry> covers;   // cover-stable derivations only
    std::string model;                // surface-model derivations only

    bool has_explicit_witness() const { return chain.has_value(); }
};

/**
 * Append-only certificate store. Also owns the checked manifolds that
 * certificates refer to, and the covering registrations that stable-integral
 * certificates audit against.
 */
class Ledger {
public:
    /** Registers a manifold under its complex name. Re-registering the same
     *  complex is a no-op; a different complex under an existing name is an
     *  error. */
    const ManifoldComplex& add_manifold(ManifoldComplex manifold) {
        const std::string name = manifold.complex().name();
        auto it = manifolds_.find(name);
        if (it != manifolds_.end()) {
            if (it->second.complex().facets() != manifold.complex().facets())
                throw CertificateError("ledger name collision on '" + name +
                                       "'");
            return it->second;
        }
        order_.push_back(name);
        return manifolds_.emplace(name, std::move(manifold)).first->second;
    }

    bool has_manifold(const std::string& name) const {
        return manifolds_.count(name) > 0;
    }

    const ManifoldComplex& manifold(const std::string& name) const {
        auto it = manifolds_.find(name);
        if (it == manifolds_.end())
            throw CertificateError("no manifold '" + name + "' in the ledger");
        return it->second;
    }

    const std::vector<std::string>& manifold_names() const { return order_; }

    /** Records that `cover` covers `base` with the given degree. */
    void register_cover(const std::string& cover, const std::string& base,
                        long long degree) {
        if (!has_manifold(cover) || !has_manifold(base))
            throw CertificateError("cover registration names unknown manifolds");
        if (degree < 1) throw CertificateError("cover degree must be >= 1");
        auto it = covers_.find(cover);
        if (it != covers_.end()) {
            if (it->second != std::make_pair(base, degree))
                throw CertificateError("conflicting cover registration for '" +
                                       cover + "'");
            return;
        }
        covers_.emplace(cover, std::make_pair(base, degree));
    }

    std::optional<std::pair<std::string, long long>> cover_of(
        const std::string& name) const {
        auto it = covers_.find(name);
        if (it == covers_.end()) return std::nullopt;
        return it->second;
    }

    const std::map<std::string, std::pair<std::string, long long>>&
    cover_registrations() const {
        return covers_;
    }

    std::size_t append(Certificate certificate) {
        certificates_.push_back(std::move(certificate));
        return certificates_.size() - 1;
    }

    const Certificate& certificate(std::size_t id) const {
        if (id >= certificates_.size())
            throw CertificateError("certificate id out of range");
        return certificates_[id];
    }

    std::size_t size() const { return certificates_.size(); }

private:
    std::map<std::string, ManifoldComplex> manifolds_;
    std::vector<std::string> order_;
    std::map<std::string, std::pair<std::string, long long>> covers_;
    std::vector<Certificate> certificates_;
};

namespace detail {

/** Facet connectivity classes across shared ridges. */
inline std::vector<int> facet_components(const Complex& complex) {
    const auto& facets = complex.facets();
    auto ridges = ridge_table(complex);
    std::vector<int> component(facets.size(), -1);
    int next = 0;
    for (std::size_t root = 0; root < facets.size(); ++root) {
        if (component[root] >= 0) continue;
        int id = next++;
        std::queue<std::size_t> todo;
        todo.push(root);
        component[root] = id;
        while (!todo.empty()) {
            std::size_t f = todo.front();
            todo.pop();
            if (complex.dim() == 0) continue;
            auto [sorted, parity] = canonical(facets[f]);
            (void)parity;
            for (std::size_t i = 0; i < sorted.size(); ++i)
                for (const auto& inc : ridges.at(face_of(sorted, i)))
                    if (component[inc.facet] < 0) {
                        component[inc.facet] = id;
                        todo.push(static_cast<std::size_t>(inc.facet));
                    }
        }
    }
    return component;
}

inline bool on_boundary(const ManifoldComplex& manifold,
                        const VertexTuple& ascending) {
    for (const auto& component : manifold.boundary_components())
        if (component.complex.contains(ascending)) return true;
    return false;
}

/** The coherent facet sum, restricted to one facet-connectivity class. */
inline Chain component_cycle(const ManifoldComplex& manifold,
                             const std::vector<int>& component, int id) {
    Chain cycle(manifold.dim());
    const auto& facets = manifold.complex().facets();
    for (std::size_t f = 0; f < facets.size(); ++f)
        if (component[f] == id)
            cycle.add(facets[f], Rational(manifold.orientation()[f]));
    return cycle;
}

}  // namespace detail

struct VerifyReport {
    bool pass;
    std::string detail;  // "ok" or the first violated condition
};

/** Full re-verification of one certificate against the ledger. Failures are
 *  report content, never exceptions. */
inline VerifyReport verify(const Ledger& ledger, const Certificate& cert) {
    auto fail = [](std::string why) { return VerifyReport{false, std::move(why)}; };
    if (cert.bound < 0) return fail("negative bound");
    if (!ledger.has_manifold(cert.target))
        return fail("target '" + cert.target + "' is not in the ledger");
    const ManifoldComplex& target = ledger.manifold(cert.target);

    if (cert.has_explicit_witness()) {
        if (!cert.rule.empty())
            return fail("certificate carries both a chain and a derivation");
        if (cert.kind == CertKind::stable_integral)
            return fail("stable-integral certificates must be derivations");
        const bool relative = is_relative(cert.kind);
        if (relative && target.is_closed())
            return fail("relative kind on a closed target");
        if (!relative && !target.is_closed())
            return fail("absolute kind on a target with boundary");
        const Chain& witness = *cert.chain;
        if (witness.degree() != target.dim())
            return fail("witness degree does not match the target dimension");
        if (is_integral_kind(cert.kind) && !witness.integral())
            return fail("integral-kind witness has non-integer coefficients");
        Chain bd(std::max(0, witness.degree() - 1));
        try {
            bd = boundary(target.complex(), witness);
        } catch (const ChainError& e) {
            return fail(e.what());
        }
        if (!relative) {
            if (!bd.is_zero()) return fail("witness has nonzero boundary");
        } else {
            for (const auto& [tuple, coeff] : bd.terms()) {
                (void)coeff;
                if (!detail::on_boundary(target, tuple))
                    return fail(
                        "witness boundary leaves the boundary subcomplex");
            }
        }
        // Fundamental-class membership. In top degree the boundary image is
        // trivial and the class is free per facet component, so the witness
        // must equal the coherent facet sum componentwise up to sign.
        auto component = detail::facet_components(target.complex());
        int classes = 0;
        for (int c : component) classes = std::max(classes, c + 1);
        for (int id = 0; id < classes; ++id) {
            Chain expected = detail::component_cycle(target, component, id);
            Chain restricted(witness.degree());
            for (const auto& [tuple, coeff] : expected.terms()) {
                (void)coeff;
                restricted.add(tuple, witness.coefficient(tuple));
            }
            if (!(restricted - expected).is_zero() &&
                !(restricted + expected).is_zero())
                return fail("witness does not represent the fundamental class");
        }
        for (const auto& [tuple, coeff] : witness.terms()) {
            (void)coeff;
            if (!target.complex().contains(tuple))
                return fail("witness names a non-facet simplex");
        }
        if (l1_norm(witness) != cert.bound)
            return fail("witness l1 norm differs from the bound");
        return {true, "ok"};
    }

    if (cert.rule == "double") {
        if (cert.inputs.size() != 1) return fail("double needs one input");
        if (cert.inputs[0] >= ledger.size())
            return fail("input certificate id out of range");
        const Certificate& in = ledger.certificate(cert.inputs[0]);
        if (!is_relative(in.kind))
            return fail("double input must be a relative certificate");
        CertKind expect = in.kind == CertKind::relative_integral
                              ? CertKind::integral
                              : CertKind::real;
        if (cert.kind != expect) return fail("double output kind mismatch");
        if (cert.bound != Rational(2) * in.bound)
            return fail("double bound is not twice the input bound");
        if (!ledger.has_manifold(in.target))
            return fail("double input target missing");
        const ManifoldComplex& m = ledger.manifold(in.target);
        if (m.is_closed()) return fail("double input target is closed");
        if (!target.is_closed()) return fail("double target is not closed");
        long long chi_b = 0;
        for (const auto& component : m.boundary_components())
            chi_b += component.complex.euler_characteristic();
        if (target.complex().euler_characteristic() !=
            2 * m.complex().euler_characteristic() - chi_b)
            return fail("double euler characteristic replay failed");
        return {true, "ok"};
    }

    if (cert.rule == "surface-model") {
        if (cert.kind != CertKind::integral)
            return fail("surface-model certificates are integral");
        if (target.dim() != 2) return fail("surface recognition needs dim 2");
        if (!target.is_closed()) return fail("surface recognition needs a closed target");
        if (!target.is_connected())
            return fail("surface recognition needs a connected target");
        Complex model = [&]() -> Complex {
            try {
                return dataset(cert.model);
            } catch (const UnknownDataset&) {
                return Complex("missing", 0, 1, {{0}});
            }
        }();
        if (model.name() != cert.model)
            return fail("unknown surface model '" + cert.model + "'");
        if (model.euler_characteristic() !=
            target.complex().euler_characteristic())
            return fail("model euler characteristic differs from the target");
        if (cert.bound != Rational(model.facet_count()))
            return fail("bound differs from the model facet count");
        return {true, "ok"};
    }

    if (cert.rule == "cover-stable") {
        if (cert.kind != CertKind::stable_integral)
            return fail("cover-stable output must be stable-integral");
        if (cert.covers.empty()) return fail("empty cover list");
        std::optional<Rational> best;
        for (const auto& entry : cert.covers) {
            if (entry.certificate >= ledger.size())
                return fail("cover certificate id out of range");
            const Certificate& in = ledger.certificate(entry.certificate);
            if (!is_integral_kind(in.kind))
                return fail("cover certificate is not integral-kind");
            if (!ledger.has_manifold(in.target))
                return fail("cover target missing from the ledger");
            if (!ledger.manifold(in.target).is_connected())
                return fail("cover '" + in.target + "' is disconnected");
            if (entry.degree < 1) return fail("cover degree below 1");
            if (entry.degree == 1 && in.target == cert.target) {
                // identity covering
            } else {
                auto reg = ledger.cover_of(in.target);
                if (!reg || reg->first != cert.target ||
                    reg->second != entry.degree)
                    return fail("cover '" + in.target +
                                "' is not registered over the target with "
                                "that degree");
            }
            Rational quotient = in.bound / Rational(entry.degree);
            if (!best || quotient < *best) best = quotient;
        }
        if (*best != cert.bound)
            return fail("bound is not the minimum over the cover list");
        return {true, "ok"};
    }

    return fail("unknown derivation rule '" + cert.rule + "'");
}

inline VerifyReport verify(const Ledger& ledger, std::size_t id) {
    return verify(ledger, ledger.certificate(id));
}

struct CertifyResult {
    std::size_t integral;
    std::size_t real;
};

/**
 * The coherent facet sum as an integral (relative) fundamental cycle:
 * emits the integral-kind certificate with bound = facet count, plus the
 * real-kind certificate with the same witness.
 */
inline CertifyResult certify_from_triangulation(Ledger& ledger,
                                                const std::string& name) {
    const ManifoldComplex& m = ledger.manifold(name);
    if (!m.is_connected())
        throw CertificateError(name + ": certification needs a connected "
                                      "manifold");
    Chain witness = fundamental_cycle(m);
    Rational bound(m.complex().facet_count());

    Certificate integral;
    integral.target = name;
    integral.kind = m.is_closed() ? CertKind::integral
                                  : CertKind::relative_integral;
    integral.bound = bound;
    integral.chain = witness;

    Certificate real = integral;
    real.kind = m.is_closed() ? CertKind::real : CertKind::relative_real;

    std::size_t iid = ledger.append(std::move(integral));
    std::size_t rid = ledger.append(std::move(real));
    return {iid, rid};
}

/**
 * The boundary of a relative witness is a fundamental cycle of the boundary:
 * emits a certificate for the boundary union with the exact norm of the
 * boundary chain, which never exceeds (dim+1) times the input bound.
 */
inline std::size_t boundary_bound(Ledger& ledger, std::size_t cert_id) {
    const Certificate in = ledger.certificate(cert_id);
    if (!is_relative(in.kind))
        throw CertificateError("boundary_bound needs a relative certificate");
    if (!in.has_explicit_witness())
        throw CertificateError("boundary_bound needs an explicit witness");
    const ManifoldComplex& m = ledger.manifold(in.target);
    if (m.is_closed())
        throw CertificateError("boundary_bound target is closed");

    std::vector<VertexTuple> facets;
    for (const auto& component : m.boundary_components())
        for (const auto& facet : component.complex.facets())
            facets.push_back(facet);
    Complex union_complex(in.target + ".boundary", m.dim() - 1,
                          m.complex().vertex_count(), std::move(facets));
    ledger.add_manifold(manifold_check(union_complex));

    Chain witness = boundary(m.complex(), *in.chain);
    Rational bound = l1_norm(witness);
    if (bound > Rational(m.dim() + 1) * in.bound)
        throw CertificateError("boundary norm exceeded (dim+1) x input");

    Certificate out;
    out.target = union_complex.name();
    out.kind = in.kind == CertKind::relative_integral ? CertKind::integral
                                                      : CertKind::real;
    out.bound = bound;
    out.chain = std::move(witness);
    return ledger.append(std::move(out));
}

/**
 * Doubling a relative cycle: the double inherits twice the bound, same
 * coefficient flavour. With no explicit target the double is constructed
 * and registered as D(M); an explicit target must already be a ledger
 * manifold satisfying the doubling replay conditions.
 */
inline std::size_t double_bound(Ledger& ledger, std::size_t cert_id,
                                const std::string& target_name = "") {
    const Certificate in = ledger.certificate(cert_id);
    if (!is_relative(in.kind))
        throw CertificateError("double_bound needs a relative certificate");
    const ManifoldComplex& m = ledger.manifold(in.target);
    if (m.is_closed())
        throw CertificateError("double_bound target is closed");

    std::string name = target_name;
    if (name.empty()) {
        DoubleResult doubled = double_manifold(m);
        name = doubled.doubled.complex().name();
        ledger.add_manifold(doubled.doubled);
    } else {
        const ManifoldComplex& d = ledger.manifold(name);
        long long chi_b = 0;
        for (const auto& component : m.boundary_components())
            chi_b += component.complex.euler_characteristic();
        if (!d.is_closed() ||
            d.complex().euler_characteristic() !=
                2 * m.complex().euler_characteristic() - chi_b)
            throw CertificateError(name + " does not replay as the double of " +
                                   in.target);
    }

    Certificate out;
    out.target = name;
    out.kind = in.kind == CertKind::relative_integral ? CertKind::integral
                                                      : CertKind::real;
    out.bound = Rational(2) * in.bound;
    out.rule = "double";
    out.inputs = {cert_id};
    return ledger.append(std::move(out));
}

/**
 * Shuffle-product certificate: the staircase image of the two witnesses is
 * an explicit (relative) fundamental cycle of the product with norm exactly
 * binomial(m+n, m) times the product of the input bounds.
 */
inline std::size_t product_bound(Ledger& ledger, std::size_t cm_id,
                                 std::size_t cn_id,
                                 const std::string& target_name = "") {
    const Certificate cm = ledger.certificate(cm_id);
    const Certificate cn = ledger.certificate(cn_id);
    if (!cm.has_explicit_witness() || !cn.has_explicit_witness())
        throw CertificateError("product_bound needs explicit witnesses");
    const ManifoldComplex& left = ledger.manifold(cm.target);
    const ManifoldComplex& right = ledger.manifold(cn.target);

    ProductResult prod = product(left.complex(), right.complex());
    ManifoldComplex checked = manifold_check(prod.complex);
    const bool closed = checked.is_closed();
    std::string name = target_name;
    if (name.empty()) {
        name = prod.complex.name();
        ledger.add_manifold(checked);
    } else if (ledger.manifold(name).complex().facets() !=
               checked.complex().facets()) {
        // The witness indexes the staircase triangulation; an explicit
        // target must be facet-identical for the chain to make sense.
        throw CertificateError(name + " differs from the staircase product "
                                      "triangulation");
    }

    Chain witness = prod.shuffle_map(*cm.chain, *cn.chain);
    Rational constant(binomial(left.dim() + right.dim(), left.dim()));
    Rational bound = constant * cm.bound * cn.bound;
    if (l1_norm(witness) != bound)
        throw CertificateError("shuffle image norm differs from the binomial "
                               "bound");

    const bool integral = is_integral_kind(cm.kind) && is_integral_kind(cn.kind);
    Certificate out;
    out.target = name;
    out.kind = closed ? (integral ? CertKind::integral : CertKind::real)
                      : (integral ? CertKind::relative_integral
                                  : CertKind::relative_real);
    out.bound = bound;
    out.chain = std::move(witness);
    return ledger.append(std::move(out));
}

/**
 * Minimal surface recognition: a closed connected orientable 2-manifold is
 * classified by its Euler characteristic, so a cover may be re-presented by
 * the shipped minimal model of the same characteristic (sphere or torus).
 * No recognition in dimension >= 3.
 */
inline std::size_t recognize_surface_model(Ledger& ledger,
                                           const std::string& name) {
    const ManifoldComplex& m = ledger.manifold(name);
    if (m.dim() != 2)
        throw CertificateError("surface recognition is restricted to dim 2");
    if (!m.is_closed() || !m.is_connected())
        throw CertificateError("surface recognition needs a closed connected "
                               "surface");
    long long chi = m.complex().euler_characteristic();
    std::string model;
    if (chi == 2)
        model = "Sphere[2]";
    else if (chi == 0)
        model = "Torus7";
    else
        throw CertificateError("no shipped minimal model for chi = " +
                               std::to_string(chi));

    Certificate out;
    out.target = name;
    out.kind = CertKind::integral;
    out.bound = Rational(dataset(model).facet_count());
    out.rule = "surface-model";
    out.model = model;
    return ledger.append(std::move(out));
}

/**
 * Stable-integral bound: the minimum of bound/degree over a list of audited
 * connected coverings of the base (degree 1 means the base itself). The full
 * list is stored for audit.
 */
inline std::size_t cover_stable_bound(Ledger& ledger, const std::string& base,
                                      const std::vector<CoverEntry>& covers) {
    if (covers.empty())
        throw CertificateError("cover_stable_bound needs at least one cover");
    if (!ledger.has_manifold(base))
        throw CertificateError("unknown base manifold '" + base + "'");
    std::optional<Rational> best;
    for (const auto& entry : covers) {
        const Certificate& in = ledger.certificate(entry.certificate);
        if (!is_integral_kind(in.kind))
            throw CertificateError("cover certificate for '" + in.target +
                                   "' is not integral-kind");
        const ManifoldComplex& cover = ledger.manifold(in.target);
        if (!cover.is_connected())
            throw CertificateError("cover '" + in.target +
                                   "' is disconnected");
        if (entry.degree == 1 && in.target == base) {
            // the identity covering
        } else {
            auto reg = ledger.cover_of(in.target);
            if (!reg || reg->first != base || reg->second != entry.degree)
                throw CertificateError(
                    "cover '" + in.target +
                    "' is not registered over the base with that degree");
        }
        Rational quotient = in.bound / Rational(entry.degree);
        if (!best || quotient < *best) best = quotient;
    }

    Certificate out;
    out.target = base;
    out.kind = CertKind::stable_integral;
    out.bound = *best;
    out.rule = "cover-stable";
    out.covers = covers;
    return ledger.append(std::move(out));
}

inline Json certificate_to_json(const Certificate& cert) {
    Json doc;
    doc["target"] = cert.target;
    doc["kind"] = to_string(cert.kind);
    doc["bound"] = to_string(cert.bound);
    Json witness;
    if (cert.has_explicit_witness()) {
        witness["type"] = "chain";
        witness["chain"] = chain_to_json(*cert.chain);
    } else {
        witness["type"] = "derivation";
        witness["rule"] = cert.rule;
        witness["inputs"] = cert.inputs;
        if (!cert.covers.empty()) {
            Json list = Json::array();
            for (const auto& entry : cert.covers)
                list.push_back(Json{{"certificate", entry.certificate},
                                    {"degree", entry.degree}});
            witness["covers"] = std::move(list);
        }
        if (!cert.model.empty()) witness["model"] = cert.model;
    }
    doc["witness"] = std::move(witness);
    return doc;
}

inline Certificate certificate_from_json(const Json& doc) {
    try {
        Certificate cert;
        cert.target = doc.at("target").get<std::string>();
        cert.kind = cert_kind_from_string(doc.at("kind").get<std::string>());
        cert.bound = parse_rational(doc.at("bound").get<std::string>());
        const Json& witness = doc.at("witness");
        std::string type = witness.at("type").get<std::string>();
        if (type == "chain") {
            cert.chain = chain_from_json(witness.at("chain"));
        } else if (type == "derivation") {
            cert.rule = witness.at("rule").get<std::string>();
            if (witness.contains("inputs"))
                cert.inputs =
                    witness.at("inputs").get<std::vector<std::size_t>>();
            if (witness.contains("covers"))
                for (const auto& entry : witness.at("covers"))
                    cert.covers.push_back(
                        {entry.at("certificate").get<std::size_t>(),
                         entry.at("degree").get<long long>()});
            if (witness.contains("model"))
                cert.model = witness.at("model").get<std::string>();
        } else {
            throw CertificateError("unknown witness type '" + type + "'");
        }
        return cert;
    } catch (const Json::exception& e) {
        throw IoError(std::string("malformed certificate document: ") +
                      e.what());
    }
}

inline Json ledger_to_json(const Ledger& ledger) {
    Json doc;
    doc["version"] = 1;
    Json manifolds = Json::array();
    for (const auto& name : ledger.manifold_names())
        manifolds.push_back(complex_to_json(ledger.manifold(name).complex()));
    doc["manifolds"] = std::move(manifolds);
    Json covers = Json::array();
    for (const auto& [cover, reg] : ledger.cover_registrations())
        covers.push_back(Json{{"cover", cover},
                              {"base", reg.first},
                              {"degree", reg.second}});
    doc["covers"] = std::move(covers);
    Json certificates = Json::array();
    for (std::size_t id = 0; id < ledger.size(); ++id)
        certificates.push_back(certificate_to_json(ledger.certificate(id)));
    doc["certificates"] = std::move(certificates);
    return doc;
}

inline Ledger ledger_from_json(const Json& doc) {
    try {
        Ledger ledger;
        for (const auto& entry : doc.at("manifolds"))
            ledger.add_manifold(manifold_check(complex_from_json(entry)));
        for (const auto& entry : doc.at("covers"))
            ledger.register_cover(entry.at("cover").get<std::string>(),
                                  entry.at("base").get<std::string>(),
                                  entry.at("degree").get<long long>());
        for (const auto& entry : doc.at("certificates"))
            ledger.append(certificate_from_json(entry));
        return ledger;
    } catch (const Json::exception& e) {
        throw IoError(std::string("malformed ledger document: ") + e.what());
    }
}

}  // namespace svlab
