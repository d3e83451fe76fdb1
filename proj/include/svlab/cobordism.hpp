#pragma once

#include "inference.hpp"
#include "interval.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace svlab {

struct CobordismError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/** An object of the cobordism category: a formal disjoint union of closed
 *  oriented (d-1)-manifold labels from the inference registry. */
struct CobObject {
    int dim = 0;
    std::vector<std::string> components;
    bool operator==(const CobObject&) const = default;
};

/**
 * A morphism: a registered body W together with the splitting of its
 * boundary into incoming and outgoing objects. The per-component flags
 * record whether the boundary inclusion is known pi1-injective; membership
 * in the amenable subcategory needs every flag yes and every object
 * component pi1-amenable.
 */
struct Cobordism {
    std::string label;  // body label in the registry
    CobObject incoming;
    CobObject outgoing;
    std::vector<Flag> incoming_injective;
    std::vector<Flag> outgoing_injective;
};

/** One concrete coordinate for a low-dimensional Reinhart bordism class. */
struct ReinhartClass {
    int dimension = 0;
    std::vector<long long> coordinates;
    std::string form;  // what the coordinates mean
};

struct ObstructionReport {
    std::string target;
    Interval sv;
    std::vector<std::string> steps;
};

/**
 * Bookkeeping for cobordisms over a shared inference registry. Composition
 * synthesizes glued bodies as new registry entries, so every invariant of a
 * composite is derived by the same rule engine that serves direct queries.
 */
class CobordismCategory {
public:
    explicit CobordismCategory(Registry& registry) : registry_(registry) {}

    Registry& registry() { return registry_; }
    const Registry& registry() const { return registry_; }

    const Cobordism& add(Cobordism cob) {
        validate(cob);
        if (morphisms_.count(cob.label))
            throw CobordismError("cobordism '" + cob.label +
                                 "' already registered");
        order_.push_back(cob.label);
        auto [it, ok] = morphisms_.emplace(cob.label, std::move(cob));
        (void)ok;
        return it->second;
    }

    bool has(const std::string& label) const {
        return morphisms_.count(label) > 0;
    }

    const Cobordism& at(const std::string& label) const {
        auto it = morphisms_.find(label);
        if (it == morphisms_.end())
            throw CobordismError("unknown cobordism '" + label + "'");
        return it->second;
    }

    const std::vector<std::string>& labels() const { return order_; }

    /** Empty when the morphism is a verified member of the amenable
     *  subcategory, otherwise the first failing requirement. */
    std::string membership_failure(const Cobordism& cob) const {
        for (const auto& object : {cob.incoming, cob.outgoing})
            for (const auto& component : object.components)
                if (registry_.description(component).pi1_amenable != Flag::yes)
                    return "object component '" + component +
                           "' is not known pi1-amenable";
        for (std::size_t i = 0; i < cob.incoming_injective.size(); ++i)
            if (cob.incoming_injective[i] != Flag::yes)
                return "incoming boundary '" + cob.incoming.components[i] +
                       "' has pi1-injective = " +
                       to_string(cob.incoming_injective[i]);
        for (std::size_t i = 0; i < cob.outgoing_injective.size(); ++i)
            if (cob.outgoing_injective[i] != Flag::yes)
                return "outgoing boundary '" + cob.outgoing.components[i] +
                       "' has pi1-injective = " +
                       to_string(cob.outgoing_injective[i]);
        return "";
    }

    bool is_member(const Cobordism& cob) const {
        return membership_failure(cob).empty();
    }
    bool is_member(const std::string& label) const {
        return is_member(at(label));
    }

    /**
     * Glues g after f along outgoing(f) = incoming(g). The composite body is
     * registered as "(f;g)" with a glueing relation, so chi and the volume
     * intervals of the composite come out of rule propagation. With
     * require_amenable the call refuses non-members up front; otherwise the
     * composite's remaining boundary flags stay unknown unless both pieces
     * are members (in which case they are propagated as yes).
     */
    const Cobordism& compose(const std::string& f_label,
                             const std::string& g_label,
                             bool require_amenable = false) {
        const Cobordism f = at(f_label);
        const Cobordism g = at(g_label);
        if (!(f.outgoing == g.incoming))
            throw CobordismError("object mismatch: outgoing(" + f_label +
                                 ") != incoming(" + g_label + ")");
        if (require_amenable) {
            for (const auto* piece : {&f, &g}) {
                std::string failure = membership_failure(*piece);
                if (!failure.empty())
                    throw CobordismError(
                        "amenable-category composition with non-member '" +
                        piece->label + "': " + failure);
            }
        }
        std::string label = "(" + f_label + ";" + g_label + ")";
        if (has(label)) return at(label);

        const ManifoldDescription& fd = registry_.description(f.label);
        const ManifoldDescription& gd = registry_.description(g.label);
        if (fd.dim != gd.dim)
            throw CobordismError("body dimensions differ: " + f.label +
                                 " and " + g.label);
        // Composition always glues two copies; a repeated label needs a
        // clone so the glueing is not mistaken for a self-glueing.
        std::string right_label = g.label;
        if (f.label == g.label) {
            right_label = g.label + "'";
            if (!registry_.has(right_label)) {
                ManifoldDescription clone = gd;
                clone.name = right_label;
                registry_.add_manifold(clone);
            }
        }
        const bool members = is_member(f) && is_member(g);
        const Flag boundary_flag = members ? Flag::yes : Flag::unknown;

        ManifoldDescription composite;
        composite.name = label;
        composite.dim = fd.dim;
        composite.oriented =
            (fd.oriented == Flag::yes && gd.oriented == Flag::yes)
                ? Flag::yes
                : Flag::unknown;
        const std::size_t remaining =
            f.incoming.components.size() + g.outgoing.components.size();
        composite.closed = remaining == 0 ? Flag::yes : Flag::no;
        // Compact surfaces with non-empty boundary are aspherical.
        if (composite.dim == 2 && composite.closed == Flag::no)
            composite.aspherical = Flag::yes;
        const std::size_t interface = f.outgoing.components.size();
        if (interface == 0) {
            composite.connected = Flag::no;
            if (fd.component_count && gd.component_count)
                composite.component_count =
                    *fd.component_count + *gd.component_count;
        } else if (fd.connected == Flag::yes && gd.connected == Flag::yes) {
            composite.connected = Flag::yes;
            composite.component_count = 1;
        }
        for (const auto& component : f.incoming.components)
            composite.boundary.push_back(
                {component, boundary_flag,
                 registry_.description(component).aspherical});
        for (const auto& component : g.outgoing.components)
            composite.boundary.push_back(
                {component, boundary_flag,
                 registry_.description(component).aspherical});

        GlueRelation glue;
        glue.left = f.label;
        glue.right = right_label;
        glue.along = f.outgoing.components;
        glue.amenable = glue_amenable(f, g);
        glue.pi1_injective = members ? Flag::yes : Flag::unknown;
        composite.glued = glue;
        registry_.add_manifold(composite);
        registry_.propagate();

        Cobordism cob;
        cob.label = label;
        cob.incoming = f.incoming;
        cob.outgoing = g.outgoing;
        cob.incoming_injective.assign(f.incoming.components.size(),
                                      boundary_flag);
        cob.outgoing_injective.assign(g.outgoing.components.size(),
                                      boundary_flag);
        return add(std::move(cob));
    }

    /** chi(W, incoming) = chi(W) - chi(incoming): the Reinhart-invariant
     *  functor on cobordisms. */
    long long chi_functor(const std::string& label) const {
        const Cobordism& cob = at(label);
        const auto& chi = registry_.query(cob.label).chi;
        if (!chi)
            throw CobordismError(label + ": chi of the body is unknown");
        long long incoming = 0;
        for (const auto& component : cob.incoming.components) {
            const auto& c = registry_.query(component).chi;
            if (!c)
                throw CobordismError(label + ": chi of incoming '" +
                                     component + "' is unknown");
            incoming += *c;
        }
        return *chi - incoming;
    }

    /** The relative simplicial-volume interval of the body; only defined on
     *  the amenable subcategory, where it is additive under composition. */
    Interval sv_functor(const std::string& label) const {
        const Cobordism& cob = at(label);
        std::string failure = membership_failure(cob);
        if (!failure.empty())
            throw CobordismError(
                label + ": not an amenable-category morphism (" + failure +
                "); the volume functor does not extend");
        const ManifoldDescription& desc = registry_.description(cob.label);
        Inv inv = desc.closed == Flag::yes ? Inv::sv : Inv::sv_rel;
        return registry_.query(cob.label, inv);
    }

private:
    Registry& registry_;
    std::map<std::string, Cobordism> morphisms_;
    std::vector<std::string> order_;

    Flag glue_amenable(const Cobordism& f, const Cobordism& g) const {
        for (const auto* object :
             {&f.incoming, &f.outgoing, &g.outgoing})
            for (const auto& component : object->components)
                if (registry_.description(component).pi1_amenable !=
                    Flag::yes)
                    return Flag::unknown;
        return Flag::yes;
    }

    void validate(const Cobordism& cob) const {
        if (!registry_.has(cob.label))
            throw CobordismError(cob.label +
                                 ": body is not a registered manifold");
        const ManifoldDescription& body = registry_.description(cob.label);
        if (cob.incoming.components.size() != cob.incoming_injective.size() ||
            cob.outgoing.components.size() != cob.outgoing_injective.size())
            throw CobordismError(cob.label +
                                 ": flag lists must match the objects");
        if (body.boundary.size() != cob.incoming.components.size() +
                                        cob.outgoing.components.size())
            throw CobordismError(
                cob.label +
                ": incoming and outgoing must exhaust the boundary");
        for (const auto& object : {cob.incoming, cob.outgoing}) {
            if (object.dim != body.dim - 1)
                throw CobordismError(cob.label +
                                     ": object dimension must be dim - 1");
            for (const auto& component : object.components) {
                const ManifoldDescription& c =
                    registry_.description(component);
                if (c.dim != body.dim - 1 || c.closed != Flag::yes)
                    throw CobordismError(cob.label + ": object component '" +
                                         component +
                                         "' must be closed of dimension " +
                                         std::to_string(body.dim - 1));
            }
        }
    }
};

/**
 * The sixteen connected genus-zero surface cobordisms G<a><b> with a
 * incoming and b outgoing circles (a, b <= 3), plus the circle object
 * itself. G00 is the 2-sphere; G10 and G01 are the disk caps, whose single
 * boundary circle bounds and is therefore not pi1-injective.
 */
inline void install_surface_generators(CobordismCategory& category) {
    Registry& registry = category.registry();
    if (!registry.has("S1")) {
        ManifoldDescription circle;
        circle.name = "S1";
        circle.dim = 1;
        circle.closed = Flag::yes;
        circle.oriented = Flag::yes;
        circle.connected = Flag::yes;
        circle.aspherical = Flag::yes;
        circle.pi1_amenable = Flag::yes;
        circle.pi1_residually_finite = Flag::yes;
        circle.component_count = 1;
        circle.declared_chi = 0;
        registry.add_manifold(circle);
    }
    for (int a = 0; a <= 3; ++a)
        for (int b = 0; b <= 3; ++b) {
            std::string name = "G" + std::to_string(a) + std::to_string(b);
            if (registry.has(name)) continue;
            const int k = a + b;
            ManifoldDescription body;
            body.name = name;
            body.dim = 2;
            body.closed = k == 0 ? Flag::yes : Flag::no;
            body.oriented = Flag::yes;
            body.connected = Flag::yes;
            body.component_count = 1;
            body.aspherical = k >= 1 ? Flag::yes : Flag::no;
            // genus zero with k boundary circles: pi1 is free of rank k-1
            body.pi1_amenable = k <= 2 ? Flag::yes : Flag::no;
            body.declared_chi = 2 - k;
            Flag injective = k >= 2 ? Flag::yes : Flag::no;
            for (int i = 0; i < k; ++i)
                body.boundary.push_back({"S1", injective, Flag::yes});
            registry.add_manifold(body);

            Cobordism cob;
            cob.label = name;
            cob.incoming.dim = 1;
            cob.incoming.components.assign(a, "S1");
            cob.outgoing.dim = 1;
            cob.outgoing.components.assign(b, "S1");
            cob.incoming_injective.assign(a, injective);
            cob.outgoing_injective.assign(b, injective);
            category.add(std::move(cob));
        }
    registry.propagate();
}

/**
 * A complete coordinate for the Reinhart bordism class of a closed oriented
 * manifold in dimensions <= 4. The cyclic part is exposed through concrete
 * invariants (signed points, component parity, chi/2) and the dimension-4
 * class through the pair (chi, sigma), constrained by chi = sigma (mod 2).
 */
inline ReinhartClass reinhart_class(const Registry& registry,
                                    const std::string& label, int d) {
    const ManifoldDescription& desc = registry.description(label);
    if (desc.dim != d)
        throw CobordismError(label + ": dimension is " +
                             std::to_string(desc.dim) + ", not " +
                             std::to_string(d));
    if (desc.closed != Flag::yes || desc.oriented != Flag::yes)
        throw CobordismError(label +
                             ": Reinhart classes need closed oriented "
                             "manifolds");
    ReinhartClass out;
    out.dimension = d;
    switch (d) {
        case 0: {
            if (!desc.signed_points)
                throw CobordismError(label + ": signed point count missing");
            out.coordinates = {*desc.signed_points};
            out.form = "signed point count";
            return out;
        }
        case 1: {
            if (!desc.component_count)
                throw CobordismError(label + ": component count missing");
            out.coordinates = {*desc.component_count % 2};
            out.form = "component count mod 2";
            return out;
        }
        case 2: {
            const auto& chi = registry.query(label).chi;
            if (!chi) throw CobordismError(label + ": chi unknown");
            if (*chi % 2 != 0)
                throw CobordismError(label +
                                     ": chi of a closed surface must be "
                                     "even");
            out.coordinates = {*chi / 2};
            out.form = "chi / 2";
            return out;
        }
        case 3: {
            out.form = "trivial";
            return out;
        }
        case 4: {
            const auto& chi = registry.query(label).chi;
            if (!chi) throw CobordismError(label + ": chi unknown");
            if (!desc.signature)
                throw CobordismError(label +
                                     ": signature must be declared in "
                                     "dimension 4");
            if ((*chi - *desc.signature) % 2 != 0)
                throw CobordismError(label +
                                     ": chi and signature must agree mod 2");
            out.coordinates = {*chi, *desc.signature};
            out.form = "(chi, sigma)";
            return out;
        }
        default:
            throw CobordismError("Reinhart classes are only exposed in "
                                 "dimensions 0..4");
    }
}

/**
 * Witness that the volume functor on the amenable subcategory admits no
 * extension to all cobordisms: an extension would be a Reinhart-bordism
 * invariant, spheres kill the cyclic part, so it would factor through
 * oriented bordism -- contradicting positivity on m u (-m).
 */
inline ObstructionReport extension_obstruction(const Registry& registry,
                                               const std::string& label) {
    const ManifoldDescription& desc = registry.description(label);
    if (desc.closed != Flag::yes || desc.oriented != Flag::yes ||
        desc.dim < 2)
        throw CobordismError(label +
                             ": the obstruction needs a closed oriented "
                             "manifold of dimension >= 2");
    const InvariantState& state = registry.query(label);
    const Interval& sv = state.sv.interval;
    const bool positive = sv.lo > 0 || (sv.lo == 0 && sv.lo_strict);
    if (!positive)
        throw CobordismError(label + ": positivity not established, sv in " +
                             to_string(sv));
    ObstructionReport report;
    report.target = label;
    report.sv = sv;
    report.steps.push_back(
        "suppose the volume functor extends to every cobordism; composing "
        "with arbitrary (non pi1-injective) cobordisms makes the closed-"
        "manifold value invariant under Reinhart bordism");
    report.steps.push_back(
        "spheres have vanishing simplicial volume, so the cyclic "
        "Euler-characteristic part of the Reinhart monoid cannot carry the "
        "value: it descends to oriented bordism classes");
    std::string doubled = label + " u (-" + label + ")";
    if (desc.dim == 4 && state.chi) {
        long long chi2 = 2 * *state.chi;
        report.steps.push_back(
            "dimension-4 bookkeeping: the Reinhart class of " + doubled +
            " is (chi, sigma) = (" + std::to_string(chi2) +
            ", 0), which dies in oriented bordism");
    }
    report.steps.push_back(
        doubled + " bounds the cylinder " + label +
        " x [0,1], so it is oriented-null-bordant and the extension must "
        "assign it 0");
    report.steps.push_back(
        "monoidality over disjoint union assigns " + doubled +
        " the value 2 * sv(" + label + ") in " +
        to_string(scale(sv, 2)) + ", which is strictly positive");
    report.steps.push_back("contradiction: no such extension exists");
    return report;
}

/** Interval sum of simplicial volumes along a connected-sum word; exact by
 *  additivity in dimensions >= 3. The empty word is the sphere, volume 0. */
inline Interval connsum_monoid_eval(const Registry& registry,
                                    const std::vector<std::string>& word,
                                    int n) {
    if (n < 3)
        throw CobordismError(
            "connected-sum additivity needs dimension >= 3 (it fails for "
            "surfaces)");
    Interval sum = Interval::point(0);
    for (const auto& label : word) {
        const ManifoldDescription& desc = registry.description(label);
        if (desc.dim != n)
            throw CobordismError(label + ": dimension is " +
                                 std::to_string(desc.dim) + ", not " +
                                 std::to_string(n));
        if (desc.closed != Flag::yes || desc.oriented != Flag::yes ||
            desc.connected != Flag::yes)
            throw CobordismError(label +
                                 ": summands must be closed oriented "
                                 "connected");
        sum = add(sum, registry.query(label, Inv::sv));
    }
    return sum;
}

}  // namespace svlab
