#pragma once

#include "certificates.hpp"
#include "interval.hpp"
#include "manifold.hpp"
#include "homology.hpp"
#include "rational.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace svlab {

struct InferenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/** Raised when two derivations force an empty interval or clashing exact
 *  values; the message names both provenance chains. */
struct InconsistencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/** Tri-state hypothesis flag: rules fire only on yes; no and unknown both
 *  block, because unknown never implies false. */
enum class Flag { unknown, yes, no };

inline std::string to_string(Flag flag) {
    switch (flag) {
        case Flag::unknown: return "unknown";
        case Flag::yes: return "yes";
        case Flag::no: return "no";
    }
    throw InferenceError("unreachable flag");
}

inline Flag flag_from_string(const std::string& text) {
    if (text == "unknown") return Flag::unknown;
    if (text == "yes" || text == "true") return Flag::yes;
    if (text == "no" || text == "false") return Flag::no;
    throw InferenceError("unknown flag value '" + text + "'");
}

struct BoundaryRef {
    std::string name;
    Flag pi1_injective = Flag::unknown;
    Flag aspherical = Flag::unknown;
    bool operator==(const BoundaryRef&) const = default;
};

struct FibreBundle {
    std::string fiber;
    std::string base;
    bool operator==(const FibreBundle&) const = default;
};

struct CoverRelation {
    std::string base;
    long long degree = 1;
    bool operator==(const CoverRelation&) const = default;
};

struct GlueRelation {
    std::string left;
    std::string right;                // == left for self-glueings
    std::vector<std::string> along;   // glued interface pieces (may be empty)
    Flag amenable = Flag::unknown;      // all boundary pi1's amenable
    Flag pi1_injective = Flag::unknown; // glued pieces pi1-injective
    bool operator==(const GlueRelation&) const = default;
};

/**
 * A declared manifold: everything the engine cannot decide is a tri-state
 * flag or optional value supplied by the user (or by an attached
 * triangulation). Relations reference previously registered names only, so
 * the reference graph is acyclic.
 */
struct ManifoldDescription {
    std::string name;
    int dim = -1;

    Flag closed = Flag::unknown;
    Flag oriented = Flag::unknown;
    Flag connected = Flag::unknown;
    Flag aspherical = Flag::unknown;
    std::vector<BoundaryRef> boundary;

    Flag pi1_amenable = Flag::unknown;
    Flag pi1_residually_finite = Flag::unknown;
    Flag pi1_hyperbolic_nonelementary = Flag::unknown;
    Flag pi1_lex = Flag::unknown;  // vocabulary only; no shipped rule fires on it
    Flag pi1_boundedly_acyclic = Flag::unknown;

    std::optional<long long> amcat_upper;
    std::optional<long long> self_map_degree;

    Flag hyperbolic = Flag::unknown;
    Flag negative_curvature = Flag::unknown;
    Flag locally_symmetric_noncompact = Flag::unknown;

    Flag smooth_s1_action = Flag::unknown;
    Flag f_structure = Flag::unknown;
    Flag affine_translation = Flag::unknown;
    Flag graph_3manifold = Flag::unknown;
    Flag mapping_torus_3 = Flag::unknown;
    Flag locally_coamenable_subcomplex = Flag::unknown;
    Flag relative_amenable_cover = Flag::unknown;
    Flag boundary_of_zero_rel_sv = Flag::unknown;

    std::optional<FibreBundle> fibre_bundle;
    std::optional<long long> signature;      // 4-dimensional only
    std::optional<long long> component_count;
    std::optional<long long> signed_points;  // dimension-0 bordism data

    std::optional<long long> declared_chi;
    std::optional<long long> declared_chi_rel;
    std::optional<Rational> declared_sv;
    std::optional<Rational> declared_sv_rel;

    std::vector<std::string> product_factors;
    std::vector<std::string> connsum_factors;
    std::optional<CoverRelation> cover_of;
    std::optional<GlueRelation> glued;
    std::optional<std::string> double_of;
    bool operator==(const ManifoldDescription&) const = default;
};

struct ProvenanceStep {
    std::string rule;
    std::string citation;
    std::string detail;
};

struct TrackedInterval {
    Interval interval;
    std::vector<ProvenanceStep> lo_chain;
    std::vector<ProvenanceStep> hi_chain;
};

/** The six tracked norm invariants. */
enum class Inv { sv, sv_int, sv_stable, sv_rel, sv_rel_int, sv_rel_stable };

inline const std::vector<Inv>& all_invariants() {
    static const std::vector<Inv> all = {Inv::sv,     Inv::sv_int,
                                         Inv::sv_stable, Inv::sv_rel,
                                         Inv::sv_rel_int, Inv::sv_rel_stable};
    return all;
}

inline std::string to_string(Inv inv) {
    switch (inv) {
        case Inv::sv: return "sv";
        case Inv::sv_int: return "sv_int";
        case Inv::sv_stable: return "sv_stable";
        case Inv::sv_rel: return "sv_rel";
        case Inv::sv_rel_int: return "sv_rel_int";
        case Inv::sv_rel_stable: return "sv_rel_stable";
    }
    throw InferenceError("unreachable invariant");
}

inline Inv inv_from_string(const std::string& text) {
    for (Inv inv : all_invariants())
        if (to_string(inv) == text) return inv;
    throw InferenceError("unknown invariant '" + text + "'");
}

struct InvariantState {
    TrackedInterval sv, sv_int, sv_stable;
    TrackedInterval sv_rel, sv_rel_int, sv_rel_stable;
    std::optional<long long> chi;
    std::vector<ProvenanceStep> chi_chain;
    std::optional<long long> chi_rel;
    std::vector<ProvenanceStep> chi_rel_chain;
    std::vector<long long> betti;
    std::vector<std::string> notes;

    TrackedInterval& slot(Inv inv) {
        switch (inv) {
            case Inv::sv: return sv;
            case Inv::sv_int: return sv_int;
            case Inv::sv_stable: return sv_stable;
            case Inv::sv_rel: return sv_rel;
            case Inv::sv_rel_int: return sv_rel_int;
            case Inv::sv_rel_stable: return sv_rel_stable;
        }
        throw InferenceError("unreachable invariant");
    }
    const TrackedInterval& slot(Inv inv) const {
        return const_cast<InvariantState*>(this)->slot(inv);
    }
};

struct RuleInfo {
    std::string id;
    std::string citation;
    std::string summary;
};

enum class GromovStatus {
    holds,
    vacuous,
    counterexample_candidate,
    non_hypothesis,
    unknown
};

inline std::string to_string(GromovStatus status) {
    switch (status) {
        case GromovStatus::holds: return "SVCHI-holds";
        case GromovStatus::vacuous: return "SVCHI-vacuous";
        case GromovStatus::counterexample_candidate:
            return "counterexample-candidate";
        case GromovStatus::non_hypothesis: return "non-hypothesis";
        case GromovStatus::unknown: return "unknown";
    }
    throw InferenceError("unreachable status");
}

struct GromovCheck {
    GromovStatus status = GromovStatus::unknown;
    bool relative = false;  // which form of the question was evaluated
    std::string detail;
    std::vector<std::string> notes;
};

namespace detail {

inline std::string render_chain(const std::vector<ProvenanceStep>& chain) {
    if (chain.empty()) return "(no derivation)";
    std::string out;
    for (std::size_t i = 0; i < chain.size(); ++i) {
        if (i > 0) out += "; ";
        out += chain[i].rule;
        if (!chain[i].detail.empty()) out += " [" + chain[i].detail + "]";
    }
    return out;
}

}  // namespace detail

/**
 * Declared-manifold registry with monotone interval propagation. All rule
 * conclusions only narrow; a forced-empty interval or clashing exact chi
 * raises InconsistencyError naming both provenance chains.
 */
class Registry {
public:
    void add_manifold(ManifoldDescription desc) {
        validate(desc);
        InvariantState state;
        if (desc.declared_chi)
            assign_chi(state.chi, state.chi_chain, desc.name, "chi",
                       *desc.declared_chi,
                       {"declared", "declared hypothesis", "chi declared"});
        if (desc.declared_chi_rel)
            assign_chi(state.chi_rel, state.chi_rel_chain, desc.name,
                       "chi_rel", *desc.declared_chi_rel,
                       {"declared", "declared hypothesis", "chi_rel declared"});
        order_.push_back(desc.name);
        states_.emplace(desc.name, std::move(state));
        const std::string name = desc.name;
        descriptions_.emplace(name, std::move(desc));
        const ManifoldDescription& stored = descriptions_.at(name);
        if (stored.declared_sv)
            restrict_interval(name, Inv::sv, Interval::point(*stored.declared_sv),
                              {"declared", "declared hypothesis", "sv declared"});
        if (stored.declared_sv_rel)
            restrict_interval(name, Inv::sv_rel,
                              Interval::point(*stored.declared_sv_rel),
                              {"declared", "declared hypothesis",
                               "sv_rel declared"});
    }

    bool has(const std::string& name) const {
        return descriptions_.count(name) > 0;
    }

    const ManifoldDescription& description(const std::string& name) const {
        auto it = descriptions_.find(name);
        if (it == descriptions_.end())
            throw InferenceError("unknown manifold '" + name + "'");
        return it->second;
    }

    const std::vector<std::string>& names() const { return order_; }

    /** Folds an audited triangulation into the description and state:
     *  dimension, closedness, connectedness, chi, chi_rel and Betti numbers. */
    void attach_triangulation(const std::string& name,
                              const ManifoldComplex& manifold) {
        ManifoldDescription& desc = mutable_description(name);
        if (desc.dim != manifold.dim())
            throw InferenceError(name + ": triangulation dimension " +
                                 std::to_string(manifold.dim()) +
                                 " != declared dimension " +
                                 std::to_string(desc.dim));
        merge_flag(desc.closed, manifold.is_closed(), name, "closed");
        merge_flag(desc.connected, manifold.is_connected(), name, "connected");
        merge_flag(desc.oriented, true, name, "oriented");

        InvariantState& state = states_.at(name);
        long long chi = manifold.complex().euler_characteristic();
        assign_chi(state.chi, state.chi_chain, name, "chi", chi,
                   {"triangulation", "attached triangulation",
                    "facet count alternating sum"});
        long long chi_boundary = 0;
        for (const auto& component : manifold.boundary_components())
            chi_boundary += component.complex.euler_characteristic();
        assign_chi(state.chi_rel, state.chi_rel_chain, name, "chi_rel",
                   chi - chi_boundary,
                   {"triangulation", "attached triangulation",
                    "chi minus boundary chi"});
        HomologyProfile profile = homology(manifold.complex());
        state.betti.assign(profile.betti.begin(), profile.betti.end());
    }

    /** Imports every certificate of a ledger as an upper endpoint. Every
     *  certificate is re-verified first; certificates whose targets are not
     *  registered are skipped. */
    void import_certificates(const Ledger& ledger) {
        for (std::size_t id = 0; id < ledger.size(); ++id) {
            VerifyReport report = verify(ledger, id);
            if (!report.pass)
                throw InferenceError("certificate #" + std::to_string(id) +
                                     " failed verification: " + report.detail);
            const Certificate& cert = ledger.certificate(id);
            if (!has(cert.target)) continue;
            std::optional<Inv> inv;
            switch (cert.kind) {
                case CertKind::real: inv = Inv::sv; break;
                case CertKind::integral: inv = Inv::sv_int; break;
                case CertKind::relative_real: inv = Inv::sv_rel; break;
                case CertKind::relative_integral: inv = Inv::sv_rel_int; break;
                case CertKind::stable_integral: {
                    Flag closed = description(cert.target).closed;
                    if (closed == Flag::yes) inv = Inv::sv_stable;
                    if (closed == Flag::no) inv = Inv::sv_rel_stable;
                    break;
                }
            }
            if (!inv) continue;
            narrow_hi(cert.target, *inv, cert.bound,
                      {"certificate", "certificate ledger",
                       "certificate #" + std::to_string(id) + " (" +
                           to_string(cert.kind) + ") bound " +
                           to_string(cert.bound)});
        }
    }

    /** Runs the full rule catalog to quiescence; returns the number of
     *  narrowing steps performed. */
    int propagate() { return run_rules(default_order()); }

    /** Runs the catalog in the given id order (used by the confluence
     *  property tests). Unknown ids are an error. */
    int propagate(const std::vector<std::string>& rule_order) {
        std::vector<std::size_t> order;
        for (const auto& id : rule_order) {
            bool found = false;
            const auto& table = rule_table();
            for (std::size_t i = 0; i < table.size(); ++i)
                if (table[i].info.id == id) {
                    order.push_back(i);
                    found = true;
                    break;
                }
            if (!found) throw InferenceError("unknown rule id '" + id + "'");
        }
        return run_rules(order);
    }

    const InvariantState& query(const std::string& name) const {
        auto it = states_.find(name);
        if (it == states_.end())
            throw InferenceError("unknown manifold '" + name + "'");
        return it->second;
    }

    Interval query(const std::string& name, Inv inv) const {
        return query(name).slot(inv).interval;
    }

    /** Evaluates the vanishing-implies-chi-zero question for one manifold:
     *  the closed form on (sv, chi), the relative form on (sv_rel, chi_rel). */
    GromovCheck gromov_check(const std::string& name) const {
        const ManifoldDescription& desc = description(name);
        const InvariantState& state = query(name);
        GromovCheck out;
        out.notes = state.notes;
        out.relative = desc.closed == Flag::no;
        const Interval& interval =
            out.relative ? state.sv_rel.interval : state.sv.interval;
        const std::optional<long long>& chi =
            out.relative ? state.chi_rel : state.chi;

        if (interval.lo > 0 || (interval.lo == 0 && interval.lo_strict)) {
            out.status = GromovStatus::vacuous;
            out.detail = "lower bound " + to_string(interval) +
                         " is positive; the implication holds vacuously";
            return out;
        }
        if (!(interval.is_point() && interval.lo == 0)) {
            out.status = GromovStatus::unknown;
            out.detail = "vanishing not established: interval " +
                         to_string(interval);
            return out;
        }
        if (!chi) {
            out.status = GromovStatus::unknown;
            out.detail = out.relative ? "sv_rel = 0 but chi_rel is unknown"
                                      : "sv = 0 but chi is unknown";
            return out;
        }
        if (*chi == 0) {
            out.status = GromovStatus::holds;
            out.detail = out.relative ? "sv_rel = 0 and chi_rel = 0"
                                      : "sv = 0 and chi = 0";
            return out;
        }
        std::vector<std::string> failing;
        auto need = [&](Flag flag, const std::string& label) {
            if (flag != Flag::yes)
                failing.push_back(label + " = " + to_string(flag));
        };
        need(desc.oriented, "oriented");
        need(desc.aspherical, "aspherical");
        if (out.relative) {
            need(desc.closed == Flag::no ? Flag::yes : Flag::no, "has-boundary");
            if (desc.boundary.empty())
                failing.push_back("boundary components undeclared");
            for (const auto& ref : desc.boundary) {
                if (ref.pi1_injective != Flag::yes)
                    failing.push_back("boundary " + ref.name +
                                      " pi1-injective = " +
                                      to_string(ref.pi1_injective));
                if (ref.aspherical != Flag::yes)
                    failing.push_back("boundary " + ref.name + " aspherical = " +
                                      to_string(ref.aspherical));
            }
        } else {
            need(desc.closed, "closed");
        }
        std::string chi_note =
            (out.relative ? std::string("chi_rel = ") : std::string("chi = ")) +
            std::to_string(*chi);
        if (failing.empty()) {
            out.status = GromovStatus::counterexample_candidate;
            out.detail = "vanishing holds, " + chi_note +
                         " != 0, and every hypothesis flag is yes";
        } else {
            out.status = GromovStatus::non_hypothesis;
            out.detail = "vanishing holds and " + chi_note +
                         " != 0, but hypotheses fail: ";
            for (std::size_t i = 0; i < failing.size(); ++i) {
                if (i > 0) out.detail += ", ";
                out.detail += failing[i];
            }
        }
        return out;
    }

    /** min |chi(W)| over the declared fillings of a closed aspherical
     *  manifold; every filling must be compact aspherical with the target as
     *  pi1-injective boundary and known chi. */
    long long fill_chi(const std::string& target,
                       const std::vector<std::string>& fillings) const {
        const ManifoldDescription& m = description(target);
        if (m.closed != Flag::yes)
            throw InferenceError(target + ": fillings need a closed manifold");
        if (m.aspherical != Flag::yes)
            throw InferenceError(target +
                                 ": fillings need an aspherical manifold");
        if (fillings.empty())
            throw InferenceError(target + ": empty filling list");
        std::optional<long long> best;
        for (const auto& wname : fillings) {
            const ManifoldDescription& w = description(wname);
            if (w.closed != Flag::no)
                throw InferenceError(wname +
                                     ": a filling must have boundary");
            if (w.aspherical != Flag::yes)
                throw InferenceError(wname + ": a filling must be aspherical");
            if (w.boundary.size() != 1 || w.boundary[0].name != target)
                throw InferenceError(wname + ": boundary must be exactly " +
                                     target);
            if (w.boundary[0].pi1_injective != Flag::yes)
                throw InferenceError(wname +
                                     ": boundary must be pi1-injective");
            const InvariantState& state = query(wname);
            if (!state.chi)
                throw InferenceError(wname + ": chi is unknown");
            long long value = *state.chi < 0 ? -*state.chi : *state.chi;
            if (!best || value < *best) best = value;
        }
        return *best;
    }

    static std::vector<RuleInfo> rule_catalog() {
        std::vector<RuleInfo> out;
        for (const auto& entry : rule_table()) out.push_back(entry.info);
        return out;
    }

private:
    using RuleFn = bool (Registry::*)(const std::string&);
    struct RuleEntry {
        RuleInfo info;
        RuleFn fn;
    };

    std::map<std::string, ManifoldDescription> descriptions_;
    std::map<std::string, InvariantState> states_;
    std::vector<std::string> order_;

    ManifoldDescription& mutable_description(const std::string& name) {
        auto it = descriptions_.find(name);
        if (it == descriptions_.end())
            throw InferenceError("unknown manifold '" + name + "'");
        return it->second;
    }

    static void merge_flag(Flag& flag, bool value, const std::string& name,
                           const std::string& label) {
        Flag incoming = value ? Flag::yes : Flag::no;
        if (flag == Flag::unknown) {
            flag = incoming;
            return;
        }
        if (flag != incoming)
            throw InconsistencyError(
                name + ": declared " + label + " = " + to_string(flag) +
                " conflicts with the attached triangulation (" +
                to_string(incoming) + ")");
    }

    void validate(const ManifoldDescription& desc) const {
        if (desc.name.empty()) throw InferenceError("empty manifold name");
        if (has(desc.name))
            throw InferenceError("manifold '" + desc.name +
                                 "' already registered");
        if (desc.dim < 0)
            throw InferenceError(desc.name + ": dimension must be >= 0");
        if (desc.closed == Flag::yes && !desc.boundary.empty())
            throw InferenceError(desc.name +
                                 ": closed manifolds have no boundary");
        for (const auto& ref : desc.boundary) {
            const ManifoldDescription& b = description_or_throw(
                ref.name, desc.name + ": dangling boundary reference '");
            if (b.dim != desc.dim - 1)
                throw InferenceError(desc.name + ": boundary '" + ref.name +
                                     "' has dimension " +
                                     std::to_string(b.dim) + ", expected " +
                                     std::to_string(desc.dim - 1));
            if (b.closed == Flag::no)
                throw InferenceError(desc.name + ": boundary '" + ref.name +
                                     "' must be a closed manifold");
        }
        if (desc.signature && desc.dim != 4)
            throw InferenceError(desc.name +
                                 ": signature is 4-dimensional only");
        if (desc.signature && desc.declared_chi &&
            ((*desc.declared_chi - *desc.signature) % 2) != 0)
            throw InferenceError(desc.name +
                                 ": chi and signature must agree mod 2");
        if (desc.component_count && *desc.component_count < 1)
            throw InferenceError(desc.name + ": component count must be >= 1");
        if (desc.component_count && *desc.component_count > 1 &&
            desc.connected == Flag::yes)
            throw InferenceError(desc.name +
                                 ": connected with component count > 1");
        if (desc.amcat_upper && *desc.amcat_upper < 1)
            throw InferenceError(desc.name + ": amcat upper bound must be >= 1");
        if (!desc.product_factors.empty()) {
            if (desc.product_factors.size() < 2)
                throw InferenceError(desc.name +
                                     ": a product needs >= 2 factors");
            int total = 0;
            for (const auto& f : desc.product_factors)
                total += description_or_throw(
                             f, desc.name + ": dangling product factor '")
                             .dim;
            if (total != desc.dim)
                throw InferenceError(desc.name +
                                     ": factor dimensions sum to " +
                                     std::to_string(total) + ", expected " +
                                     std::to_string(desc.dim));
        }
        if (!desc.connsum_factors.empty()) {
            if (desc.connsum_factors.size() < 2)
                throw InferenceError(desc.name +
                                     ": a connected sum needs >= 2 factors");
            for (const auto& f : desc.connsum_factors)
                if (description_or_throw(
                        f, desc.name + ": dangling connected-sum factor '")
                        .dim != desc.dim)
                    throw InferenceError(desc.name + ": summand '" + f +
                                         "' has the wrong dimension");
        }
        if (desc.cover_of) {
            const ManifoldDescription& base = description_or_throw(
                desc.cover_of->base, desc.name + ": dangling cover base '");
            if (base.dim != desc.dim)
                throw InferenceError(desc.name +
                                     ": cover base has the wrong dimension");
            if (desc.cover_of->degree < 1)
                throw InferenceError(desc.name + ": cover degree must be >= 1");
        }
        if (desc.glued) {
            const ManifoldDescription& left = description_or_throw(
                desc.glued->left, desc.name + ": dangling glueing piece '");
            const ManifoldDescription& right = description_or_throw(
                desc.glued->right, desc.name + ": dangling glueing piece '");
            if (left.dim != desc.dim || right.dim != desc.dim)
                throw InferenceError(desc.name +
                                     ": glueing pieces have the wrong "
                                     "dimension");
            // An empty interface is a disjoint union; closed pieces are
            // fine there but cannot be glued along anything.
            if (!desc.glued->along.empty() &&
                (left.closed == Flag::yes || right.closed == Flag::yes))
                throw InferenceError(desc.name +
                                     ": glueing pieces must have boundary");
            for (const auto& a : desc.glued->along) {
                const ManifoldDescription& piece = description_or_throw(
                    a, desc.name + ": dangling glueing interface '");
                if (piece.dim != desc.dim - 1)
                    throw InferenceError(desc.name + ": interface '" + a +
                                         "' has the wrong dimension");
            }
        }
        if (desc.double_of) {
            const ManifoldDescription& w = description_or_throw(
                *desc.double_of, desc.name + ": dangling double reference '");
            if (w.dim != desc.dim)
                throw InferenceError(desc.name +
                                     ": doubled manifold has the wrong "
                                     "dimension");
            if (w.closed == Flag::yes)
                throw InferenceError(desc.name +
                                     ": doubled manifold must have boundary");
        }
        if (desc.fibre_bundle) {
            const ManifoldDescription& fiber = description_or_throw(
                desc.fibre_bundle->fiber, desc.name + ": dangling fibre '");
            const ManifoldDescription& base = description_or_throw(
                desc.fibre_bundle->base, desc.name + ": dangling bundle base '");
            if (fiber.dim + base.dim != desc.dim)
                throw InferenceError(desc.name +
                                     ": fibre and base dimensions must sum "
                                     "to the total dimension");
        }
    }

    const ManifoldDescription& description_or_throw(
        const std::string& name, const std::string& prefix) const {
        auto it = descriptions_.find(name);
        if (it == descriptions_.end())
            throw InferenceError(prefix + name + "'");
        return it->second;
    }

    // --- state update helpers -------------------------------------------

    void check_not_empty(const std::string& name, Inv inv,
                         const TrackedInterval& tracked) const {
        if (!tracked.interval.empty()) return;
        throw InconsistencyError(
            name + "." + to_string(inv) + " is empty: lower bound " +
            to_string(tracked.interval.lo) +
            (tracked.interval.lo_strict ? " (strict)" : "") + " via {" +
            detail::render_chain(tracked.lo_chain) +
            "} exceeds upper bound " +
            (tracked.interval.hi ? to_string(*tracked.interval.hi)
                                 : std::string("inf")) +
            " via {" + detail::render_chain(tracked.hi_chain) + "}");
    }

    bool narrow_hi(const std::string& name, Inv inv, const Rational& value,
                   ProvenanceStep step) {
        TrackedInterval& tracked = states_.at(name).slot(inv);
        if (!tracked.interval.narrow_hi(value)) return false;
        tracked.hi_chain.push_back(std::move(step));
        check_not_empty(name, inv, tracked);
        return true;
    }

    bool narrow_lo(const std::string& name, Inv inv, const Rational& value,
                   bool strict, ProvenanceStep step) {
        TrackedInterval& tracked = states_.at(name).slot(inv);
        if (!tracked.interval.narrow_lo(value, strict)) return false;
        tracked.lo_chain.push_back(std::move(step));
        check_not_empty(name, inv, tracked);
        return true;
    }

    bool restrict_interval(const std::string& name, Inv inv,
                           const Interval& interval,
                           const ProvenanceStep& step) {
        bool changed = narrow_lo(name, inv, interval.lo, interval.lo_strict,
                                 step);
        if (interval.hi) changed = narrow_hi(name, inv, *interval.hi, step) ||
                                   changed;
        return changed;
    }

    void assign_chi(std::optional<long long>& target,
                    std::vector<ProvenanceStep>& chain,
                    const std::string& name, const std::string& label,
                    long long value, ProvenanceStep step) const {
        if (target) {
            if (*target != value)
                throw InconsistencyError(
                    name + "." + label + ": value " + std::to_string(*target) +
                    " via {" + detail::render_chain(chain) +
                    "} conflicts with " + std::to_string(value) + " via {" +
                    detail::render_chain({step}) + "}");
            return;
        }
        target = value;
        chain.push_back(std::move(step));
    }

    bool set_chi(const std::string& name, long long value,
                 ProvenanceStep step) {
        InvariantState& state = states_.at(name);
        bool fresh = !state.chi.has_value();
        assign_chi(state.chi, state.chi_chain, name, "chi", value,
                   std::move(step));
        return fresh;
    }

    bool set_chi_rel(const std::string& name, long long value,
                     ProvenanceStep step) {
        InvariantState& state = states_.at(name);
        bool fresh = !state.chi_rel.has_value();
        assign_chi(state.chi_rel, state.chi_rel_chain, name, "chi_rel", value,
                   std::move(step));
        return fresh;
    }

    /** The slot holding the manifold's own headline norm: sv when closed,
     *  sv_rel when it has boundary; nullopt while closedness is unknown. */
    std::optional<Inv> own_slot(const ManifoldDescription& desc,
                                bool integral = false,
                                bool stable = false) const {
        if (desc.closed == Flag::yes)
            return stable ? Inv::sv_stable : (integral ? Inv::sv_int : Inv::sv);
        if (desc.closed == Flag::no)
            return stable ? Inv::sv_rel_stable
                          : (integral ? Inv::sv_rel_int : Inv::sv_rel);
        return std::nullopt;
    }

    // --- rules ------------------------------------------------------------

    bool rule_amenable(const std::string& name) {
        const ManifoldDescription& d = description(name);
        if (d.closed != Flag::yes || d.dim < 1) return false;
        if (d.pi1_amenable != Flag::yes && d.pi1_boundedly_acyclic != Flag::yes)
            return false;
        const bool acyclic = d.pi1_amenable != Flag::yes;
        return narrow_hi(name, Inv::sv, 0,
                         {"R-amenable",
                          "vanishing for amenable (or boundedly acyclic) "
                          "fundamental groups (Gromov; Ivanov)",
                          acyclic ? "pi1 boundedly acyclic" : "pi1 amenable"});
    }

    bool rule_bdry_amenable(const std::string& name) {
        const ManifoldDescription& d = description(name);
        if (d.closed != Flag::no || d.pi1_amenable != Flag::yes) return false;
        if (d.boundary.empty()) return false;
        for (const auto& ref : d.boundary)
            if (description(ref.name).pi1_amenable != Flag::yes) return false;
        return narrow_hi(name, Inv::sv_rel, 0,
                         {"R-bdry-amenable",
                          "vanishing when the manifold and all boundary "
                          "components have amenable fundamental groups "
                          "(Gromov)",
                          "pi1(M) and all pi1(boundary) amenable"});
    }

    bool rule_selfmap(const std::string& name) {
        const ManifoldDescription& d = description(name);
        if (!d.self_map_degree) return false;
        long long deg = *d.self_map_degree;
        if (deg >= -1 && deg <= 1) return false;
        auto slot = own_slot(d);
        if (!slot) return false;
        return narrow_hi(name, *slot, 0,
                         {"R-selfmap",
                          "self-maps of degree not in {0,1,-1} force "
                          "vanishing (Gromov)",
                          "self-map of degree " + std::to_string(deg)});
    }

    bool rule_bounding(const std::string& name) {
        const ManifoldDescription& d = description(name);
        if (d.closed != Flag::yes || d.boundary_of_zero_rel_sv != Flag::yes)
            return false;
        return narrow_hi(name, Inv::sv, 0,
                         {"R-bounding",
                          "boundaries of compact manifolds with vanishing "
                          "relative simplicial volume (Gromov)",
                          "declared boundary of a zero-relative-volume "
                          "manifold"});
    }

    bool rule_s1_f_structure(const std::string& name) {
        const ManifoldDescription& d = description(name);
        if (d.closed != Flag::yes) return false;
        if (d.smooth_s1_action != Flag::yes && d.f_structure != Flag::yes)
            return false;
        const bool s1 = d.smooth_s1_action == Flag::yes;
        return narrow_hi(name, Inv::sv, 0,
                         {"R-s1-f-structure",
                          "smooth circle actions (Yano) and F-structures "
                          "(Cheeger-Gromov)",
                          s1 ? "smooth S1-action" : "F-structure"});
    }

    bool rule_affine(const std::string& name) {
        const ManifoldDescription& d = description(name);
        if (d.closed != Flag::yes || d.affine_translation != Flag::yes)
            return false;
        return narrow_hi(name, Inv::sv, 0,
                         {"R-affine",
                          "affine structures with injective holonomy "
                          "containing a pure translation "
                          "(Bucher-Connell-Lafont)",
                          "affine with pure translation"});
    }

    bool rule_graph3(const std::string& name) {
        const ManifoldDescription& d = description(name);
        if (d.closed != Flag::yes || d.dim != 3 ||
            d.graph_3manifold != Flag::yes)
            return false;
        return narrow_hi(name, Inv::sv, 0,
                         {"R-graph3", "graph 3-manifolds (Soma)",
                          "graph 3-manifold"});
    }

    bool rule_mapping_torus_3(const std::string& name) {
        const ManifoldDescription& d = description(name);
        if (d.closed != Flag::yes || d.dim != 4 ||
            d.mapping_torus_3 != Flag::yes)
            return false;
        return narrow_hi(name, Inv::sv, 0,
                         {"R-mapping-torus-3",
                          "mapping tori of 3-manifolds (Bucher-Neofytidis)",
                          "mapping torus of a 3-manifold"});
    }

    bool rule_amcat_sv(const std::string& name) {
        const ManifoldDescription& d = description(name);
        if (d.closed != Flag::yes || d.dim < 1) return false;
        if (!d.amcat_upper || *d.amcat_upper > d.dim) return false;
        return narrow_hi(name, Inv::sv, 0,
                         {"R-amcat-sv",
                          "Gromov's vanishing theorem for amenable covers",
                          "amcat <= " + std::to_string(*d.amcat_upper) +
                              " <= dim"});
    }

    bool rule_amcat_chi(const std::string& name) {
        const ManifoldDescription& d = description(name);
        if (d.closed != Flag::yes || d.aspherical != Flag::yes) return false;
        if (!d.amcat_upper || *d.amcat_upper > d.dim) return false;
        return set_chi(name, 0,
                       {"R-amcat-chi",
                        "Euler characteristic and amenable covers (Sauer)",
                        "closed aspherical with amcat <= dim"});
    }

    bool rule_fibre(const std::string& name) {
        const ManifoldDescription& d = description(name);
        if (!d.fibre_bundle) return false;
        const ManifoldDescription& fiber = description(d.fibre_bundle->fiber);
        const ManifoldDescription& base = description(d.fibre_bundle->base);
        bool changed = false;
        const bool small_fiber =
            fiber.amcat_upper &&
            *fiber.amcat_upper * (base.dim + 1) <= d.dim;
        if (small_fiber && d.closed == Flag::yes)
            changed |= narrow_hi(
                name, Inv::sv, 0,
                {"R-fibre",
                 "fibre bundles whose fibre has small amenable category "
                 "(Loeh-Moraschini)",
                 "amcat(fibre) * (dim(base)+1) <= dim"});
        if (small_fiber && d.closed == Flag::yes && d.aspherical == Flag::yes)
            changed |= set_chi(name, 0,
                               {"R-fibre",
                                "Euler characteristic and amenable covers "
                                "(Sauer), via the fibre estimate",
                                "closed aspherical total space"});
        if (small_fiber && fiber.aspherical == Flag::yes) {
            changed |= set_chi(d.fibre_bundle->fiber, 0,
                               {"R-fibre",
                                "the fibre estimate forces amcat(fibre) <= "
                                "dim(fibre); Euler characteristic vanishes "
                                "(Sauer)",
                                "aspherical fibre of " + name});
            changed |= set_chi(name, 0,
                               {"R-fibre",
                                "multiplicativity with a chi-zero fibre",
                                "chi(fibre) = 0"});
        }
        const auto& fc = states_.at(d.fibre_bundle->fiber).chi;
        const auto& bc = states_.at(d.fibre_bundle->base).chi;
        if (fc && bc)
            changed |= set_chi(name, *fc * *bc,
                               {"R-fibre",
                                "multiplicativity of the Euler "
                                "characteristic in fibre bundles",
                                "chi = chi(fibre) * chi(base)"});
        return changed;
    }

    bool rule_relvan(const std::string& name) {
        const ManifoldDescription& d = description(name);
        if (d.closed != Flag::no || d.relative_amenable_cover != Flag::yes)
            return false;
        return narrow_hi(name, Inv::sv_rel, 0,
                         {"R-relvan",
                          "relative vanishing theorem for amenable covers "
                          "(via Gromov's vanishing-finiteness theorem)",
                          "declared relative amenable cover"});
    }

    bool rule_coamenable(const std::string& name) {
        const ManifoldDescription& d = description(name);
        if (d.closed != Flag::no ||
            d.locally_coamenable_subcomplex != Flag::yes)
            return false;
        return narrow_hi(name, Inv::sv_rel, 0,
                         {"R-coamenable",
                          "locally co-amenable subcomplexes (Gromov; "
                          "Frigerio-Moraschini)",
                          "declared locally co-amenable subcomplex"});
    }

    bool rule_triple_product(const std::string& name) {
        const ManifoldDescription& d = description(name);
        if (d.product_factors.size() < 3) return false;
        for (const auto& f : d.product_factors)
            if (description(f).closed != Flag::no) return false;
        return narrow_hi(name, Inv::sv_rel, 0,
                         {"R-triple-product",
                          "products of three or more manifolds with "
                          "non-empty boundary (Gromov; Frigerio-Moraschini)",
                          std::to_string(d.product_factors.size()) +
                              " factors, all with boundary"});
    }

    bool rule_product_bounds(const std::string& name) {
        const ManifoldDescription& d = description(name);
        if (d.product_factors.size() != 2) return false;
        const ManifoldDescription& a = description(d.product_factors[0]);
        const ManifoldDescription& b = description(d.product_factors[1]);
        if (a.closed != Flag::yes && b.closed != Flag::yes) return false;
        if (a.closed == Flag::unknown || b.closed == Flag::unknown)
            return false;
        auto slot_a = own_slot(a);
        auto slot_b = own_slot(b);
        auto slot_p = own_slot(d);
        if (!slot_a || !slot_b || !slot_p) return false;
        const Interval& ia = query(d.product_factors[0], *slot_a);
        const Interval& ib = query(d.product_factors[1], *slot_b);
        Interval bounds = mul(ia, ib);
        if (bounds.hi)
            *bounds.hi *= Rational(binomial(d.dim, a.dim));
        return restrict_interval(
            name, *slot_p, bounds,
            {"R-product-bounds",
             "product inequalities with the binomial constant (Gromov; "
             "Bucher; Loeh)",
             "factors " + d.product_factors[0] + ", " + d.product_factors[1] +
                 "; constant C(" + std::to_string(d.dim) + "," +
                 std::to_string(a.dim) + ")"});
    }

    bool rule_connsum(const std::string& name) {
        const ManifoldDescription& d = description(name);
        if (d.connsum_factors.empty()) return false;
        if (d.closed != Flag::yes) return false;
        for (const auto& f : d.connsum_factors)
            if (description(f).closed != Flag::yes) return false;
        bool changed = false;
        if (d.dim >= 3) {
            Interval sum = Interval::point(0);
            for (const auto& f : d.connsum_factors)
                sum = add(sum, query(f, Inv::sv));
            changed |= restrict_interval(
                name, Inv::sv, sum,
                {"R-connsum",
                 "additivity of simplicial volume under connected sums in "
                 "dimension >= 3 (Gromov)",
                 "sum over " + std::to_string(d.connsum_factors.size()) +
                     " summands"});
        }
        bool all_chi = true;
        long long total = 0;
        for (const auto& f : d.connsum_factors) {
            const auto& chi = states_.at(f).chi;
            if (!chi) {
                all_chi = false;
                break;
            }
            total += *chi;
        }
        if (all_chi && d.dim >= 1) {
            long long sphere_chi = (d.dim % 2 == 0) ? 2 : 0;
            long long k = static_cast<long long>(d.connsum_factors.size());
            changed |= set_chi(name, total - (k - 1) * sphere_chi,
                               {"R-connsum",
                                "chi(M # N) = chi(M) + chi(N) - chi(S^n)",
                                "alternating sphere correction"});
        }
        return changed;
    }

    bool rule_glue_subadd(const std::string& name) {
        const ManifoldDescription& d = description(name);
        if (!d.glued || d.glued->amenable != Flag::yes) return false;
        auto slot = own_slot(d);
        auto slot_l = own_slot(description(d.glued->left));
        auto slot_r = own_slot(description(d.glued->right));
        if (!slot || !slot_l || !slot_r) return false;
        const bool self = d.glued->left == d.glued->right;
        const Interval& il = query(d.glued->left, *slot_l);
        if (!il.hi) return false;
        Rational total = *il.hi;
        if (!self) {
            const Interval& ir = query(d.glued->right, *slot_r);
            if (!ir.hi) return false;
            total += *ir.hi;
        }
        return narrow_hi(name, *slot, total,
                         {"R-glue-subadd",
                          "subadditivity under amenable glueings (Gromov; "
                          "Bucher-Burger-Frigerio-Iozzi-Pagliantini-"
                          "Pozzetti)",
                          self ? "self-glueing of " + d.glued->left
                               : d.glued->left + " glued to " +
                                     d.glued->right});
    }

    bool rule_glue_add(const std::string& name) {
        const ManifoldDescription& d = description(name);
        if (!d.glued || d.glued->amenable != Flag::yes ||
            d.glued->pi1_injective != Flag::yes)
            return false;
        auto slot = own_slot(d);
        auto slot_l = own_slot(description(d.glued->left));
        auto slot_r = own_slot(description(d.glued->right));
        if (!slot || !slot_l || !slot_r) return false;
        const bool self = d.glued->left == d.glued->right;
        Interval sum = query(d.glued->left, *slot_l);
        if (!self) sum = add(sum, query(d.glued->right, *slot_r));
        return restrict_interval(
            name, *slot, sum,
            {"R-glue-add",
             "additivity under amenable pi1-injective glueings (Gromov; "
             "Bucher-Burger-Frigerio-Iozzi-Pagliantini-Pozzetti)",
             self ? "self-glueing of " + d.glued->left
                  : d.glued->left + " glued to " + d.glued->right});
    }

    bool rule_glue_chi(const std::string& name) {
        const ManifoldDescription& d = description(name);
        if (!d.glued) return false;
        const bool self = d.glued->left == d.glued->right;
        bool changed = false;
        long long interface_total = 0;
        bool interfaces_known = true;
        for (const auto& a : d.glued->along) {
            const auto& chi = states_.at(a).chi;
            if (!chi) {
                interfaces_known = false;
                break;
            }
            interface_total += *chi;
        }
        if (!interfaces_known) return false;
        const auto& lchi = states_.at(d.glued->left).chi;
        const auto& rchi = states_.at(d.glued->right).chi;
        if (lchi && (self || rchi)) {
            long long chi = self ? *lchi - interface_total
                                 : *lchi + *rchi - interface_total;
            changed |= set_chi(name, chi,
                               {"R-glue-chi",
                                "inclusion-exclusion for the Euler "
                                "characteristic under glueings",
                                self ? "chi = chi(" + d.glued->left +
                                           ") - chi(interfaces)"
                                     : "chi = chi(" + d.glued->left +
                                           ") + chi(" + d.glued->right +
                                           ") - chi(interfaces)"});
        }
        const auto& lrel = states_.at(d.glued->left).chi_rel;
        const auto& rrel = states_.at(d.glued->right).chi_rel;
        if (lrel && (self || rrel)) {
            long long chi_rel = self ? *lrel + interface_total
                                     : *lrel + *rrel + interface_total;
            changed |= set_chi_rel(name, chi_rel,
                                   {"R-glue-chi",
                                    "relative Euler characteristic under "
                                    "glueings",
                                    "chi_rel adds the interface chi back"});
        }
        return changed;
    }

    bool rule_bdry_est(const std::string& name) {
        const ManifoldDescription& d = description(name);
        if (d.closed != Flag::no || d.boundary.empty()) return false;
        struct Variant {
            Inv boundary_inv;
            Inv rel_inv;
            const char* label;
        };
        static const Variant variants[] = {
            {Inv::sv, Inv::sv_rel, "real"},
            {Inv::sv_int, Inv::sv_rel_int, "integral"},
            {Inv::sv_stable, Inv::sv_rel_stable, "stable"},
        };
        bool changed = false;
        for (const auto& variant : variants) {
            Rational total = 0;
            bool strict = false;
            for (const auto& ref : d.boundary) {
                const Interval& iv = query(ref.name, variant.boundary_inv);
                total += iv.lo;
                strict = strict || iv.lo_strict;
            }
            Rational bound = total / Rational(d.dim + 1);
            changed |= narrow_lo(
                name, variant.rel_inv, bound, strict,
                {"R-bdry-est",
                 "boundary estimate: the relative volume dominates the "
                 "boundary volume divided by (dim + 1) (Gromov)",
                 std::string(variant.label) + " variant over " +
                     std::to_string(d.boundary.size()) + " components"});
        }
        return changed;
    }

    bool rule_stable_double(const std::string& name) {
        const ManifoldDescription& d = description(name);
        if (!d.double_of || d.closed == Flag::no) return false;
        struct Variant {
            Inv out;
            Inv in;
            const char* label;
        };
        static const Variant variants[] = {
            {Inv::sv, Inv::sv_rel, "real"},
            {Inv::sv_int, Inv::sv_rel_int, "integral"},
            {Inv::sv_stable, Inv::sv_rel_stable, "stable"},
        };
        bool changed = false;
        for (const auto& variant : variants) {
            const Interval& iv = query(*d.double_of, variant.in);
            if (!iv.hi) continue;
            changed |= narrow_hi(
                name, variant.out, Rational(2) * *iv.hi,
                {"R-stable-double",
                 "the double of a relative cycle bounds the double: "
                 "||D(M)|| <= 2 ||M, dM|| (real, integral, stable)",
                 std::string(variant.label) + " variant from " +
                     *d.double_of});
        }
        return changed;
    }

    bool rule_betti(const std::string& name) {
        const ManifoldDescription& d = description(name);
        const InvariantState& state = states_.at(name);
        if (state.betti.empty()) return false;
        auto slot = own_slot(d, /*integral=*/true);
        if (!slot) return false;
        long long best = 0;
        std::size_t arg = 0;
        for (std::size_t k = 0; k < state.betti.size(); ++k)
            if (state.betti[k] > best) {
                best = state.betti[k];
                arg = k;
            }
        if (best <= 0) return false;
        return narrow_lo(name, *slot, Rational(best), false,
                         {"R-betti",
                          "Poincare-duality Betti estimate for integral "
                          "simplicial volume (Gromov; Kionke-Loeh)",
                          "b_" + std::to_string(arg) + " = " +
                              std::to_string(best)});
    }

    bool rule_chi_stable(const std::string& name) {
        const ManifoldDescription& d = description(name);
        const InvariantState& state = states_.at(name);
        const std::optional<long long>& chi =
            d.closed == Flag::yes ? state.chi : state.chi_rel;
        if (d.closed == Flag::unknown || !chi) return false;
        long long abs_chi = *chi < 0 ? -*chi : *chi;
        if (abs_chi == 0) return false;
        Rational bound = Rational(abs_chi) / Rational(d.dim + 1);
        auto stable = own_slot(d, false, /*stable=*/true);
        auto integral = own_slot(d, /*integral=*/true);
        ProvenanceStep step{
            "R-chi-stable",
            "|chi(M, dM)| <= (n+1) * stable integral volume (Kionke-Loeh; "
            "Frigerio-Loeh-Pagliantini-Sauer)",
            "|chi| = " + std::to_string(abs_chi) + ", n + 1 = " +
                std::to_string(d.dim + 1)};
        bool changed = narrow_lo(name, *stable, bound, false, step);
        changed |= narrow_lo(name, *integral, bound, false, step);
        return changed;
    }

    bool rule_integral_ge_real(const std::string& name) {
        const ManifoldDescription& d = description(name);
        struct Chain {
            Inv small, mid, large;
        };
        static const Chain closed_chain{Inv::sv, Inv::sv_stable, Inv::sv_int};
        static const Chain rel_chain{Inv::sv_rel, Inv::sv_rel_stable,
                                     Inv::sv_rel_int};
        const Chain* chain = nullptr;
        if (d.closed == Flag::yes) chain = &closed_chain;
        if (d.closed == Flag::no) chain = &rel_chain;
        if (!chain) return false;
        ProvenanceStep step{"R-integral-ge-real",
                            "||M|| <= ||M||_Z^infty <= ||M||_Z from the "
                            "definitions",
                            "norm comparison chain"};
        bool changed = false;
        auto flow = [&](Inv small, Inv large) {
            const Interval lo_src = query(name, small);
            const Interval hi_src = query(name, large);
            if (hi_src.hi)
                changed |= narrow_hi(name, small, *hi_src.hi, step);
            changed |= narrow_lo(name, large, lo_src.lo, lo_src.lo_strict,
                                 step);
        };
        flow(chain->small, chain->mid);
        flow(chain->mid, chain->large);
        flow(chain->small, chain->large);
        return changed;
    }

    bool identify(const std::string& name, Inv a, Inv b,
                  const ProvenanceStep& step) {
        bool changed = restrict_interval(name, a, query(name, b), step);
        changed |= restrict_interval(name, b, query(name, a), step);
        return changed;
    }

    bool rule_sisv_equal(const std::string& name) {
        const ManifoldDescription& d = description(name);
        if (d.dim != 2 || d.aspherical != Flag::yes ||
            d.oriented != Flag::yes)
            return false;
        ProvenanceStep step{"R-sisv-equal",
                            "stable integral simplicial volume of aspherical "
                            "surfaces equals the simplicial volume (Gromov)",
                            "compact aspherical oriented surface"};
        if (d.closed == Flag::yes)
            return identify(name, Inv::sv, Inv::sv_stable, step);
        // With boundary the equality needs chi <= 0: the disk has no
        // non-trivial covers, so its stable integral volume stays positive.
        const InvariantState& state = states_.at(name);
        if (d.closed == Flag::no && state.chi && *state.chi <= 0)
            return identify(name, Inv::sv_rel, Inv::sv_rel_stable, step);
        return false;
    }

    bool rule_sisv_amenable(const std::string& name) {
        const ManifoldDescription& d = description(name);
        if (d.closed != Flag::yes || d.aspherical != Flag::yes) return false;
        if (d.pi1_residually_finite != Flag::yes ||
            d.pi1_amenable != Flag::yes)
            return false;
        return identify(name, Inv::sv, Inv::sv_stable,
                        {"R-sisv-amenable",
                         "residually finite amenable fundamental groups "
                         "(Frigerio-Loeh-Pagliantini-Sauer)",
                         "closed aspherical, pi1 residually finite amenable"});
    }

    bool rule_positive(const std::string& name) {
        const ManifoldDescription& d = description(name);
        if (d.closed != Flag::yes) return false;
        std::string reason;
        if (d.hyperbolic == Flag::yes)
            reason = "hyperbolic (Gromov-Thurston)";
        else if (d.negative_curvature == Flag::yes)
            reason = "negative curvature (Inoue-Yano)";
        else if (d.locally_symmetric_noncompact == Flag::yes)
            reason = "locally symmetric of non-compact type "
                     "(Lafont-Schmidt; Bucher)";
        else if (d.aspherical == Flag::yes &&
                 d.pi1_hyperbolic_nonelementary == Flag::yes)
            reason = "aspherical with non-elementary hyperbolic fundamental "
                     "group (Mineyev)";
        else
            return false;
        return narrow_lo(name, Inv::sv, 0, true,
                         {"R-positive",
                          "geometric positivity of the simplicial volume",
                          reason});
    }

    bool rule_surface(const std::string& name) {
        const ManifoldDescription& d = description(name);
        if (d.dim != 2 || d.oriented != Flag::yes ||
            d.connected != Flag::yes)
            return false;
        const InvariantState& state = states_.at(name);
        if (!state.chi) return false;
        auto slot = own_slot(d);
        if (!slot) return false;
        Rational value = *state.chi < 0 ? Rational(-2 * *state.chi)
                                        : Rational(0);
        return restrict_interval(
            name, *slot, Interval::point(value),
            {"R-surface",
             "simplicial volume of compact oriented surfaces: "
             "max(0, -2 chi) (Gromov)",
             "chi = " + std::to_string(*state.chi)});
    }

    bool rule_parity_products(const std::string& name) {
        const ManifoldDescription& d = description(name);
        if (d.product_factors.size() != 2) return false;
        const ManifoldDescription& a = description(d.product_factors[0]);
        const ManifoldDescription& b = description(d.product_factors[1]);
        if ((a.dim + b.dim) % 2 == 0) return false;
        auto bounded_aspherical_injective =
            [&](const ManifoldDescription& m) {
                if (m.closed != Flag::no || m.aspherical != Flag::yes)
                    return false;
                if (m.boundary.empty()) return false;
                for (const auto& ref : m.boundary)
                    if (ref.pi1_injective != Flag::yes ||
                        ref.aspherical != Flag::yes)
                        return false;
                return true;
            };
        if (!bounded_aspherical_injective(a) ||
            !bounded_aspherical_injective(b))
            return false;
        const auto& achi = states_.at(d.product_factors[0]).chi;
        const auto& bchi = states_.at(d.product_factors[1]).chi;
        if (!achi || !bchi || *achi * *bchi == 0) return false;
        const Interval& rel = query(name, Inv::sv_rel);
        if (!(rel.is_point() && rel.lo == 0)) return false;
        std::string note =
            "parity products: the boundary of this product is a closed "
            "aspherical even-dimensional manifold with vanishing simplicial "
            "volume and chi = " +
            std::to_string(2 * *achi * *bchi) +
            " != 0 - a candidate against vanishing-implies-chi-zero";
        InvariantState& state = states_.at(name);
        if (std::find(state.notes.begin(), state.notes.end(), note) !=
            state.notes.end())
            return false;
        state.notes.push_back(note);
        return true;
    }

    bool rule_degree(const std::string& name) {
        const ManifoldDescription& d = description(name);
        if (!d.cover_of) return false;
        const std::string& base = d.cover_of->base;
        const ManifoldDescription& bd = description(base);
        const Rational degree(d.cover_of->degree);
        bool changed = false;
        ProvenanceStep step{"R-degree",
                            "multiplicativity of the simplicial volume under "
                            "finite coverings (Gromov)",
                            "degree " + std::to_string(d.cover_of->degree) +
                                " cover of " + base};
        auto slot_n = own_slot(d);
        auto slot_b = own_slot(bd);
        if (slot_n && slot_b && d.closed == bd.closed) {
            changed |= restrict_interval(name, *slot_n,
                                         scale(query(base, *slot_b), degree),
                                         step);
            Interval down = query(name, *slot_n);
            changed |= restrict_interval(base, *slot_b,
                                         scale(down, Rational(1) / degree),
                                         step);
        }
        const auto& cover_chi = states_.at(name).chi;
        const auto& base_chi = states_.at(base).chi;
        ProvenanceStep chi_step{"R-degree",
                                "multiplicativity of the Euler "
                                "characteristic under finite coverings",
                                "degree " +
                                    std::to_string(d.cover_of->degree)};
        if (base_chi)
            changed |= set_chi(name, *base_chi * d.cover_of->degree, chi_step);
        if (cover_chi) {
            if (*cover_chi % d.cover_of->degree != 0)
                throw InconsistencyError(
                    name + ": chi = " + std::to_string(*cover_chi) +
                    " is not divisible by the covering degree " +
                    std::to_string(d.cover_of->degree) + " over " + base);
            changed |= set_chi(base, *cover_chi / d.cover_of->degree,
                               chi_step);
        }
        if (d.connected == Flag::yes && d.closed == bd.closed) {
            ProvenanceStep stable_step{
                "R-degree",
                "a declared connected cover witnesses the stable integral "
                "volume: ||B||_Z^infty <= ||N||_Z / d",
                "degree " + std::to_string(d.cover_of->degree) + " cover " +
                    name};
            auto stable = own_slot(bd, false, true);
            auto integral = own_slot(d, true);
            auto cover_stable = own_slot(d, false, true);
            if (stable && integral) {
                const Interval& iv = query(name, *integral);
                if (iv.hi)
                    changed |= narrow_hi(base, *stable, *iv.hi / degree,
                                         stable_step);
            }
            if (stable && cover_stable) {
                const Interval& iv = query(name, *cover_stable);
                if (iv.hi)
                    changed |= narrow_hi(base, *stable, *iv.hi / degree,
                                         stable_step);
            }
        }
        return changed;
    }

    bool rule_chi_parity(const std::string& name) {
        const ManifoldDescription& d = description(name);
        bool changed = false;
        if (d.closed == Flag::yes && d.dim % 2 == 1) {
            changed |= set_chi(name, 0,
                               {"R-chi-parity",
                                "closed odd-dimensional manifolds have chi = "
                                "0 (Poincare duality)",
                                "dim = " + std::to_string(d.dim)});
            return changed;
        }
        if (d.closed != Flag::no || d.dim % 2 == 0 || d.boundary.empty())
            return changed;
        // Odd-dimensional with boundary: chi(dM) = 2 chi(M).
        long long known_sum = 0;
        std::vector<std::string> unknown;
        for (const auto& ref : d.boundary) {
            const auto& chi = states_.at(ref.name).chi;
            if (chi)
                known_sum += *chi;
            else
                unknown.push_back(ref.name);
        }
        const auto& own = states_.at(name).chi;
        ProvenanceStep step{"R-chi-parity",
                            "chi(boundary) = 2 chi(M) for odd-dimensional "
                            "compact manifolds (Poincare-Lefschetz duality)",
                            "boundary sum vs. body"};
        if (unknown.empty()) {
            if (known_sum % 2 != 0)
                throw InconsistencyError(
                    name + ": boundary chi sum " + std::to_string(known_sum) +
                    " must be even (chi(dM) = 2 chi(M))");
            changed |= set_chi(name, known_sum / 2, step);
        } else if (unknown.size() == 1 && own) {
            changed |= set_chi(unknown[0], 2 * *own - known_sum, step);
        }
        return changed;
    }

    bool rule_chi_rel(const std::string& name) {
        const ManifoldDescription& d = description(name);
        InvariantState& state = states_.at(name);
        bool changed = false;
        // Parity link: chi_rel = chi in even dimensions, -chi in odd ones.
        const long long sign = d.dim % 2 == 0 ? 1 : -1;
        ProvenanceStep parity_step{
            "R-chi-rel",
            "chi(M, dM) = (-1)^dim chi(M) (Poincare-Lefschetz duality)",
            d.dim % 2 == 0 ? "even dimension" : "odd dimension"};
        if (state.chi && !state.chi_rel)
            changed |= set_chi_rel(name, sign * *state.chi, parity_step);
        if (state.chi_rel && !state.chi)
            changed |= set_chi(name, sign * *state.chi_rel, parity_step);
        if (state.chi && state.chi_rel && *state.chi_rel != sign * *state.chi)
            throw InconsistencyError(
                name + ": chi = " + std::to_string(*state.chi) + " via {" +
                detail::render_chain(state.chi_chain) + "} and chi_rel = " +
                std::to_string(*state.chi_rel) + " via {" +
                detail::render_chain(state.chi_rel_chain) +
                "} violate chi_rel = (-1)^dim chi");
        // Boundary sum link: chi_rel = chi - sum chi(boundary).
        if (d.closed == Flag::yes) {
            if (state.chi && !state.chi_rel)
                changed |= set_chi_rel(name, *state.chi,
                                       {"R-chi-rel",
                                        "closed manifolds: chi_rel = chi",
                                        "empty boundary"});
            return changed;
        }
        if (d.boundary.empty()) return changed;
        long long boundary_sum = 0;
        for (const auto& ref : d.boundary) {
            const auto& chi = states_.at(ref.name).chi;
            if (!chi) return changed;
            boundary_sum += *chi;
        }
        ProvenanceStep step{"R-chi-rel",
                            "chi(M, dM) = chi(M) - chi(dM)",
                            "boundary chi sum " +
                                std::to_string(boundary_sum)};
        if (state.chi)
            changed |= set_chi_rel(name, *state.chi - boundary_sum, step);
        if (state.chi_rel)
            changed |= set_chi(name, *state.chi_rel + boundary_sum, step);
        return changed;
    }

    bool rule_chi_product(const std::string& name) {
        const ManifoldDescription& d = description(name);
        if (d.product_factors.size() < 2) return false;
        bool changed = false;
        {
            long long product = 1;
            bool all = true;
            for (const auto& f : d.product_factors) {
                const auto& chi = states_.at(f).chi;
                if (!chi) {
                    all = false;
                    break;
                }
                product *= *chi;
            }
            if (all)
                changed |= set_chi(name, product,
                                   {"R-chi-product",
                                    "multiplicativity of the Euler "
                                    "characteristic",
                                    "product over " +
                                        std::to_string(
                                            d.product_factors.size()) +
                                        " factors"});
        }
        {
            long long product = 1;
            bool all = true;
            for (const auto& f : d.product_factors) {
                const auto& chi_rel = states_.at(f).chi_rel;
                if (!chi_rel) {
                    all = false;
                    break;
                }
                product *= *chi_rel;
            }
            if (all)
                changed |= set_chi_rel(name, product,
                                       {"R-chi-product",
                                        "multiplicativity of the relative "
                                        "Euler characteristic",
                                        "product over " +
                                            std::to_string(
                                                d.product_factors.size()) +
                                            " factors"});
        }
        return changed;
    }

    bool rule_chi_double(const std::string& name) {
        const ManifoldDescription& d = description(name);
        if (!d.double_of) return false;
        const InvariantState& w = states_.at(*d.double_of);
        if (!w.chi || !w.chi_rel) return false;
        return set_chi(name, *w.chi + *w.chi_rel,
                       {"R-chi-double",
                        "chi(D(M)) = 2 chi(M) - chi(dM) = chi(M) + "
                        "chi(M, dM)",
                        "double of " + *d.double_of});
    }

    bool rule_sigma_parity(const std::string& name) {
        const ManifoldDescription& d = description(name);
        if (d.dim != 4 || !d.signature || d.closed != Flag::yes) return false;
        const InvariantState& state = states_.at(name);
        if (!state.chi) return false;
        if ((*state.chi - *d.signature) % 2 != 0)
            throw InconsistencyError(
                name + ": chi = " + std::to_string(*state.chi) + " via {" +
                detail::render_chain(state.chi_chain) +
                "} and declared signature " + std::to_string(*d.signature) +
                " must agree mod 2 (intersection-form parity)");
        return false;
    }

    static const std::vector<RuleEntry>& rule_table() {
        static const std::vector<RuleEntry> table = {
            {{"R-amenable",
              "vanishing for amenable or boundedly acyclic fundamental "
              "groups (Gromov; Ivanov)",
              "closed, dim >= 1, pi1 amenable or boundedly acyclic -> sv = 0"},
             &Registry::rule_amenable},
            {{"R-bdry-amenable",
              "vanishing for amenable manifold-and-boundary groups (Gromov)",
              "bounded, pi1(M) and pi1(dM) amenable -> sv_rel = 0"},
             &Registry::rule_bdry_amenable},
            {{"R-selfmap",
              "self-maps of degree not in {0,1,-1} (Gromov)",
              "|deg| >= 2 -> sv (rel) = 0"},
             &Registry::rule_selfmap},
            {{"R-bounding",
              "boundaries of manifolds with zero relative volume (Gromov)",
              "M = dW, sv(W, dW) = 0 -> sv(M) = 0"},
             &Registry::rule_bounding},
            {{"R-s1-f-structure",
              "circle actions (Yano); F-structures (Cheeger-Gromov)",
              "closed with S1-action or F-structure -> sv = 0"},
             &Registry::rule_s1_f_structure},
            {{"R-affine",
              "affine manifolds with a pure translation "
              "(Bucher-Connell-Lafont)",
              "closed affine flag -> sv = 0"},
             &Registry::rule_affine},
            {{"R-graph3", "graph 3-manifolds (Soma)",
              "closed graph 3-manifold -> sv = 0"},
             &Registry::rule_graph3},
            {{"R-mapping-torus-3",
              "mapping tori of 3-manifolds (Bucher-Neofytidis)",
              "closed 4-dim mapping torus -> sv = 0"},
             &Registry::rule_mapping_torus_3},
            {{"R-amcat-sv", "Gromov's vanishing theorem for amenable covers",
              "amcat <= dim -> sv = 0"},
             &Registry::rule_amcat_sv},
            {{"R-amcat-chi",
              "Euler characteristic and amenable covers (Sauer)",
              "closed aspherical, amcat <= dim -> chi = 0"},
             &Registry::rule_amcat_chi},
            {{"R-fibre",
              "fibre bundles with small amenable-category fibre "
              "(Loeh-Moraschini); chi multiplicativity",
              "amcat(F)(dim B + 1) <= dim -> sv = 0 (and chi = 0 when "
              "aspherical); chi = chi(F) chi(B)"},
             &Registry::rule_fibre},
            {{"R-relvan",
              "relative vanishing theorem for amenable covers",
              "relative amenable cover -> sv_rel = 0"},
             &Registry::rule_relvan},
            {{"R-coamenable",
              "locally co-amenable subcomplexes (Gromov; "
              "Frigerio-Moraschini)",
              "locally co-amenable subcomplex -> sv_rel = 0"},
             &Registry::rule_coamenable},
            {{"R-triple-product",
              "triple products of bounded manifolds (Gromov; "
              "Frigerio-Moraschini)",
              ">= 3 bounded factors -> sv_rel = 0"},
             &Registry::rule_triple_product},
            {{"R-product-bounds",
              "product inequalities with the binomial constant (Gromov; "
              "Bucher; Loeh)",
              "sv(A) sv(B) <= sv(A x B) <= C(m+n, m) sv(A) sv(B)"},
             &Registry::rule_product_bounds},
            {{"R-connsum",
              "connected sums: sv additivity (dim >= 3) and the chi formula "
              "(Gromov)",
              "sv(S) = sum sv(F); chi(S) = sum chi(F) - (k-1) chi(sphere)"},
             &Registry::rule_connsum},
            {{"R-glue-subadd",
              "subadditivity under amenable glueings (Gromov; "
              "Bucher-Burger-Frigerio-Iozzi-Pagliantini-Pozzetti)",
              "amenable glueing -> hi(Z) <= sum hi(pieces)"},
             &Registry::rule_glue_subadd},
            {{"R-glue-add",
              "additivity under amenable pi1-injective glueings (Gromov; "
              "Bucher-Burger-Frigerio-Iozzi-Pagliantini-Pozzetti)",
              "amenable pi1-injective glueing -> interval sum"},
             &Registry::rule_glue_add},
            {{"R-glue-chi",
              "inclusion-exclusion for the Euler characteristic",
              "chi(Z) = chi(L) + chi(R) - chi(interfaces)"},
             &Registry::rule_glue_chi},
            {{"R-bdry-est",
              "boundary estimate sv(dM) <= (n+1) sv_rel(M) (Gromov)",
              "sv_rel lower bounds from boundary lower bounds"},
             &Registry::rule_bdry_est},
            {{"R-stable-double",
              "doubling bound in real, integral and stable flavours",
              "||D(M)|| <= 2 ||M, dM||"},
             &Registry::rule_stable_double},
            {{"R-betti",
              "Poincare-duality Betti estimates (Gromov; Kionke-Loeh)",
              "max b_k lower-bounds the integral volume"},
             &Registry::rule_betti},
            {{"R-chi-stable",
              "|chi| <= (n+1) stable integral volume (Kionke-Loeh; "
              "Frigerio-Loeh-Pagliantini-Sauer)",
              "|chi_rel| / (n+1) lower-bounds stable and integral volumes"},
             &Registry::rule_chi_stable},
            {{"R-integral-ge-real",
              "norm comparisons ||M|| <= ||M||_Z^infty <= ||M||_Z",
              "upper bounds flow down, lower bounds flow up"},
             &Registry::rule_integral_ge_real},
            {{"R-sisv-equal",
              "stable integral volume of aspherical surfaces (Gromov)",
              "dim 2 aspherical oriented -> sv and sv_stable coincide"},
             &Registry::rule_sisv_equal},
            {{"R-sisv-amenable",
              "residually finite amenable fundamental groups "
              "(Frigerio-Loeh-Pagliantini-Sauer)",
              "closed aspherical + residually finite amenable -> sv = "
              "sv_stable"},
             &Registry::rule_sisv_amenable},
            {{"R-positive",
              "geometric positivity (Gromov-Thurston; Inoue-Yano; "
              "Lafont-Schmidt; Bucher; Mineyev)",
              "curvature/symmetry flags -> sv > 0 (strict lower bound)"},
             &Registry::rule_positive},
            {{"R-surface",
              "simplicial volume of compact oriented surfaces (Gromov)",
              "dim 2 connected oriented, chi known -> exact value "
              "max(0, -2 chi)"},
             &Registry::rule_surface},
            {{"R-parity-products",
              "boundaries of products of different-parity bounded "
              "aspherical factors",
              "flags + sv_rel = 0 -> candidate note for the boundary"},
             &Registry::rule_parity_products},
            {{"R-degree",
              "multiplicativity under finite coverings (Gromov)",
              "sv(N) = d sv(B); chi(N) = d chi(B); stable witnesses"},
             &Registry::rule_degree},
            {{"R-chi-parity",
              "Euler characteristic parity (Poincare / Poincare-Lefschetz "
              "duality)",
              "closed odd -> chi = 0; odd bounded -> chi(dM) = 2 chi(M)"},
             &Registry::rule_chi_parity},
            {{"R-chi-rel",
              "relative Euler characteristic bookkeeping",
              "chi_rel = chi - chi(dM) = (-1)^dim chi"},
             &Registry::rule_chi_rel},
            {{"R-chi-product",
              "multiplicativity of the (relative) Euler characteristic",
              "chi(P) = prod chi(F); chi_rel(P) = prod chi_rel(F)"},
             &Registry::rule_chi_product},
            {{"R-chi-double",
              "Euler characteristic of doubles",
              "chi(D(M)) = chi(M) + chi(M, dM)"},
             &Registry::rule_chi_double},
            {{"R-sigma-parity",
              "intersection-form parity chi = sigma (mod 2)",
              "closed oriented 4-manifolds: consistency check"},
             &Registry::rule_sigma_parity},
        };
        return table;
    }

    static std::vector<std::size_t> default_order() {
        std::vector<std::size_t> order(rule_table().size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        return order;
    }

    int run_rules(const std::vector<std::size_t>& order) {
        const auto& table = rule_table();
        int steps = 0;
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t index : order)
                for (const auto& name : order_)
                    if ((this->*table[index].fn)(name)) {
                        changed = true;
                        ++steps;
                    }
        }
        return steps;
    }
};

}  // namespace svlab
