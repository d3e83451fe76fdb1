#pragma once

#include "certificates.hpp"
#include "cobordism.hpp"
#include "constructions.hpp"
#include "datasets.hpp"
#include "homology.hpp"
#include "inference.hpp"
#include "script.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace svlab {

struct EvalOptions {
    bool explain = false;
    std::map<std::string, Complex> extra_datasets;
};

struct EvalResult {
    int exit_code = 0;  // 0 ok, 1 failed assertion or runtime error,
                        // 2 inconsistency
    Json report;
    Json ledger;  // re-loadable via ledger_from_json / `svlab verify`
    std::vector<std::string> explain_lines;
};

namespace detail {

inline Json interval_json(const Interval& interval) {
    Json j;
    j["text"] = to_string(interval);
    j["lo"] = to_string(interval.lo);
    j["lo_strict"] = interval.lo_strict;
    j["hi"] = interval.hi ? Json(to_string(*interval.hi)) : Json(nullptr);
    return j;
}

inline Json chain_json(const std::vector<ProvenanceStep>& chain) {
    Json arr = Json::array();
    for (const auto& step : chain) {
        Json j;
        j["rule"] = step.rule;
        j["citation"] = step.citation;
        j["detail"] = step.detail;
        arr.push_back(std::move(j));
    }
    return arr;
}

inline Complex renamed(const Complex& complex, const std::string& name) {
    return Complex(name, complex.dim(), complex.vertex_count(),
                   complex.facets());
}

inline bool scalar_compare(const Rational& lhs, const std::string& op,
                           const Rational& rhs) {
    if (op == "==") return lhs == rhs;
    if (op == "!=") return lhs != rhs;
    if (op == "<=") return lhs <= rhs;
    if (op == ">=") return lhs >= rhs;
    if (op == "<") return lhs < rhs;
    if (op == ">") return lhs > rhs;
    throw std::logic_error("unknown comparison " + op);
}

/** Does the interval guarantee the comparison for the true value? */
inline bool interval_compare(const Interval& interval, const std::string& op,
                             const Rational& value) {
    if (op == "==")
        return interval.is_point() && interval.lo == value;
    if (op == "<=") return interval.hi && *interval.hi <= value;
    if (op == "<") return interval.hi && *interval.hi < value;
    if (op == ">=")
        return interval.lo >= value;
    if (op == ">")
        return interval.lo > value || (interval.lo == value && interval.lo_strict);
    if (op == "!=") {
        if (value < interval.lo) return true;
        if (value == interval.lo && interval.lo_strict) return true;
        if (interval.hi && value > *interval.hi) return true;
        return false;
    }
    throw std::logic_error("unknown comparison " + op);
}

/** Cyclic vertex order of a one-dimensional circle complex. */
inline std::vector<int> circle_order(const Complex& circle) {
    if (circle.dim() != 1)
        throw GlueError(circle.name() + ": not a circle component");
    std::map<int, std::vector<int>> adjacency;
    for (const auto& edge : circle.facets()) {
        adjacency[edge[0]].push_back(edge[1]);
        adjacency[edge[1]].push_back(edge[0]);
    }
    for (const auto& [v, nbs] : adjacency)
        if (nbs.size() != 2)
            throw GlueError(circle.name() + ": boundary component is not a "
                                            "single circle");
    std::vector<int> order;
    int start = adjacency.begin()->first;
    int prev = -1, cur = start;
    do {
        order.push_back(cur);
        int next = adjacency[cur][0] == prev ? adjacency[cur][1]
                                             : adjacency[cur][0];
        prev = cur;
        cur = next;
    } while (cur != start);
    if (order.size() != adjacency.size())
        throw GlueError(circle.name() + ": boundary component is not a "
                                        "single circle");
    return order;
}

class Evaluator {
public:
    Evaluator(const Script& script, std::string script_name, EvalOptions opts)
        : script_(script),
          script_name_(std::move(script_name)),
          opts_(std::move(opts)) {}

    EvalResult run() {
        report_["version"] = 1;
        report_["script"] = script_name_;
        for (auto* key : {"assertions", "certifications", "queries", "gromov",
                          "reinhart", "obstructions", "fillchi", "monoid",
                          "cobordisms", "errors"})
            report_[key] = Json::array();
        for (const Statement& stmt : script_.statements) {
            try {
                execute(stmt);
            } catch (const InconsistencyError& e) {
                record_error(stmt.line, e.what(), 2);
                break;
            } catch (const std::exception& e) {
                record_error(stmt.line, e.what(), 1);
                break;
            }
        }
        try {
            sync();
        } catch (const InconsistencyError& e) {
            record_error(0, e.what(), 2);
        }
        finalize_report();
        return {exit_code_, std::move(report_), ledger_to_json(ledger_),
                std::move(explain_)};
    }

private:
    const Script& script_;
    std::string script_name_;
    EvalOptions opts_;

    Registry registry_;
    Ledger ledger_;
    std::optional<CobordismCategory> category_;
    std::map<std::string, Complex> plain_;          // non-manifold bindings
    std::map<std::string, std::string> origin_;     // binding -> dataset name
    std::map<std::string, std::string> cob_alias_;  // name -> composite label
    bool dirty_ = false;
    long long steps_ = 0;
    int exit_code_ = 0;
    Json report_;
    std::vector<std::string> explain_;

    void record_error(int line, const std::string& message, int severity) {
        Json j;
        j["line"] = line;
        j["message"] = message;
        j["severity"] = severity;
        report_["errors"].push_back(std::move(j));
        exit_code_ = std::max(exit_code_, severity);
    }

    void sync() {
        if (!dirty_) return;
        dirty_ = false;
        registry_.import_certificates(ledger_);
        steps_ += registry_.propagate();
    }

    std::string resolve(const std::string& name) const {
        auto it = cob_alias_.find(name);
        return it == cob_alias_.end() ? name : it->second;
    }

    void execute(const Statement& stmt) {
        switch (stmt.kind) {
            case StmtKind::manifold:
                registry_.add_manifold(stmt.desc);
                dirty_ = true;
                return;
            case StmtKind::let: return exec_let(stmt);
            case StmtKind::certify: return exec_certify(stmt);
            case StmtKind::recognize: {
                std::size_t id = recognize_surface_model(ledger_, stmt.name);
                record_certification(stmt, {id});
                dirty_ = true;
                return;
            }
            case StmtKind::stable: return exec_stable(stmt);
            case StmtKind::assertion: return exec_assert(stmt);
            case StmtKind::query: return exec_query(stmt);
            case StmtKind::gromov: return exec_gromov(stmt);
            case StmtKind::reinhart: return exec_reinhart(stmt);
            case StmtKind::obstruction: return exec_obstruction(stmt);
            case StmtKind::fillchi: return exec_fillchi(stmt);
            case StmtKind::monoid: return exec_monoid(stmt);
            case StmtKind::cobordism: return exec_cobordism(stmt);
        }
    }

    // --- let -----------------------------------------------------------

    struct Built {
        std::optional<ManifoldComplex> manifold;
        std::optional<Complex> plain;
        std::string origin;
        std::optional<std::string> double_src;
        std::vector<std::string> product_srcs;
        std::vector<std::string> connsum_srcs;
        std::optional<std::pair<std::string, long long>> cover_src;
    };

    Complex lookup_dataset(const std::string& name) const {
        auto it = opts_.extra_datasets.find(name);
        if (it != opts_.extra_datasets.end()) return it->second;
        return dataset(name);
    }

    const ManifoldComplex& bound_manifold(const std::string& name) const {
        if (!ledger_.has_manifold(name))
            throw InferenceError(plain_.count(name)
                                     ? name + " is a plain complex, not a "
                                              "verified manifold"
                                     : "unknown binding '" + name + "'");
        return ledger_.manifold(name);
    }

    Built eval_expr(const Expr& expr) {
        switch (expr.kind) {
            case ExprKind::dataset: {
                Complex cx = lookup_dataset(expr.name);
                Built built;
                built.origin = expr.name;
                try {
                    built.manifold = manifold_check(cx);
                } catch (const NotManifold&) {
                    built.plain = std::move(cx);
                } catch (const NotOrientable&) {
                    built.plain = std::move(cx);
                }
                return built;
            }
            case ExprKind::name_ref: {
                Built built;
                built.origin = origin_.count(expr.name)
                                   ? origin_.at(expr.name)
                                   : expr.name;
                if (auto it = plain_.find(expr.name); it != plain_.end()) {
                    built.plain = it->second;
                    return built;
                }
                built.manifold = bound_manifold(expr.name);
                return built;
            }
            case ExprKind::double_: {
                Built inner = eval_expr(expr.args[0]);
                Built built;
                built.manifold =
                    double_manifold(require_manifold(inner)).doubled;
                if (expr.args[0].kind == ExprKind::name_ref)
                    built.double_src = expr.args[0].name;
                return built;
            }
            case ExprKind::connsum: {
                Built l = eval_expr(expr.args[0]);
                Built r = eval_expr(expr.args[1]);
                Built built;
                built.manifold =
                    connected_sum(require_manifold(l), require_manifold(r));
                if (expr.args[0].kind == ExprKind::name_ref &&
                    expr.args[1].kind == ExprKind::name_ref)
                    built.connsum_srcs = {expr.args[0].name,
                                          expr.args[1].name};
                return built;
            }
            case ExprKind::product: {
                Built l = eval_expr(expr.args[0]);
                Built r = eval_expr(expr.args[1]);
                ProductResult prod = product(require_manifold(l).complex(),
                                             require_manifold(r).complex());
                Built built;
                built.manifold = manifold_check(prod.complex);
                if (expr.args[0].kind == ExprKind::name_ref &&
                    expr.args[1].kind == ExprKind::name_ref)
                    built.product_srcs = {expr.args[0].name,
                                          expr.args[1].name};
                return built;
            }
            case ExprKind::glue: return eval_glue(expr);
            case ExprKind::cover: {
                const std::string& base = expr.args[0].name;
                const ManifoldComplex& bm = bound_manifold(base);
                std::string base_origin =
                    origin_.count(base) ? origin_.at(base) : base;
                CoverSpec spec =
                    named_cocycle(base_origin, expr.cocycle, expr.degree);
                CoverResult result = cyclic_cover(bm.complex(), spec);
                Built built;
                built.manifold = std::move(result.cover);
                built.cover_src = {base, result.degree};
                return built;
            }
        }
        throw std::logic_error("unreachable expression kind");
    }

    static const ManifoldComplex& require_manifold(const Built& built) {
        if (!built.manifold)
            throw InferenceError(
                "a construction argument is a plain complex, not a verified "
                "manifold");
        return *built.manifold;
    }

    Built eval_glue(const Expr& expr) {
        GlueingSpec spec;
        spec.left_component = expr.left_component;
        spec.right_component = expr.right_component;
        spec.vertex_map = expr.vertex_map;

        const bool self_glue =
            expr.args[0].kind == ExprKind::name_ref &&
            expr.args[1].kind == ExprKind::name_ref &&
            expr.args[0].name == expr.args[1].name;

        Built built;
        if (self_glue) {
            const ManifoldComplex& m = bound_manifold(expr.args[0].name);
            built.manifold = glue_with_trials(m, m, spec);
            return built;
        }
        Built l = eval_expr(expr.args[0]);
        Built r = eval_expr(expr.args[1]);
        built.manifold =
            glue_with_trials(require_manifold(l), require_manifold(r), spec);
        return built;
    }

    static ManifoldComplex glue_with_trials(const ManifoldComplex& left,
                                            const ManifoldComplex& right,
                                            GlueingSpec spec) {
        if (!spec.vertex_map.empty()) return glue(left, right, spec);
        const auto& lcs = left.boundary_components();
        const auto& rcs = right.boundary_components();
        if (spec.left_component < 0 ||
            spec.left_component >= static_cast<int>(lcs.size()) ||
            spec.right_component < 0 ||
            spec.right_component >= static_cast<int>(rcs.size()))
            throw GlueError("boundary component index out of range");
        const Complex& lc = lcs[spec.left_component].complex;
        const Complex& rc = rcs[spec.right_component].complex;
        if (lc.dim() == 0) {
            spec.vertex_map[lc.facets()[0][0]] = rc.facets()[0][0];
            return glue(left, right, spec);
        }
        if (lc.dim() != 1)
            throw GlueError(
                "an explicit vertex map is required above circle boundaries");
        std::vector<int> lo = circle_order(lc);
        std::vector<int> ro = circle_order(rc);
        if (lo.size() != ro.size())
            throw GlueError("boundary circles have different lengths");
        const int n = static_cast<int>(lo.size());
        for (int direction : {1, -1}) {
            for (int shift = 0; shift < n; ++shift) {
                spec.vertex_map.clear();
                for (int i = 0; i < n; ++i) {
                    int j = ((direction * i + shift) % n + n) % n;
                    spec.vertex_map[lo[i]] = ro[j];
                }
                try {
                    return glue(left, right, spec);
                } catch (const GlueError&) {
                }
            }
        }
        throw GlueError(
            "no orientation-reversing identification of the boundary circles "
            "exists; supply an explicit vertex map");
    }

    void exec_let(const Statement& stmt) {
        if (ledger_.has_manifold(stmt.name) || plain_.count(stmt.name))
            throw InferenceError("binding '" + stmt.name +
                                 "' is already defined");
        Built built = eval_expr(stmt.expr);
        if (built.plain) {
            plain_.emplace(stmt.name, renamed(*built.plain, stmt.name));
            origin_[stmt.name] =
                built.origin.empty() ? stmt.name : built.origin;
            return;
        }
        ManifoldComplex mc =
            manifold_check(renamed(built.manifold->complex(), stmt.name));
        ledger_.add_manifold(mc);
        if (built.cover_src)
            ledger_.register_cover(stmt.name, built.cover_src->first,
                                   built.cover_src->second);
        origin_[stmt.name] = built.origin.empty() ? stmt.name : built.origin;

        if (!registry_.has(stmt.name)) {
            ManifoldDescription desc;
            desc.name = stmt.name;
            desc.dim = mc.dim();
            if (built.cover_src && registry_.has(built.cover_src->first))
                desc.cover_of = CoverRelation{built.cover_src->first,
                                              built.cover_src->second};
            if (built.double_src && registry_.has(*built.double_src) &&
                registry_.description(*built.double_src).closed == Flag::no)
                desc.double_of = *built.double_src;
            auto all_registered = [&](const std::vector<std::string>& names) {
                return !names.empty() &&
                       std::all_of(names.begin(), names.end(),
                                   [&](const std::string& n) {
                                       return registry_.has(n);
                                   });
            };
            if (all_registered(built.product_srcs))
                desc.product_factors = built.product_srcs;
            if (all_registered(built.connsum_srcs))
                desc.connsum_factors = built.connsum_srcs;
            registry_.add_manifold(desc);
        }
        registry_.attach_triangulation(stmt.name, mc);
        dirty_ = true;
    }

    // --- certificates ----------------------------------------------------

    void record_certification(const Statement& stmt,
                              const std::vector<std::size_t>& ids) {
        Json j;
        j["line"] = stmt.line;
        j["target"] = stmt.name;
        Json arr = Json::array();
        for (std::size_t id : ids) arr.push_back(id);
        j["certificates"] = std::move(arr);
        report_["certifications"].push_back(std::move(j));
    }

    std::optional<std::size_t> latest_certificate(
        const std::string& target, const std::vector<CertKind>& kinds,
        bool explicit_only = false) const {
        std::optional<std::size_t> found;
        for (std::size_t id = 0; id < ledger_.size(); ++id) {
            const Certificate& cert = ledger_.certificate(id);
            if (cert.target != target) continue;
            if (explicit_only && !cert.has_explicit_witness()) continue;
            for (CertKind kind : kinds)
                if (cert.kind == kind) found = id;
        }
        return found;
    }

    void exec_certify(const Statement& stmt) {
        std::vector<std::size_t> produced;
        if (stmt.via.kind == CertifyVia::Kind::none) {
            CertifyResult result = certify_from_triangulation(ledger_, stmt.name);
            produced = {result.integral, result.real};
        } else if (stmt.via.kind == CertifyVia::Kind::double_) {
            const std::string& half = stmt.via.first;
            auto rel_int = latest_certificate(
                half, {CertKind::relative_integral});
            auto rel_real = latest_certificate(half, {CertKind::relative_real});
            if (!rel_int && !rel_real)
                throw CertificateError("no relative certificates for '" +
                                       half + "'; certify it first");
            if (rel_int)
                produced.push_back(double_bound(ledger_, *rel_int, stmt.name));
            if (rel_real)
                produced.push_back(double_bound(ledger_, *rel_real, stmt.name));
        } else {
            auto li = latest_certificate(
                stmt.via.first,
                {CertKind::integral, CertKind::relative_integral}, true);
            auto ri = latest_certificate(
                stmt.via.second,
                {CertKind::integral, CertKind::relative_integral}, true);
            auto lr = latest_certificate(
                stmt.via.first, {CertKind::real, CertKind::relative_real},
                true);
            auto rr = latest_certificate(
                stmt.via.second, {CertKind::real, CertKind::relative_real},
                true);
            if (li && ri)
                produced.push_back(product_bound(ledger_, *li, *ri, stmt.name));
            if (lr && rr)
                produced.push_back(product_bound(ledger_, *lr, *rr, stmt.name));
            if (produced.empty())
                throw CertificateError(
                    "no explicit factor certificates; certify '" +
                    stmt.via.first + "' and '" + stmt.via.second + "' first");
        }
        record_certification(stmt, produced);
        dirty_ = true;
    }

    void exec_stable(const Statement& stmt) {
        std::vector<CoverEntry> entries;
        for (const std::string& cover : stmt.names) {
            auto id = latest_certificate(
                cover, {CertKind::integral, CertKind::relative_integral});
            if (!id)
                throw CertificateError("no integral certificate for cover '" +
                                       cover + "'");
            long long degree = 1;
            if (cover != stmt.name) {
                auto reg = ledger_.cover_of(cover);
                if (!reg || reg->first != stmt.name)
                    throw CertificateError("'" + cover +
                                           "' is not a registered cover of '" +
                                           stmt.name + "'");
                degree = reg->second;
            }
            entries.push_back({*id, degree});
        }
        std::size_t id = cover_stable_bound(ledger_, stmt.name, entries);
        record_certification(stmt, {id});
        dirty_ = true;
    }

    // --- assertions --------------------------------------------------------

    struct Check {
        bool pass = false;
        std::string detail;
    };

    long long chi_of(const std::string& name) {
        if (registry_.has(name)) {
            const InvariantState& state = registry_.query(name);
            if (state.chi) return *state.chi;
        }
        if (ledger_.has_manifold(name))
            return ledger_.manifold(name).complex().euler_characteristic();
        if (auto it = plain_.find(name); it != plain_.end())
            return it->second.euler_characteristic();
        throw InferenceError("Euler characteristic of '" + name +
                             "' is not known");
    }

    std::vector<long long> betti_of(const std::string& name) {
        if (registry_.has(name)) {
            const InvariantState& state = registry_.query(name);
            if (!state.betti.empty()) return state.betti;
        }
        if (ledger_.has_manifold(name))
            return homology(ledger_.manifold(name).complex()).betti;
        if (auto it = plain_.find(name); it != plain_.end())
            return homology(it->second).betti;
        throw InferenceError("Betti numbers of '" + name + "' are not known");
    }

    Check eval_assertion(const Assertion& a) {
        if (a.func == "verified") {
            for (std::size_t id = 0; id < ledger_.size(); ++id) {
                VerifyReport report = verify(ledger_, id);
                if (!report.pass)
                    return {false, "certificate " + std::to_string(id) +
                                       " failed: " + report.detail};
            }
            return {true,
                    std::to_string(ledger_.size()) + " certificates verified"};
        }
        const std::string target = resolve(a.target);
        if (a.func == "chi" || a.func == "chi_rel" || a.func == "facets") {
            Rational lhs;
            if (a.func == "chi") {
                lhs = chi_of(target);
            } else if (a.func == "facets") {
                if (ledger_.has_manifold(target))
                    lhs = static_cast<long long>(
                        ledger_.manifold(target).complex().facets().size());
                else if (auto it = plain_.find(target); it != plain_.end())
                    lhs = static_cast<long long>(it->second.facets().size());
                else
                    throw InferenceError("'" + target +
                                         "' has no triangulation");
            } else {
                const InvariantState& state = registry_.query(target);
                if (!state.chi_rel)
                    return {false, "chi_rel(" + target + ") is unknown"};
                lhs = *state.chi_rel;
            }
            bool pass = scalar_compare(lhs, a.op, a.value);
            return {pass, a.func + "(" + target + ") = " + to_string(lhs)};
        }
        if (a.func == "betti") {
            std::vector<long long> lhs = betti_of(target);
            bool equal = lhs == a.list_value;
            bool pass = a.op == "==" ? equal : !equal;
            std::string text = "[";
            for (std::size_t i = 0; i < lhs.size(); ++i)
                text += (i ? ", " : "") + std::to_string(lhs[i]);
            return {pass, "betti(" + target + ") = " + text + "]"};
        }
        if (a.func == "bound") {
            std::optional<Rational> best;
            for (std::size_t id = 0; id < ledger_.size(); ++id) {
                const Certificate& cert = ledger_.certificate(id);
                if (cert.target != target) continue;
                if (to_string(cert.kind) != a.argument) continue;
                if (!best || cert.bound < *best) best = cert.bound;
            }
            if (!best)
                return {false, "no " + a.argument + " certificates for '" +
                                   target + "'"};
            bool pass = scalar_compare(*best, a.op, a.value);
            return {pass, "bound(" + target + ", " + a.argument +
                              ") = " + to_string(*best)};
        }
        if (a.func == "member") {
            if (!category_)
                return {false, "no cobordism category in this script"};
            if (!category_->has(target))
                return {false, "unknown cobordism label '" + target + "'"};
            Flag lhs = category_->is_member(target) ? Flag::yes : Flag::no;
            bool equal = lhs == a.flag_value;
            bool pass = a.op == "==" ? equal : !equal;
            return {pass, "member(" + target + ") = " + to_string(lhs)};
        }
        Inv inv = inv_from_string(a.func);
        Interval interval = registry_.query(target, inv);
        bool pass = interval_compare(interval, a.op, a.value);
        return {pass,
                a.func + "(" + target + ") = " + to_string(interval)};
    }

    void exec_assert(const Statement& stmt) {
        sync();
        Check check = eval_assertion(stmt.assertion);
        Json j;
        j["line"] = stmt.line;
        j["text"] = detail::print_assertion(stmt.assertion);
        j["pass"] = check.pass;
        j["detail"] = check.detail;
        report_["assertions"].push_back(std::move(j));
        if (!check.pass) exit_code_ = std::max(exit_code_, 1);
    }

    // --- queries and reports ------------------------------------------------

    void exec_query(const Statement& stmt) {
        sync();
        const std::string target = resolve(stmt.name);
        Json j;
        j["target"] = target;
        j["invariant"] = stmt.invariant;
        if (stmt.invariant == "chi" || stmt.invariant == "chi_rel") {
            const InvariantState& state = registry_.query(target);
            const auto& value =
                stmt.invariant == "chi" ? state.chi : state.chi_rel;
            const auto& chain = stmt.invariant == "chi" ? state.chi_chain
                                                        : state.chi_rel_chain;
            j["value"] = value ? Json(*value) : Json(nullptr);
            j["chain"] = chain_json(chain);
            explain_.push_back(
                target + "." + stmt.invariant + " = " +
                (value ? std::to_string(*value) : std::string("unknown")));
            explain_chain("  via: ", chain);
        } else {
            Inv inv = inv_from_string(stmt.invariant);
            const TrackedInterval& tracked =
                registry_.query(target).slot(inv);
            j["interval"] = interval_json(tracked.interval);
            j["lower_chain"] = chain_json(tracked.lo_chain);
            j["upper_chain"] = chain_json(tracked.hi_chain);
            explain_.push_back(target + "." + stmt.invariant + " = " +
                               to_string(tracked.interval));
            explain_chain("  lower: ", tracked.lo_chain);
            explain_chain("  upper: ", tracked.hi_chain);
        }
        report_["queries"].push_back(std::move(j));
    }

    void explain_chain(const std::string& prefix,
                       const std::vector<ProvenanceStep>& chain) {
        for (const auto& step : chain)
            explain_.push_back(prefix + step.rule +
                               (step.citation.empty()
                                    ? ""
                                    : " (" + step.citation + ")") +
                               ": " + step.detail);
    }

    void exec_gromov(const Statement& stmt) {
        sync();
        const std::string target = resolve(stmt.name);
        GromovCheck check = registry_.gromov_check(target);
        Json j;
        j["target"] = target;
        j["status"] = to_string(check.status);
        j["relative"] = check.relative;
        j["detail"] = check.detail;
        j["notes"] = check.notes;
        report_["gromov"].push_back(std::move(j));
        explain_.push_back("gromov " + target + ": " +
                           to_string(check.status) + " (" + check.detail +
                           ")");
    }

    void exec_reinhart(const Statement& stmt) {
        sync();
        ReinhartClass cls =
            reinhart_class(registry_, resolve(stmt.name), stmt.number);
        Json j;
        j["target"] = resolve(stmt.name);
        j["dimension"] = cls.dimension;
        j["coordinates"] = cls.coordinates;
        j["form"] = cls.form;
        report_["reinhart"].push_back(std::move(j));
    }

    void exec_obstruction(const Statement& stmt) {
        sync();
        ObstructionReport ob =
            extension_obstruction(registry_, resolve(stmt.name));
        Json j;
        j["target"] = ob.target;
        j["sv"] = interval_json(ob.sv);
        j["steps"] = ob.steps;
        report_["obstructions"].push_back(std::move(j));
        for (const auto& step : ob.steps)
            explain_.push_back("obstruction " + ob.target + ": " + step);
    }

    void exec_fillchi(const Statement& stmt) {
        sync();
        long long best = registry_.fill_chi(stmt.name, stmt.names);
        Json j;
        j["target"] = stmt.name;
        j["fillings"] = stmt.names;
        j["min_abs_chi"] = best;
        report_["fillchi"].push_back(std::move(j));
    }

    void exec_monoid(const Statement& stmt) {
        sync();
        std::vector<std::string> word;
        for (const auto& name : stmt.names) word.push_back(resolve(name));
        Interval value = connsum_monoid_eval(registry_, word, stmt.number);
        Json j;
        j["dimension"] = stmt.number;
        j["word"] = word;
        j["interval"] = interval_json(value);
        report_["monoid"].push_back(std::move(j));
    }

    void exec_cobordism(const Statement& stmt) {
        if (!category_) {
            category_.emplace(registry_);
            install_surface_generators(*category_);
            dirty_ = true;
        }
        std::string label = resolve(stmt.names[0]);
        if (!category_->has(label))
            throw CobordismError("unknown cobordism label '" + label + "'");
        for (std::size_t i = 1; i < stmt.names.size(); ++i) {
            std::string next = resolve(stmt.names[i]);
            if (!category_->has(next))
                throw CobordismError("unknown cobordism label '" + next +
                                     "'");
            label = category_->compose(label, next).label;
        }
        cob_alias_[stmt.name] = label;
        dirty_ = true;

        const Cobordism& cob = category_->at(label);
        Json j;
        j["name"] = stmt.name;
        j["label"] = label;
        j["inputs"] = cob.incoming.components;
        j["outputs"] = cob.outgoing.components;
        bool member = category_->is_member(cob);
        j["member"] = member;
        try {
            j["chi"] = category_->chi_functor(label);
        } catch (const CobordismError&) {
            j["chi"] = nullptr;
        }
        if (member) {
            sync();
            j["sv"] = interval_json(category_->sv_functor(label));
        } else {
            j["refusal"] = category_->membership_failure(cob);
        }
        report_["cobordisms"].push_back(std::move(j));
    }

    // --- final report ---------------------------------------------------

    void finalize_report() {
        Json manifolds = Json::array();
        for (const std::string& name : registry_.names()) {
            const ManifoldDescription& desc = registry_.description(name);
            const InvariantState& state = registry_.query(name);
            Json j;
            j["name"] = name;
            j["dim"] = desc.dim;
            j["triangulated"] = ledger_.has_manifold(name);
            Json flags;
            auto flag = [&](const char* key, Flag value) {
                if (value != Flag::unknown) flags[key] = to_string(value);
            };
            flag("closed", desc.closed);
            flag("oriented", desc.oriented);
            flag("connected", desc.connected);
            flag("aspherical", desc.aspherical);
            j["flags"] = std::move(flags);
            Json intervals;
            for (Inv inv : all_invariants()) {
                const TrackedInterval& tracked = state.slot(inv);
                Json t;
                t["interval"] = interval_json(tracked.interval);
                t["lower_chain"] = chain_json(tracked.lo_chain);
                t["upper_chain"] = chain_json(tracked.hi_chain);
                intervals[to_string(inv)] = std::move(t);
            }
            j["intervals"] = std::move(intervals);
            j["chi"] = state.chi ? Json(*state.chi) : Json(nullptr);
            j["chi_chain"] = chain_json(state.chi_chain);
            j["chi_rel"] = state.chi_rel ? Json(*state.chi_rel) : Json(nullptr);
            j["chi_rel_chain"] = chain_json(state.chi_rel_chain);
            j["betti"] = state.betti;
            j["notes"] = state.notes;
            manifolds.push_back(std::move(j));
        }
        for (const auto& [name, complex] : plain_) {
            Json j;
            j["name"] = name;
            j["dim"] = complex.dim();
            j["plain"] = true;
            j["chi"] = complex.euler_characteristic();
            j["betti"] = homology(complex).betti;
            j["facets"] = complex.facets().size();
            manifolds.push_back(std::move(j));
        }
        report_["manifolds"] = std::move(manifolds);

        Json certificates = Json::array();
        for (std::size_t id = 0; id < ledger_.size(); ++id) {
            const Certificate& cert = ledger_.certificate(id);
            Json j;
            j["id"] = id;
            j["target"] = cert.target;
            j["kind"] = to_string(cert.kind);
            j["bound"] = to_string(cert.bound);
            j["witness"] = cert.has_explicit_witness() ? "chain" : cert.rule;
            VerifyReport check = verify(ledger_, id);
            j["verified"] = check.pass;
            if (!check.pass) j["failure"] = check.detail;
            certificates.push_back(std::move(j));
        }
        report_["certificates"] = std::move(certificates);
        report_["propagation_steps"] = steps_;
        report_["exit_code"] = exit_code_;
    }
};

}  // namespace detail

inline EvalResult evaluate(const Script& script,
                           const std::string& script_name,
                           EvalOptions opts = {}) {
    return detail::Evaluator(script, script_name, std::move(opts)).run();
}

}  // namespace svlab
