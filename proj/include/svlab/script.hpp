#pragma once

#include "inference.hpp"
#include "rational.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace svlab {

struct ScriptError : std::runtime_error {
    int line;
    int column;
    ScriptError(int line_, int column_, const std::string& message)
        : std::runtime_error("line " + std::to_string(line_) + ":" +
                             std::to_string(column_) + ": " + message),
          line(line_),
          column(column_) {}
};

enum class ExprKind { dataset, name_ref, double_, connsum, product, glue, cover };

struct Expr {
    ExprKind kind = ExprKind::name_ref;
    std::string name;                // dataset name or referenced binding
    std::vector<Expr> args;
    int left_component = 0;          // glue
    int right_component = 0;         // glue
    std::map<int, int> vertex_map;   // glue, optional
    std::string cocycle;             // cover
    int degree = 1;                  // cover
    bool operator==(const Expr&) const = default;
};

enum class StmtKind {
    manifold,
    let,
    certify,
    recognize,
    stable,
    assertion,
    query,
    gromov,
    reinhart,
    obstruction,
    fillchi,
    monoid,
    cobordism
};

struct CertifyVia {
    enum class Kind { none, double_, product } kind = Kind::none;
    std::string first;
    std::string second;
    bool operator==(const CertifyVia&) const = default;
};

struct Assertion {
    std::string func;  // chi, sv, ..., betti, facets, bound, member, verified
    std::string target;
    std::string argument;             // certificate kind for bound(...)
    std::string op;                   // ==, !=, <=, >=, <, >
    Rational value = 0;
    std::vector<long long> list_value;  // betti right-hand side
    Flag flag_value = Flag::unknown;    // member right-hand side
    bool operator==(const Assertion&) const = default;
};

struct Statement {
    StmtKind kind = StmtKind::query;
    int line = 0;
    std::string name;
    ManifoldDescription desc;        // manifold
    Expr expr;                       // let
    CertifyVia via;                  // certify
    std::vector<std::string> names;  // stable / fillchi / monoid / cobordism
    Assertion assertion;
    std::string invariant;           // query
    int number = 0;                  // reinhart dimension / monoid dimension
};

struct Script {
    std::vector<Statement> statements;
};

/** Structural equality that ignores source positions. */
inline bool equivalent(const Statement& a, const Statement& b) {
    return a.kind == b.kind && a.name == b.name && a.desc == b.desc &&
           a.expr == b.expr && a.via == b.via && a.names == b.names &&
           a.assertion == b.assertion && a.invariant == b.invariant &&
           a.number == b.number;
}

inline bool equivalent(const Script& a, const Script& b) {
    if (a.statements.size() != b.statements.size()) return false;
    for (std::size_t i = 0; i < a.statements.size(); ++i)
        if (!equivalent(a.statements[i], b.statements[i])) return false;
    return true;
}

namespace detail {

struct Token {
    enum class Type { ident, integer, punct, newline, end };
    Type type = Type::end;
    std::string text;
    long long value = 0;
    int line = 1;
    int column = 1;
};

inline std::vector<Token> lex(const std::string& source) {
    std::vector<Token> out;
    int line = 1, column = 1;
    std::size_t i = 0;
    while (i < source.size()) {
        char c = source[i];
        if (c == '\n') {
            if (!out.empty() && out.back().type != Token::Type::newline)
                out.push_back({Token::Type::newline, "\\n", 0, line, column});
            ++i;
            ++line;
            column = 1;
            continue;
        }
        if (c == ' ' || c == '\t' || c == '\r') {
            ++i;
            ++column;
            continue;
        }
        if (c == '#') {
            while (i < source.size() && source[i] != '\n') ++i;
            continue;
        }
        int start_column = column;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string text;
            while (i < source.size() &&
                   (std::isalnum(static_cast<unsigned char>(source[i])) ||
                    source[i] == '_' || source[i] == '\'')) {
                text += source[i++];
                ++column;
            }
            out.push_back(
                {Token::Type::ident, std::move(text), 0, line, start_column});
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string text;
            while (i < source.size() &&
                   std::isdigit(static_cast<unsigned char>(source[i]))) {
                text += source[i++];
                ++column;
            }
            out.push_back({Token::Type::integer, text, std::stoll(text), line,
                           start_column});
            continue;
        }
        std::string punct(1, c);
        if ((c == '=' || c == '!' || c == '<' || c == '>') &&
            i + 1 < source.size() && source[i + 1] == '=') {
            punct += '=';
            ++i;
            ++column;
        }
        static const std::string allowed = "{}[](),:;=.+-/<>*";
        if (punct.size() == 1 && allowed.find(c) == std::string::npos)
            throw ScriptError(line, start_column,
                              std::string("unexpected character '") + c + "'");
        ++i;
        ++column;
        out.push_back(
            {Token::Type::punct, std::move(punct), 0, line, start_column});
    }
    if (!out.empty() && out.back().type != Token::Type::newline)
        out.push_back({Token::Type::newline, "\\n", 0, line, column});
    out.push_back({Token::Type::end, "", 0, line, column});
    return out;
}

class Parser {
public:
    explicit Parser(const std::string& source) : tokens_(lex(source)) {}

    Script parse_script() {
        Script script;
        skip_newlines();
        while (!at_end()) {
            script.statements.push_back(parse_statement());
            expect_newline();
            skip_newlines();
        }
        return script;
    }

private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;

    const Token& peek(int ahead = 0) const {
        std::size_t i = pos_ + static_cast<std::size_t>(ahead);
        return i < tokens_.size() ? tokens_[i] : tokens_.back();
    }
    bool at_end() const { return peek().type == Token::Type::end; }
    const Token& advance() { return tokens_[pos_++]; }

    [[noreturn]] void fail(const std::string& message) const {
        const Token& t = peek();
        std::string got = t.type == Token::Type::newline ? "end of line"
                          : t.type == Token::Type::end   ? "end of script"
                                                         : "'" + t.text + "'";
        throw ScriptError(t.line, t.column, message + ", got " + got);
    }

    bool is_punct(const std::string& text) const {
        return peek().type == Token::Type::punct && peek().text == text;
    }
    bool is_ident(const std::string& text) const {
        return peek().type == Token::Type::ident && peek().text == text;
    }
    void expect_punct(const std::string& text) {
        if (!is_punct(text)) fail("expected '" + text + "'");
        advance();
    }
    std::string expect_ident(const std::string& what) {
        if (peek().type != Token::Type::ident) fail("expected " + what);
        return advance().text;
    }
    void expect_keyword(const std::string& text) {
        if (!is_ident(text)) fail("expected '" + text + "'");
        advance();
    }
    long long expect_integer() {
        bool negative = false;
        if (is_punct("-")) {
            advance();
            negative = true;
        }
        if (peek().type != Token::Type::integer) fail("expected an integer");
        long long value = advance().value;
        return negative ? -value : value;
    }
    Rational expect_rational() {
        long long numerator = expect_integer();
        if (is_punct("/")) {
            advance();
            if (peek().type != Token::Type::integer)
                fail("expected a denominator");
            long long denominator = advance().value;
            if (denominator == 0) fail("zero denominator");
            return Rational(numerator) / Rational(denominator);
        }
        return Rational(numerator);
    }
    void expect_newline() {
        if (peek().type == Token::Type::end) return;
        if (peek().type != Token::Type::newline)
            fail("expected end of statement");
        advance();
    }
    void skip_newlines() {
        while (peek().type == Token::Type::newline) advance();
    }

    Flag expect_flag_value() {
        if (is_ident("yes")) {
            advance();
            return Flag::yes;
        }
        if (is_ident("no")) {
            advance();
            return Flag::no;
        }
        fail("expected 'yes' or 'no'");
    }

    std::vector<std::string> parse_name_list(bool allow_empty = false) {
        expect_punct("[");
        skip_newlines();
        std::vector<std::string> names;
        if (is_punct("]")) {
            if (!allow_empty) fail("expected at least one name");
            advance();
            return names;
        }
        names.push_back(expect_ident("a name"));
        while (is_punct(",")) {
            advance();
            skip_newlines();
            names.push_back(expect_ident("a name"));
        }
        skip_newlines();
        expect_punct("]");
        return names;
    }

    Statement parse_statement() {
        Statement stmt;
        stmt.line = peek().line;
        std::string keyword = expect_ident("a statement keyword");
        if (keyword == "manifold") return parse_manifold(std::move(stmt));
        if (keyword == "let") return parse_let(std::move(stmt));
        if (keyword == "certify") return parse_certify(std::move(stmt));
        if (keyword == "recognize") {
            stmt.kind = StmtKind::recognize;
            stmt.name = expect_ident("a manifold name");
            return stmt;
        }
        if (keyword == "stable") {
            stmt.kind = StmtKind::stable;
            stmt.name = expect_ident("a base manifold name");
            expect_keyword("from");
            stmt.names = parse_name_list();
            return stmt;
        }
        if (keyword == "assert") return parse_assert(std::move(stmt));
        if (keyword == "query") {
            stmt.kind = StmtKind::query;
            stmt.name = expect_ident("a manifold name");
            expect_punct(".");
            stmt.invariant = expect_ident("an invariant name");
            return stmt;
        }
        if (keyword == "gromov") {
            stmt.kind = StmtKind::gromov;
            stmt.name = expect_ident("a manifold name");
            return stmt;
        }
        if (keyword == "reinhart") {
            stmt.kind = StmtKind::reinhart;
            stmt.name = expect_ident("a manifold name");
            stmt.number = static_cast<int>(expect_integer());
            return stmt;
        }
        if (keyword == "obstruction") {
            stmt.kind = StmtKind::obstruction;
            stmt.name = expect_ident("a manifold name");
            return stmt;
        }
        if (keyword == "fillchi") {
            stmt.kind = StmtKind::fillchi;
            stmt.name = expect_ident("a target name");
            stmt.names = parse_name_list();
            return stmt;
        }
        if (keyword == "monoid") {
            stmt.kind = StmtKind::monoid;
            stmt.number = static_cast<int>(expect_integer());
            stmt.names = parse_name_list(/*allow_empty=*/true);
            return stmt;
        }
        if (keyword == "cobordism") {
            stmt.kind = StmtKind::cobordism;
            stmt.name = expect_ident("a cobordism name");
            expect_punct("=");
            stmt.names.push_back(expect_ident("a cobordism label"));
            while (is_punct(";")) {
                advance();
                stmt.names.push_back(expect_ident("a cobordism label"));
            }
            return stmt;
        }
        throw ScriptError(stmt.line, peek().column,
                          "unknown statement '" + keyword + "'");
    }

    Statement parse_manifold(Statement stmt) {
        stmt.kind = StmtKind::manifold;
        stmt.name = expect_ident("a manifold name");
        stmt.desc.name = stmt.name;
        expect_punct("{");
        skip_newlines();
        std::vector<std::string> seen;
        while (!is_punct("}")) {
            std::string key = expect_ident("an attribute key");
            for (const auto& previous : seen)
                if (previous == key)
                    fail("attribute '" + key + "' assigned twice");
            seen.push_back(key);
            expect_punct(":");
            parse_attribute(stmt.desc, key);
            if (peek().type == Token::Type::newline) skip_newlines();
        }
        expect_punct("}");
        return stmt;
    }

    void parse_attribute(ManifoldDescription& desc, const std::string& key) {
        static const std::map<std::string, Flag ManifoldDescription::*>
            flag_keys = {
                {"closed", &ManifoldDescription::closed},
                {"oriented", &ManifoldDescription::oriented},
                {"connected", &ManifoldDescription::connected},
                {"aspherical", &ManifoldDescription::aspherical},
                {"pi1_amenable", &ManifoldDescription::pi1_amenable},
                {"pi1_residually_finite",
                 &ManifoldDescription::pi1_residually_finite},
                {"pi1_hyperbolic_nonelementary",
                 &ManifoldDescription::pi1_hyperbolic_nonelementary},
                {"pi1_lex", &ManifoldDescription::pi1_lex},
                {"pi1_boundedly_acyclic",
                 &ManifoldDescription::pi1_boundedly_acyclic},
                {"hyperbolic", &ManifoldDescription::hyperbolic},
                {"negative_curvature",
                 &ManifoldDescription::negative_curvature},
                {"locally_symmetric_noncompact",
                 &ManifoldDescription::locally_symmetric_noncompact},
                {"smooth_s1_action", &ManifoldDescription::smooth_s1_action},
                {"f_structure", &ManifoldDescription::f_structure},
                {"affine_translation",
                 &ManifoldDescription::affine_translation},
                {"graph_3manifold", &ManifoldDescription::graph_3manifold},
                {"mapping_torus_3", &ManifoldDescription::mapping_torus_3},
                {"locally_coamenable_subcomplex",
                 &ManifoldDescription::locally_coamenable_subcomplex},
                {"relative_amenable_cover",
                 &ManifoldDescription::relative_amenable_cover},
                {"boundary_of_zero_rel_sv",
                 &ManifoldDescription::boundary_of_zero_rel_sv},
            };
        if (auto it = flag_keys.find(key); it != flag_keys.end()) {
            desc.*(it->second) = expect_flag_value();
            return;
        }
        if (key == "dim") {
            desc.dim = static_cast<int>(expect_integer());
            return;
        }
        if (key == "amcat_upper") {
            desc.amcat_upper = expect_integer();
            return;
        }
        if (key == "self_map_degree") {
            desc.self_map_degree = expect_integer();
            return;
        }
        if (key == "signature") {
            desc.signature = expect_integer();
            return;
        }
        if (key == "component_count") {
            desc.component_count = expect_integer();
            return;
        }
        if (key == "signed_points") {
            desc.signed_points = expect_integer();
            return;
        }
        if (key == "chi") {
            desc.declared_chi = expect_integer();
            return;
        }
        if (key == "chi_rel") {
            desc.declared_chi_rel = expect_integer();
            return;
        }
        if (key == "sv") {
            desc.declared_sv = expect_rational();
            return;
        }
        if (key == "sv_rel") {
            desc.declared_sv_rel = expect_rational();
            return;
        }
        if (key == "boundary") {
            expect_punct("[");
            skip_newlines();
            while (!is_punct("]")) {
                BoundaryRef ref;
                ref.name = expect_ident("a boundary name");
                if (is_punct("(")) {
                    advance();
                    while (!is_punct(")")) {
                        std::string flag = expect_ident("a boundary flag");
                        Flag value = Flag::yes;
                        if (is_punct(":")) {
                            advance();
                            value = expect_flag_value();
                        }
                        if (flag == "pi1_injective")
                            ref.pi1_injective = value;
                        else if (flag == "aspherical")
                            ref.aspherical = value;
                        else
                            fail("unknown boundary flag '" + flag + "'");
                        if (is_punct(",")) advance();
                    }
                    expect_punct(")");
                }
                desc.boundary.push_back(std::move(ref));
                if (is_punct(",")) {
                    advance();
                    skip_newlines();
                }
            }
            expect_punct("]");
            return;
        }
        if (key == "product_factors" || key == "connsum_factors") {
            auto names = parse_name_list();
            if (key == "product_factors")
                desc.product_factors = std::move(names);
            else
                desc.connsum_factors = std::move(names);
            return;
        }
        if (key == "cover_of") {
            CoverRelation relation;
            relation.base = expect_ident("a base manifold name");
            expect_keyword("degree");
            relation.degree = expect_integer();
            desc.cover_of = relation;
            return;
        }
        if (key == "fibre_bundle") {
            FibreBundle bundle;
            bundle.fiber = expect_ident("a fibre name");
            expect_keyword("over");
            bundle.base = expect_ident("a base name");
            desc.fibre_bundle = bundle;
            return;
        }
        if (key == "double_of") {
            desc.double_of = expect_ident("a manifold name");
            return;
        }
        if (key == "glued") {
            GlueRelation glue;
            glue.left = expect_ident("a glueing piece");
            expect_punct("+");
            glue.right = expect_ident("a glueing piece");
            if (is_ident("along")) {
                advance();
                glue.along = parse_name_list();
            }
            if (is_punct("(")) {
                advance();
                while (!is_punct(")")) {
                    std::string flag = expect_ident("a glueing flag");
                    Flag value = Flag::yes;
                    if (is_punct(":")) {
                        advance();
                        value = expect_flag_value();
                    }
                    if (flag == "amenable")
                        glue.amenable = value;
                    else if (flag == "pi1_injective")
                        glue.pi1_injective = value;
                    else
                        fail("unknown glueing flag '" + flag + "'");
                    if (is_punct(",")) advance();
                }
                expect_punct(")");
            }
            desc.glued = std::move(glue);
            return;
        }
        fail("unknown attribute key '" + key + "'");
    }

    Statement parse_let(Statement stmt) {
        stmt.kind = StmtKind::let;
        stmt.name = expect_ident("a binding name");
        expect_punct("=");
        stmt.expr = parse_expr();
        return stmt;
    }

    Expr parse_expr() {
        std::string head = expect_ident("an expression");
        Expr expr;
        if (head == "dataset") {
            expr.kind = ExprKind::dataset;
            expect_punct("(");
            expr.name = expect_ident("a dataset name");
            if (is_punct("[")) {
                advance();
                expr.name += "[" + std::to_string(expect_integer()) + "]";
                expect_punct("]");
            } else if (is_punct("-")) {
                advance();
                expr.name += "-" + std::to_string(expect_integer());
            }
            expect_punct(")");
            return expr;
        }
        if (head == "double") {
            expr.kind = ExprKind::double_;
            expect_punct("(");
            expr.args.push_back(parse_expr());
            expect_punct(")");
            return expr;
        }
        if (head == "connsum" || head == "product") {
            expr.kind =
                head == "connsum" ? ExprKind::connsum : ExprKind::product;
            expect_punct("(");
            expr.args.push_back(parse_expr());
            expect_punct(",");
            expr.args.push_back(parse_expr());
            expect_punct(")");
            return expr;
        }
        if (head == "glue") {
            expr.kind = ExprKind::glue;
            expect_punct("(");
            expr.args.push_back(parse_expr());
            expr.left_component = parse_boundary_index();
            expect_punct(",");
            expr.args.push_back(parse_expr());
            expr.right_component = parse_boundary_index();
            if (is_punct(",")) {
                advance();
                expect_punct("{");
                while (!is_punct("}")) {
                    int from = static_cast<int>(expect_integer());
                    expect_punct(":");
                    int to = static_cast<int>(expect_integer());
                    expr.vertex_map[from] = to;
                    if (is_punct(",")) advance();
                }
                expect_punct("}");
            }
            expect_punct(")");
            return expr;
        }
        if (head == "cover") {
            expr.kind = ExprKind::cover;
            expect_punct("(");
            Expr base;
            base.kind = ExprKind::name_ref;
            base.name = expect_ident("a base binding name");
            expr.args.push_back(std::move(base));
            expect_punct(",");
            expr.cocycle = expect_ident("a cocycle name");
            expect_punct(",");
            expr.degree = static_cast<int>(expect_integer());
            expect_punct(")");
            return expr;
        }
        expr.kind = ExprKind::name_ref;
        expr.name = head;
        return expr;
    }

    int parse_boundary_index() {
        expect_punct(".");
        std::string tag = expect_ident("a boundary selector like b0");
        if (tag.size() < 2 || tag[0] != 'b')
            fail("boundary selectors look like b0, b1, ...");
        for (std::size_t i = 1; i < tag.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(tag[i])))
                fail("boundary selectors look like b0, b1, ...");
        return std::stoi(tag.substr(1));
    }

    Statement parse_certify(Statement stmt) {
        stmt.kind = StmtKind::certify;
        stmt.name = expect_ident("a manifold name");
        if (is_ident("via")) {
            advance();
            std::string mode = expect_ident("'double' or 'product'");
            if (mode == "double") {
                stmt.via.kind = CertifyVia::Kind::double_;
                stmt.via.first = expect_ident("a manifold name");
            } else if (mode == "product") {
                stmt.via.kind = CertifyVia::Kind::product;
                stmt.via.first = expect_ident("a factor name");
                stmt.via.second = expect_ident("a factor name");
            } else {
                fail("expected 'double' or 'product'");
            }
        }
        return stmt;
    }

    Statement parse_assert(Statement stmt) {
        stmt.kind = StmtKind::assertion;
        Assertion& a = stmt.assertion;
        a.func = expect_ident("an assertion function");
        if (a.func == "verified") return stmt;
        static const std::vector<std::string> funcs = {
            "chi",    "chi_rel",    "sv",     "sv_int", "sv_stable",
            "sv_rel", "sv_rel_int", "sv_rel_stable",    "betti",
            "facets", "bound",      "member"};
        bool known = false;
        for (const auto& f : funcs) known = known || f == a.func;
        if (!known) fail("unknown assertion function '" + a.func + "'");
        expect_punct("(");
        a.target = expect_ident("a target name");
        if (a.func == "bound") {
            expect_punct(",");
            a.argument = expect_ident("a certificate kind");
            while (is_punct("-")) {  // relative-integral etc.
                advance();
                a.argument += "-" + expect_ident("a certificate kind");
            }
        }
        expect_punct(")");
        if (peek().type != Token::Type::punct) fail("expected a comparison");
        a.op = advance().text;
        static const std::vector<std::string> ops = {"==", "!=", "<=",
                                                     ">=", "<",  ">"};
        bool valid_op = false;
        for (const auto& op : ops) valid_op = valid_op || op == a.op;
        if (!valid_op) fail("unknown comparison '" + a.op + "'");
        if (a.func == "betti") {
            if (a.op != "==" && a.op != "!=")
                fail("betti assertions use == or !=");
            expect_punct("[");
            if (!is_punct("]")) {
                a.list_value.push_back(expect_integer());
                while (is_punct(",")) {
                    advance();
                    a.list_value.push_back(expect_integer());
                }
            }
            expect_punct("]");
            return stmt;
        }
        if (a.func == "member") {
            if (a.op != "==" && a.op != "!=")
                fail("member assertions use == or !=");
            a.flag_value = expect_flag_value();
            return stmt;
        }
        a.value = expect_rational();
        return stmt;
    }
};

}  // namespace detail

inline Script parse(const std::string& source) {
    return detail::Parser(source).parse_script();
}

// --- canonical printing ----------------------------------------------------

namespace detail {

inline std::string print_expr(const Expr& expr) {
    switch (expr.kind) {
        case ExprKind::dataset: return "dataset(" + expr.name + ")";
        case ExprKind::name_ref: return expr.name;
        case ExprKind::double_:
            return "double(" + print_expr(expr.args[0]) + ")";
        case ExprKind::connsum:
            return "connsum(" + print_expr(expr.args[0]) + ", " +
                   print_expr(expr.args[1]) + ")";
        case ExprKind::product:
            return "product(" + print_expr(expr.args[0]) + ", " +
                   print_expr(expr.args[1]) + ")";
        case ExprKind::glue: {
            std::string out = "glue(" + print_expr(expr.args[0]) + ".b" +
                              std::to_string(expr.left_component) + ", " +
                              print_expr(expr.args[1]) + ".b" +
                              std::to_string(expr.right_component);
            if (!expr.vertex_map.empty()) {
                out += ", {";
                bool first = true;
                for (const auto& [from, to] : expr.vertex_map) {
                    if (!first) out += ", ";
                    first = false;
                    out += std::to_string(from) + ": " + std::to_string(to);
                }
                out += "}";
            }
            return out + ")";
        }
        case ExprKind::cover:
            return "cover(" + expr.args[0].name + ", " + expr.cocycle + ", " +
                   std::to_string(expr.degree) + ")";
    }
    throw std::logic_error("unreachable expression kind");
}

inline std::string print_flag_suffix(const std::string& name, Flag flag) {
    if (flag == Flag::unknown) return "";
    if (flag == Flag::yes) return name;
    return name + ": no";
}

inline std::string print_description(const ManifoldDescription& desc) {
    std::vector<std::string> lines;
    auto field = [&](const std::string& key, const std::string& value) {
        lines.push_back("  " + key + ": " + value);
    };
    auto flag_field = [&](const std::string& key, Flag flag) {
        if (flag != Flag::unknown) field(key, to_string(flag));
    };
    field("dim", std::to_string(desc.dim));
    flag_field("closed", desc.closed);
    flag_field("oriented", desc.oriented);
    flag_field("connected", desc.connected);
    flag_field("aspherical", desc.aspherical);
    if (!desc.boundary.empty()) {
        std::string value = "[";
        for (std::size_t i = 0; i < desc.boundary.size(); ++i) {
            if (i > 0) value += ", ";
            const BoundaryRef& ref = desc.boundary[i];
            value += ref.name;
            std::vector<std::string> flags;
            if (auto s = print_flag_suffix("pi1_injective", ref.pi1_injective);
                !s.empty())
                flags.push_back(s);
            if (auto s = print_flag_suffix("aspherical", ref.aspherical);
                !s.empty())
                flags.push_back(s);
            if (!flags.empty()) {
                value += "(";
                for (std::size_t j = 0; j < flags.size(); ++j)
                    value += (j ? ", " : "") + flags[j];
                value += ")";
            }
        }
        field("boundary", value + "]");
    }
    flag_field("pi1_amenable", desc.pi1_amenable);
    flag_field("pi1_residually_finite", desc.pi1_residually_finite);
    flag_field("pi1_hyperbolic_nonelementary",
               desc.pi1_hyperbolic_nonelementary);
    flag_field("pi1_lex", desc.pi1_lex);
    flag_field("pi1_boundedly_acyclic", desc.pi1_boundedly_acyclic);
    if (desc.amcat_upper) field("amcat_upper", std::to_string(*desc.amcat_upper));
    if (desc.self_map_degree)
        field("self_map_degree", std::to_string(*desc.self_map_degree));
    flag_field("hyperbolic", desc.hyperbolic);
    flag_field("negative_curvature", desc.negative_curvature);
    flag_field("locally_symmetric_noncompact",
               desc.locally_symmetric_noncompact);
    flag_field("smooth_s1_action", desc.smooth_s1_action);
    flag_field("f_structure", desc.f_structure);
    flag_field("affine_translation", desc.affine_translation);
    flag_field("graph_3manifold", desc.graph_3manifold);
    flag_field("mapping_torus_3", desc.mapping_torus_3);
    flag_field("locally_coamenable_subcomplex",
               desc.locally_coamenable_subcomplex);
    flag_field("relative_amenable_cover", desc.relative_amenable_cover);
    flag_field("boundary_of_zero_rel_sv", desc.boundary_of_zero_rel_sv);
    if (desc.fibre_bundle)
        field("fibre_bundle",
              desc.fibre_bundle->fiber + " over " + desc.fibre_bundle->base);
    if (desc.signature) field("signature", std::to_string(*desc.signature));
    if (desc.component_count)
        field("component_count", std::to_string(*desc.component_count));
    if (desc.signed_points)
        field("signed_points", std::to_string(*desc.signed_points));
    if (desc.declared_chi) field("chi", std::to_string(*desc.declared_chi));
    if (desc.declared_chi_rel)
        field("chi_rel", std::to_string(*desc.declared_chi_rel));
    if (desc.declared_sv) field("sv", to_string(*desc.declared_sv));
    if (desc.declared_sv_rel) field("sv_rel", to_string(*desc.declared_sv_rel));
    auto name_list = [](const std::vector<std::string>& names) {
        std::string out = "[";
        for (std::size_t i = 0; i < names.size(); ++i)
            out += (i ? ", " : "") + names[i];
        return out + "]";
    };
    if (!desc.product_factors.empty())
        field("product_factors", name_list(desc.product_factors));
    if (!desc.connsum_factors.empty())
        field("connsum_factors", name_list(desc.connsum_factors));
    if (desc.cover_of)
        field("cover_of", desc.cover_of->base + " degree " +
                              std::to_string(desc.cover_of->degree));
    if (desc.glued) {
        std::string value = desc.glued->left + " + " + desc.glued->right;
        if (!desc.glued->along.empty())
            value += " along " + name_list(desc.glued->along);
        std::vector<std::string> flags;
        if (auto s = print_flag_suffix("amenable", desc.glued->amenable);
            !s.empty())
            flags.push_back(s);
        if (auto s =
                print_flag_suffix("pi1_injective", desc.glued->pi1_injective);
            !s.empty())
            flags.push_back(s);
        if (!flags.empty()) {
            value += " (";
            for (std::size_t j = 0; j < flags.size(); ++j)
                value += (j ? ", " : "") + flags[j];
            value += ")";
        }
        field("glued", value);
    }
    if (desc.double_of) field("double_of", *desc.double_of);
    std::string out = "{\n";
    for (const auto& line : lines) out += line + "\n";
    return out + "}";
}

inline std::string print_assertion(const Assertion& a) {
    if (a.func == "verified") return "assert verified";
    std::string out = "assert " + a.func + "(" + a.target;
    if (!a.argument.empty()) out += ", " + a.argument;
    out += ") " + a.op + " ";
    if (a.func == "betti") {
        out += "[";
        for (std::size_t i = 0; i < a.list_value.size(); ++i)
            out += (i ? ", " : "") + std::to_string(a.list_value[i]);
        return out + "]";
    }
    if (a.func == "member") return out + to_string(a.flag_value);
    return out + to_string(a.value);
}

}  // namespace detail

/** Canonical form: parse(print(s)) is equivalent to s. */
inline std::string print(const Script& script) {
    std::string out;
    for (const auto& stmt : script.statements) {
        switch (stmt.kind) {
            case StmtKind::manifold:
                out += "manifold " + stmt.name + " " +
                       detail::print_description(stmt.desc);
                break;
            case StmtKind::let:
                out += "let " + stmt.name + " = " +
                       detail::print_expr(stmt.expr);
                break;
            case StmtKind::certify:
                out += "certify " + stmt.name;
                if (stmt.via.kind == CertifyVia::Kind::double_)
                    out += " via double " + stmt.via.first;
                if (stmt.via.kind == CertifyVia::Kind::product)
                    out += " via product " + stmt.via.first + " " +
                           stmt.via.second;
                break;
            case StmtKind::recognize:
                out += "recognize " + stmt.name;
                break;
            case StmtKind::stable: {
                out += "stable " + stmt.name + " from [";
                for (std::size_t i = 0; i < stmt.names.size(); ++i)
                    out += (i ? ", " : "") + stmt.names[i];
                out += "]";
                break;
            }
            case StmtKind::assertion:
                out += detail::print_assertion(stmt.assertion);
                break;
            case StmtKind::query:
                out += "query " + stmt.name + "." + stmt.invariant;
                break;
            case StmtKind::gromov:
                out += "gromov " + stmt.name;
                break;
            case StmtKind::reinhart:
                out += "reinhart " + stmt.name + " " +
                       std::to_string(stmt.number);
                break;
            case StmtKind::obstruction:
                out += "obstruction " + stmt.name;
                break;
            case StmtKind::fillchi: {
                out += "fillchi " + stmt.name + " [";
                for (std::size_t i = 0; i < stmt.names.size(); ++i)
                    out += (i ? ", " : "") + stmt.names[i];
                out += "]";
                break;
            }
            case StmtKind::monoid: {
                out += "monoid " + std::to_string(stmt.number) + " [";
                for (std::size_t i = 0; i < stmt.names.size(); ++i)
                    out += (i ? ", " : "") + stmt.names[i];
                out += "]";
                break;
            }
            case StmtKind::cobordism: {
                out += "cobordism " + stmt.name + " = ";
                for (std::size_t i = 0; i < stmt.names.size(); ++i)
                    out += (i ? " ; " : "") + stmt.names[i];
                break;
            }
        }
        out += "\n";
    }
    return out;
}

}  // namespace svlab
