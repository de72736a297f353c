#include "cplus/text_format.hpp"

#include <cctype>
#include <charconv>

namespace cplus::text {

using namespace cplus::schema;

namespace {

enum class Tok : uint8_t { Ident, Int, Punct, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    int line = 1;
};

struct Lexer {
    const std::string &src;
    size_t pos = 0;
    int line = 1;
    Token cur;

    explicit Lexer(const std::string &s) : src(s) { advance(); }

    [[noreturn]] void fail(const std::string &msg) const { throw ParseError(msg, cur.line); }

    void advance() {
        while (pos < src.size()) {
            char c = src[pos];
            if (c == '\n') {
                ++line;
                ++pos;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos;
            } else if (c == '#') {
                while (pos < src.size() && src[pos] != '\n')
                    ++pos;
            } else if (c == '/' && pos + 1 < src.size() && src[pos + 1] == '/') {
                while (pos < src.size() && src[pos] != '\n')
                    ++pos;
            } else {
                break;
            }
        }
        cur.line = line;
        if (pos >= src.size()) {
            cur = {Tok::End, "", line};
            return;
        }
        char c = src[pos];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos;
            while (pos < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_' ||
                    src[pos] == '\''))
                ++pos;
            cur = {Tok::Ident, src.substr(start, pos - start), line};
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos;
            while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos])))
                ++pos;
            cur = {Tok::Int, src.substr(start, pos - start), line};
            return;
        }
        auto two = [&](const char *t) {
            if (pos + 1 < src.size() && src[pos] == t[0] && src[pos + 1] == t[1]) {
                cur = {Tok::Punct, t, line};
                pos += 2;
                return true;
            }
            return false;
        };
        if (two("->") || two("<=") || two(">=") || two("!=") || two("..")) {
            return;
        }
        cur = {Tok::Punct, std::string(1, c), line};
        ++pos;
    }

    bool at(Tok k, const std::string &t = "") const {
        return cur.kind == k && (t.empty() || cur.text == t);
    }
    bool at_ident(const std::string &t) const { return cur.kind == Tok::Ident && cur.text == t; }

    Token take() {
        Token t = cur;
        advance();
        return t;
    }

    void expect(Tok k, const std::string &t) {
        if (!at(k, t))
            fail("expected '" + t + "', got '" + cur.text + "'");
        advance();
    }

    std::string expect_ident() {
        if (cur.kind != Tok::Ident)
            fail("expected identifier, got '" + cur.text + "'");
        return take().text;
    }
};

bool is_variable_name(const std::string &s) {
    return !s.empty() && std::isupper(static_cast<unsigned char>(s[0]));
}

struct Parser {
    Lexer lex;
    SchematicDescription sd;

    explicit Parser(const std::string &src) : lex(src) {}

    Term parse_term() {
        if (lex.cur.kind == Tok::Int)
            return Term::sym(lex.take().text);
        std::string name = lex.expect_ident();
        if (!is_variable_name(name))
            return Term::sym(name);
        int offset = 0;
        if (lex.at(Tok::Punct, "+") || lex.at(Tok::Punct, "-")) {
            int sign = lex.take().text == "+" ? 1 : -1;
            if (lex.cur.kind != Tok::Int)
                lex.fail("expected integer offset");
            offset = sign * std::stoi(lex.take().text);
        }
        return Term::var(name, offset);
    }

    ConstantRef parse_constref() {
        ConstantRef ref;
        ref.family = lex.expect_ident();
        if (lex.at(Tok::Punct, "(")) {
            lex.advance();
            while (true) {
                ref.args.push_back(parse_term());
                if (lex.at(Tok::Punct, ","))
                    lex.advance();
                else
                    break;
            }
            lex.expect(Tok::Punct, ")");
        }
        return ref;
    }

    std::optional<CmpOp> peek_cmp() {
        if (lex.at(Tok::Punct, "<"))
            return CmpOp::Lt;
        if (lex.at(Tok::Punct, "<="))
            return CmpOp::Le;
        if (lex.at(Tok::Punct, ">"))
            return CmpOp::Gt;
        if (lex.at(Tok::Punct, ">="))
            return CmpOp::Ge;
        return std::nullopt;
    }

    SFormulaPtr parse_atom_or_cmp() {
        ConstantRef ref = parse_constref();
        if (lex.at(Tok::Punct, "=")) {
            lex.advance();
            return f_atom(std::move(ref), parse_term());
        }
        if (auto op = peek_cmp()) {
            lex.advance();
            if (lex.cur.kind == Tok::Int)
                return f_cmp(std::move(ref), *op, std::stol(lex.take().text));
            return f_cmp(std::move(ref), *op, parse_constref());
        }
        return f_atom(std::move(ref));  // Boolean sugar
    }

    SFormulaPtr parse_primary() {
        if (lex.at_ident("true")) {
            lex.advance();
            return f_true();
        }
        if (lex.at_ident("false")) {
            lex.advance();
            return f_false();
        }
        if (lex.at_ident("forall")) {
            lex.advance();
            std::string var = lex.expect_ident();
            if (!is_variable_name(var))
                lex.fail("forall expects a variable name");
            auto it = sd.var_sorts.find(var);
            if (it == sd.var_sorts.end())
                lex.fail("forall variable " + var + " has no declared sort");
            lex.expect(Tok::Punct, "(");
            SFormulaPtr body = parse_formula();
            lex.expect(Tok::Punct, ")");
            return f_forall(var, it->second, std::move(body));
        }
        if (lex.at(Tok::Punct, "(")) {
            lex.advance();
            SFormulaPtr f = parse_formula();
            lex.expect(Tok::Punct, ")");
            return f;
        }
        if (lex.at(Tok::Punct, "!")) {
            lex.advance();
            return f_not(parse_primary());
        }
        return parse_atom_or_cmp();
    }

    SFormulaPtr parse_conjunct() {
        SFormulaPtr f = parse_primary();
        if (!lex.at(Tok::Punct, "&"))
            return f;
        std::vector<SFormulaPtr> kids{f};
        while (lex.at(Tok::Punct, "&")) {
            lex.advance();
            kids.push_back(parse_primary());
        }
        return f_and(std::move(kids));
    }

    SFormulaPtr parse_disjunct() {
        SFormulaPtr f = parse_conjunct();
        if (!lex.at(Tok::Punct, "|"))
            return f;
        std::vector<SFormulaPtr> kids{f};
        while (lex.at(Tok::Punct, "|")) {
            lex.advance();
            kids.push_back(parse_conjunct());
        }
        return f_or(std::move(kids));
    }

    SFormulaPtr parse_formula() {
        SFormulaPtr f = parse_disjunct();
        if (lex.at(Tok::Punct, "->")) {
            lex.advance();
            return f_implies(std::move(f), parse_formula());
        }
        return f;
    }

    std::vector<std::string> parse_symbol_list_braced() {
        lex.expect(Tok::Punct, "{");
        std::vector<std::string> out;
        while (true) {
            if (lex.cur.kind != Tok::Ident && lex.cur.kind != Tok::Int)
                lex.fail("expected symbol");
            out.push_back(lex.take().text);
            if (lex.at(Tok::Punct, ","))
                lex.advance();
            else
                break;
        }
        lex.expect(Tok::Punct, "}");
        return out;
    }

    std::vector<std::string> parse_domain() {
        if (lex.at(Tok::Punct, "{"))
            return parse_symbol_list_braced();
        if (lex.cur.kind == Tok::Int) {
            long lo = std::stol(lex.take().text);
            lex.expect(Tok::Punct, "..");
            if (lex.cur.kind != Tok::Int)
                lex.fail("expected range upper bound");
            long hi = std::stol(lex.take().text);
            if (hi < lo)
                lex.fail("empty integer range");
            std::vector<std::string> out;
            for (long v = lo; v <= hi; ++v)
                out.push_back(std::to_string(v));
            return out;
        }
        std::string sort = lex.expect_ident();
        return sd.require_sort(sort).elements;
    }

    void parse_guards(LawTemplate &law) {
        if (!lex.at_ident("where"))
            return;
        lex.advance();
        while (true) {
            Guard g;
            g.lhs = parse_term();
            if (lex.at(Tok::Punct, "="))
                g.op = CmpOp::Eq;
            else if (lex.at(Tok::Punct, "!="))
                g.op = CmpOp::Ne;
            else if (auto op = peek_cmp())
                g.op = *op;
            else
                lex.fail("expected guard comparison");
            lex.advance();
            g.rhs = parse_term();
            law.guards.push_back(std::move(g));
            if (lex.at(Tok::Punct, ","))
                lex.advance();
            else
                break;
        }
    }

    /// head := atom | !atom | atom=value | false
    SFormulaPtr parse_head() {
        if (lex.at_ident("false")) {
            lex.advance();
            return f_false();
        }
        if (lex.at(Tok::Punct, "!")) {
            lex.advance();
            ConstantRef ref = parse_constref();
            return f_not(f_atom(std::move(ref)));
        }
        ConstantRef ref = parse_constref();
        if (lex.at(Tok::Punct, "=")) {
            lex.advance();
            return f_atom(std::move(ref), parse_term());
        }
        return f_atom(std::move(ref));
    }

    void parse_constant_decl(bool action) {
        ConstantKind kind = ConstantKind::Action;
        if (!action) {
            if (lex.at_ident("simple")) {
                lex.advance();
                kind = ConstantKind::SimpleFluent;
            } else if (lex.at_ident("sdetermined")) {
                lex.advance();
                kind = ConstantKind::StaticallyDeterminedFluent;
            } else {
                lex.fail("expected 'simple' or 'sdetermined'");
            }
        }
        std::string family = lex.expect_ident();
        std::vector<std::string> params;
        if (lex.at(Tok::Punct, "(")) {
            lex.advance();
            while (true) {
                if (lex.cur.kind != Tok::Ident && lex.cur.kind != Tok::Int)
                    lex.fail("expected sort name or symbol");
                params.push_back(lex.take().text);
                if (lex.at(Tok::Punct, ","))
                    lex.advance();
                else
                    break;
            }
            lex.expect(Tok::Punct, ")");
        }
        std::vector<std::string> domain;
        if (action) {
            domain = boolean_domain();
        } else {
            lex.expect(Tok::Punct, ":");
            domain = parse_domain();
        }
        lex.expect(Tok::Punct, ";");

        bool all_sorts = !params.empty();
        for (const std::string &p : params)
            all_sorts = all_sorts && sd.find_sort(p) != nullptr;
        if (all_sorts)
            sd.add_schema(family, params, kind, domain);
        else if (params.empty())
            sd.add_schema(family, {}, kind, domain);
        else
            sd.add_ground_constant(family, params, kind, domain);
    }

    void parse_statement() {
        if (lex.at_ident("sort")) {
            lex.advance();
            std::string name = lex.expect_ident();
            lex.expect(Tok::Punct, "=");
            std::vector<std::string> elems;
            if (lex.at(Tok::Punct, "{"))
                elems = parse_symbol_list_braced();
            else
                elems = parse_domain();
            lex.expect(Tok::Punct, ";");
            sd.add_sort(name, elems);
            return;
        }
        if (lex.at_ident("var")) {
            lex.advance();
            std::vector<std::string> names;
            names.push_back(lex.expect_ident());
            while (lex.at(Tok::Punct, ",")) {
                lex.advance();
                names.push_back(lex.expect_ident());
            }
            lex.expect(Tok::Punct, ":");
            std::string sort = lex.expect_ident();
            lex.expect(Tok::Punct, ";");
            for (std::string &n : names) {
                if (!is_variable_name(n))
                    lex.fail("variable names start with an upper-case letter: " + n);
                sd.declare_var(n, sort);
            }
            return;
        }
        if (lex.at_ident("fluent")) {
            lex.advance();
            parse_constant_decl(false);
            return;
        }
        if (lex.at_ident("action")) {
            lex.advance();
            parse_constant_decl(true);
            return;
        }
        if (lex.at_ident("caused")) {
            lex.advance();
            LawTemplate law;
            law.head = parse_head();
            if (lex.at_ident("iff")) {
                lex.advance();
                law.form = LawForm::Iff;
                law.condition = parse_formula();
            } else {
                lex.expect(Tok::Ident, "if");
                law.condition = parse_formula();
                if (lex.at_ident("after")) {
                    lex.advance();
                    law.form = LawForm::CausedIfAfter;
                    law.precondition = parse_formula();
                } else {
                    law.form = LawForm::CausedIf;
                }
            }
            parse_guards(law);
            lex.expect(Tok::Punct, ";");
            sd.add_law(std::move(law));
            return;
        }
        if (lex.at_ident("default")) {
            lex.advance();
            LawTemplate law;
            law.form = LawForm::Default;
            law.head = parse_head();
            parse_guards(law);
            lex.expect(Tok::Punct, ";");
            sd.add_law(std::move(law));
            return;
        }
        if (lex.at_ident("inertial")) {
            lex.advance();
            LawTemplate law;
            law.form = LawForm::Inertial;
            law.inertial_ref = parse_constref();
            parse_guards(law);
            lex.expect(Tok::Punct, ";");
            sd.add_law(std::move(law));
            return;
        }
        // ACT causes HEAD if COND;
        LawTemplate law;
        law.form = LawForm::Causes;
        law.action = parse_atom_or_cmp();
        lex.expect(Tok::Ident, "causes");
        law.head = parse_head();
        if (lex.at_ident("if")) {
            lex.advance();
            law.precondition = parse_formula();
        } else {
            law.precondition = f_true();
        }
        parse_guards(law);
        lex.expect(Tok::Punct, ";");
        sd.add_law(std::move(law));
    }

    SchematicDescription run() {
        while (!lex.at(Tok::End))
            parse_statement();
        return std::move(sd);
    }
};

}  // namespace

SchematicDescription parse_description(const std::string &text) {
    Parser p(text);
    return p.run();
}

SFormulaPtr parse_formula(const std::string &text, const SchematicDescription &context) {
    Parser p(text);
    p.sd.sorts = context.sorts;
    p.sd.var_sorts = context.var_sorts;
    SFormulaPtr f = p.parse_formula();
    if (!p.lex.at(Tok::End))
        p.lex.fail("trailing input after formula: '" + p.lex.cur.text + "'");
    return f;
}

namespace {

void print_formula(const ActionDescription &d, Formula f, std::string &out) {
    out += d.arena().render(f, d.signature());
}

}  // namespace

std::string print_description(const ActionDescription &d) {
    const Signature &sig = d.signature();
    std::string out;
    for (ConstantId c = 0; c < sig.size(); ++c) {
        const ConstantDecl &decl = sig.decl(c);
        if (decl.kind == ConstantKind::Action) {
            out += "action " + decl.render() + ";\n";
            continue;
        }
        out += decl.kind == ConstantKind::SimpleFluent ? "fluent simple " : "fluent sdetermined ";
        out += decl.render() + " : {";
        for (size_t i = 0; i < decl.domain.size(); ++i) {
            if (i)
                out += ", ";
            out += decl.domain[i];
        }
        out += "};\n";
    }
    auto head_text = [&](const std::optional<Atom> &head) {
        return head ? sig.render_atom(*head) : std::string("false");
    };
    for (const StaticLaw &law : d.statics()) {
        out += "caused " + head_text(law.head) + " if ";
        print_formula(d, law.condition, out);
        out += ";\n";
    }
    for (const DynamicLaw &law : d.dynamics()) {
        out += "caused " + head_text(law.head) + " if ";
        print_formula(d, law.condition, out);
        out += " after ";
        print_formula(d, law.precondition, out);
        out += ";\n";
    }
    return out;
}

}  // namespace cplus::text
