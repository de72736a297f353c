#include "cplus/grounding.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>
#include <unordered_set>

namespace cplus::schema {

namespace {

bool parse_int(const std::string &s, long &out) {
    if (s.empty())
        return false;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && p == s.data() + s.size();
}

std::string resolve_term(const Term &t, const Binding &b) {
    if (t.kind == Term::Kind::Symbol)
        return t.text;
    auto it = b.find(t.text);
    if (it == b.end())
        throw GroundingError("unbound variable " + t.text);
    if (t.offset == 0)
        return it->second;
    long v;
    if (!parse_int(it->second, v))
        throw GroundingError("arithmetic on non-numeric value " + it->second + " for variable " +
                             t.text);
    return std::to_string(v + t.offset);
}

struct FormulaGrounder {
    const SchematicDescription &sd;
    const Signature &sig;
    FormulaArena &arena;

    ConstantId resolve_ref(const ConstantRef &ref, const Binding &b) const {
        std::vector<std::string> args;
        for (const Term &t : ref.args)
            args.push_back(resolve_term(t, b));
        return sig.require(render_constant(ref.family, args));
    }

    Atom resolve_atom(const ConstantRef &ref, const Term &value, const Binding &b) const {
        ConstantId c = resolve_ref(ref, b);
        std::string v = resolve_term(value, b);
        return Atom{c, sig.require_value(c, v)};
    }

    long numeric_value(ConstantId c, ValueId v) const {
        long out;
        if (!parse_int(sig.decl(c).domain[v], out))
            throw GroundingError("relational condition over non-numeric domain of " +
                                 sig.decl(c).render());
        return out;
    }

    Formula ground_cmp(const SFormula &f, const Binding &b) const {
        ConstantId lhs = resolve_ref(f.ref, b);
        size_t ln = sig.domain_size(lhs);
        std::vector<Formula> cases;
        if (!f.rhs_ref) {
            for (ValueId a = 0; a < ln; ++a)
                if (cmp_eval(f.op, numeric_value(lhs, a), f.rhs_int))
                    cases.push_back(arena.atom(Atom{lhs, a}));
        } else {
            ConstantId rhs = resolve_ref(*f.rhs_ref, b);
            if (rhs == lhs) {
                for (ValueId a = 0; a < ln; ++a) {
                    long v = numeric_value(lhs, a);
                    if (cmp_eval(f.op, v, v))
                        cases.push_back(arena.atom(Atom{lhs, a}));
                }
            } else {
                for (ValueId a = 0; a < ln; ++a)
                    for (ValueId c = 0; c < sig.domain_size(rhs); ++c)
                        if (cmp_eval(f.op, numeric_value(lhs, a), numeric_value(rhs, c)))
                            cases.push_back(
                                arena.conj({arena.atom(Atom{lhs, a}), arena.atom(Atom{rhs, c})}));
            }
        }
        return arena.disj(cases);
    }

    Formula ground_formula(const SFormulaPtr &fp, Binding &b) const {
        const SFormula &f = *fp;
        switch (f.kind) {
        case SFormula::Kind::True:
            return arena.truth();
        case SFormula::Kind::False:
            return arena.falsity();
        case SFormula::Kind::Atom:
            return arena.atom(resolve_atom(f.ref, f.value, b));
        case SFormula::Kind::Cmp:
            return ground_cmp(f, b);
        case SFormula::Kind::Not: {
            Formula inner = ground_formula(f.kids[0], b);
            // !(boolean atom) normalizes to the flipped atom
            const auto &n = arena.node(inner);
            if (n.op == FormulaOp::AtomRef && sig.decl(n.atom.constant).boolean())
                return arena.atom(
                    Atom{n.atom.constant, n.atom.value == 1 ? ValueId(0) : ValueId(1)});
            return arena.negate(inner);
        }
        case SFormula::Kind::And:
        case SFormula::Kind::Or: {
            std::vector<Formula> kids;
            for (const auto &k : f.kids)
                kids.push_back(ground_formula(k, b));
            return f.kind == SFormula::Kind::And ? arena.conj(kids) : arena.disj(kids);
        }
        case SFormula::Kind::Implies:
            return arena.implies(ground_formula(f.kids[0], b), ground_formula(f.kids[1], b));
        case SFormula::Kind::Forall: {
            const Sort &sort = sd.require_sort(f.bound_sort);
            auto shadowed = b.find(f.bound_var);
            std::optional<std::string> saved;
            if (shadowed != b.end())
                saved = shadowed->second;
            std::vector<Formula> kids;
            for (const std::string &e : sort.elements) {
                b[f.bound_var] = e;
                kids.push_back(ground_formula(f.kids[0], b));
            }
            if (saved)
                b[f.bound_var] = *saved;
            else
                b.erase(f.bound_var);
            return arena.conj(kids);
        }
        }
        throw GroundingError("unknown formula node");
    }
};

struct Grounder {
    const SchematicDescription &sd;
    Signature sig;
    FormulaArena arena;
    std::vector<StaticLaw> statics;
    std::vector<DynamicLaw> dynamics;
    Diagnostics diagnostics;
    bool check_only = false;

    // dedupe keys: rendered ground laws
    std::unordered_set<std::string> seen;

    explicit Grounder(const SchematicDescription &s) : sd(s) { build_signature(); }

    void build_signature() {
        std::vector<ConstantDecl> decls;
        for (const ConstantSchema &schema : sd.schemas) {
            std::vector<const Sort *> arg_sorts;
            for (const std::string &sn : schema.arg_sorts)
                arg_sorts.push_back(&sd.require_sort(sn));
            std::vector<size_t> cursor(arg_sorts.size(), 0);
            bool done = false;
            while (!done) {
                ConstantDecl d;
                d.family = schema.family;
                for (size_t i = 0; i < arg_sorts.size(); ++i)
                    d.args.push_back(arg_sorts[i]->elements[cursor[i]]);
                d.kind = schema.kind;
                d.domain = schema.domain;
                decls.push_back(std::move(d));
                done = true;
                for (size_t i = cursor.size(); i > 0;) {
                    --i;
                    if (++cursor[i] < arg_sorts[i]->elements.size()) {
                        done = false;
                        break;
                    }
                    cursor[i] = 0;
                }
            }
        }
        for (const ConstantDecl &d : sd.ground_constants)
            decls.push_back(d);
        sig = Signature(std::move(decls));
    }

    Atom resolve_atom(const ConstantRef &ref, const Term &value, const Binding &b) {
        return FormulaGrounder{sd, sig, arena}.resolve_atom(ref, value, b);
    }

    Formula ground_formula(const SFormulaPtr &fp, Binding &b) {
        return FormulaGrounder{sd, sig, arena}.ground_formula(fp, b);
    }

    void add_issue(const std::string &msg) {
        if (std::find(diagnostics.issues.begin(), diagnostics.issues.end(), msg) ==
            diagnostics.issues.end())
            diagnostics.issues.push_back(msg);
    }

    /// head must ground to an atom, a negated Boolean atom, or false
    std::optional<std::optional<Atom>> ground_head(const SFormulaPtr &head, Binding &b,
                                                   const LawTemplate &law) {
        if (head->kind == SFormula::Kind::False)
            return std::optional<Atom>{};
        if (head->kind == SFormula::Kind::Atom)
            return std::optional<Atom>{resolve_atom(head->ref, head->value, b)};
        if (head->kind == SFormula::Kind::Not && head->kids[0]->kind == SFormula::Kind::Atom) {
            Atom a = resolve_atom(head->kids[0]->ref, head->kids[0]->value, b);
            if (!sig.decl(a.constant).boolean()) {
                add_issue("negated head on non-Boolean constant in: " + law.render());
                return std::nullopt;
            }
            a.value = a.value == 1 ? 0 : 1;
            return std::optional<Atom>{a};
        }
        add_issue("head is not an atom or false (definiteness) in: " + law.render());
        return std::nullopt;
    }

    void collect_free_vars(const SFormulaPtr &f, std::set<std::string> &bound,
                           std::set<std::string> &out) {
        if (!f)
            return;
        auto term_vars = [&](const Term &t) {
            if (t.kind == Term::Kind::Variable && !bound.count(t.text))
                out.insert(t.text);
        };
        auto ref_vars = [&](const ConstantRef &r) {
            for (const Term &t : r.args)
                term_vars(t);
        };
        switch (f->kind) {
        case SFormula::Kind::Atom:
            ref_vars(f->ref);
            term_vars(f->value);
            break;
        case SFormula::Kind::Cmp:
            ref_vars(f->ref);
            if (f->rhs_ref)
                ref_vars(*f->rhs_ref);
            break;
        case SFormula::Kind::Forall: {
            bool was_bound = bound.count(f->bound_var) > 0;
            bound.insert(f->bound_var);
            collect_free_vars(f->kids[0], bound, out);
            if (!was_bound)
                bound.erase(f->bound_var);
            break;
        }
        default:
            for (const auto &k : f->kids)
                collect_free_vars(k, bound, out);
        }
    }

    std::vector<std::string> law_vars(const LawTemplate &law) {
        std::set<std::string> bound, free;
        collect_free_vars(law.head, bound, free);
        collect_free_vars(law.condition, bound, free);
        collect_free_vars(law.precondition, bound, free);
        collect_free_vars(law.action, bound, free);
        for (const Guard &g : law.guards) {
            for (const Term *t : {&g.lhs, &g.rhs})
                if (t->kind == Term::Kind::Variable)
                    free.insert(t->text);
        }
        for (const Term &t : law.inertial_ref.args)
            if (t.kind == Term::Kind::Variable)
                free.insert(t.text);
        return {free.begin(), free.end()};
    }

    bool guards_hold(const std::vector<Guard> &guards, const Binding &b) {
        for (const Guard &g : guards) {
            std::string l = resolve_term(g.lhs, b);
            std::string r = resolve_term(g.rhs, b);
            long li, ri;
            if (parse_int(l, li) && parse_int(r, ri)) {
                if (!cmp_eval(g.op, li, ri))
                    return false;
            } else if (g.op == CmpOp::Eq) {
                if (l != r)
                    return false;
            } else if (g.op == CmpOp::Ne) {
                if (l == r)
                    return false;
            } else {
                throw GroundingError("ordered guard over non-numeric values: " + g.render());
            }
        }
        return true;
    }

    void emit(const LawTemplate &basic, Binding &b) {
        auto head = ground_head(basic.head, b, basic);
        if (!head)
            return;  // diagnostic recorded
        if (check_only)
            return;
        if (basic.form == LawForm::CausedIf) {
            StaticLaw law{*head, ground_formula(basic.condition, b)};
            std::string key = "s|" + (law.head ? std::to_string(law.head->constant) + ":" +
                                                     std::to_string(law.head->value)
                                               : "F") +
                              "|" + arena.render(law.condition, sig);
            if (seen.insert(key).second)
                statics.push_back(law);
        } else {
            DynamicLaw law{*head, ground_formula(basic.condition, b),
                           ground_formula(basic.precondition, b)};
            std::string key = "d|" + (law.head ? std::to_string(law.head->constant) + ":" +
                                                     std::to_string(law.head->value)
                                               : "F") +
                              "|" + arena.render(law.condition, sig) + "|" +
                              arena.render(law.precondition, sig);
            if (seen.insert(key).second)
                dynamics.push_back(law);
        }
    }

    void ground_law(const LawTemplate &tmpl) {
        for (const LawTemplate &basic : expand_macros(sd, tmpl)) {
            std::vector<std::string> vars = law_vars(basic);
            std::vector<const Sort *> var_sorts;
            for (const std::string &v : vars) {
                auto it = sd.var_sorts.find(v);
                if (it == sd.var_sorts.end())
                    throw GroundingError("variable " + v + " has no declared sort in: " +
                                         basic.render());
                var_sorts.push_back(&sd.require_sort(it->second));
            }
            Binding b;
            std::vector<size_t> cursor(vars.size(), 0);
            while (true) {
                for (size_t i = 0; i < vars.size(); ++i)
                    b[vars[i]] = var_sorts[i]->elements[cursor[i]];
                if (guards_hold(basic.guards, b))
                    emit(basic, b);
                size_t i = vars.size();
                bool done = true;
                while (i > 0) {
                    --i;
                    if (++cursor[i] < var_sorts[i]->elements.size()) {
                        done = false;
                        break;
                    }
                    cursor[i] = 0;
                }
                if (done)
                    break;
            }
        }
    }

    void run() {
        for (const LawTemplate &law : sd.laws)
            ground_law(law);
        if (statics.empty() && dynamics.empty() && !check_only)
            diagnostics.issues.push_back("a description is a non-empty set of causal laws");
    }
};

}  // namespace

Diagnostics check_definite(const SchematicDescription &sd) {
    Grounder g(sd);
    g.check_only = true;
    g.run();
    if (sd.laws.empty())
        g.diagnostics.issues.push_back("a description is a non-empty set of causal laws");
    return g.diagnostics;
}

ActionDescription ground(const SchematicDescription &sd) {
    Grounder g(sd);
    g.run();
    if (!g.diagnostics.ok()) {
        std::string msg = "description is not definite:";
        for (const std::string &i : g.diagnostics.issues)
            msg += "\n  " + i;
        throw GroundingError(msg);
    }
    return ActionDescription(std::move(g.sig), std::move(g.arena), std::move(g.statics),
                             std::move(g.dynamics));
}

Formula instantiate_formula(const SchematicDescription &sd, const Signature &sig,
                            FormulaArena &arena, const SFormulaPtr &f, const Binding &binding) {
    Binding b = binding;
    return FormulaGrounder{sd, sig, arena}.ground_formula(f, b);
}

}  // namespace cplus::schema
