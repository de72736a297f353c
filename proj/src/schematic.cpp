#include "cplus/schematic.hpp"

#include <algorithm>
#include <charconv>

namespace cplus::schema {

namespace {
bool parse_int(const std::string &s, long &out) {
    if (s.empty())
        return false;
    const char *begin = s.data();
    const char *end = s.data() + s.size();
    auto [p, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && p == end;
}
}  // namespace

bool Sort::numeric() const {
    long v;
    return std::all_of(elements.begin(), elements.end(),
                       [&](const std::string &e) { return parse_int(e, v); });
}

std::string Term::render() const {
    if (kind == Kind::Symbol)
        return text;
    if (offset == 0)
        return text;
    return text + (offset > 0 ? "+" : "") + std::to_string(offset);
}

std::string ConstantRef::render() const {
    if (args.empty())
        return family;
    std::string out = family + "(";
    for (size_t i = 0; i < args.size(); ++i) {
        if (i)
            out += ", ";
        out += args[i].render();
    }
    return out + ")";
}

const char *cmp_text(CmpOp op) {
    switch (op) {
    case CmpOp::Lt:
        return "<";
    case CmpOp::Le:
        return "<=";
    case CmpOp::Gt:
        return ">";
    case CmpOp::Ge:
        return ">=";
    case CmpOp::Eq:
        return "=";
    case CmpOp::Ne:
        return "!=";
    }
    return "?";
}

bool cmp_eval(CmpOp op, long a, long b) {
    switch (op) {
    case CmpOp::Lt:
        return a < b;
    case CmpOp::Le:
        return a <= b;
    case CmpOp::Gt:
        return a > b;
    case CmpOp::Ge:
        return a >= b;
    case CmpOp::Eq:
        return a == b;
    case CmpOp::Ne:
        return a != b;
    }
    return false;
}

std::string SFormula::render() const {
    switch (kind) {
    case Kind::True:
        return "true";
    case Kind::False:
        return "false";
    case Kind::Atom:
        if (value.kind == Term::Kind::Symbol && value.text == "t" && value.offset == 0)
            return ref.render();
        return ref.render() + "=" + value.render();
    case Kind::Cmp:
        return ref.render() + " " + cmp_text(op) + " " +
               (rhs_ref ? rhs_ref->render() : std::to_string(rhs_int));
    case Kind::Not:
        return "!(" + kids[0]->render() + ")";
    case Kind::And:
    case Kind::Or: {
        std::string sep = kind == Kind::And ? " & " : " | ";
        std::string out = "(";
        for (size_t i = 0; i < kids.size(); ++i) {
            if (i)
                out += sep;
            out += kids[i]->render();
        }
        return out + ")";
    }
    case Kind::Implies:
        return "(" + kids[0]->render() + " -> " + kids[1]->render() + ")";
    case Kind::Forall:
        return "forall " + bound_var + " (" + kids[0]->render() + ")";
    }
    return "?";
}

SFormulaPtr f_true() {
    auto f = std::make_shared<SFormula>();
    f->kind = SFormula::Kind::True;
    return f;
}

SFormulaPtr f_false() {
    auto f = std::make_shared<SFormula>();
    f->kind = SFormula::Kind::False;
    return f;
}

SFormulaPtr f_atom(ConstantRef ref, Term value) {
    auto f = std::make_shared<SFormula>();
    f->kind = SFormula::Kind::Atom;
    f->ref = std::move(ref);
    f->value = std::move(value);
    return f;
}

SFormulaPtr f_cmp(ConstantRef lhs, CmpOp op, long rhs) {
    auto f = std::make_shared<SFormula>();
    f->kind = SFormula::Kind::Cmp;
    f->ref = std::move(lhs);
    f->op = op;
    f->rhs_int = rhs;
    return f;
}

SFormulaPtr f_cmp(ConstantRef lhs, CmpOp op, ConstantRef rhs) {
    auto f = std::make_shared<SFormula>();
    f->kind = SFormula::Kind::Cmp;
    f->ref = std::move(lhs);
    f->op = op;
    f->rhs_ref = std::move(rhs);
    return f;
}

SFormulaPtr f_not(SFormulaPtr g) {
    auto f = std::make_shared<SFormula>();
    f->kind = SFormula::Kind::Not;
    f->kids.push_back(std::move(g));
    return f;
}

SFormulaPtr f_and(std::vector<SFormulaPtr> fs) {
    if (fs.empty())
        return f_true();
    if (fs.size() == 1)
        return fs[0];
    auto f = std::make_shared<SFormula>();
    f->kind = SFormula::Kind::And;
    f->kids = std::move(fs);
    return f;
}

SFormulaPtr f_or(std::vector<SFormulaPtr> fs) {
    if (fs.empty())
        return f_false();
    if (fs.size() == 1)
        return fs[0];
    auto f = std::make_shared<SFormula>();
    f->kind = SFormula::Kind::Or;
    f->kids = std::move(fs);
    return f;
}

SFormulaPtr f_implies(SFormulaPtr a, SFormulaPtr b) {
    auto f = std::make_shared<SFormula>();
    f->kind = SFormula::Kind::Implies;
    f->kids.push_back(std::move(a));
    f->kids.push_back(std::move(b));
    return f;
}

SFormulaPtr f_forall(std::string var, std::string sort, SFormulaPtr body) {
    auto f = std::make_shared<SFormula>();
    f->kind = SFormula::Kind::Forall;
    f->bound_var = std::move(var);
    f->bound_sort = std::move(sort);
    f->kids.push_back(std::move(body));
    return f;
}

std::string Guard::render() const {
    return lhs.render() + " " + cmp_text(op) + " " + rhs.render();
}

std::string LawTemplate::render() const {
    std::string out;
    switch (form) {
    case LawForm::CausedIf:
        out = "caused " + head->render() + " if " + condition->render();
        break;
    case LawForm::CausedIfAfter:
        out = "caused " + head->render() + " if " + condition->render() + " after " +
              precondition->render();
        break;
    case LawForm::Causes:
        out = action->render() + " causes " + head->render();
        if (precondition && precondition->kind != SFormula::Kind::True)
            out += " if " + precondition->render();
        break;
    case LawForm::Default:
        out = "default " + head->render();
        break;
    case LawForm::Iff:
        out = "caused " + head->render() + " iff " + condition->render();
        break;
    case LawForm::Inertial:
        out = "inertial " + inertial_ref.render();
        break;
    }
    for (size_t i = 0; i < guards.size(); ++i)
        out += (i == 0 ? " where " : ", ") + guards[i].render();
    return out;
}

const Sort *SchematicDescription::find_sort(const std::string &name) const {
    for (const Sort &s : sorts)
        if (s.name == name)
            return &s;
    return nullptr;
}

const Sort &SchematicDescription::require_sort(const std::string &name) const {
    const Sort *s = find_sort(name);
    if (!s)
        throw SchemaError("unknown sort " + name);
    return *s;
}

const ConstantSchema *SchematicDescription::find_schema(const std::string &family) const {
    for (const ConstantSchema &s : schemas)
        if (s.family == family)
            return &s;
    return nullptr;
}

const std::vector<std::string> &SchematicDescription::family_domain(
    const std::string &family) const {
    if (const ConstantSchema *s = find_schema(family))
        return s->domain;
    for (const ConstantDecl &d : ground_constants)
        if (d.family == family)
            return d.domain;
    throw SchemaError("unknown constant family " + family);
}

ConstantKind SchematicDescription::family_kind(const std::string &family) const {
    if (const ConstantSchema *s = find_schema(family))
        return s->kind;
    for (const ConstantDecl &d : ground_constants)
        if (d.family == family)
            return d.kind;
    throw SchemaError("unknown constant family " + family);
}

void SchematicDescription::add_sort(std::string name, std::vector<std::string> elements) {
    if (elements.empty())
        throw SchemaError("sort " + name + " must be non-empty");
    for (size_t i = 0; i < elements.size(); ++i)
        for (size_t j = i + 1; j < elements.size(); ++j)
            if (elements[i] == elements[j])
                throw SchemaError("sort " + name + ": duplicate element " + elements[i]);
    if (find_sort(name))
        throw SchemaError("duplicate sort " + name);
    sorts.push_back({std::move(name), std::move(elements)});
}

void SchematicDescription::declare_var(std::string var, std::string sort) {
    require_sort(sort);
    auto it = var_sorts.find(var);
    if (it != var_sorts.end()) {
        if (it->second != sort)
            throw SchemaError("variable " + var + " redeclared with a different sort");
        return;
    }
    var_sorts.emplace(std::move(var), std::move(sort));
}

void SchematicDescription::add_schema(std::string family, std::vector<std::string> arg_sorts,
                                      ConstantKind kind, std::vector<std::string> domain) {
    for (const std::string &s : arg_sorts)
        require_sort(s);
    if (domain.size() < 2)
        throw SchemaError("constant family " + family + ": domain must have at least 2 elements");
    if (find_schema(family))
        throw SchemaError("duplicate constant family " + family);
    schemas.push_back({std::move(family), std::move(arg_sorts), kind, std::move(domain)});
}

void SchematicDescription::add_ground_constant(std::string family, std::vector<std::string> args,
                                               ConstantKind kind,
                                               std::vector<std::string> domain) {
    if (domain.size() < 2)
        throw SchemaError("constant " + render_constant(family, args) +
                          ": domain must have at least 2 elements");
    ConstantDecl d;
    d.family = std::move(family);
    d.args = std::move(args);
    d.kind = kind;
    d.domain = std::move(domain);
    ground_constants.push_back(std::move(d));
}

namespace {

/// Boolean-negates an atom/negation head; used by the iff expansion.
SFormulaPtr negate_head(const SFormulaPtr &head) {
    if (head->kind == SFormula::Kind::Atom) {
        if (head->value.kind != Term::Kind::Symbol || (head->value.text != "t" && head->value.text != "f"))
            throw SchemaError("iff requires a Boolean head: " + head->render());
        return f_atom(head->ref, Term::sym(head->value.text == "t" ? "f" : "t"));
    }
    if (head->kind == SFormula::Kind::Not)
        return head->kids[0];
    throw SchemaError("iff requires a Boolean head: " + head->render());
}

}  // namespace

std::vector<LawTemplate> expand_macros(const SchematicDescription &sd, const LawTemplate &law) {
    switch (law.form) {
    case LawForm::CausedIf:
    case LawForm::CausedIfAfter:
        return {law};
    case LawForm::Causes: {
        // alpha causes F if H  ==>  caused F if true after H & alpha
        LawTemplate out;
        out.form = LawForm::CausedIfAfter;
        out.head = law.head;
        out.condition = f_true();
        SFormulaPtr h = law.precondition ? law.precondition : f_true();
        out.precondition = h->kind == SFormula::Kind::True ? law.action : f_and({h, law.action});
        out.guards = law.guards;
        return {out};
    }
    case LawForm::Default: {
        // default F  ==>  caused F if F
        LawTemplate out;
        out.form = LawForm::CausedIf;
        out.head = law.head;
        out.condition = law.head;
        out.guards = law.guards;
        return {out};
    }
    case LawForm::Iff: {
        // caused F iff G  ==>  { caused F if G, default !F }
        LawTemplate pos;
        pos.form = LawForm::CausedIf;
        pos.head = law.head;
        pos.condition = law.condition;
        pos.guards = law.guards;
        LawTemplate neg;
        neg.form = LawForm::CausedIf;
        neg.head = negate_head(law.head);
        neg.condition = neg.head;
        neg.guards = law.guards;
        return {pos, neg};
    }
    case LawForm::Inertial: {
        // inertial c  ==>  caused c=u if c=u after c=u, for every u in dom(c)
        if (sd.family_kind(law.inertial_ref.family) != ConstantKind::SimpleFluent)
            throw SchemaError("inertial applies to simple fluents only: " +
                              law.inertial_ref.family);
        std::vector<LawTemplate> out;
        for (const std::string &u : sd.family_domain(law.inertial_ref.family)) {
            LawTemplate l;
            l.form = LawForm::CausedIfAfter;
            SFormulaPtr a = f_atom(law.inertial_ref, Term::sym(u));
            l.head = a;
            l.condition = a;
            l.precondition = a;
            l.guards = law.guards;
            out.push_back(std::move(l));
        }
        return out;
    }
    }
    throw SchemaError("unknown law form");
}

}  // namespace cplus::schema
