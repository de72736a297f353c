#ifndef CPLUS_SCHEMATIC_HPP
#define CPLUS_SCHEMATIC_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cplus/signature.hpp"

namespace cplus::schema {

struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A finite ordered value set (agent ids, manipulation types, point ids,
/// protocol levels, bounded integers). Order is meaningful.
struct Sort {
    std::string name;
    std::vector<std::string> elements;

    bool numeric() const;  // all elements parse as integers
};

/// A term in an argument or value position: a plain symbol, or a variable
/// with an optional integer offset (PL+1, resolved at grounding over a
/// numeric sort).
struct Term {
    enum class Kind : uint8_t { Symbol, Variable } kind = Kind::Symbol;
    std::string text;
    int offset = 0;

    static Term sym(std::string s) { return {Kind::Symbol, std::move(s), 0}; }
    static Term var(std::string v, int off = 0) { return {Kind::Variable, std::move(v), off}; }
    std::string render() const;
    friend bool operator==(const Term &, const Term &) = default;
};

/// constant reference: family name applied to argument terms
struct ConstantRef {
    std::string family;
    std::vector<Term> args;
    std::string render() const;
};

enum class CmpOp : uint8_t { Lt, Le, Gt, Ge, Eq, Ne };
const char *cmp_text(CmpOp op);
bool cmp_eval(CmpOp op, long a, long b);

struct SFormula;
using SFormulaPtr = std::shared_ptr<const SFormula>;

/// Schematic formulas: atoms over templated constants, relational conditions
/// over integer-domained fluents (expanded at grounding into the satisfied
/// value cases), bounded universal quantification over a sort, and the usual
/// connectives.
struct SFormula {
    enum class Kind : uint8_t {
        True,
        False,
        Atom,
        Cmp,
        Not,
        And,
        Or,
        Implies,
        Forall,
    };
    Kind kind = Kind::True;

    // Atom
    ConstantRef ref;
    Term value;  // Boolean sugar: symbol "t"

    // Cmp: ref OP (rhs_ref | rhs_int)
    CmpOp op = CmpOp::Eq;
    std::optional<ConstantRef> rhs_ref;
    long rhs_int = 0;

    // Forall
    std::string bound_var;
    std::string bound_sort;

    std::vector<SFormulaPtr> kids;

    std::string render() const;
};

SFormulaPtr f_true();
SFormulaPtr f_false();
SFormulaPtr f_atom(ConstantRef ref, Term value = Term::sym("t"));
SFormulaPtr f_cmp(ConstantRef lhs, CmpOp op, long rhs);
SFormulaPtr f_cmp(ConstantRef lhs, CmpOp op, ConstantRef rhs);
SFormulaPtr f_not(SFormulaPtr f);
SFormulaPtr f_and(std::vector<SFormulaPtr> fs);
SFormulaPtr f_or(std::vector<SFormulaPtr> fs);
SFormulaPtr f_implies(SFormulaPtr a, SFormulaPtr b);
SFormulaPtr f_forall(std::string var, std::string sort, SFormulaPtr body);

/// Grounding-time side condition over variables: lhs OP rhs where each side
/// is a variable (with optional +k), symbol, or integer literal.
struct Guard {
    Term lhs;
    CmpOp op = CmpOp::Eq;
    Term rhs;
    std::string render() const;
};

/// The surface law forms. Macro forms (causes / default / iff / inertial)
/// expand to the two basic forms before grounding.
enum class LawForm : uint8_t { CausedIf, CausedIfAfter, Causes, Default, Iff, Inertial };

struct LawTemplate {
    LawForm form = LawForm::CausedIf;
    SFormulaPtr head;          // atom, negated boolean atom, or false; Inertial: unused
    ConstantRef inertial_ref;  // Inertial only
    SFormulaPtr condition;     // if-part
    SFormulaPtr precondition;  // after-part (CausedIfAfter) or H (Causes)
    SFormulaPtr action;        // Causes: the action formula
    std::vector<Guard> guards;

    std::string render() const;
};

struct ConstantSchema {
    std::string family;
    std::vector<std::string> arg_sorts;
    ConstantKind kind = ConstantKind::SimpleFluent;
    std::vector<std::string> domain;
};

struct SchematicDescription {
    std::vector<Sort> sorts;
    std::map<std::string, std::string> var_sorts;  // variable name -> sort name
    std::vector<ConstantSchema> schemas;
    std::vector<ConstantDecl> ground_constants;  // individually declared ground constants
    std::vector<LawTemplate> laws;

    const Sort *find_sort(const std::string &name) const;
    const Sort &require_sort(const std::string &name) const;
    const ConstantSchema *find_schema(const std::string &family) const;

    /// Domain of a constant family, looked up across schemas and ground
    /// declarations (they agree by construction).
    const std::vector<std::string> &family_domain(const std::string &family) const;
    ConstantKind family_kind(const std::string &family) const;

    void add_sort(std::string name, std::vector<std::string> elements);
    void declare_var(std::string var, std::string sort);
    void add_schema(std::string family, std::vector<std::string> arg_sorts, ConstantKind kind,
                    std::vector<std::string> domain);
    void add_ground_constant(std::string family, std::vector<std::string> args, ConstantKind kind,
                             std::vector<std::string> domain);
    void add_law(LawTemplate law) { laws.push_back(std::move(law)); }
};

/// Rewrites one law into the basic forms. Expanding an already-basic law is
/// the identity. `inertial c` needs the domain of c, hence the description.
std::vector<LawTemplate> expand_macros(const SchematicDescription &sd, const LawTemplate &law);

}  // namespace cplus::schema

#endif
