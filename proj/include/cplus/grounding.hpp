#ifndef CPLUS_GROUNDING_HPP
#define CPLUS_GROUNDING_HPP

#include "cplus/description.hpp"
#include "cplus/schematic.hpp"

namespace cplus::schema {

struct GroundingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Diagnostics {
    std::vector<std::string> issues;
    bool ok() const { return issues.empty(); }
};

/// Definiteness report: every law head must ground to a single atom or false,
/// and the law set must be non-empty. Issues name the offending laws.
Diagnostics check_definite(const SchematicDescription &sd);

/// Instantiates every schematic law over all variable bindings whose guards
/// hold, expands universal quantifiers and relational conditions over the
/// finite domains, and returns a validated ground description. Deterministic:
/// identical inputs produce atom-for-atom identical output.
ActionDescription ground(const SchematicDescription &sd);

using Binding = std::map<std::string, std::string>;

/// Grounds a single schematic formula under a binding against an existing
/// signature (queries, property files).
Formula instantiate_formula(const SchematicDescription &sd, const Signature &sig,
                            FormulaArena &arena, const SFormulaPtr &f, const Binding &binding);

}  // namespace cplus::schema

#endif
