#ifndef CPLUS_TEXT_FORMAT_HPP
#define CPLUS_TEXT_FORMAT_HPP

#include <string>

#include "cplus/description.hpp"
#include "cplus/schematic.hpp"

namespace cplus::text {

struct ParseError : std::runtime_error {
    ParseError(const std::string &msg, int line) : std::runtime_error(msg), line(line) {}
    int line;
};

/// Line-oriented action-description grammar:
///
///   sort name = {a, b, c};
///   var X, Y : name;
///   fluent simple name(Sort, ...) : Domain;
///   fluent sdetermined name(Sort, ...) : Domain;
///   action name(Sort, ...);
///   caused HEAD if COND;
///   caused HEAD if COND after PRE;
///   ACT causes HEAD if COND;
///   default HEAD;
///   caused HEAD iff COND;
///   inertial name(...);
///
/// Domain is a sort name, {a, b, c}, or lo..hi. Guards append as
/// `where GUARD, GUARD`. Identifiers starting with an upper-case letter are
/// variables. In fluent/action declarations a parenthesised name is read as
/// sort parameters when every entry names a declared sort, and as a ground
/// constant otherwise. Boolean atoms may drop `=t`; `!a` is `a=f`.
schema::SchematicDescription parse_description(const std::string &text);

/// Parses a single schematic formula against an existing description's
/// sorts/var declarations (used for queries and property files).
schema::SFormulaPtr parse_formula(const std::string &text, const schema::SchematicDescription &sd);

/// Serializes a ground description; re-parsing and grounding the output
/// reproduces the description atom-for-atom.
std::string print_description(const ActionDescription &d);

}  // namespace cplus::text

#endif
