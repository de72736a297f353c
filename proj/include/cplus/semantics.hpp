#ifndef CPLUS_SEMANTICS_HPP
#define CPLUS_SEMANTICS_HPP

#include "cplus/description.hpp"

namespace cplus {

/// A set of law heads: the atoms plus whether the constraint head (false)
/// occurred. Atoms are kept sorted and deduplicated.
struct CausedSet {
    std::vector<Atom> atoms;
    bool bottom = false;

    bool contains(const Atom &a) const;
    void insert(const Atom &a);
    void merge(const CausedSet &other);
};

/// Classical satisfaction by structural recursion; every constant mentioned
/// by the formula must be inside the interpretation's subset.
bool satisfies(const Signature &sig, const FormulaArena &arena, const Interpretation &i,
               Formula f);

/// Joint satisfaction over (state, label), for dynamic-law preconditions.
bool satisfies_pair(const Signature &sig, const FormulaArena &arena, const State &s,
                    const TransitionLabel &label, Formula f);

/// Heads of all static laws whose conditions hold in s.
CausedSet t_static(const ActionDescription &d, const Interpretation &s);

/// Heads of all dynamic laws (head if G after H) with s' |= G and s u label |= H.
CausedSet effect_set(const ActionDescription &d, const State &s, const TransitionLabel &label,
                     const Interpretation &target);

/// s is a state iff no constraint fires and the atoms of s are exactly
/// T_static(s) together with the simple-fluent atoms of s. Every statically
/// determined atom must therefore be caused by some triggered static law.
bool is_state(const ActionDescription &d, const Interpretation &s);

/// Like is_state but reports which atoms break the fixpoint equation.
struct StateCheck {
    bool ok = false;
    bool bottom = false;
    std::vector<Atom> uncaused;    // atoms of s missing from T_static(s) u Simple(s)
    std::vector<Atom> unsatisfied; // caused heads not satisfied by s
};
StateCheck check_state(const ActionDescription &d, const Interpretation &s);

bool is_transition(const ActionDescription &d, const State &s, const TransitionLabel &label,
                   const State &target);

bool is_path(const ActionDescription &d, const Path &p);

}  // namespace cplus

#endif
