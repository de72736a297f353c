#include "cplus/semantics.hpp"

#include <algorithm>

namespace cplus {

bool CausedSet::contains(const Atom &a) const {
    return std::binary_search(atoms.begin(), atoms.end(), a);
}

void CausedSet::insert(const Atom &a) {
    auto it = std::lower_bound(atoms.begin(), atoms.end(), a);
    if (it == atoms.end() || *it != a)
        atoms.insert(it, a);
}

void CausedSet::merge(const CausedSet &other) {
    for (const Atom &a : other.atoms)
        insert(a);
    bottom = bottom || other.bottom;
}

namespace {

bool eval(const Signature &sig, const FormulaArena &arena, Formula f,
          const Interpretation *primary, const Interpretation *secondary) {
    const auto &n = arena.node(f);
    switch (n.op) {
    case FormulaOp::True:
        return true;
    case FormulaOp::False:
        return false;
    case FormulaOp::AtomRef: {
        ConstantId c = n.atom.constant;
        if (primary->contains(sig, c))
            return primary->satisfies_atom(n.atom);
        if (secondary && secondary->contains(sig, c))
            return secondary->satisfies_atom(n.atom);
        throw SignatureError("formula mentions constant outside the interpretation: " +
                             sig.decl(c).render());
    }
    case FormulaOp::Not:
        return !eval(sig, arena, arena.children(n)[0], primary, secondary);
    case FormulaOp::And:
        for (Formula c : arena.children(n))
            if (!eval(sig, arena, c, primary, secondary))
                return false;
        return true;
    case FormulaOp::Or:
        for (Formula c : arena.children(n))
            if (eval(sig, arena, c, primary, secondary))
                return true;
        return false;
    case FormulaOp::Implies:
        return !eval(sig, arena, arena.children(n)[0], primary, secondary) ||
               eval(sig, arena, arena.children(n)[1], primary, secondary);
    }
    return false;
}

}  // namespace

bool satisfies(const Signature &sig, const FormulaArena &arena, const Interpretation &i,
               Formula f) {
    return eval(sig, arena, f, &i, nullptr);
}

bool satisfies_pair(const Signature &sig, const FormulaArena &arena, const State &s,
                    const TransitionLabel &label, Formula f) {
    return eval(sig, arena, f, &s, &label);
}

CausedSet t_static(const ActionDescription &d, const Interpretation &s) {
    CausedSet out;
    for (const StaticLaw &law : d.statics()) {
        if (!satisfies(d.signature(), d.arena(), s, law.condition))
            continue;
        if (law.head)
            out.insert(*law.head);
        else
            out.bottom = true;
    }
    return out;
}

CausedSet effect_set(const ActionDescription &d, const State &s, const TransitionLabel &label,
                     const Interpretation &target) {
    CausedSet out;
    for (const DynamicLaw &law : d.dynamics()) {
        if (!satisfies(d.signature(), d.arena(), target, law.condition))
            continue;
        if (!satisfies_pair(d.signature(), d.arena(), s, label, law.precondition))
            continue;
        if (law.head)
            out.insert(*law.head);
        else
            out.bottom = true;
    }
    return out;
}

StateCheck check_state(const ActionDescription &d, const Interpretation &s) {
    StateCheck result;
    const Signature &sig = d.signature();
    CausedSet caused = t_static(d, s);
    result.bottom = caused.bottom;
    if (caused.bottom)
        return result;
    // caused heads must hold in s (T_static(s) subset of atoms(s))
    for (const Atom &a : caused.atoms)
        if (!s.satisfies_atom(a))
            result.unsatisfied.push_back(a);
    // every statically determined atom of s must be caused; simple atoms are
    // contributed by Simple(s) itself
    for (ConstantId c : sig.fluents()) {
        if (sig.is_simple(c))
            continue;
        Atom a{c, s.value(c)};
        if (!caused.contains(a))
            result.uncaused.push_back(a);
    }
    result.ok = result.unsatisfied.empty() && result.uncaused.empty();
    return result;
}

bool is_state(const ActionDescription &d, const Interpretation &s) {
    return check_state(d, s).ok;
}

bool is_transition(const ActionDescription &d, const State &s, const TransitionLabel &label,
                   const State &target) {
    if (!is_state(d, s))
        return false;
    CausedSet caused = t_static(d, target);
    caused.merge(effect_set(d, s, label, target));
    if (caused.bottom)
        return false;
    // atoms(target) must equal T_static(target) u E(s, label, target)
    for (const Atom &a : caused.atoms)
        if (!target.satisfies_atom(a))
            return false;
    for (ConstantId c : d.signature().fluents()) {
        Atom a{c, target.value(c)};
        if (!caused.contains(a))
            return false;
    }
    return true;
}

bool is_path(const ActionDescription &d, const Path &p) {
    if (p.states.size() != p.labels.size() + 1)
        return false;
    if (p.labels.empty())
        return is_state(d, p.states[0]);
    for (size_t i = 0; i < p.labels.size(); ++i)
        if (!is_transition(d, p.states[i], p.labels[i], p.states[i + 1]))
            return false;
    return true;
}

}  // namespace cplus
