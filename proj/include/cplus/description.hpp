#ifndef CPLUS_DESCRIPTION_HPP
#define CPLUS_DESCRIPTION_HPP

#include <memory>
#include <optional>

#include "cplus/formula.hpp"
#include "cplus/interpretation.hpp"

namespace cplus {

/// caused F if G. A nullopt head is the constraint form (caused false if G).
struct StaticLaw {
    std::optional<Atom> head;
    Formula condition;
};

/// caused F if G after H. Head constants must be simple fluents; that is what
/// guarantees the transition equation lands back on states.
struct DynamicLaw {
    std::optional<Atom> head;
    Formula condition;     // over fluents, evaluated on the target state
    Formula precondition;  // over fluents and actions, evaluated on (source, label)
};

struct DescriptionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A ground, definite action description. Validation enforces definiteness
/// (heads are atoms or false), the fluent/action split in law positions, and
/// the simple-head restriction on dynamic laws.
class ActionDescription {
public:
    ActionDescription(Signature sig, FormulaArena arena, std::vector<StaticLaw> statics,
                      std::vector<DynamicLaw> dynamics);

    const Signature &signature() const { return sig_; }
    const FormulaArena &arena() const { return arena_; }
    const std::vector<StaticLaw> &statics() const { return statics_; }
    const std::vector<DynamicLaw> &dynamics() const { return dynamics_; }

    /// Indices of static / dynamic laws whose head is the given constant.
    const std::vector<uint32_t> &statics_heading(ConstantId c) const {
        return statics_by_head_[c];
    }
    const std::vector<uint32_t> &dynamics_heading(ConstantId c) const {
        return dynamics_by_head_[c];
    }
    const std::vector<uint32_t> &static_constraints() const { return static_bottoms_; }
    const std::vector<uint32_t> &dynamic_constraints() const { return dynamic_bottoms_; }

private:
    Signature sig_;
    FormulaArena arena_;
    std::vector<StaticLaw> statics_;
    std::vector<DynamicLaw> dynamics_;
    std::vector<std::vector<uint32_t>> statics_by_head_;
    std::vector<std::vector<uint32_t>> dynamics_by_head_;
    std::vector<uint32_t> static_bottoms_;
    std::vector<uint32_t> dynamic_bottoms_;
};

}  // namespace cplus

#endif
