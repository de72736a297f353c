#include "cplus/description.hpp"

namespace cplus {

namespace {

void check_formula_subset(const Signature &sig, const FormulaArena &arena, Formula f,
                          bool allow_actions, const char *where) {
    std::vector<ConstantId> cs;
    arena.collect_constants(f, cs);
    for (ConstantId c : cs) {
        if (sig.is_action(c) && !allow_actions)
            throw DescriptionError(std::string(where) + " mentions action constant " +
                                   sig.decl(c).render());
    }
}

}  // namespace

ActionDescription::ActionDescription(Signature sig, FormulaArena arena,
                                     std::vector<StaticLaw> statics,
                                     std::vector<DynamicLaw> dynamics)
    : sig_(std::move(sig)),
      arena_(std::move(arena)),
      statics_(std::move(statics)),
      dynamics_(std::move(dynamics)) {
    if (statics_.empty() && dynamics_.empty())
        throw DescriptionError("an action description is a non-empty set of causal laws");
    statics_by_head_.resize(sig_.size());
    dynamics_by_head_.resize(sig_.size());
    for (uint32_t i = 0; i < statics_.size(); ++i) {
        const StaticLaw &law = statics_[i];
        check_formula_subset(sig_, arena_, law.condition, false, "static law condition");
        if (law.head) {
            if (sig_.is_action(law.head->constant))
                throw DescriptionError("static law head must be a fluent atom");
            if (law.head->value >= sig_.domain_size(law.head->constant))
                throw DescriptionError("static law head value out of domain");
            statics_by_head_[law.head->constant].push_back(i);
        } else {
            static_bottoms_.push_back(i);
        }
    }
    for (uint32_t i = 0; i < dynamics_.size(); ++i) {
        const DynamicLaw &law = dynamics_[i];
        check_formula_subset(sig_, arena_, law.condition, false, "dynamic law condition");
        if (law.head) {
            if (!sig_.is_simple(law.head->constant))
                throw DescriptionError("dynamic law head must be a simple fluent atom: " +
                                       sig_.decl(law.head->constant).render());
            if (law.head->value >= sig_.domain_size(law.head->constant))
                throw DescriptionError("dynamic law head value out of domain");
            dynamics_by_head_[law.head->constant].push_back(i);
        } else {
            dynamic_bottoms_.push_back(i);
        }
    }
}

}  // namespace cplus
