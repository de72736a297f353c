#ifndef CPLUS_INTERPRETATION_HPP
#define CPLUS_INTERPRETATION_HPP

#include <vector>

#include "cplus/signature.hpp"

namespace cplus {

enum class ConstantSubset : uint8_t { Fluents, Actions, All };

bool subset_contains(const Signature &sig, ConstantSubset subset, ConstantId c);
const std::vector<ConstantId> &subset_constants(const Signature &sig, ConstantSubset subset);

/// A total map from a stated constant subset to domain values. States are
/// interpretations of the fluent constants, transition labels of the action
/// constants. Equality is by atom set; comparison is lexicographic over the
/// canonical (sorted-name) constant order, which makes output deterministic.
class Interpretation {
public:
    Interpretation() = default;
    Interpretation(const Signature &sig, ConstantSubset subset);

    ConstantSubset subset() const { return subset_; }
    bool contains(const Signature &sig, ConstantId c) const {
        return subset_contains(sig, subset_, c);
    }

    ValueId value(ConstantId c) const { return values_[c]; }
    void set(ConstantId c, ValueId v) { values_[c] = v; }
    bool satisfies_atom(const Atom &a) const { return values_[a.constant] == a.value; }

    /// All atoms of the subset, in canonical constant order.
    std::vector<Atom> atoms(const Signature &sig) const;

    bool equals(const Signature &sig, const Interpretation &other) const;
    bool less(const Signature &sig, const Interpretation &other) const;

    std::string render(const Signature &sig) const;

private:
    ConstantSubset subset_ = ConstantSubset::All;
    std::vector<ValueId> values_;  // indexed by ConstantId; unused slots stay 0
};

using State = Interpretation;
using TransitionLabel = Interpretation;

struct Transition {
    State from;
    TransitionLabel label;
    State to;
};

/// Alternating sequence s0 e0 s1 ... sm; a path of length m holds m transitions.
struct Path {
    std::vector<State> states;
    std::vector<TransitionLabel> labels;

    size_t length() const { return labels.size(); }
};

}  // namespace cplus

#endif
