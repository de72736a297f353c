#include "cplus/interpretation.hpp"

namespace cplus {

namespace {
const std::vector<ConstantId> &all_constants(const Signature &sig) {
    // built lazily per signature would need caching; fluents+actions suffice
    static thread_local std::vector<ConstantId> scratch;
    scratch.clear();
    for (ConstantId c = 0; c < sig.size(); ++c)
        scratch.push_back(c);
    return scratch;
}
}  // namespace

bool subset_contains(const Signature &sig, ConstantSubset subset, ConstantId c) {
    switch (subset) {
    case ConstantSubset::Fluents:
        return sig.is_fluent(c);
    case ConstantSubset::Actions:
        return sig.is_action(c);
    case ConstantSubset::All:
        return true;
    }
    return false;
}

const std::vector<ConstantId> &subset_constants(const Signature &sig, ConstantSubset subset) {
    switch (subset) {
    case ConstantSubset::Fluents:
        return sig.fluents();
    case ConstantSubset::Actions:
        return sig.actions();
    case ConstantSubset::All:
        return all_constants(sig);
    }
    return sig.fluents();
}

Interpretation::Interpretation(const Signature &sig, ConstantSubset subset)
    : subset_(subset), values_(sig.size(), 0) {}

std::vector<Atom> Interpretation::atoms(const Signature &sig) const {
    std::vector<Atom> out;
    for (ConstantId c : subset_constants(sig, subset_))
        out.push_back(Atom{c, values_[c]});
    return out;
}

bool Interpretation::equals(const Signature &sig, const Interpretation &other) const {
    if (subset_ != other.subset_)
        return false;
    for (ConstantId c : subset_constants(sig, subset_))
        if (values_[c] != other.values_[c])
            return false;
    return true;
}

bool Interpretation::less(const Signature &sig, const Interpretation &other) const {
    for (ConstantId c : subset_constants(sig, subset_)) {
        if (values_[c] != other.values_[c])
            return values_[c] < other.values_[c];
    }
    return false;
}

std::string Interpretation::render(const Signature &sig) const {
    std::string out = "{";
    bool first = true;
    for (ConstantId c : subset_constants(sig, subset_)) {
        if (!first)
            out += ", ";
        first = false;
        out += sig.render_atom(Atom{c, values_[c]});
    }
    return out + "}";
}

}  // namespace cplus
