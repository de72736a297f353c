#ifndef DYNSPEC_TESTS_SUPPORT_HPP
#define DYNSPEC_TESTS_SUPPORT_HPP

#include <functional>
#include <string>
#include <vector>

#include "cplus/grounding.hpp"
#include "cplus/semantics.hpp"
#include "cplus/text_format.hpp"

namespace testsupport {

using namespace cplus;

inline ActionDescription make_description(const std::string &text) {
    return schema::ground(text::parse_description(text));
}

/// Builds an interpretation from atom strings: "p", "!q", "c=2".
inline Interpretation interp_of(const ActionDescription &d, ConstantSubset subset,
                                const std::vector<std::string> &atoms) {
    const Signature &sig = d.signature();
    Interpretation out(sig, subset);
    for (std::string spec : atoms) {
        std::string value;
        bool neg = false;
        if (!spec.empty() && spec[0] == '!') {
            neg = true;
            spec = spec.substr(1);
        }
        auto eq = spec.rfind('=');
        // '=' inside parentheses never happens in these helpers
        if (eq != std::string::npos) {
            value = spec.substr(eq + 1);
            spec = spec.substr(0, eq);
        } else {
            value = neg ? "f" : "t";
        }
        ConstantId c = sig.require(spec);
        out.set(c, sig.require_value(c, value));
    }
    return out;
}

inline State state_of(const ActionDescription &d, const std::vector<std::string> &atoms) {
    return interp_of(d, ConstantSubset::Fluents, atoms);
}

inline TransitionLabel label_of(const ActionDescription &d, const std::vector<std::string> &on) {
    return interp_of(d, ConstantSubset::Actions, on);
}

inline void for_all_interpretations(const Signature &sig, ConstantSubset subset,
                                    const std::function<void(const Interpretation &)> &fn) {
    const auto &constants = subset_constants(sig, subset);
    Interpretation i(sig, subset);
    std::function<void(size_t)> rec = [&](size_t k) {
        if (k == constants.size()) {
            fn(i);
            return;
        }
        for (ValueId v = 0; v < sig.domain_size(constants[k]); ++v) {
            i.set(constants[k], v);
            rec(k + 1);
        }
    };
    rec(0);
}

/// Reference implementation: scan every fluent interpretation through the
/// kernel state test.
inline std::vector<State> brute_force_states(const ActionDescription &d) {
    std::vector<State> out;
    for_all_interpretations(d.signature(), ConstantSubset::Fluents, [&](const Interpretation &s) {
        if (is_state(d, s))
            out.push_back(s);
    });
    return out;
}

/// Reference implementation: scan every (label, target) pair through the
/// kernel transition test.
inline std::vector<Transition> brute_force_successors(const ActionDescription &d, const State &s,
                                                      int bound) {
    std::vector<Transition> out;
    for_all_interpretations(
        d.signature(), ConstantSubset::Actions, [&](const Interpretation &label) {
            int on = 0;
            for (ConstantId a : d.signature().actions())
                on += label.value(a) == 1 ? 1 : 0;
            if (on > bound)
                return;
            for_all_interpretations(d.signature(), ConstantSubset::Fluents,
                                    [&](const Interpretation &target) {
                                        if (is_transition(d, s, label, target))
                                            out.push_back(Transition{s, label, target});
                                    });
        });
    return out;
}

}  // namespace testsupport

#endif
