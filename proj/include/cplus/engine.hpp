#ifndef CPLUS_ENGINE_HPP
#define CPLUS_ENGINE_HPP

#include <optional>
#include <random>

#include "cplus/search.hpp"

namespace cplus::engine {

struct EngineOptions {
    uint64_t budget = 1ull << 22;        // node / interpretation budget
    size_t counterexample_limit = 10;    // reported per query
    int transition_label_bound = 1;      // true action atoms per checked label
};

/// Queries carry their own formula arena so they can be built against an
/// existing description without mutating it.
struct StateQuery {
    FormulaArena arena;
    Formula constraint = 0;
};

struct TransitionQuery {
    FormulaArena arena;
    Formula pre = 0;    // fluent formula on the source state
    Formula label = 0;  // action formula on the transition label
    Formula post = 0;   // fluent formula on the target state
};

struct QueryStatistics {
    uint64_t nodes = 0;
    uint64_t interpretations_scanned = 0;  // completed candidates examined
    uint64_t states_found = 0;
    uint64_t labels_checked = 0;
};

struct QueryReport {
    bool holds = false;
    std::vector<State> witnesses;
    std::vector<State> state_counterexamples;
    std::vector<Transition> transition_counterexamples;
    bool counterexamples_truncated = false;
    QueryStatistics stats;
};

struct EnumerationResult {
    std::vector<State> states;
    bool truncated = false;
    QueryStatistics stats;
};

/// All states satisfying the constraint, in canonical order. Refuses with
/// BudgetError when the post-propagation candidate space exceeds the budget.
EnumerationResult enumerate_states(const ActionDescription &d, const StateQuery &q, size_t limit,
                                   const EngineOptions &opt = {});

/// All transitions (s, label, s') from s whose label satisfies the constraint
/// and has at most `bound` true action atoms.
std::vector<Transition> successors(const ActionDescription &d, const State &s,
                                   const StateQuery &label_constraint, int bound,
                                   const EngineOptions &opt = {});

/// Verdict holds iff every state satisfying phi satisfies psi.
QueryReport check_all_states(const ActionDescription &d, const StateQuery &phi,
                             const StateQuery &psi, const EngineOptions &opt = {});

/// Verdict holds iff for every transition with s |= pre and label |= label,
/// the target satisfies post.
QueryReport check_all_transitions(const ActionDescription &d, const TransitionQuery &tq,
                                  const EngineOptions &opt = {});

// ---------------------------------------------------------------------------
// narrative replay

struct NarrativeStep {
    long time = 0;  // metadata only; each step is one transition
    std::vector<ConstantId> events;
};

enum class AmbiguityPolicy : uint8_t { Fail, FirstCanonical, SeededRandom };

struct ReplayOptions {
    AmbiguityPolicy policy = AmbiguityPolicy::Fail;
    uint64_t seed = 0;
    uint64_t node_budget = 1ull << 22;
};

struct ReplayFailure {
    size_t step_index = 0;
    long time = 0;
    bool ambiguous = false;
    std::string reason;
};

struct ReplayResult {
    Path path;  // valid prefix, always starting at s0
    std::vector<size_t> branch_counts;  // successors seen per executed step
    std::optional<ReplayFailure> failure;
    bool ok() const { return !failure.has_value(); }
};

TransitionLabel label_from_events(const ActionDescription &d,
                                  const std::vector<ConstantId> &events);

ReplayResult replay(const ActionDescription &d, const State &s0,
                    const std::vector<NarrativeStep> &narrative, const ReplayOptions &opt = {});

}  // namespace cplus::engine

#endif
