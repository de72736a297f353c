#ifndef CPLUS_SEARCH_HPP
#define CPLUS_SEARCH_HPP

#include <cstdint>
#include <functional>
#include <string>

#include "cplus/semantics.hpp"

namespace cplus::search {

struct BudgetError : std::runtime_error {
    BudgetError(const std::string &msg, unsigned long long count)
        : std::runtime_error(msg), would_scan(count) {}
    unsigned long long would_scan;
};

enum class Truth : uint8_t { False, Unknown, True };

struct SearchStats {
    uint64_t nodes = 0;
    uint64_t leaves = 0;
};

/// Exact completion search over fluent interpretations. Candidate values per
/// constant are tracked as bitsets; propagation applies the causal laws in
/// 3-valued logic (a definitely-true condition forces its head, a dead head
/// kills its condition, and an atom that has lost every potential cause is
/// pruned). Every candidate the DFS completes is re-verified through the
/// exact kernel definitions before it is reported, so the search is exact:
/// on small descriptions it returns precisely the brute-force answer.
///
/// Two modes:
///  - States: solutions are the states of D satisfying the requirements.
///    Statically determined atoms draw candidates from static-law heads.
///  - Successors: the source state and label are fixed; solutions are the
///    successor states. Every fluent atom needs a cause among static-law
///    heads and the heads of dynamic laws whose preconditions fired.
class Completion {
public:
    static constexpr size_t kMaxDomain = 64;

    Completion(const ActionDescription &d, const FormulaArena &arena);
    Completion(const ActionDescription &d, const FormulaArena &arena, const State &from,
               const TransitionLabel &label);

    bool ok() const { return !conflict_; }
    const std::string &conflict_reason() const { return conflict_reason_; }

    /// Require f to hold (or not hold) in every solution. Returns false on
    /// immediate conflict.
    bool require(Formula f, bool wanted);
    bool propagate();

    Truth eval3(Formula f) const;
    Truth eval3_atom(const Atom &a) const;
    /// 3-valued evaluation where action atoms read from an exact label.
    Truth eval3_with_label(Formula f, const TransitionLabel &label) const;

    uint64_t candidates(ConstantId c) const { return masks_[c]; }
    unsigned long long candidate_product(unsigned long long cap) const;

    struct SolveResult {
        std::vector<State> solutions;
        bool truncated = false;   // solution limit reached
        bool budget_hit = false;  // node budget exhausted
        SearchStats stats;
    };
    /// Enumerates solutions in canonical order.
    SolveResult solve_all(size_t solution_limit, uint64_t node_budget);

    enum class Visit : uint8_t { Continue, Prune, Abort };

    /// Generic DFS over the candidate space. `visit` runs at every consistent
    /// node (Prune skips the subtree, Abort stops the search); `leaf` runs at
    /// full assignments, which are NOT yet kernel-verified. Returns false if
    /// the node budget aborted the search.
    bool explore(const std::function<Visit(Completion &)> &visit,
                 const std::function<Visit(const State &)> &leaf, SearchStats &stats,
                 uint64_t node_budget);

private:
    struct PseudoLaw {
        std::optional<Atom> head;
        Formula condition;
    };

    struct ExploreCtx {
        const std::function<Visit(Completion &)> *visit;
        const std::function<Visit(const State &)> *leaf;
        SearchStats *stats;
        uint64_t node_budget;
        bool aborted = false;
        bool budget_hit = false;
    };

    void init_common();
    void init_states_mode();
    void init_successor_mode();
    bool set_mask(ConstantId c, uint64_t m);
    bool force(Formula f, bool wanted);
    bool apply_law(uint32_t idx);
    bool causedness_sweep();
    bool node_consistent();
    void dfs(ExploreCtx &ctx);
    bool verify_leaf(const State &s) const;

    const ActionDescription &d_;
    const FormulaArena &arena_;
    bool successor_mode_ = false;
    State from_;
    TransitionLabel label_;

    std::vector<PseudoLaw> laws_;
    std::vector<uint64_t> masks_;
    std::vector<uint8_t> needs_cause_;
    // cause_laws_[c] lists (value, law index) pairs that can cause c=value
    std::vector<std::vector<std::pair<ValueId, uint32_t>>> cause_laws_;
    std::vector<std::vector<uint32_t>> watchers_;  // constant -> laws mentioning it
    std::vector<std::pair<Formula, bool>> requirements_;

    std::vector<uint32_t> queue_;
    std::vector<uint8_t> in_queue_;
    std::vector<std::pair<ConstantId, uint64_t>> trail_;
    bool conflict_ = false;
    std::string conflict_reason_;
};

/// Recognizes `caused c=u if c=u after c=u`.
bool is_inertia_law(const FormulaArena &arena, const DynamicLaw &law);

}  // namespace cplus::search

#endif
