#include "cplus/engine.hpp"

#include <algorithm>

namespace cplus::engine {

using search::BudgetError;
using search::Completion;
using search::SearchStats;
using search::Truth;

namespace {

void check_constants(const ActionDescription &d, const FormulaArena &arena, Formula f,
                     bool want_fluents, const char *what) {
    std::vector<ConstantId> cs;
    arena.collect_constants(f, cs);
    for (ConstantId c : cs) {
        bool fluent = d.signature().is_fluent(c);
        if (fluent != want_fluents)
            throw SignatureError(std::string(what) + " mentions " +
                                 (fluent ? "fluent " : "action ") + d.signature().decl(c).render());
    }
}

/// All transition labels with at most `bound` true atoms satisfying the
/// constraint. Action constants must be Boolean.
std::vector<TransitionLabel> enumerate_labels(const ActionDescription &d,
                                              const FormulaArena &arena, Formula constraint,
                                              int bound, uint64_t budget) {
    const Signature &sig = d.signature();
    for (ConstantId a : sig.actions()) {
        if (!sig.decl(a).boolean())
            throw SignatureError("label enumeration requires Boolean action constants; " +
                                 sig.decl(a).render() + " is not");
    }
    std::vector<TransitionLabel> out;
    const auto &actions = sig.actions();
    TransitionLabel base(sig, ConstantSubset::Actions);
    uint64_t generated = 0;
    std::vector<ConstantId> chosen;
    auto emit = [&]() {
        if (++generated > budget)
            throw BudgetError("label enumeration exceeds the budget", generated);
        TransitionLabel label = base;
        for (ConstantId c : chosen)
            label.set(c, 1);
        if (satisfies(sig, arena, label, constraint))
            out.push_back(std::move(label));
    };
    // subsets of size exactly k, for k = 0..bound, in lexicographic order
    std::function<void(size_t, int)> rec = [&](size_t start, int remaining) {
        if (remaining == 0) {
            emit();
            return;
        }
        for (size_t i = start; i < actions.size(); ++i) {
            chosen.push_back(actions[i]);
            rec(i + 1, remaining - 1);
            chosen.pop_back();
        }
    };
    for (int k = 0; k <= bound; ++k)
        rec(0, k);
    return out;
}

}  // namespace

EnumerationResult enumerate_states(const ActionDescription &d, const StateQuery &q, size_t limit,
                                   const EngineOptions &opt) {
    FormulaArena work = d.arena();
    Formula constraint = work.import_from(q.arena, q.constraint);
    check_constants(d, work, constraint, true, "state query");

    EnumerationResult result;
    Completion c(d, work);
    if (!c.ok())
        return result;
    if (!c.require(constraint, true))
        return result;
    unsigned long long product = c.candidate_product(opt.budget);
    if (product > opt.budget)
        throw BudgetError("enumeration would scan " + std::to_string(product) +
                              " candidate interpretations, over the budget of " +
                              std::to_string(opt.budget),
                          product);
    auto res = c.solve_all(limit, UINT64_MAX);
    result.states = std::move(res.solutions);
    result.truncated = res.truncated;
    result.stats.nodes = res.stats.nodes;
    result.stats.interpretations_scanned = res.stats.leaves;
    result.stats.states_found = result.states.size();
    return result;
}

std::vector<Transition> successors(const ActionDescription &d, const State &s,
                                   const StateQuery &label_constraint, int bound,
                                   const EngineOptions &opt) {
    if (!is_state(d, s))
        throw std::invalid_argument("successors: source interpretation is not a state");
    FormulaArena work = d.arena();
    Formula constraint = work.import_from(label_constraint.arena, label_constraint.constraint);
    check_constants(d, work, constraint, false, "label constraint");

    std::vector<Transition> out;
    for (TransitionLabel &label : enumerate_labels(d, work, constraint, bound, opt.budget)) {
        Completion c(d, work, s, label);
        if (!c.ok())
            continue;
        auto res = c.solve_all(SIZE_MAX, opt.budget);
        if (res.budget_hit)
            throw BudgetError("successor completion exceeded the budget", res.stats.nodes);
        for (State &target : res.solutions)
            out.push_back(Transition{s, label, std::move(target)});
    }
    return out;
}

QueryReport check_all_states(const ActionDescription &d, const StateQuery &phi,
                             const StateQuery &psi, const EngineOptions &opt) {
    FormulaArena work = d.arena();
    Formula f_phi = work.import_from(phi.arena, phi.constraint);
    Formula f_psi = work.import_from(psi.arena, psi.constraint);
    check_constants(d, work, f_phi, true, "phi");
    check_constants(d, work, f_psi, true, "psi");

    QueryReport report;
    Completion c(d, work);
    bool feasible = c.ok() && c.require(f_phi, true) && c.require(f_psi, false);
    if (feasible) {
        auto res = c.solve_all(opt.counterexample_limit, opt.budget);
        if (res.budget_hit)
            throw BudgetError("state query exceeded the search budget", res.stats.nodes);
        report.state_counterexamples = std::move(res.solutions);
        report.counterexamples_truncated = res.truncated;
        report.stats.nodes = res.stats.nodes;
        report.stats.interpretations_scanned = res.stats.leaves;
        report.stats.states_found = report.state_counterexamples.size();
    }
    report.holds = report.state_counterexamples.empty();
    return report;
}

namespace {

/// 3-valued evaluation of a fluent formula on the successor states of the
/// (partially determined) source region under a fixed label. Sound for
/// universal checks: True means every successor of every source state in the
/// region satisfies the formula (vacuously when no successors exist).
struct SuccessorAbstraction {
    const ActionDescription &d;
    const FormulaArena &arena;
    const Completion &c;
    const TransitionLabel &label;

    Truth atom3(const Atom &a) const {
        const Signature &sig = d.signature();
        ConstantId cn = a.constant;
        // a static fact with a vacuous condition pins the value in every state
        for (uint32_t idx : d.statics_heading(cn)) {
            const StaticLaw &law = d.statics()[idx];
            if (arena.node(law.condition).op == FormulaOp::True)
                return law.head->value == a.value ? Truth::True : Truth::False;
        }
        std::optional<ValueId> forced;
        bool conflict = false;
        bool possible_noninertia = false;
        for (uint32_t idx : d.dynamics_heading(cn)) {
            const DynamicLaw &law = d.dynamics()[idx];
            Truth h = c.eval3_with_label(law.precondition, label);
            if (h == Truth::False)
                continue;
            if (!search::is_inertia_law(arena, law))
                possible_noninertia = true;
            if (h == Truth::True && arena.node(law.condition).op == FormulaOp::True) {
                if (forced && *forced != law.head->value)
                    conflict = true;
                forced = law.head->value;
            }
        }
        if (conflict)
            return Truth::True;  // conflicting forced effects: no successors at all
        if (forced)
            return *forced == a.value ? Truth::True : Truth::False;
        if (!possible_noninertia && d.statics_heading(cn).empty() && !sig.is_simple(cn))
            return Truth::Unknown;  // statically determined but uncausable: no states
        if (!possible_noninertia && d.statics_heading(cn).empty()) {
            // only inertia can cause this constant: it keeps its source value
            return c.eval3_atom(a);
        }
        return Truth::Unknown;
    }

    Truth eval(Formula f) const {
        const auto &n = arena.node(f);
        switch (n.op) {
        case FormulaOp::True:
            return Truth::True;
        case FormulaOp::False:
            return Truth::False;
        case FormulaOp::AtomRef:
            return atom3(n.atom);
        case FormulaOp::Not: {
            Truth t = eval(arena.children(n)[0]);
            if (t == Truth::Unknown)
                return Truth::Unknown;
            return t == Truth::True ? Truth::False : Truth::True;
        }
        case FormulaOp::And: {
            Truth out = Truth::True;
            for (Formula k : arena.children(n)) {
                Truth t = eval(k);
                if (t == Truth::False)
                    return Truth::False;
                if (t == Truth::Unknown)
                    out = Truth::Unknown;
            }
            return out;
        }
        case FormulaOp::Or: {
            Truth out = Truth::False;
            for (Formula k : arena.children(n)) {
                Truth t = eval(k);
                if (t == Truth::True)
                    return Truth::True;
                if (t == Truth::Unknown)
                    out = Truth::Unknown;
            }
            return out;
        }
        case FormulaOp::Implies: {
            Truth a = eval(arena.children(n)[0]);
            Truth b = eval(arena.children(n)[1]);
            if (a == Truth::False || b == Truth::True)
                return Truth::True;
            if (a == Truth::True && b == Truth::False)
                return Truth::False;
            return Truth::Unknown;
        }
        }
        return Truth::Unknown;
    }

    /// A guaranteed-to-fire constraint law kills every successor.
    bool no_successors_possible() const {
        for (uint32_t idx : d.dynamic_constraints()) {
            const DynamicLaw &law = d.dynamics()[idx];
            if (arena.node(law.condition).op == FormulaOp::True &&
                c.eval3_with_label(law.precondition, label) == Truth::True)
                return true;
        }
        return false;
    }
};

}  // namespace

QueryReport check_all_transitions(const ActionDescription &d, const TransitionQuery &tq,
                                  const EngineOptions &opt) {
    FormulaArena work = d.arena();
    Formula f_pre = work.import_from(tq.arena, tq.pre);
    Formula f_label = work.import_from(tq.arena, tq.label);
    Formula f_post = work.import_from(tq.arena, tq.post);
    check_constants(d, work, f_pre, true, "pre");
    check_constants(d, work, f_label, false, "label");
    check_constants(d, work, f_post, true, "post");

    QueryReport report;
    QueryStatistics &stats = report.stats;

    auto labels = enumerate_labels(d, work, f_label, opt.transition_label_bound, opt.budget);
    for (const TransitionLabel &label : labels) {
        ++stats.labels_checked;
        Completion c(d, work);
        if (!c.ok() || !c.require(f_pre, true))
            continue;

        auto visit = [&](Completion &node) {
            SuccessorAbstraction abs{d, work, node, label};
            if (abs.no_successors_possible())
                return Completion::Visit::Prune;
            if (abs.eval(f_post) == Truth::True)
                return Completion::Visit::Prune;
            return Completion::Visit::Continue;
        };
        auto leaf = [&](const State &s) {
            ++stats.interpretations_scanned;
            if (!is_state(d, s) || !satisfies(d.signature(), work, s, f_pre))
                return Completion::Visit::Continue;
            Completion succ(d, work, s, label);
            auto res = succ.solve_all(SIZE_MAX, opt.budget);
            if (res.budget_hit)
                throw BudgetError("successor completion exceeded the budget", res.stats.nodes);
            for (State &target : res.solutions) {
                if (!satisfies(d.signature(), work, target, f_post)) {
                    report.transition_counterexamples.push_back(
                        Transition{s, label, std::move(target)});
                    if (report.transition_counterexamples.size() >= opt.counterexample_limit) {
                        report.counterexamples_truncated = true;
                        return Completion::Visit::Abort;
                    }
                }
            }
            return Completion::Visit::Continue;
        };
        SearchStats ss;
        bool within = c.explore(visit, leaf, ss, opt.budget);
        stats.nodes += ss.nodes;
        if (!within)
            throw BudgetError("transition query exceeded the search budget", stats.nodes);
        if (report.counterexamples_truncated)
            break;
    }
    report.stats.states_found = report.transition_counterexamples.size();
    report.holds = report.transition_counterexamples.empty();
    return report;
}

TransitionLabel label_from_events(const ActionDescription &d,
                                  const std::vector<ConstantId> &events) {
    const Signature &sig = d.signature();
    TransitionLabel label(sig, ConstantSubset::Actions);
    for (ConstantId c : events) {
        if (!sig.is_action(c))
            throw SignatureError("narrative event is not an action constant: " +
                                 sig.decl(c).render());
        if (!sig.decl(c).boolean())
            throw SignatureError("narrative events must be Boolean actions: " +
                                 sig.decl(c).render());
        label.set(c, 1);
    }
    return label;
}

ReplayResult replay(const ActionDescription &d, const State &s0,
                    const std::vector<NarrativeStep> &narrative, const ReplayOptions &opt) {
    if (!is_state(d, s0))
        throw std::invalid_argument("replay: the initial interpretation is not a state");
    ReplayResult result;
    result.path.states.push_back(s0);
    std::mt19937_64 rng(opt.seed);

    for (size_t k = 0; k < narrative.size(); ++k) {
        const NarrativeStep &step = narrative[k];
        const State &current = result.path.states.back();
        TransitionLabel label = label_from_events(d, step.events);
        Completion c(d, d.arena(), current, label);
        Completion::SolveResult res;
        if (c.ok()) {
            res = c.solve_all(SIZE_MAX, opt.node_budget);
            if (res.budget_hit)
                throw BudgetError("replay step exceeded the search budget", res.stats.nodes);
        }
        result.branch_counts.push_back(res.solutions.size());
        if (res.solutions.empty()) {
            ReplayFailure f;
            f.step_index = k;
            f.time = step.time;
            f.reason = "event not executable as modeled";
            if (!c.ok())
                f.reason += ": " + c.conflict_reason();
            result.failure = f;
            return result;
        }
        size_t pick = 0;
        if (res.solutions.size() > 1) {
            switch (opt.policy) {
            case AmbiguityPolicy::Fail: {
                ReplayFailure f;
                f.step_index = k;
                f.time = step.time;
                f.ambiguous = true;
                f.reason = "transition is nondeterministic: " +
                           std::to_string(res.solutions.size()) +
                           " successor states (use a resolution policy)";
                result.failure = f;
                return result;
            }
            case AmbiguityPolicy::FirstCanonical:
                pick = 0;
                break;
            case AmbiguityPolicy::SeededRandom:
                pick = static_cast<size_t>(rng() % res.solutions.size());
                break;
            }
        }
        result.path.labels.push_back(std::move(label));
        result.path.states.push_back(std::move(res.solutions[pick]));
    }
    return result;
}

}  // namespace cplus::engine
