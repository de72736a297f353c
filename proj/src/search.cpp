#include "cplus/search.hpp"

#include <algorithm>
#include <bit>

namespace cplus::search {

namespace {

uint64_t full_mask(size_t n) {
    return n >= 64 ? ~0ull : (1ull << n) - 1;
}

Truth truth_not(Truth t) {
    if (t == Truth::Unknown)
        return Truth::Unknown;
    return t == Truth::True ? Truth::False : Truth::True;
}

}  // namespace

bool is_inertia_law(const FormulaArena &arena, const DynamicLaw &law) {
    if (!law.head)
        return false;
    const auto &c = arena.node(law.condition);
    const auto &p = arena.node(law.precondition);
    return c.op == FormulaOp::AtomRef && c.atom == *law.head && p.op == FormulaOp::AtomRef &&
           p.atom == *law.head;
}

Completion::Completion(const ActionDescription &d, const FormulaArena &arena)
    : d_(d), arena_(arena) {
    init_common();
    init_states_mode();
}

Completion::Completion(const ActionDescription &d, const FormulaArena &arena, const State &from,
                       const TransitionLabel &label)
    : d_(d), arena_(arena), successor_mode_(true), from_(from), label_(label) {
    init_common();
    init_successor_mode();
}

void Completion::init_common() {
    const Signature &sig = d_.signature();
    for (ConstantId c : sig.fluents()) {
        if (sig.domain_size(c) > kMaxDomain)
            throw BudgetError("domain of " + sig.decl(c).render() +
                                  " exceeds the search engine's 64-value limit",
                              sig.domain_size(c));
    }
    masks_.assign(sig.size(), 0);
    needs_cause_.assign(sig.size(), 0);
    cause_laws_.resize(sig.size());
    watchers_.resize(sig.size());
}

void Completion::init_states_mode() {
    const Signature &sig = d_.signature();
    for (ConstantId c : sig.fluents()) {
        if (sig.is_simple(c)) {
            masks_[c] = full_mask(sig.domain_size(c));
        } else {
            needs_cause_[c] = 1;
            masks_[c] = 0;  // filled from static heads below
        }
    }
    for (const StaticLaw &law : d_.statics()) {
        uint32_t idx = static_cast<uint32_t>(laws_.size());
        laws_.push_back({law.head, law.condition});
        if (law.head) {
            if (!sig.is_simple(law.head->constant))
                masks_[law.head->constant] |= 1ull << law.head->value;
            cause_laws_[law.head->constant].push_back({law.head->value, idx});
        }
    }
    for (uint32_t i = 0; i < laws_.size(); ++i) {
        std::vector<ConstantId> cs;
        arena_.collect_constants(laws_[i].condition, cs);
        for (ConstantId c : cs)
            watchers_[c].push_back(i);
        queue_.push_back(i);
    }
    in_queue_.assign(laws_.size(), 1);
    for (ConstantId c : sig.fluents()) {
        if (masks_[c] == 0) {
            conflict_ = true;
            conflict_reason_ = "no static law can cause any value of " + sig.decl(c).render();
            return;
        }
    }
}

void Completion::init_successor_mode() {
    const Signature &sig = d_.signature();
    for (ConstantId c : sig.fluents()) {
        needs_cause_[c] = 1;
        masks_[c] = 0;
    }
    std::vector<std::pair<std::optional<Atom>, Formula>> active;
    for (const StaticLaw &law : d_.statics())
        active.push_back({law.head, law.condition});
    for (const DynamicLaw &law : d_.dynamics()) {
        if (!satisfies_pair(sig, arena_, from_, label_, law.precondition))
            continue;
        active.push_back({law.head, law.condition});
    }
    for (auto &[head, cond] : active) {
        uint32_t idx = static_cast<uint32_t>(laws_.size());
        laws_.push_back({head, cond});
        if (head) {
            masks_[head->constant] |= 1ull << head->value;
            cause_laws_[head->constant].push_back({head->value, idx});
        }
    }
    for (uint32_t i = 0; i < laws_.size(); ++i) {
        std::vector<ConstantId> cs;
        arena_.collect_constants(laws_[i].condition, cs);
        for (ConstantId c : cs)
            watchers_[c].push_back(i);
        queue_.push_back(i);
    }
    in_queue_.assign(laws_.size(), 1);
    for (ConstantId c : sig.fluents()) {
        if (masks_[c] == 0) {
            conflict_ = true;
            conflict_reason_ =
                "no active law can cause any value of " + sig.decl(c).render() +
                " in the successor state";
            return;
        }
    }
}

bool Completion::set_mask(ConstantId c, uint64_t m) {
    uint64_t cur = masks_[c];
    m &= cur;
    if (m == cur)
        return true;
    if (m == 0) {
        conflict_ = true;
        conflict_reason_ = "candidates of " + d_.signature().decl(c).render() + " emptied";
        return false;
    }
    trail_.push_back({c, cur});
    masks_[c] = m;
    for (uint32_t w : watchers_[c]) {
        if (!in_queue_[w]) {
            in_queue_[w] = 1;
            queue_.push_back(w);
        }
    }
    return true;
}

Truth Completion::eval3_atom(const Atom &a) const {
    uint64_t m = masks_[a.constant];
    uint64_t bit = 1ull << a.value;
    if (!(m & bit))
        return Truth::False;
    return m == bit ? Truth::True : Truth::Unknown;
}

Truth Completion::eval3(Formula f) const {
    const auto &n = arena_.node(f);
    switch (n.op) {
    case FormulaOp::True:
        return Truth::True;
    case FormulaOp::False:
        return Truth::False;
    case FormulaOp::AtomRef:
        return eval3_atom(n.atom);
    case FormulaOp::Not:
        return truth_not(eval3(arena_.children(n)[0]));
    case FormulaOp::And: {
        Truth out = Truth::True;
        for (Formula k : arena_.children(n)) {
            Truth t = eval3(k);
            if (t == Truth::False)
                return Truth::False;
            if (t == Truth::Unknown)
                out = Truth::Unknown;
        }
        return out;
    }
    case FormulaOp::Or: {
        Truth out = Truth::False;
        for (Formula k : arena_.children(n)) {
            Truth t = eval3(k);
            if (t == Truth::True)
                return Truth::True;
            if (t == Truth::Unknown)
                out = Truth::Unknown;
        }
        return out;
    }
    case FormulaOp::Implies: {
        Truth a = eval3(arena_.children(n)[0]);
        Truth b = eval3(arena_.children(n)[1]);
        if (a == Truth::False || b == Truth::True)
            return Truth::True;
        if (a == Truth::True && b == Truth::False)
            return Truth::False;
        return Truth::Unknown;
    }
    }
    return Truth::Unknown;
}

Truth Completion::eval3_with_label(Formula f, const TransitionLabel &label) const {
    const auto &n = arena_.node(f);
    if (n.op == FormulaOp::AtomRef && d_.signature().is_action(n.atom.constant))
        return label.satisfies_atom(n.atom) ? Truth::True : Truth::False;
    switch (n.op) {
    case FormulaOp::AtomRef:
        return eval3(f);
    case FormulaOp::Not:
        return truth_not(eval3_with_label(arena_.children(n)[0], label));
    case FormulaOp::And: {
        Truth out = Truth::True;
        for (Formula k : arena_.children(n)) {
            Truth t = eval3_with_label(k, label);
            if (t == Truth::False)
                return Truth::False;
            if (t == Truth::Unknown)
                out = Truth::Unknown;
        }
        return out;
    }
    case FormulaOp::Or: {
        Truth out = Truth::False;
        for (Formula k : arena_.children(n)) {
            Truth t = eval3_with_label(k, label);
            if (t == Truth::True)
                return Truth::True;
            if (t == Truth::Unknown)
                out = Truth::Unknown;
        }
        return out;
    }
    case FormulaOp::Implies: {
        Truth a = eval3_with_label(arena_.children(n)[0], label);
        Truth b = eval3_with_label(arena_.children(n)[1], label);
        if (a == Truth::False || b == Truth::True)
            return Truth::True;
        if (a == Truth::True && b == Truth::False)
            return Truth::False;
        return Truth::Unknown;
    }
    default:
        return eval3(f);
    }
}

bool Completion::force(Formula f, bool wanted) {
    if (conflict_)
        return false;
    const auto &n = arena_.node(f);
    switch (n.op) {
    case FormulaOp::True:
        if (!wanted) {
            conflict_ = true;
            conflict_reason_ = "required false to hold";
        }
        return !conflict_;
    case FormulaOp::False:
        if (wanted) {
            conflict_ = true;
            conflict_reason_ = "required true to be false";
        }
        return !conflict_;
    case FormulaOp::AtomRef: {
        uint64_t bit = 1ull << n.atom.value;
        return set_mask(n.atom.constant, wanted ? bit : ~bit);
    }
    case FormulaOp::Not:
        return force(arena_.children(n)[0], !wanted);
    case FormulaOp::And: {
        if (wanted) {
            for (Formula k : arena_.children(n))
                if (!force(k, true))
                    return false;
            return true;
        }
        // not all children may hold: force only when a single suspect remains
        Formula open = 0;
        int open_count = 0;
        for (Formula k : arena_.children(n)) {
            Truth t = eval3(k);
            if (t == Truth::False)
                return true;
            if (t == Truth::Unknown) {
                open = k;
                ++open_count;
            }
        }
        if (open_count == 0) {
            conflict_ = true;
            conflict_reason_ = "conjunction required false but holds";
            return false;
        }
        if (open_count == 1)
            return force(open, false);
        return true;
    }
    case FormulaOp::Or: {
        if (!wanted) {
            for (Formula k : arena_.children(n))
                if (!force(k, false))
                    return false;
            return true;
        }
        Formula open = 0;
        int open_count = 0;
        for (Formula k : arena_.children(n)) {
            Truth t = eval3(k);
            if (t == Truth::True)
                return true;
            if (t == Truth::Unknown) {
                open = k;
                ++open_count;
            }
        }
        if (open_count == 0) {
            conflict_ = true;
            conflict_reason_ = "disjunction required true but all cases fail";
            return false;
        }
        if (open_count == 1)
            return force(open, true);
        return true;
    }
    case FormulaOp::Implies: {
        Formula a = arena_.children(n)[0];
        Formula b = arena_.children(n)[1];
        if (wanted) {
            Truth ta = eval3(a);
            if (ta == Truth::True)
                return force(b, true);
            Truth tb = eval3(b);
            if (tb == Truth::False)
                return force(a, false);
            return true;
        }
        return force(a, true) && force(b, false);
    }
    }
    return true;
}

bool Completion::require(Formula f, bool wanted) {
    requirements_.push_back({f, wanted});
    return force(f, wanted) && propagate();
}

bool Completion::apply_law(uint32_t idx) {
    const PseudoLaw &law = laws_[idx];
    Truth t = eval3(law.condition);
    if (t == Truth::True) {
        if (!law.head) {
            conflict_ = true;
            conflict_reason_ = "constraint law fires: caused false if " +
                               arena_.render(law.condition, d_.signature());
            return false;
        }
        return set_mask(law.head->constant, 1ull << law.head->value);
    }
    if (t == Truth::Unknown) {
        if (!law.head)
            return force(law.condition, false);
        uint64_t bit = 1ull << law.head->value;
        if (!(masks_[law.head->constant] & bit))
            return force(law.condition, false);
    }
    return true;
}

bool Completion::causedness_sweep() {
    const Signature &sig = d_.signature();
    for (ConstantId c : sig.fluents()) {
        if (!needs_cause_[c])
            continue;
        uint64_t m = masks_[c];
        uint64_t alive = 0;
        for (const auto &[value, law] : cause_laws_[c]) {
            uint64_t bit = 1ull << value;
            if (!(m & bit) || (alive & bit))
                continue;
            if (eval3(laws_[law].condition) != Truth::False)
                alive |= bit;
        }
        if (alive != m && !set_mask(c, alive))
            return false;
    }
    return true;
}

bool Completion::propagate() {
    if (conflict_)
        return false;
    while (true) {
        while (!queue_.empty()) {
            uint32_t idx = queue_.back();
            queue_.pop_back();
            in_queue_[idx] = 0;
            if (!apply_law(idx))
                return false;
        }
        if (!causedness_sweep())
            return false;
        if (queue_.empty())
            break;
    }
    return !conflict_;
}

bool Completion::node_consistent() {
    if (!propagate())
        return false;
    for (auto &[f, wanted] : requirements_) {
        Truth t = eval3(f);
        if ((wanted && t == Truth::False) || (!wanted && t == Truth::True))
            return false;
        if (t == Truth::Unknown && !force(f, wanted))
            return false;
    }
    return propagate();
}

unsigned long long Completion::candidate_product(unsigned long long cap) const {
    unsigned long long out = 1;
    for (ConstantId c : d_.signature().fluents()) {
        out *= static_cast<unsigned long long>(std::popcount(masks_[c]));
        if (out > cap)
            return cap + 1;
    }
    return out;
}

bool Completion::verify_leaf(const State &s) const {
    if (successor_mode_) {
        if (!is_transition(d_, from_, label_, s))
            return false;
    } else {
        if (!is_state(d_, s))
            return false;
    }
    for (const auto &[f, wanted] : requirements_) {
        if (satisfies(d_.signature(), arena_, s, f) != wanted)
            return false;
    }
    return true;
}

void Completion::dfs(ExploreCtx &ctx) {
    if (ctx.aborted)
        return;
    if (++ctx.stats->nodes > ctx.node_budget) {
        ctx.aborted = true;
        ctx.budget_hit = true;
        return;
    }
    size_t mark = trail_.size();
    if (node_consistent()) {
        Visit v = (*ctx.visit)(*this);
        if (v == Visit::Abort)
            ctx.aborted = true;
        if (v == Visit::Continue) {
            const Signature &sig = d_.signature();
            ConstantId branch = kNoConstant;
            for (ConstantId c : sig.fluents()) {
                if (std::popcount(masks_[c]) > 1) {
                    branch = c;
                    break;
                }
            }
            if (branch == kNoConstant) {
                ++ctx.stats->leaves;
                State s(sig, ConstantSubset::Fluents);
                for (ConstantId c : sig.fluents())
                    s.set(c, static_cast<ValueId>(std::countr_zero(masks_[c])));
                if ((*ctx.leaf)(s) == Visit::Abort)
                    ctx.aborted = true;
            } else {
                uint64_t m = masks_[branch];
                for (ValueId val = 0; val < sig.domain_size(branch); ++val) {
                    if (!(m & (1ull << val)))
                        continue;
                    size_t inner = trail_.size();
                    if (set_mask(branch, 1ull << val))
                        dfs(ctx);
                    while (trail_.size() > inner) {
                        masks_[trail_.back().first] = trail_.back().second;
                        trail_.pop_back();
                    }
                    conflict_ = false;
                    conflict_reason_.clear();
                    if (ctx.aborted)
                        break;
                }
            }
        }
    }
    while (trail_.size() > mark) {
        masks_[trail_.back().first] = trail_.back().second;
        trail_.pop_back();
    }
    conflict_ = false;
    conflict_reason_.clear();
}

bool Completion::explore(const std::function<Visit(Completion &)> &visit,
                         const std::function<Visit(const State &)> &leaf, SearchStats &stats,
                         uint64_t node_budget) {
    if (conflict_)
        return true;
    ExploreCtx ctx{&visit, &leaf, &stats, node_budget};
    dfs(ctx);
    return !ctx.budget_hit;
}

Completion::SolveResult Completion::solve_all(size_t solution_limit, uint64_t node_budget) {
    SolveResult out;
    if (conflict_)
        return out;
    auto visit = [](Completion &) { return Visit::Continue; };
    auto leaf = [&](const State &s) {
        if (verify_leaf(s)) {
            out.solutions.push_back(s);
            if (out.solutions.size() >= solution_limit) {
                out.truncated = true;
                return Visit::Abort;
            }
        }
        return Visit::Continue;
    };
    out.budget_hit = !explore(visit, leaf, out.stats, node_budget);
    return out;
}

}  // namespace cplus::search
