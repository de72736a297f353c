#include "rsp/checks.hpp"

#include <future>

#include "cplus/text_format.hpp"

namespace rsp {

using cplus::ActionDescription;
using cplus::ConstantId;
using cplus::Formula;
using cplus::FormulaArena;
using cplus::State;
using cplus::schema::Binding;
using cplus::schema::SchematicDescription;
using cplus::schema::SFormulaPtr;

namespace {

/// Renders a state restricted to the constants a query mentions, enough to
/// identify the counterexample without dumping hundreds of atoms.
std::string render_restricted(const cplus::Signature &sig, const State &s,
                              const std::vector<ConstantId> &constants) {
    std::string out = "{";
    bool first = true;
    for (ConstantId c : constants) {
        if (!sig.is_fluent(c))
            continue;
        if (!first)
            out += ", ";
        first = false;
        out += sig.render_atom(cplus::Atom{c, s.value(c)});
    }
    return out + "}";
}

std::string render_label(const cplus::Signature &sig, const cplus::TransitionLabel &label) {
    std::string out = "[";
    bool first = true;
    for (ConstantId a : sig.actions()) {
        if (label.value(a) != 1)
            continue;
        if (!first)
            out += ", ";
        first = false;
        out += sig.decl(a).render();
    }
    return out + "]";
}

struct BindingResult {
    bool holds = true;
    uint64_t nodes = 0;
    uint64_t scanned = 0;
    std::vector<std::string> counterexamples;
};

BindingResult check_binding(const ActionDescription &d, const SchematicDescription &ctx,
                            const PropertySpec &spec, const Binding &binding,
                            const std::map<std::string, SFormulaPtr> &parsed,
                            const cplus::engine::EngineOptions &opt) {
    const cplus::Signature &sig = d.signature();
    BindingResult out;
    if (!spec.transition) {
        cplus::engine::StateQuery phi, psi;
        phi.constraint =
            cplus::schema::instantiate_formula(ctx, sig, phi.arena, parsed.at("given"), binding);
        psi.constraint =
            cplus::schema::instantiate_formula(ctx, sig, psi.arena, parsed.at("expect"), binding);
        auto report = cplus::engine::check_all_states(d, phi, psi, opt);
        out.holds = report.holds;
        out.nodes = report.stats.nodes;
        out.scanned = report.stats.interpretations_scanned;
        std::vector<ConstantId> shown;
        phi.arena.collect_constants(phi.constraint, shown);
        psi.arena.collect_constants(psi.constraint, shown);
        for (const State &s : report.state_counterexamples)
            out.counterexamples.push_back(render_restricted(sig, s, shown));
    } else {
        cplus::engine::TransitionQuery tq;
        tq.pre = cplus::schema::instantiate_formula(ctx, sig, tq.arena, parsed.at("pre"), binding);
        tq.label =
            cplus::schema::instantiate_formula(ctx, sig, tq.arena, parsed.at("label"), binding);
        tq.post =
            cplus::schema::instantiate_formula(ctx, sig, tq.arena, parsed.at("post"), binding);
        auto report = cplus::engine::check_all_transitions(d, tq, opt);
        out.holds = report.holds;
        out.nodes = report.stats.nodes;
        out.scanned = report.stats.interpretations_scanned;
        std::vector<ConstantId> shown;
        tq.arena.collect_constants(tq.pre, shown);
        tq.arena.collect_constants(tq.post, shown);
        for (const cplus::Transition &t : report.transition_counterexamples)
            out.counterexamples.push_back(render_restricted(sig, t.from, shown) + " --" +
                                          render_label(sig, t.label) + "-> " +
                                          render_restricted(sig, t.to, shown));
    }
    return out;
}

}  // namespace

PropertyOutcome run_property(const ActionDescription &d, const Protocol &p,
                             const PropertySpec &spec, const cplus::engine::EngineOptions &opt,
                             int workers) {
    // parse the formulas once against the bundle's sorts plus the property's
    // own variable declarations
    SchematicDescription ctx;
    ctx.sorts = p.schematic.sorts;
    ctx.var_sorts = p.schematic.var_sorts;
    for (const auto &[v, sort] : spec.vars) {
        ctx.require_sort(sort);
        ctx.var_sorts[v] = sort;
    }
    std::map<std::string, SFormulaPtr> parsed;
    if (spec.transition) {
        parsed["pre"] = cplus::text::parse_formula(spec.pre, ctx);
        parsed["label"] = cplus::text::parse_formula(spec.label, ctx);
        parsed["post"] = cplus::text::parse_formula(spec.post, ctx);
    } else {
        parsed["given"] = cplus::text::parse_formula(spec.given, ctx);
        parsed["expect"] = cplus::text::parse_formula(spec.expect, ctx);
    }

    // expand the bindings in sorted-variable order
    std::vector<Binding> bindings;
    {
        std::vector<std::string> names;
        std::vector<const cplus::schema::Sort *> sorts;
        for (const auto &[v, sort] : spec.vars) {
            names.push_back(v);
            sorts.push_back(&ctx.require_sort(sort));
        }
        std::vector<size_t> cursor(names.size(), 0);
        bool done = false;
        while (!done) {
            Binding b;
            for (size_t i = 0; i < names.size(); ++i)
                b[names[i]] = sorts[i]->elements[cursor[i]];
            bindings.push_back(std::move(b));
            done = true;
            for (size_t i = cursor.size(); i > 0;) {
                --i;
                if (++cursor[i] < sorts[i]->elements.size()) {
                    done = false;
                    break;
                }
                cursor[i] = 0;
            }
        }
    }

    PropertyOutcome outcome;
    outcome.name = spec.name;
    outcome.holds = true;
    outcome.bindings = bindings.size();

    std::vector<BindingResult> results(bindings.size());
    if (workers <= 1) {
        for (size_t i = 0; i < bindings.size(); ++i)
            results[i] = check_binding(d, ctx, spec, bindings[i], parsed, opt);
    } else {
        std::vector<std::future<BindingResult>> futures;
        for (size_t i = 0; i < bindings.size(); ++i)
            futures.push_back(std::async(std::launch::async, [&, i] {
                return check_binding(d, ctx, spec, bindings[i], parsed, opt);
            }));
        for (size_t i = 0; i < bindings.size(); ++i)
            results[i] = futures[i].get();
    }
    for (const BindingResult &r : results) {
        outcome.nodes += r.nodes;
        outcome.scanned += r.scanned;
        if (!r.holds) {
            outcome.holds = false;
            for (const std::string &c : r.counterexamples) {
                if (outcome.counterexamples.size() < opt.counterexample_limit)
                    outcome.counterexamples.push_back(c);
                else
                    outcome.truncated = true;
            }
        }
    }
    return outcome;
}

}  // namespace rsp
