#include "rsp/report.hpp"

#include <algorithm>

#include <json.hpp>

namespace rsp {

using cplus::ConstantId;
using cplus::Signature;
using cplus::State;

RunReport build_run_report(const cplus::ActionDescription &d,
                           const std::vector<cplus::engine::NarrativeStep> &narrative,
                           const cplus::engine::ReplayResult &result,
                           const std::vector<std::string> &trace_families) {
    const Signature &sig = d.signature();
    RunReport report;
    report.ok = result.ok();
    if (result.failure) {
        report.failed_step = result.failure->step_index;
        report.failed_time = result.failure->time;
        report.ambiguous = result.failure->ambiguous;
        report.failure = result.failure->reason;
    }
    auto traced = [&](const std::string &family) {
        return trace_families.empty() ||
               std::find(trace_families.begin(), trace_families.end(), family) !=
                   trace_families.end();
    };
    size_t executed = result.path.labels.size();
    for (size_t k = 0; k < executed; ++k) {
        const auto &step = narrative[k];
        const State &before = result.path.states[k];
        const State &after = result.path.states[k + 1];
        StepReport sr;
        sr.time = step.time;
        sr.branches = k < result.branch_counts.size() ? result.branch_counts[k] : 1;
        for (ConstantId ev : step.events) {
            sr.events.push_back(sig.decl(ev).render());
            if (auto pow = power_fluent_for_action(sig, ev)) {
                if (before.value(*pow) != 1)
                    sr.unpowered.push_back(sig.decl(ev).render());
            }
        }
        for (ConstantId c : sig.fluents()) {
            if (before.value(c) == after.value(c))
                continue;
            const auto &decl = sig.decl(c);
            AtomChange change{decl.render(), decl.domain[before.value(c)],
                              decl.domain[after.value(c)]};
            if (decl.family == "sanctioned" && change.to == "t")
                report.sanction_log.push_back("t=" + std::to_string(step.time) + " " +
                                              change.constant);
            if (decl.family == "actual_sp")
                report.point_log.push_back("t=" + std::to_string(step.time) + " " +
                                           change.constant + " = " + change.to);
            if (traced(decl.family))
                sr.changes.push_back(std::move(change));
        }
        report.steps.push_back(std::move(sr));
    }
    const State &final_state = result.path.states.back();
    for (ConstantId c : sig.fluents()) {
        const auto &decl = sig.decl(c);
        const std::string &v = decl.domain[final_state.value(c)];
        bool interesting = (decl.family == "holder" && v == "t") ||
                           (decl.family == "sanctioned" && v == "t") ||
                           decl.family == "actual_sp" || decl.family == "protocol" ||
                           (decl.family == "c_alloc" && v != "0");
        if (interesting)
            report.final_summary.push_back(decl.boolean() ? decl.render()
                                                          : decl.render() + " = " + v);
    }
    return report;
}

std::string render_text(const RunReport &report) {
    std::string out;
    for (const StepReport &s : report.steps) {
        out += "t=" + std::to_string(s.time) + ":";
        for (const std::string &e : s.events)
            out += " " + e;
        if (s.branches > 1)
            out += "  [" + std::to_string(s.branches) + " successors]";
        out += "\n";
        for (const std::string &e : s.unpowered)
            out += "    unpowered event (no institutional effect): " + e + "\n";
        for (const AtomChange &c : s.changes)
            out += "    " + c.constant + ": " + c.from + " -> " + c.to + "\n";
    }
    if (!report.ok) {
        out += "FAILED at step " + std::to_string(report.failed_step) +
               " (t=" + std::to_string(report.failed_time) + "): " + report.failure + "\n";
        return out;
    }
    if (!report.sanction_log.empty()) {
        out += "sanctions:\n";
        for (const std::string &s : report.sanction_log)
            out += "    " + s + "\n";
    }
    if (!report.point_log.empty()) {
        out += "specification-point changes:\n";
        for (const std::string &s : report.point_log)
            out += "    " + s + "\n";
    }
    out += "final state:\n";
    for (const std::string &s : report.final_summary)
        out += "    " + s + "\n";
    return out;
}

std::string render_json(const RunReport &report) {
    nlohmann::json j;
    j["ok"] = report.ok;
    if (!report.ok) {
        j["failure"] = {{"step", report.failed_step},
                        {"time", report.failed_time},
                        {"ambiguous", report.ambiguous},
                        {"reason", report.failure}};
    }
    j["steps"] = nlohmann::json::array();
    for (const StepReport &s : report.steps) {
        nlohmann::json js;
        js["time"] = s.time;
        js["events"] = s.events;
        js["unpowered"] = s.unpowered;
        js["branches"] = s.branches;
        js["changes"] = nlohmann::json::array();
        for (const AtomChange &c : s.changes)
            js["changes"].push_back({{"constant", c.constant}, {"from", c.from}, {"to", c.to}});
        j["steps"].push_back(std::move(js));
    }
    j["sanctions"] = report.sanction_log;
    j["point_changes"] = report.point_log;
    j["final_state"] = report.final_summary;
    return j.dump(2);
}

}  // namespace rsp
