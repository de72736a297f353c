#ifndef RSP_REPORT_HPP
#define RSP_REPORT_HPP

#include "rsp/protocol.hpp"

namespace rsp {

struct AtomChange {
    std::string constant;
    std::string from;
    std::string to;
};

struct StepReport {
    long time = 0;
    std::vector<std::string> events;
    std::vector<std::string> unpowered;  // events without institutional power in the pre-state
    std::vector<AtomChange> changes;
    size_t branches = 1;  // successor states the step had before resolution
};

/// Per-step deltas compose from the initial to the final state; the sanction
/// and specification-point logs are projections of the same changes.
struct RunReport {
    bool ok = false;
    bool ambiguous = false;
    size_t failed_step = 0;
    long failed_time = 0;
    std::string failure;
    std::vector<StepReport> steps;
    std::vector<std::string> sanction_log;
    std::vector<std::string> point_log;
    std::vector<std::string> final_summary;
};

RunReport build_run_report(const cplus::ActionDescription &d,
                           const std::vector<cplus::engine::NarrativeStep> &narrative,
                           const cplus::engine::ReplayResult &result,
                           const std::vector<std::string> &trace_families);

std::string render_text(const RunReport &report);
std::string render_json(const RunReport &report);

}  // namespace rsp

#endif
