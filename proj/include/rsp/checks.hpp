#ifndef RSP_CHECKS_HPP
#define RSP_CHECKS_HPP

#include "rsp/config_io.hpp"

namespace rsp {

struct PropertyOutcome {
    std::string name;
    bool holds = false;
    size_t bindings = 0;
    uint64_t nodes = 0;
    uint64_t scanned = 0;
    std::vector<std::string> counterexamples;  // rendered, truncated
    bool truncated = false;
};

/// Expands the property's variables over their sorts and checks every ground
/// instance. Bindings may be distributed over worker threads; the outcome is
/// identical regardless of the worker count.
PropertyOutcome run_property(const cplus::ActionDescription &d, const Protocol &p,
                             const PropertySpec &spec, const cplus::engine::EngineOptions &opt,
                             int workers = 1);

}  // namespace rsp

#endif
