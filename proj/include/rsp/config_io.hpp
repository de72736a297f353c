#ifndef RSP_CONFIG_IO_HPP
#define RSP_CONFIG_IO_HPP

#include <string>
#include <vector>

#include "rsp/protocol.hpp"

namespace rsp {

/// Loads a protocol configuration. Every field is optional; omitted fields
/// keep the paper-scale defaults. See docs/formats.md for the schema.
ProtocolConfig load_config(const std::string &path);

/// Narrative schema: array of {time, events: [{action, args: [...]}]}.
/// Events are resolved against the signature and checked against the
/// concurrency policy (one event per step; votes may be grouped).
std::vector<cplus::engine::NarrativeStep> load_narrative(const std::string &path,
                                                         const cplus::Signature &sig);

/// One named property, quantified over sorted variables and expanded to
/// ground checks per binding.
struct PropertySpec {
    std::string name;
    bool transition = false;
    std::map<std::string, std::string> vars;  // variable -> sort
    std::string given;                        // state: phi     (default "true")
    std::string expect;                       // state: psi
    std::string pre, label, post;             // transition query parts
};

std::vector<PropertySpec> load_properties(const std::string &path);

}  // namespace rsp

#endif
