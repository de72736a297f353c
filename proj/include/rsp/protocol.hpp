#ifndef RSP_PROTOCOL_HPP
#define RSP_PROTOCOL_HPP

#include <optional>

#include "cplus/engine.hpp"
#include "cplus/grounding.hpp"
#include "rsp/specspace.hpp"

namespace rsp {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SanctionConfig {
    enum class Mode : uint8_t { Permanent, Decay } mode = Mode::Permanent;
    int decay_steps = 3;
};

struct ProtocolConfig {
    std::string chair = "c";
    std::string fcs = "f";
    std::vector<std::string> subjects;
    std::vector<std::string> manipulation_types;
    int levels = 3;

    DoFCatalog dof_catalog;
    std::map<std::string, std::pair<int, std::vector<std::string>>> pinned_points;
    std::map<int, std::vector<std::string>> restrict_points;  // level -> ids; absent: all
    MetricConfig metric;
    UtilityTable utilities;
    std::optional<PropertiesTable> properties_override;
    std::map<int, std::string> initial_points;  // level -> point id
    std::string top_standing_rule = "three_quarters";
    std::string rmt_designated_type;  // defaults to the first manipulation type

    int c_alloc_max = 10;
    int queue_max = 8;
    SanctionConfig sanctions;
    bool governance = false;  // run-time threshold/eu change events
    bool run_constraint_check = false;

    uint64_t budget = 1ull << 22;

    /// The paper-scale bundle: chair c, fcs f, six subjects, two manipulation
    /// types, the 4x3x2 level-0 space and the 3-value standing-rules DoF.
    static ProtocolConfig defaults();
};

/// A generated protocol bundle: the schematic description plus the resolved
/// specification-space tables needed to interpret it.
struct Protocol {
    ProtocolConfig config;
    PointCatalog catalog;
    PropertiesTable properties;
    cplus::schema::SchematicDescription schematic;

    /// Point ids available in the ground signature at the given level
    /// (the restricted set when the config restricts).
    std::vector<std::string> active_points(int level) const;
};

/// Validates the config and emits the complete schematic description:
/// floor control, DoF-conditioned rules, specification-space facts, the
/// transition protocol, meta-level roles, and voting.
Protocol build_description(const ProtocolConfig &cfg);

/// The configured initial state, completed through the static fixpoint and
/// kernel-verified.
cplus::State initial_state(const cplus::ActionDescription &d, const Protocol &p);

/// The institutional power governing an action, for replay reporting.
/// Returns nothing for exogenous events (set_threshold, set_environment).
std::optional<cplus::ConstantId> power_fluent_for_action(const cplus::Signature &sig,
                                                         cplus::ConstantId action);

/// Narrative concurrency policy: one event per step, except votes, which may
/// be grouped freely.
void validate_step_events(const cplus::Signature &sig,
                          const std::vector<cplus::ConstantId> &events);

}  // namespace rsp

#endif
