#ifndef RSP_SPECSPACE_HPP
#define RSP_SPECSPACE_HPP

#include <map>
#include <string>
#include <vector>

#include "cplus/schematic.hpp"

namespace rsp {

struct SpecSpaceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One degree of freedom: an ordered value list. The declared order doubles
/// as the ranking function v (value -> index) used by the metric.
struct DoF {
    std::string name;
    std::vector<std::string> values;
};

/// DoF lists per protocol level; the top level has none.
struct DoFCatalog {
    std::vector<std::vector<DoF>> levels;

    int level_count() const { return static_cast<int>(levels.size()); }
    const std::vector<DoF> &at(int level) const;
};

struct SpecificationPoint {
    std::string id;
    int level = 0;
    std::vector<std::string> values;  // one per DoF of the level, catalog order
};

struct MetricConfig {
    enum class Kind : uint8_t { WeightedManhattan } kind = Kind::WeightedManhattan;
    std::map<int, std::vector<int>> weights;  // level -> weight per DoF

    void validate(const DoFCatalog &catalog) const;
};

/// map (level, point id) -> expected utility, one table per environment
/// scenario, plus the initial normative thresholds per level.
struct UtilityTable {
    std::vector<std::string> scenario_order;  // first entry is the initial scenario
    std::map<std::string, std::map<int, std::map<std::string, int>>> eu;
    std::map<int, int> threshold_d;
    std::map<int, int> threshold_eu;

    int eu_of(const std::string &scenario, int level, const std::string &point_id) const;
};

struct PropertiesTable {
    std::map<int, std::map<std::string, bool>> value;  // level -> id -> flag

    bool at(int level, const std::string &id) const;
};

/// index of the value in the DoF's declared order
int rank(const DoF &dof, const std::string &value);

/// The full point set: the Cartesian product per level in lexicographic
/// order over the DoF value lists. Ids: pinned ids are honoured at their
/// tuples; the rest get sp<k> with a global counter that runs across levels
/// and skips pinned names.
class PointCatalog {
public:
    /// pinned: id -> (level, value tuple)
    PointCatalog(DoFCatalog catalog,
                 const std::map<std::string, std::pair<int, std::vector<std::string>>> &pinned);

    const DoFCatalog &dofs() const { return catalog_; }
    const std::vector<SpecificationPoint> &points(int level) const;
    const SpecificationPoint *find(const std::string &id) const;
    const SpecificationPoint &require(const std::string &id) const;

private:
    DoFCatalog catalog_;
    std::vector<std::vector<SpecificationPoint>> by_level_;
};

/// Weighted Manhattan distance between same-level points.
int distance(const PointCatalog &catalog, const MetricConfig &metric,
             const SpecificationPoint &a, const SpecificationPoint &b);

struct EmitOptions {
    std::string scenario;       // eu facts come from this scenario
    bool freeze_eu = true;      // emit eu facts (no run-time scenario switching)
    bool freeze_thresholds = true;
    std::map<int, std::vector<std::string>> restrict_to;  // level -> point ids (empty: all)
};

/// Ground static facts for the protocol description: dof coordinates,
/// pairwise distances, properties flags, and (when frozen) eu values and
/// thresholds.
std::vector<cplus::schema::LawTemplate> emit_facts(const PointCatalog &catalog,
                                                   const MetricConfig &metric,
                                                   const UtilityTable &utilities,
                                                   const PropertiesTable &properties,
                                                   const EmitOptions &opt);

}  // namespace rsp

#endif
