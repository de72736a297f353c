#include "rsp/config_io.hpp"

#include <fstream>

#include <json.hpp>

namespace rsp {

using nlohmann::json;

namespace {

json read_json(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error &e) {
        throw ConfigError(path + ": " + e.what());
    }
    return j;
}

int to_level(const std::string &key) {
    try {
        return std::stoi(key);
    } catch (...) {
        throw ConfigError("expected a protocol level, got '" + key + "'");
    }
}

}  // namespace

ProtocolConfig load_config(const std::string &path) {
    json j = read_json(path);
    ProtocolConfig cfg = ProtocolConfig::defaults();

    if (j.contains("agents")) {
        const json &a = j["agents"];
        if (a.contains("chair"))
            cfg.chair = a["chair"].get<std::string>();
        if (a.contains("fcs"))
            cfg.fcs = a["fcs"].get<std::string>();
        if (a.contains("subjects"))
            cfg.subjects = a["subjects"].get<std::vector<std::string>>();
    }
    if (j.contains("manipulation_types"))
        cfg.manipulation_types = j["manipulation_types"].get<std::vector<std::string>>();
    if (j.contains("levels"))
        cfg.levels = j["levels"].get<int>();

    if (j.contains("dof")) {
        cfg.dof_catalog.levels.assign(cfg.levels, {});
        cfg.metric.weights.clear();
        for (auto &[key, list] : j["dof"].items()) {
            int level = to_level(key);
            if (level < 0 || level >= cfg.levels)
                throw ConfigError("dof: level out of range: " + key);
            for (const json &d : list) {
                DoF dof;
                dof.name = d.at("name").get<std::string>();
                dof.values = d.at("values").get<std::vector<std::string>>();
                cfg.dof_catalog.levels[level].push_back(dof);
                cfg.metric.weights[level].push_back(d.value("weight", 1));
            }
        }
        cfg.pinned_points.clear();
        cfg.utilities.eu.clear();
        cfg.initial_points.clear();
    } else if (j.contains("levels")) {
        cfg.dof_catalog.levels.resize(cfg.levels);
    }
    if (j.contains("pinned_points")) {
        cfg.pinned_points.clear();
        for (auto &[id, spec] : j["pinned_points"].items())
            cfg.pinned_points[id] = {spec.at("level").get<int>(),
                                     spec.at("values").get<std::vector<std::string>>()};
    }
    if (j.contains("restrict_points")) {
        cfg.restrict_points.clear();
        for (auto &[key, ids] : j["restrict_points"].items())
            cfg.restrict_points[to_level(key)] = ids.get<std::vector<std::string>>();
    }

    PointCatalog catalog(cfg.dof_catalog, cfg.pinned_points);
    if (j.contains("utilities")) {
        const json &u = j["utilities"];
        if (u.contains("scenarios")) {
            cfg.utilities.eu.clear();
            cfg.utilities.scenario_order.clear();
            for (auto &[scn, levels] : u["scenarios"].items()) {
                cfg.utilities.scenario_order.push_back(scn);
                for (auto &[key, entries] : levels.items()) {
                    int level = to_level(key);
                    int fallback = entries.value("*", 5);
                    for (const SpecificationPoint &p : catalog.points(level))
                        cfg.utilities.eu[scn][level][p.id] =
                            entries.contains(p.id) ? entries[p.id].get<int>() : fallback;
                }
            }
            if (u.contains("scenario_order"))
                cfg.utilities.scenario_order =
                    u["scenario_order"].get<std::vector<std::string>>();
        }
        if (u.contains("threshold_d")) {
            cfg.utilities.threshold_d.clear();
            for (auto &[key, v] : u["threshold_d"].items())
                cfg.utilities.threshold_d[to_level(key)] = v.get<int>();
        }
        if (u.contains("threshold_eu")) {
            cfg.utilities.threshold_eu.clear();
            for (auto &[key, v] : u["threshold_eu"].items())
                cfg.utilities.threshold_eu[to_level(key)] = v.get<int>();
        }
    }
    if (j.contains("properties")) {
        // per-point overrides on top of the computed default table
        PropertiesTable table;
        for (auto &[key, entries] : j["properties"].items()) {
            int level = to_level(key);
            for (auto &[id, flag] : entries.items())
                table.value[level][id] = flag.get<bool>();
        }
        cfg.properties_override = table;
    }
    if (j.contains("initial_points")) {
        cfg.initial_points.clear();
        for (auto &[key, id] : j["initial_points"].items())
            cfg.initial_points[to_level(key)] = id.get<std::string>();
    }
    if (j.contains("top_standing_rule"))
        cfg.top_standing_rule = j["top_standing_rule"].get<std::string>();
    if (j.contains("rmt_designated_type"))
        cfg.rmt_designated_type = j["rmt_designated_type"].get<std::string>();
    if (j.contains("domains")) {
        cfg.c_alloc_max = j["domains"].value("c_alloc_max", cfg.c_alloc_max);
        cfg.queue_max = j["domains"].value("queue_max", cfg.queue_max);
    }
    if (j.contains("sanctions")) {
        std::string mode = j["sanctions"].value("mode", "permanent");
        if (mode == "permanent") {
            cfg.sanctions.mode = SanctionConfig::Mode::Permanent;
        } else if (mode == "decay") {
            cfg.sanctions.mode = SanctionConfig::Mode::Decay;
            cfg.sanctions.decay_steps = j["sanctions"].value("decay_steps", 3);
        } else {
            throw ConfigError("sanctions.mode must be 'permanent' or 'decay'");
        }
    }
    if (j.contains("governance"))
        cfg.governance = j["governance"].get<bool>();
    if (j.contains("run_constraint_check"))
        cfg.run_constraint_check = j["run_constraint_check"].get<bool>();
    if (j.contains("budget"))
        cfg.budget = j["budget"].get<uint64_t>();
    return cfg;
}

std::vector<cplus::engine::NarrativeStep> load_narrative(const std::string &path,
                                                         const cplus::Signature &sig) {
    json j = read_json(path);
    if (!j.is_array())
        throw ConfigError(path + ": a narrative is an array of steps");
    std::vector<cplus::engine::NarrativeStep> steps;
    long last_time = -1;
    for (const json &step : j) {
        cplus::engine::NarrativeStep s;
        s.time = step.at("time").get<long>();
        if (s.time < 0 || s.time < last_time)
            throw ConfigError("narrative times must be non-negative and non-decreasing");
        last_time = s.time;
        for (const json &ev : step.at("events")) {
            std::string name = ev.at("action").get<std::string>();
            std::vector<std::string> args;
            if (ev.contains("args"))
                args = ev["args"].get<std::vector<std::string>>();
            auto id = sig.find(cplus::render_constant(name, args));
            if (!id)
                throw ConfigError("narrative names an unknown action: " +
                                  cplus::render_constant(name, args));
            s.events.push_back(*id);
        }
        validate_step_events(sig, s.events);
        steps.push_back(std::move(s));
    }
    return steps;
}

std::vector<PropertySpec> load_properties(const std::string &path) {
    json j = read_json(path);
    if (!j.is_array())
        throw ConfigError(path + ": a property file is an array of properties");
    std::vector<PropertySpec> out;
    for (const json &p : j) {
        PropertySpec spec;
        spec.name = p.at("name").get<std::string>();
        std::string type = p.value("type", "state");
        if (type == "transition")
            spec.transition = true;
        else if (type != "state")
            throw ConfigError("property " + spec.name + ": type must be state or transition");
        if (p.contains("vars"))
            for (auto &[v, sort] : p["vars"].items())
                spec.vars[v] = sort.get<std::string>();
        if (spec.transition) {
            spec.pre = p.value("pre", "true");
            spec.label = p.at("label").get<std::string>();
            spec.post = p.at("post").get<std::string>();
        } else {
            spec.given = p.value("given", "true");
            spec.expect = p.at("expect").get<std::string>();
        }
        out.push_back(std::move(spec));
    }
    return out;
}

}  // namespace rsp
