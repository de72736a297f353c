#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cplus/text_format.hpp"
#include "rsp/checks.hpp"
#include "rsp/report.hpp"

namespace {

// exit codes: 0 ok, 1 property failure, 2 replay failure, 3 parse/id error,
// 4 ambiguity, 5 budget
constexpr int kOk = 0;
constexpr int kPropertyFailure = 1;
constexpr int kReplayFailure = 2;
constexpr int kParseError = 3;
constexpr int kAmbiguity = 4;
constexpr int kBudget = 5;

struct Bundle {
    rsp::Protocol protocol;
    cplus::ActionDescription description;
};

Bundle load_bundle(const std::string &config_path) {
    rsp::ProtocolConfig cfg = rsp::load_config(config_path);
    rsp::Protocol protocol = rsp::build_description(cfg);
    cplus::ActionDescription d = cplus::schema::ground(protocol.schematic);
    return Bundle{std::move(protocol), std::move(d)};
}

int cmd_replay(const std::string &config_path, const std::string &narrative_path,
               const std::string &policy, uint64_t seed, const std::string &trace,
               bool json_mode) {
    Bundle b = load_bundle(config_path);
    auto narrative = rsp::load_narrative(narrative_path, b.description.signature());
    cplus::State s0 = rsp::initial_state(b.description, b.protocol);

    cplus::engine::ReplayOptions opt;
    opt.node_budget = b.protocol.config.budget;
    if (policy == "fail")
        opt.policy = cplus::engine::AmbiguityPolicy::Fail;
    else if (policy == "first")
        opt.policy = cplus::engine::AmbiguityPolicy::FirstCanonical;
    else if (policy == "random")
        opt.policy = cplus::engine::AmbiguityPolicy::SeededRandom;
    else
        throw rsp::ConfigError("unknown ambiguity policy " + policy);
    opt.seed = seed;

    auto result = cplus::engine::replay(b.description, s0, narrative, opt);

    std::vector<std::string> trace_families;
    if (!trace.empty()) {
        size_t pos = 0;
        while (pos != std::string::npos) {
            size_t comma = trace.find(',', pos);
            trace_families.push_back(trace.substr(pos, comma - pos));
            pos = comma == std::string::npos ? comma : comma + 1;
        }
    }
    rsp::RunReport report =
        rsp::build_run_report(b.description, narrative, result, trace_families);
    std::cout << (json_mode ? rsp::render_json(report) : rsp::render_text(report)) << "\n";
    if (!report.ok)
        return report.ambiguous ? kAmbiguity : kReplayFailure;
    return kOk;
}

int cmd_check(const std::string &config_path, const std::string &properties_path, int workers,
              bool json_mode) {
    Bundle b = load_bundle(config_path);
    auto specs = rsp::load_properties(properties_path);
    cplus::engine::EngineOptions opt;
    opt.budget = b.protocol.config.budget;

    bool all_hold = true;
    nlohmann::json out = nlohmann::json::array();
    for (const rsp::PropertySpec &spec : specs) {
        rsp::PropertyOutcome o = rsp::run_property(b.description, b.protocol, spec, opt, workers);
        all_hold = all_hold && o.holds;
        if (json_mode) {
            nlohmann::json jo;
            jo["name"] = o.name;
            jo["verdict"] = o.holds ? "holds" : "fails";
            jo["bindings"] = o.bindings;
            jo["nodes"] = o.nodes;
            jo["interpretations_scanned"] = o.scanned;
            jo["counterexamples"] = o.counterexamples;
            jo["counterexamples_truncated"] = o.truncated;
            out.push_back(std::move(jo));
        } else {
            std::cout << (o.holds ? "holds " : "FAILS ") << o.name << "  (bindings=" << o.bindings
                      << ", nodes=" << o.nodes << ", scanned=" << o.scanned << ")\n";
            for (const std::string &c : o.counterexamples)
                std::cout << "    counterexample: " << c << "\n";
            if (o.truncated)
                std::cout << "    (more counterexamples suppressed)\n";
        }
    }
    if (json_mode)
        std::cout << out.dump(2) << "\n";
    return all_hold ? kOk : kPropertyFailure;
}

int cmd_points(const std::string &config_path, int level, bool json_mode) {
    Bundle b = load_bundle(config_path);
    const auto &catalog = b.protocol.catalog;
    const std::string &scn = b.protocol.config.utilities.scenario_order.front();
    std::vector<int> levels;
    if (level >= 0) {
        levels.push_back(level);
    } else {
        for (int l = 0; l < catalog.dofs().level_count(); ++l)
            if (!catalog.dofs().levels[l].empty())
                levels.push_back(l);
    }
    nlohmann::json out = nlohmann::json::array();
    for (int l : levels) {
        auto active = b.protocol.active_points(l);
        for (const rsp::SpecificationPoint &p : catalog.points(l)) {
            bool is_active = std::find(active.begin(), active.end(), p.id) != active.end();
            int eu = b.protocol.config.utilities.eu_of(scn, l, p.id);
            bool props = b.protocol.properties.at(l, p.id);
            if (json_mode) {
                out.push_back({{"id", p.id},
                               {"level", l},
                               {"values", p.values},
                               {"eu", eu},
                               {"properties", props},
                               {"active", is_active}});
            } else {
                std::string tuple = "(";
                for (size_t i = 0; i < p.values.size(); ++i)
                    tuple += (i ? ", " : "") + p.values[i];
                tuple += ")";
                std::cout << p.id << "\tlevel " << l << "\t" << tuple << "\teu=" << eu
                          << "\tproperties=" << (props ? "true" : "false")
                          << (is_active ? "" : "\t[inactive]") << "\n";
            }
        }
    }
    if (json_mode)
        std::cout << out.dump(2) << "\n";
    return kOk;
}

int cmd_distance(const std::string &config_path, const std::string &a, const std::string &b_id) {
    Bundle b = load_bundle(config_path);
    const auto &pa = b.protocol.catalog.require(a);
    const auto &pb = b.protocol.catalog.require(b_id);
    std::cout << rsp::distance(b.protocol.catalog, b.protocol.config.metric, pa, pb) << "\n";
    return kOk;
}

int cmd_dump(const std::string &config_path, const std::string &out_path) {
    Bundle b = load_bundle(config_path);
    std::string text = cplus::text::print_description(b.description);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out)
            throw rsp::ConfigError("cannot write " + out_path);
        out << text;
    }
    return kOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{
        "dynspec: a desk-scale engine for definite action descriptions with a bundled\n"
        "dynamic resource-sharing protocol (floor control + run-time rule change)"};
    app.require_subcommand(1);

    std::string config_path, narrative_path, properties_path, out_path;
    std::string policy = "fail", trace;
    std::string point_a, point_b;
    uint64_t seed = 0;
    int level = -1, workers = 1;
    bool json_mode = false;

    auto *replay = app.add_subcommand("replay", "replay a narrative of timed event batches");
    replay->add_option("config", config_path)->required();
    replay->add_option("narrative", narrative_path)->required();
    replay->add_option("--policy", policy, "nondeterminism resolution: fail|first|random");
    replay->add_option("--seed", seed, "seed for --policy random");
    replay->add_flag_callback("--json", [&] { json_mode = true; });
    replay->add_option("--trace-fluents", trace, "comma-separated fluent families to report");

    auto *check = app.add_subcommand("check", "verify universal properties by state-space search");
    check->add_option("config", config_path)->required();
    check->add_option("properties", properties_path)->required();
    check->add_option("--workers", workers, "parallel binding checks (output is unchanged)");
    check->add_flag_callback("--json", [&] { json_mode = true; });

    auto *points = app.add_subcommand("points", "list the specification points");
    points->add_option("config", config_path)->required();
    points->add_option("--level", level);
    points->add_flag_callback("--json", [&] { json_mode = true; });

    auto *dist = app.add_subcommand("distance", "metric distance between two points");
    dist->add_option("config", config_path)->required();
    dist->add_option("a", point_a)->required();
    dist->add_option("b", point_b)->required();

    auto *dump = app.add_subcommand("dump-description", "print the ground action description");
    dump->add_option("config", config_path)->required();
    dump->add_option("-o,--output", out_path);

    CLI11_PARSE(app, argc, argv);

    try {
        if (replay->parsed())
            return cmd_replay(config_path, narrative_path, policy, seed, trace, json_mode);
        if (check->parsed())
            return cmd_check(config_path, properties_path, workers, json_mode);
        if (points->parsed())
            return cmd_points(config_path, level, json_mode);
        if (dist->parsed())
            return cmd_distance(config_path, point_a, point_b);
        if (dump->parsed())
            return cmd_dump(config_path, out_path);
    } catch (const cplus::search::BudgetError &e) {
        std::cerr << "budget refusal: " << e.what() << "\n";
        return kBudget;
    } catch (const cplus::text::ParseError &e) {
        std::cerr << "parse error (line " << e.line << "): " << e.what() << "\n";
        return kParseError;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParseError;
    }
    return kOk;
}
