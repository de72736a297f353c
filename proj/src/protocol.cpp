#include "rsp/protocol.hpp"

#include <algorithm>
#include <set>

namespace rsp {

using cplus::Atom;
using cplus::ConstantId;
using cplus::ConstantKind;
using cplus::FormulaArena;
using cplus::Signature;
using cplus::State;
using namespace cplus::schema;

namespace {

Term sym(const std::string &s) {
    return Term::sym(s);
}

bool tally_carried(const std::string &rule, int votes_for, int votes_against) {
    if (votes_for < 1)
        return false;
    if (rule == "simple")
        return votes_for > votes_against;
    if (rule == "two_thirds")
        return votes_for >= 2 * votes_against;
    if (rule == "three_quarters")
        return votes_for >= 3 * votes_against;
    throw ConfigError("unknown standing rule " + rule);
}

const std::vector<std::string> kStandingRules = {"simple", "two_thirds", "three_quarters"};

struct Builder {
    const ProtocolConfig &cfg;
    PointCatalog catalog;
    PropertiesTable properties;
    SchematicDescription sd;

    int top_level;
    std::vector<int> point_levels;  // levels that carry specification points
    std::vector<int> vote_levels;   // levels running a voting procedure
    std::map<int, std::vector<const SpecificationPoint *>> active;
    std::map<int, int> dist_max;
    std::map<int, int> thr_d_max;
    int eu_max = 0;
    int votes_max = 0;
    bool frozen_tables;  // thresholds and eu are facts unless governance is on

    explicit Builder(const ProtocolConfig &c)
        : cfg(c), catalog(c.dof_catalog, c.pinned_points), frozen_tables(!c.governance) {}

    // -- small formula helpers ------------------------------------------------

    static SFormulaPtr A(const std::string &family, std::vector<Term> args,
                         const std::string &value = "t") {
        return f_atom(ConstantRef{family, std::move(args)}, sym(value));
    }
    static SFormulaPtr AV(const std::string &family, std::vector<Term> args, Term value) {
        return f_atom(ConstantRef{family, std::move(args)}, std::move(value));
    }
    static SFormulaPtr NA(const std::string &family, std::vector<Term> args) {
        return f_not(A(family, std::move(args)));
    }
    SFormulaPtr pending(const std::string &s) const {
        return f_not(A("requested", {sym(s)}, "null"));
    }
    SFormulaPtr pos_before(const std::string &a, const std::string &b) const {
        return f_cmp(ConstantRef{"req_pos", {sym(a)}}, CmpOp::Lt, ConstantRef{"req_pos", {sym(b)}});
    }

    void law_caused(SFormulaPtr head, SFormulaPtr cond) {
        LawTemplate t;
        t.form = LawForm::CausedIf;
        t.head = std::move(head);
        t.condition = std::move(cond);
        sd.add_law(std::move(t));
    }
    void law_caused_after(SFormulaPtr head, SFormulaPtr cond, SFormulaPtr pre) {
        LawTemplate t;
        t.form = LawForm::CausedIfAfter;
        t.head = std::move(head);
        t.condition = std::move(cond);
        t.precondition = std::move(pre);
        sd.add_law(std::move(t));
    }
    void law_causes(SFormulaPtr action, SFormulaPtr head, SFormulaPtr cond,
                    std::vector<Guard> guards = {}) {
        LawTemplate t;
        t.form = LawForm::Causes;
        t.action = std::move(action);
        t.head = std::move(head);
        t.precondition = std::move(cond);
        t.guards = std::move(guards);
        sd.add_law(std::move(t));
    }
    void law_default(SFormulaPtr head) {
        LawTemplate t;
        t.form = LawForm::Default;
        t.head = std::move(head);
        sd.add_law(std::move(t));
    }
    void law_iff(SFormulaPtr head, SFormulaPtr cond) {
        LawTemplate t;
        t.form = LawForm::Iff;
        t.head = std::move(head);
        t.condition = std::move(cond);
        sd.add_law(std::move(t));
    }
    void fact(const std::string &family, std::vector<Term> args, const std::string &value) {
        law_caused(A(family, std::move(args), value), f_true());
    }
    void inertia(const std::string &family, std::vector<std::string> args,
                 const std::vector<std::string> &domain) {
        std::vector<Term> terms;
        for (const std::string &a : args)
            terms.push_back(sym(a));
        for (const std::string &u : domain) {
            SFormulaPtr at = A(family, terms, u);
            law_caused_after(at, at, at);
        }
    }

    // -- validation -----------------------------------------------------------

    void validate() {
        if (cfg.subjects.size() < 2)
            throw ConfigError("at least 2 subjects are required");
        std::set<std::string> names(cfg.subjects.begin(), cfg.subjects.end());
        names.insert(cfg.chair);
        names.insert(cfg.fcs);
        if (names.size() != cfg.subjects.size() + 2)
            throw ConfigError("agent names must be distinct (one chair, one fcs, n subjects)");
        if (cfg.manipulation_types.empty())
            throw ConfigError("at least one manipulation type is required");
        if (cfg.levels < 1)
            throw ConfigError("at least one protocol level is required");

        top_level = cfg.levels - 1;
        if (cfg.levels == 1)
            point_levels = {0};
        else
            for (int l = 0; l <= cfg.levels - 2; ++l)
                point_levels.push_back(l);
        for (int l = 1; l <= top_level; ++l)
            vote_levels.push_back(l);

        if (catalog.dofs().level_count() < static_cast<int>(point_levels.size()))
            throw ConfigError("DoF catalog is missing point-carrying levels");
        for (int l : point_levels)
            if (catalog.dofs().at(l).empty())
                throw ConfigError("level " + std::to_string(l) + " carries points but has no DoF");
        for (int l : vote_levels) {
            if (l == top_level)
                continue;
            if (catalog.dofs().at(l).size() != 1)
                throw ConfigError("voting level " + std::to_string(l) +
                                  " must have exactly one DoF (its standing rules)");
            for (const std::string &v : catalog.dofs().at(l)[0].values)
                if (std::find(kStandingRules.begin(), kStandingRules.end(), v) ==
                    kStandingRules.end())
                    throw ConfigError("unknown standing rule value " + v);
        }
        if (std::find(kStandingRules.begin(), kStandingRules.end(), cfg.top_standing_rule) ==
            kStandingRules.end())
            throw ConfigError("unknown top-level standing rule " + cfg.top_standing_rule);

        cfg.metric.validate(catalog.dofs());

        for (int l : point_levels) {
            auto r = cfg.restrict_points.find(l);
            for (const SpecificationPoint &p : catalog.points(l)) {
                if (r != cfg.restrict_points.end() &&
                    std::find(r->second.begin(), r->second.end(), p.id) == r->second.end())
                    continue;
                active[l].push_back(&p);
            }
            if (r != cfg.restrict_points.end())
                for (const std::string &id : r->second)
                    if (catalog.require(id).level != l)
                        throw ConfigError("restricted point " + id + " is not a level-" +
                                          std::to_string(l) + " point");
            if (active[l].size() < 2)
                throw ConfigError("level " + std::to_string(l) +
                                  " needs at least 2 active specification points");
        }

        // tables must be total over the enumerated points
        for (const std::string &scn : cfg.utilities.scenario_order)
            for (int l : point_levels)
                for (const SpecificationPoint &p : catalog.points(l))
                    eu_max = std::max(eu_max, cfg.utilities.eu_of(scn, l, p.id));
        if (cfg.utilities.scenario_order.empty())
            throw ConfigError("at least one utility scenario is required");
        for (int l : point_levels) {
            eu_max = std::max(eu_max, cfg.utilities.threshold_eu.at(l));
            int dm = 0;
            for (const SpecificationPoint *a : active[l])
                for (const SpecificationPoint *b : active[l])
                    dm = std::max(dm, distance(catalog, cfg.metric, *a, *b));
            dist_max[l] = std::max(dm, 1);
            thr_d_max[l] = std::max(dist_max[l], cfg.utilities.threshold_d.at(l));
        }
        eu_max = std::max(eu_max, 1);
        votes_max = static_cast<int>(cfg.subjects.size());
        if (cfg.c_alloc_max < 1 || cfg.queue_max < 1)
            throw ConfigError("c_alloc and queue domains need a positive maximum");

        for (int l : point_levels) {
            auto it = cfg.initial_points.find(l);
            if (it == cfg.initial_points.end())
                throw ConfigError("no initial point configured for level " + std::to_string(l));
            const SpecificationPoint &p = catalog.require(it->second);
            if (p.level != l)
                throw ConfigError("initial point " + it->second + " is not a level-" +
                                  std::to_string(l) + " point");
            bool found = false;
            for (const SpecificationPoint *q : active[l])
                found = found || q->id == p.id;
            if (!found)
                throw ConfigError("initial point " + it->second + " is not in the active set");
            if (!properties.at(l, p.id))
                throw ConfigError("initial point " + it->second +
                                  " fails the design-time properties");
        }
        if (!cfg.rmt_designated_type.empty() &&
            std::find(cfg.manipulation_types.begin(), cfg.manipulation_types.end(),
                      cfg.rmt_designated_type) == cfg.manipulation_types.end())
            throw ConfigError("rmt designated type is not a declared manipulation type");

        if (cfg.run_constraint_check)
            check_run_constraints();
    }

    /// The bundled-run consistency conditions on the default tables: the
    /// level-1 simple-majority proposal must be permitted, and the sp3
    /// proposal must pass the distance gate yet fail both utility gates.
    void check_run_constraints() {
        const std::string &scn = cfg.utilities.scenario_order.front();
        auto fail = [](const std::string &m) {
            throw ConfigError("run constraint check failed: " + m);
        };
        if (cfg.levels >= 3 && catalog.find("sp26")) {
            const auto &sp26 = catalog.require("sp26");
            const auto &init1 = catalog.require(cfg.initial_points.at(1));
            if (distance(catalog, cfg.metric, sp26, init1) > cfg.utilities.threshold_d.at(1))
                fail("the level-1 motion is out of distance range");
            if (cfg.utilities.eu_of(scn, 1, "sp26") < cfg.utilities.threshold_eu.at(1))
                fail("the level-1 motion fails the utility threshold");
        }
        if (catalog.find("sp3")) {
            const auto &sp3 = catalog.require("sp3");
            const auto &init0 = catalog.require(cfg.initial_points.at(0));
            if (distance(catalog, cfg.metric, sp3, init0) > cfg.utilities.threshold_d.at(0))
                fail("the level-0 motion must pass the distance gate");
            int eu3 = cfg.utilities.eu_of(scn, 0, "sp3");
            if (eu3 >= cfg.utilities.threshold_eu.at(0))
                fail("the level-0 motion must fail the utility threshold");
            if (eu3 >= cfg.utilities.eu_of(scn, 0, init0.id))
                fail("the level-0 motion must not improve on the actual point");
        }
    }

    // -- signature ------------------------------------------------------------

    static std::vector<std::string> int_domain(int lo, int hi) {
        std::vector<std::string> out;
        for (int v = lo; v <= hi; ++v)
            out.push_back(std::to_string(v));
        return out;
    }

    void declare_constants() {
        sd.add_sort("Subject", cfg.subjects);
        sd.add_sort("Chair", {cfg.chair});
        sd.add_sort("Fcs", {cfg.fcs});
        std::vector<std::string> agents{cfg.chair, cfg.fcs};
        agents.insert(agents.end(), cfg.subjects.begin(), cfg.subjects.end());
        sd.add_sort("Agent", agents);
        sd.add_sort("Mpt", cfg.manipulation_types);
        // point sorts are for queries and property files; laws bake points in
        for (int l : point_levels) {
            std::vector<std::string> ids;
            for (const SpecificationPoint *p : active[l])
                ids.push_back(p->id);
            sd.add_sort("Point" + std::to_string(l), ids);
        }
        sd.declare_var("S", "Subject");
        sd.declare_var("S2", "Subject");
        sd.declare_var("C", "Chair");
        sd.declare_var("F", "Fcs");
        sd.declare_var("M", "Mpt");

        std::vector<std::string> role0 = {"subject", "chair", "fcs"};
        std::vector<std::string> roleMeta = {"none", "voter", "chair"};
        for (const std::string &a : agents) {
            sd.add_ground_constant("role_of", {a, "0"}, ConstantKind::SimpleFluent, role0);
            for (int vl : vote_levels)
                sd.add_ground_constant("role_of", {a, std::to_string(vl)},
                                       ConstantKind::StaticallyDeterminedFluent, roleMeta);
        }

        sd.add_schema("holder", {"Subject"}, ConstantKind::SimpleFluent, cplus::boolean_domain());
        if (cfg.sanctions.mode == SanctionConfig::Mode::Permanent) {
            sd.add_schema("sanctioned", {"Agent"}, ConstantKind::SimpleFluent,
                          cplus::boolean_domain());
        } else {
            sd.add_schema("sanctioned", {"Agent"}, ConstantKind::StaticallyDeterminedFluent,
                          cplus::boolean_domain());
            sd.add_schema("sanction_timer", {"Agent"}, ConstantKind::SimpleFluent,
                          int_domain(0, cfg.sanctions.decay_steps));
        }
        std::vector<std::string> requested_dom = cfg.manipulation_types;
        requested_dom.push_back("null");
        sd.add_schema("requested", {"Subject"}, ConstantKind::SimpleFluent, requested_dom);
        sd.add_schema("req_pos", {"Subject"}, ConstantKind::SimpleFluent,
                      int_domain(0, cfg.queue_max));
        sd.add_ground_constant("next_pos", {}, ConstantKind::SimpleFluent,
                               int_domain(1, cfg.queue_max));
        sd.add_schema("c_alloc", {"Subject"}, ConstantKind::SimpleFluent,
                      int_domain(0, cfg.c_alloc_max));

        std::vector<std::string> bc_dom = cfg.subjects;
        bc_dom.push_back("none");
        sd.add_ground_constant("best_candidate", {}, ConstantKind::StaticallyDeterminedFluent,
                               bc_dom);

        for (int l : point_levels) {
            std::string pl = std::to_string(l);
            const auto &dofs = catalog.dofs().at(l);
            std::vector<std::string> ids;
            for (const SpecificationPoint *p : active[l])
                ids.push_back(p->id);
            sd.add_ground_constant("actual_sp", {pl}, ConstantKind::SimpleFluent, ids);
            for (const SpecificationPoint *p : active[l]) {
                for (size_t i = 0; i < dofs.size(); ++i)
                    sd.add_ground_constant("dof", {dofs[i].name, p->id},
                                           ConstantKind::SimpleFluent, dofs[i].values);
                sd.add_ground_constant("properties", {p->id, pl}, ConstantKind::SimpleFluent,
                                       cplus::boolean_domain());
                sd.add_ground_constant("eu", {p->id, pl}, ConstantKind::SimpleFluent,
                                       int_domain(0, eu_max));
                sd.add_ground_constant("seconded", {p->id, pl}, ConstantKind::SimpleFluent,
                                       cplus::boolean_domain());
                sd.add_ground_constant("objected", {p->id, pl}, ConstantKind::SimpleFluent,
                                       cplus::boolean_domain());
                for (const std::string &s : cfg.subjects)
                    sd.add_ground_constant("proposal", {s, p->id, pl}, ConstantKind::SimpleFluent,
                                           cplus::boolean_domain());
                for (const SpecificationPoint *q : active[l])
                    sd.add_ground_constant(
                        "distance", {p->id, q->id, pl},
                        ConstantKind::StaticallyDeterminedFluent, int_domain(0, dist_max[l]));
            }
            sd.add_ground_constant("threshold_d", {pl}, ConstantKind::SimpleFluent,
                                   int_domain(0, thr_d_max[l]));
            sd.add_ground_constant("threshold_eu", {pl}, ConstantKind::SimpleFluent,
                                   int_domain(0, eu_max));
        }

        for (int vl : vote_levels) {
            std::string pl = std::to_string(vl);
            sd.add_ground_constant("protocol", {pl}, ConstantKind::SimpleFluent,
                                   {"idle", "executing"});
            sd.add_ground_constant("votes_for", {pl}, ConstantKind::StaticallyDeterminedFluent,
                                   int_domain(0, votes_max));
            sd.add_ground_constant("votes_against", {pl}, ConstantKind::StaticallyDeterminedFluent,
                                   int_domain(0, votes_max));
            for (const std::string &s : cfg.subjects) {
                sd.add_ground_constant("vote_of", {s, pl}, ConstantKind::SimpleFluent,
                                       {"none", "for", "against"});
                sd.add_ground_constant("voted", {s, pl},
                                       ConstantKind::StaticallyDeterminedFluent,
                                       cplus::boolean_domain());
                sd.add_ground_constant("powVote", {s, pl},
                                       ConstantKind::StaticallyDeterminedFluent,
                                       cplus::boolean_domain());
            }
            sd.add_ground_constant("powEndArg", {cfg.chair, pl},
                                   ConstantKind::StaticallyDeterminedFluent,
                                   cplus::boolean_domain());
        }

        sd.add_schema("powRequest", {"Subject", "Chair"},
                      ConstantKind::StaticallyDeterminedFluent, cplus::boolean_domain());
        sd.add_schema("powAssign", {"Chair", "Subject"}, ConstantKind::StaticallyDeterminedFluent,
                      cplus::boolean_domain());
        sd.add_schema("perAssign", {"Chair", "Subject"}, ConstantKind::StaticallyDeterminedFluent,
                      cplus::boolean_domain());
        sd.add_schema("oblAssign", {"Chair", "Subject"}, ConstantKind::StaticallyDeterminedFluent,
                      cplus::boolean_domain());
        sd.add_schema("powRequestMpt", {"Subject", "Fcs", "Mpt"},
                      ConstantKind::StaticallyDeterminedFluent, cplus::boolean_domain());
        sd.add_schema("perRequestMpt", {"Subject", "Fcs", "Mpt"},
                      ConstantKind::StaticallyDeterminedFluent, cplus::boolean_domain());

        if (cfg.levels >= 2) {
            for (int l : point_levels) {
                std::string pl = std::to_string(l);
                for (const SpecificationPoint *p : active[l]) {
                    for (const std::string &s : cfg.subjects)
                        for (const char *fam :
                             {"powPropose", "perPropose", "oblPropose", "powSecond", "powObject"})
                            sd.add_ground_constant(fam, {s, p->id, pl},
                                                   ConstantKind::StaticallyDeterminedFluent,
                                                   cplus::boolean_domain());
                    sd.add_ground_constant("powEnactDirect", {cfg.chair, p->id, pl},
                                           ConstantKind::StaticallyDeterminedFluent,
                                           cplus::boolean_domain());
                    for (const char *o : {"carried", "not_carried"})
                        sd.add_ground_constant("powDeclare",
                                               {cfg.chair, p->id, o, std::to_string(l + 1)},
                                               ConstantKind::StaticallyDeterminedFluent,
                                               cplus::boolean_domain());
                }
            }
        }

        // actions
        sd.add_schema("request_floor", {"Subject", "Chair", "Mpt"}, ConstantKind::Action,
                      cplus::boolean_domain());
        sd.add_schema("assign_floor", {"Chair", "Subject"}, ConstantKind::Action,
                      cplus::boolean_domain());
        sd.add_schema("request_manipulate", {"Subject", "Fcs", "Mpt"}, ConstantKind::Action,
                      cplus::boolean_domain());
        if (cfg.levels >= 2) {
            for (int l : point_levels) {
                std::string pl = std::to_string(l);
                for (const SpecificationPoint *p : active[l]) {
                    for (const std::string &s : cfg.subjects)
                        for (const char *fam : {"propose", "second", "object"})
                            sd.add_ground_constant(fam, {s, p->id, pl}, ConstantKind::Action,
                                                   cplus::boolean_domain());
                    sd.add_ground_constant("enact_direct", {cfg.chair, p->id, pl},
                                           ConstantKind::Action, cplus::boolean_domain());
                    for (const char *o : {"carried", "not_carried"})
                        sd.add_ground_constant("declare",
                                               {cfg.chair, p->id, o, std::to_string(l + 1)},
                                               ConstantKind::Action, cplus::boolean_domain());
                }
            }
            for (int vl : vote_levels) {
                std::string pl = std::to_string(vl);
                for (const std::string &s : cfg.subjects)
                    for (const char *v : {"for", "against"})
                        sd.add_ground_constant("vote", {s, v, pl}, ConstantKind::Action,
                                               cplus::boolean_domain());
                sd.add_ground_constant("end_argumentation", {cfg.chair, pl}, ConstantKind::Action,
                                       cplus::boolean_domain());
            }
        }
        if (cfg.governance) {
            for (int l : point_levels) {
                std::string pl = std::to_string(l);
                for (int v = 0; v <= thr_d_max[l]; ++v)
                    sd.add_ground_constant("set_threshold", {pl, "d", std::to_string(v)},
                                           ConstantKind::Action, cplus::boolean_domain());
                for (int v = 0; v <= eu_max; ++v)
                    sd.add_ground_constant("set_threshold", {pl, "eu", std::to_string(v)},
                                           ConstantKind::Action, cplus::boolean_domain());
            }
            for (const std::string &scn : cfg.utilities.scenario_order)
                sd.add_ground_constant("set_environment", {scn}, ConstantKind::Action,
                                       cplus::boolean_domain());
        }
    }

    // -- laws -----------------------------------------------------------------

    void emit_inertia() {
        std::vector<std::string> agents{cfg.chair, cfg.fcs};
        agents.insert(agents.end(), cfg.subjects.begin(), cfg.subjects.end());
        std::vector<std::string> role0 = {"subject", "chair", "fcs"};
        for (const std::string &a : agents) {
            inertia("role_of", {a, "0"}, role0);
            if (cfg.sanctions.mode == SanctionConfig::Mode::Permanent)
                inertia("sanctioned", {a}, cplus::boolean_domain());
        }
        std::vector<std::string> requested_dom = cfg.manipulation_types;
        requested_dom.push_back("null");
        for (const std::string &s : cfg.subjects) {
            inertia("holder", {s}, cplus::boolean_domain());
            inertia("requested", {s}, requested_dom);
            inertia("req_pos", {s}, int_domain(0, cfg.queue_max));
            inertia("c_alloc", {s}, int_domain(0, cfg.c_alloc_max));
        }
        inertia("next_pos", {}, int_domain(1, cfg.queue_max));
        for (int l : point_levels) {
            std::string pl = std::to_string(l);
            const auto &dofs = catalog.dofs().at(l);
            std::vector<std::string> ids;
            for (const SpecificationPoint *p : active[l])
                ids.push_back(p->id);
            inertia("actual_sp", {pl}, ids);
            inertia("threshold_d", {pl}, int_domain(0, thr_d_max[l]));
            inertia("threshold_eu", {pl}, int_domain(0, eu_max));
            for (const SpecificationPoint *p : active[l]) {
                for (size_t i = 0; i < dofs.size(); ++i)
                    inertia("dof", {dofs[i].name, p->id}, dofs[i].values);
                inertia("properties", {p->id, pl}, cplus::boolean_domain());
                inertia("eu", {p->id, pl}, int_domain(0, eu_max));
                inertia("seconded", {p->id, pl}, cplus::boolean_domain());
                inertia("objected", {p->id, pl}, cplus::boolean_domain());
                for (const std::string &s : cfg.subjects)
                    inertia("proposal", {s, p->id, pl}, cplus::boolean_domain());
            }
        }
        for (int vl : vote_levels) {
            std::string pl = std::to_string(vl);
            inertia("protocol", {pl}, {"idle", "executing"});
            for (const std::string &s : cfg.subjects)
                inertia("vote_of", {s, pl}, {"none", "for", "against"});
        }
    }

    void emit_role_facts() {
        fact("role_of", {sym(cfg.chair), sym("0")}, "chair");
        fact("role_of", {sym(cfg.fcs), sym("0")}, "fcs");
        for (const std::string &s : cfg.subjects)
            fact("role_of", {sym(s), sym("0")}, "subject");
    }

    SFormulaPtr sanction_head(const std::string &agent_or_var, bool is_var) {
        Term t = is_var ? Term::var(agent_or_var) : sym(agent_or_var);
        if (cfg.sanctions.mode == SanctionConfig::Mode::Permanent)
            return A("sanctioned", {t});
        return A("sanction_timer", {t}, std::to_string(cfg.sanctions.decay_steps));
    }

    void emit_sanction_model() {
        if (cfg.sanctions.mode == SanctionConfig::Mode::Permanent)
            return;
        // sanctioned holds while the timer runs; the timer counts transitions
        std::vector<std::string> agents{cfg.chair, cfg.fcs};
        agents.insert(agents.end(), cfg.subjects.begin(), cfg.subjects.end());
        for (const std::string &a : agents) {
            law_caused(A("sanctioned", {sym(a)}),
                       f_cmp(ConstantRef{"sanction_timer", {sym(a)}}, CmpOp::Ge, 1));
            law_default(NA("sanctioned", {sym(a)}));
            for (int j = 1; j <= cfg.sanctions.decay_steps; ++j) {
                SFormulaPtr lower = A("sanction_timer", {sym(a)}, std::to_string(j - 1));
                law_caused_after(lower, lower, A("sanction_timer", {sym(a)}, std::to_string(j)));
            }
            SFormulaPtr zero = A("sanction_timer", {sym(a)}, "0");
            law_caused_after(zero, zero, zero);
        }
    }

    void emit_floor_control() {
        Term S = Term::var("S"), S2 = Term::var("S2"), C = Term::var("C"), F = Term::var("F"),
             M = Term::var("M");

        // power to request the floor: no pending request
        law_iff(A("powRequest", {S, C}),
                f_and({A("role_of", {S, sym("0")}, "subject"),
                       A("role_of", {C, sym("0")}, "chair"), A("requested", {S}, "null")}));

        // an empowered request records the manipulation type and queues up
        law_causes(A("request_floor", {S, C, M}), AV("requested", {S}, Term::var("M")),
                   A("powRequest", {S, C}));
        for (int p = 1; p <= cfg.queue_max; ++p) {
            int next = std::min(p + 1, cfg.queue_max);
            law_causes(A("request_floor", {S, C, M}),
                       A("req_pos", {S}, std::to_string(p)),
                       f_and({A("powRequest", {S, C}), A("next_pos", {}, std::to_string(p))}));
            law_causes(A("request_floor", {S, C, M}), A("next_pos", {}, std::to_string(next)),
                       f_and({A("powRequest", {S, C}), A("next_pos", {}, std::to_string(p))}));
        }

        // power to assign: floor free and S is the best candidate
        law_iff(A("powAssign", {C, S}),
                f_and({A("role_of", {C, sym("0")}, "chair"),
                       f_forall("S2", "Subject", NA("holder", {S2})),
                       AV("best_candidate", {}, Term::var("S"))}));

        // permission / obligation to assign add the allocation bound of the
        // actual specification point
        const auto &dofs0 = catalog.dofs().at(0);
        size_t per_assign_ix = dofs0.size(), per_mpt_ix = dofs0.size(), bc_ix = dofs0.size();
        for (size_t i = 0; i < dofs0.size(); ++i) {
            if (dofs0[i].name == "per_assign")
                per_assign_ix = i;
            if (dofs0[i].name == "per_mpt")
                per_mpt_ix = i;
            if (dofs0[i].name == "bc")
                bc_ix = i;
        }
        if (per_assign_ix == dofs0.size() || per_mpt_ix == dofs0.size() || bc_ix == dofs0.size())
            throw ConfigError("level 0 must declare the bc, per_assign and per_mpt DoF");

        for (const SpecificationPoint *asp : active[0]) {
            int bound = std::stoi(asp->values[per_assign_ix]);
            std::vector<SFormulaPtr> alloc_ok;
            for (int k = 0; k < std::min(bound, cfg.c_alloc_max + 1); ++k)
                alloc_ok.push_back(A("c_alloc", {S}, std::to_string(k)));
            SFormulaPtr body = f_and(
                {A("role_of", {C, sym("0")}, "chair"),
                 f_forall("S2", "Subject", NA("holder", {S2})),
                 AV("best_candidate", {}, Term::var("S")), A("actual_sp", {sym("0")}, asp->id),
                 A("dof", {sym("per_assign"), sym(asp->id)}, asp->values[per_assign_ix]),
                 f_or(alloc_ok)});
            law_caused(A("perAssign", {C, S}), body);
            law_caused(A("oblAssign", {C, S}), body);
        }
        law_default(NA("perAssign", {C, S}));
        law_default(NA("oblAssign", {C, S}));

        // assignment effects
        law_causes(A("assign_floor", {C, S}), sanction_head("C", true),
                   f_and({A("role_of", {C, sym("0")}, "chair"), NA("perAssign", {C, S})}));
        law_causes(A("assign_floor", {C, S}), A("holder", {S}), A("powAssign", {C, S}));
        law_causes(A("assign_floor", {C, S}), A("requested", {S}, "null"),
                   A("powAssign", {C, S}));
        law_causes(A("assign_floor", {C, S}), A("req_pos", {S}, "0"), A("powAssign", {C, S}));
        for (int k = 0; k <= cfg.c_alloc_max; ++k) {
            int next = std::min(k + 1, cfg.c_alloc_max);
            law_causes(A("assign_floor", {C, S}), A("c_alloc", {S}, std::to_string(next)),
                       f_and({A("powAssign", {C, S}), A("c_alloc", {S}, std::to_string(k))}));
        }
        law_causes(A("assign_floor", {C, S}), A("c_alloc", {S2}, "0"), A("powAssign", {C, S}),
                   {Guard{Term::var("S"), CmpOp::Ne, Term::var("S2")}});

        // resource manipulation powers and permissions
        law_iff(A("powRequestMpt", {S, F, M}),
                f_and({A("role_of", {F, sym("0")}, "fcs"), A("holder", {S})}));
        for (const SpecificationPoint *asp : active[0]) {
            const std::string &mpt = asp->values[per_mpt_ix];
            SFormulaPtr common =
                f_and({A("actual_sp", {sym("0")}, asp->id),
                       A("dof", {sym("per_mpt"), sym(asp->id)}, mpt),
                       A("role_of", {F, sym("0")}, "fcs"), A("holder", {S})});
            if (mpt == "any_type")
                law_caused(A("perRequestMpt", {S, F, M}), common);
            else
                law_caused(A("perRequestMpt", {S, F, M}),
                           f_and({common, AV("requested", {S}, Term::var("M"))}));
        }
        law_default(NA("perRequestMpt", {S, F, M}));

        // best-candidate definitions, one family per DoF value
        std::string designated = cfg.rmt_designated_type.empty() ? cfg.manipulation_types.front()
                                                                 : cfg.rmt_designated_type;
        std::vector<SFormulaPtr> nobody;
        for (const std::string &s : cfg.subjects)
            nobody.push_back(f_not(pending(s)));
        law_caused(A("best_candidate", {}, "none"), f_and(nobody));
        for (const SpecificationPoint *asp : active[0]) {
            const std::string &bc = asp->values[bc_ix];
            SFormulaPtr at_asp = f_and({A("actual_sp", {sym("0")}, asp->id),
                                        A("dof", {sym("bc"), sym(asp->id)}, bc)});
            for (const std::string &s : cfg.subjects) {
                SFormulaPtr head = A("best_candidate", {}, s);
                auto earliest = [&](auto contender) {
                    std::vector<SFormulaPtr> parts;
                    for (const std::string &s2 : cfg.subjects)
                        if (s2 != s)
                            parts.push_back(f_implies(contender(s2), pos_before(s, s2)));
                    return f_and(parts);
                };
                if (bc == "fcfs") {
                    law_caused(head, f_and({at_asp, pending(s),
                                            earliest([&](const std::string &x) {
                                                return pending(x);
                                            })}));
                } else if (bc == "rmt") {
                    auto of_type = [&](const std::string &x) {
                        return A("requested", {sym(x)}, designated);
                    };
                    law_caused(head, f_and({at_asp, of_type(s), earliest(of_type)}));
                    std::vector<SFormulaPtr> none_of_type;
                    for (const std::string &s2 : cfg.subjects)
                        none_of_type.push_back(f_not(of_type(s2)));
                    law_caused(head, f_and({at_asp, f_and(none_of_type), pending(s),
                                            earliest([&](const std::string &x) {
                                                return pending(x);
                                            })}));
                } else if (bc == "ns") {
                    auto clean = [&](const std::string &x) {
                        return f_and({pending(x), NA("sanctioned", {sym(x)})});
                    };
                    law_caused(head, f_and({at_asp, clean(s), earliest(clean)}));
                    std::vector<SFormulaPtr> all_dirty;
                    for (const std::string &s2 : cfg.subjects)
                        all_dirty.push_back(f_implies(pending(s2), A("sanctioned", {sym(s2)})));
                    law_caused(head, f_and({at_asp, f_and(all_dirty), pending(s),
                                            earliest([&](const std::string &x) {
                                                return pending(x);
                                            })}));
                } else if (bc == "random") {
                    law_caused(head, f_and({at_asp, pending(s), head}));
                } else {
                    throw ConfigError("unknown best-candidate DoF value " + bc);
                }
            }
        }
    }

    /// Frozen-table gates fold the known fact values into compact conditions;
    /// with governance on, the comparisons expand over the live domains.
    void emit_transition_protocol() {
        if (cfg.levels < 2)
            return;
        Term S = Term::var("S"), C = Term::var("C");
        const std::string &scn = cfg.utilities.scenario_order.front();

        for (int l : point_levels) {
            std::string pl = std::to_string(l);
            std::string vl = std::to_string(l + 1);
            for (const SpecificationPoint *nsp : active[l]) {
                // rule: power to propose a different, property-satisfying point
                std::vector<SFormulaPtr> other;
                for (const SpecificationPoint *asp : active[l])
                    if (asp != nsp)
                        other.push_back(A("actual_sp", {sym(pl)}, asp->id));
                law_caused(A("powPropose", {S, sym(nsp->id), sym(pl)}),
                           f_and({A("role_of", {S, sym("0")}, "subject"),
                                  A("protocol", {sym(vl)}, "idle"),
                                  A("properties", {sym(nsp->id), sym(pl)}), f_or(other)}));
                law_default(NA("powPropose", {S, sym(nsp->id), sym(pl)}));

                // permission: distance gate plus either utility gate
                for (const SpecificationPoint *asp : active[l]) {
                    if (asp == nsp)
                        continue;
                    int dist_value = distance(catalog, cfg.metric, *nsp, *asp);
                    SFormulaPtr base = f_and(
                        {A("powPropose", {S, sym(nsp->id), sym(pl)}),
                         A("actual_sp", {sym(pl)}, asp->id),
                         A("distance", {sym(nsp->id), sym(asp->id), sym(pl)},
                           std::to_string(dist_value))});
                    if (frozen_tables) {
                        int thr_d = cfg.utilities.threshold_d.at(l);
                        int thr_eu = cfg.utilities.threshold_eu.at(l);
                        int eu_nsp = cfg.utilities.eu_of(scn, l, nsp->id);
                        int eu_asp = cfg.utilities.eu_of(scn, l, asp->id);
                        if (dist_value > thr_d)
                            continue;
                        SFormulaPtr gate = f_and(
                            {base, A("threshold_d", {sym(pl)}, std::to_string(thr_d))});
                        if (eu_nsp >= thr_eu)
                            law_caused(A("perPropose", {S, sym(nsp->id), sym(pl)}),
                                       f_and({gate,
                                              A("eu", {sym(nsp->id), sym(pl)},
                                                std::to_string(eu_nsp)),
                                              A("threshold_eu", {sym(pl)},
                                                std::to_string(thr_eu))}));
                        if (eu_nsp > eu_asp)
                            law_caused(A("perPropose", {S, sym(nsp->id), sym(pl)}),
                                       f_and({gate,
                                              A("eu", {sym(nsp->id), sym(pl)},
                                                std::to_string(eu_nsp)),
                                              A("eu", {sym(asp->id), sym(pl)},
                                                std::to_string(eu_asp))}));
                    } else {
                        SFormulaPtr dist_gate = f_cmp(
                            ConstantRef{"threshold_d", {sym(pl)}}, CmpOp::Ge, (long)dist_value);
                        law_caused(
                            A("perPropose", {S, sym(nsp->id), sym(pl)}),
                            f_and({base, dist_gate,
                                   f_cmp(ConstantRef{"eu", {sym(nsp->id), sym(pl)}}, CmpOp::Ge,
                                         ConstantRef{"threshold_eu", {sym(pl)}})}));
                        law_caused(
                            A("perPropose", {S, sym(nsp->id), sym(pl)}),
                            f_and({base, dist_gate,
                                   f_cmp(ConstantRef{"eu", {sym(nsp->id), sym(pl)}}, CmpOp::Gt,
                                         ConstantRef{"eu", {sym(asp->id), sym(pl)}})}));
                    }
                }
                law_default(NA("perPropose", {S, sym(nsp->id), sym(pl)}));

                // obligation to propose when the actual point underperforms
                for (const SpecificationPoint *asp : active[l]) {
                    SFormulaPtr base =
                        f_and({A("perPropose", {S, sym(nsp->id), sym(pl)}),
                               A("actual_sp", {sym(pl)}, asp->id)});
                    if (frozen_tables) {
                        int thr_eu = cfg.utilities.threshold_eu.at(l);
                        int eu_asp = cfg.utilities.eu_of(scn, l, asp->id);
                        if (eu_asp < thr_eu)
                            law_caused(
                                A("oblPropose", {S, sym(nsp->id), sym(pl)}),
                                f_and({base,
                                       A("eu", {sym(asp->id), sym(pl)}, std::to_string(eu_asp)),
                                       A("threshold_eu", {sym(pl)}, std::to_string(thr_eu))}));
                    } else {
                        law_caused(A("oblPropose", {S, sym(nsp->id), sym(pl)}),
                                   f_and({base, f_cmp(ConstantRef{"eu", {sym(asp->id), sym(pl)}},
                                                      CmpOp::Lt,
                                                      ConstantRef{"threshold_eu", {sym(pl)}})}));
                    }
                }
                law_default(NA("oblPropose", {S, sym(nsp->id), sym(pl)}));

                // proposals, seconding, objecting
                law_causes(A("propose", {S, sym(nsp->id), sym(pl)}),
                           A("proposal", {S, sym(nsp->id), sym(pl)}),
                           A("powPropose", {S, sym(nsp->id), sym(pl)}));
                law_causes(A("propose", {S, sym(nsp->id), sym(pl)}), sanction_head("S", true),
                           NA("perPropose", {S, sym(nsp->id), sym(pl)}));
                for (const std::string &s : cfg.subjects) {
                    std::vector<SFormulaPtr> others, anyone;
                    for (const std::string &s2 : cfg.subjects) {
                        anyone.push_back(A("proposal", {sym(s2), sym(nsp->id), sym(pl)}));
                        if (s2 != s)
                            others.push_back(A("proposal", {sym(s2), sym(nsp->id), sym(pl)}));
                    }
                    law_caused(A("powSecond", {sym(s), sym(nsp->id), sym(pl)}),
                               f_and({A("role_of", {sym(s), sym("0")}, "subject"), f_or(others)}));
                    law_default(NA("powSecond", {sym(s), sym(nsp->id), sym(pl)}));
                    law_caused(A("powObject", {sym(s), sym(nsp->id), sym(pl)}),
                               f_and({A("role_of", {sym(s), sym("0")}, "subject"), f_or(anyone)}));
                    law_default(NA("powObject", {sym(s), sym(nsp->id), sym(pl)}));
                }
                law_causes(A("second", {S, sym(nsp->id), sym(pl)}),
                           A("seconded", {sym(nsp->id), sym(pl)}),
                           A("powSecond", {S, sym(nsp->id), sym(pl)}));
                law_causes(A("object", {S, sym(nsp->id), sym(pl)}),
                           A("objected", {sym(nsp->id), sym(pl)}),
                           A("powObject", {S, sym(nsp->id), sym(pl)}));

                // direct enactment while unopposed
                std::vector<SFormulaPtr> anyprop;
                for (const std::string &s : cfg.subjects)
                    anyprop.push_back(A("proposal", {sym(s), sym(nsp->id), sym(pl)}));
                law_caused(A("powEnactDirect", {C, sym(nsp->id), sym(pl)}),
                           f_and({A("role_of", {C, sym("0")}, "chair"), f_or(anyprop),
                                  A("seconded", {sym(nsp->id), sym(pl)}),
                                  NA("objected", {sym(nsp->id), sym(pl)})}));
                law_default(NA("powEnactDirect", {C, sym(nsp->id), sym(pl)}));
                law_causes(A("enact_direct", {C, sym(nsp->id), sym(pl)}),
                           A("actual_sp", {sym(pl)}, nsp->id),
                           A("powEnactDirect", {C, sym(nsp->id), sym(pl)}));
                law_causes(A("enact_direct", {C, sym(nsp->id), sym(pl)}),
                           NA("seconded", {sym(nsp->id), sym(pl)}),
                           A("powEnactDirect", {C, sym(nsp->id), sym(pl)}));
                for (const std::string &s : cfg.subjects)
                    law_causes(A("enact_direct", {C, sym(nsp->id), sym(pl)}),
                               NA("proposal", {sym(s), sym(nsp->id), sym(pl)}),
                               A("powEnactDirect", {C, sym(nsp->id), sym(pl)}));
            }

            // argumentation completes into an executing meta protocol
            std::vector<SFormulaPtr> argued;
            for (const SpecificationPoint *nsp : active[l]) {
                std::vector<SFormulaPtr> anyprop;
                for (const std::string &s : cfg.subjects)
                    anyprop.push_back(A("proposal", {sym(s), sym(nsp->id), sym(pl)}));
                argued.push_back(f_and({f_or(anyprop), A("seconded", {sym(nsp->id), sym(pl)}),
                                        A("objected", {sym(nsp->id), sym(pl)})}));
            }
            law_caused(A("powEndArg", {C, sym(vl)}),
                       f_and({A("role_of", {C, sym("0")}, "chair"),
                              A("protocol", {sym(vl)}, "idle"), f_or(argued)}));
            law_default(NA("powEndArg", {C, sym(vl)}));
            law_causes(A("end_argumentation", {C, sym(vl)}), A("protocol", {sym(vl)}, "executing"),
                       A("powEndArg", {C, sym(vl)}));
        }
    }

    void emit_meta_roles() {
        std::vector<std::string> agents{cfg.chair, cfg.fcs};
        agents.insert(agents.end(), cfg.subjects.begin(), cfg.subjects.end());
        for (int vl : vote_levels) {
            std::string pl = std::to_string(vl);
            for (const std::string &a : agents) {
                if (std::find(cfg.subjects.begin(), cfg.subjects.end(), a) != cfg.subjects.end())
                    law_caused(A("role_of", {sym(a), sym(pl)}, "voter"),
                               f_and({A("role_of", {sym(a), sym("0")}, "subject"),
                                      A("protocol", {sym(pl)}, "executing"),
                                      NA("sanctioned", {sym(a)})}));
                if (a == cfg.chair)
                    law_caused(A("role_of", {sym(a), sym(pl)}, "chair"),
                               f_and({A("role_of", {sym(a), sym("0")}, "chair"),
                                      A("protocol", {sym(pl)}, "executing")}));
                law_default(A("role_of", {sym(a), sym(pl)}, "none"));
            }
        }
    }

    SFormulaPtr tally(const std::string &rule, int vl, bool carried) {
        std::string pl = std::to_string(vl);
        std::vector<SFormulaPtr> cases;
        for (int f = 0; f <= votes_max; ++f)
            for (int a = 0; a <= votes_max; ++a)
                if (tally_carried(rule, f, a) == carried)
                    cases.push_back(
                        f_and({A("votes_for", {sym(pl)}, std::to_string(f)),
                               A("votes_against", {sym(pl)}, std::to_string(a))}));
        return f_or(cases);
    }

    void emit_voting() {
        if (cfg.levels < 2)
            return;
        Term C = Term::var("C");
        for (int vl : vote_levels) {
            std::string pl = std::to_string(vl);
            int from_level = vl - 1;

            for (const std::string &s : cfg.subjects) {
                law_caused(A("powVote", {sym(s), sym(pl)}),
                           f_and({A("role_of", {sym(s), sym(pl)}, "voter"),
                                  NA("voted", {sym(s), sym(pl)})}));
                law_default(NA("powVote", {sym(s), sym(pl)}));
                for (const char *v : {"for", "against"})
                    law_causes(A("vote", {sym(s), sym(v), sym(pl)}),
                               A("vote_of", {sym(s), sym(pl)}, v),
                               A("powVote", {sym(s), sym(pl)}));
                law_caused(A("voted", {sym(s), sym(pl)}),
                           f_or({A("vote_of", {sym(s), sym(pl)}, "for"),
                                 A("vote_of", {sym(s), sym(pl)}, "against")}));
                law_default(NA("voted", {sym(s), sym(pl)}));
            }

            // exact vote counts from the recorded votes
            for (const char *which : {"for", "against"}) {
                std::string counter = std::string("votes_") + which;
                for (int k = 0; k <= votes_max; ++k) {
                    std::vector<SFormulaPtr> cases;
                    std::vector<int> pick(cfg.subjects.size(), 0);
                    std::function<void(size_t, int)> rec = [&](size_t i, int chosen) {
                        if (i == cfg.subjects.size()) {
                            if (chosen != k)
                                return;
                            std::vector<SFormulaPtr> parts;
                            for (size_t j = 0; j < cfg.subjects.size(); ++j) {
                                SFormulaPtr at =
                                    A("vote_of", {sym(cfg.subjects[j]), sym(pl)}, which);
                                parts.push_back(pick[j] ? at : f_not(at));
                            }
                            cases.push_back(f_and(parts));
                            return;
                        }
                        pick[i] = 1;
                        rec(i + 1, chosen + 1);
                        pick[i] = 0;
                        rec(i + 1, chosen);
                    };
                    rec(0, 0);
                    law_caused(A(counter, {sym(pl)}, std::to_string(k)), f_or(cases));
                }
            }

            // the chair of the vote declares the outcome once every voter has
            // voted, under the active standing rule
            std::vector<SFormulaPtr> allvoted;
            for (const std::string &s : cfg.subjects)
                allvoted.push_back(f_implies(A("role_of", {sym(s), sym(pl)}, "voter"),
                                             A("voted", {sym(s), sym(pl)})));
            for (const SpecificationPoint *m : active[from_level]) {
                std::vector<SFormulaPtr> anyprop;
                for (const std::string &s : cfg.subjects)
                    anyprop.push_back(
                        A("proposal", {sym(s), sym(m->id), sym(std::to_string(from_level))}));
                SFormulaPtr motion =
                    f_and({f_or(anyprop),
                           A("seconded", {sym(m->id), sym(std::to_string(from_level))}),
                           A("objected", {sym(m->id), sym(std::to_string(from_level))})});
                for (bool carried : {true, false}) {
                    SFormulaPtr rule_part;
                    if (vl == top_level) {
                        rule_part = tally(cfg.top_standing_rule, vl, carried);
                    } else {
                        const DoF &standing = catalog.dofs().at(vl)[0];
                        std::vector<SFormulaPtr> per_point;
                        for (const SpecificationPoint *p : active[vl])
                            per_point.push_back(
                                f_and({A("actual_sp", {sym(std::to_string(vl))}, p->id),
                                       A("dof", {sym(standing.name), sym(p->id)}, p->values[0]),
                                       tally(p->values[0], vl, carried)}));
                        rule_part = f_or(per_point);
                    }
                    SFormulaPtr pow = A(
                        "powDeclare",
                        {C, sym(m->id), sym(carried ? "carried" : "not_carried"), sym(pl)});
                    law_caused(pow, f_and({A("role_of", {C, sym(pl)}, "chair"), motion,
                                           f_and(allvoted), rule_part}));
                    law_default(f_not(pow));

                    SFormulaPtr act = A(
                        "declare",
                        {C, sym(m->id), sym(carried ? "carried" : "not_carried"), sym(pl)});
                    if (carried)
                        law_causes(act,
                                   A("actual_sp", {sym(std::to_string(from_level))}, m->id), pow);
                    law_causes(act, A("protocol", {sym(pl)}, "idle"), pow);
                    law_causes(act, NA("seconded", {sym(m->id), sym(std::to_string(from_level))}),
                               pow);
                    law_causes(act, NA("objected", {sym(m->id), sym(std::to_string(from_level))}),
                               pow);
                    for (const std::string &s : cfg.subjects) {
                        law_causes(act, A("vote_of", {sym(s), sym(pl)}, "none"), pow);
                        law_causes(
                            act,
                            NA("proposal", {sym(s), sym(m->id), sym(std::to_string(from_level))}),
                            pow);
                    }
                }
            }
        }
    }

    void emit_governance() {
        if (!cfg.governance)
            return;
        for (int l : point_levels) {
            std::string pl = std::to_string(l);
            for (int v = 0; v <= thr_d_max[l]; ++v)
                law_causes(A("set_threshold", {sym(pl), sym("d"), sym(std::to_string(v))}),
                           A("threshold_d", {sym(pl)}, std::to_string(v)), f_true());
            for (int v = 0; v <= eu_max; ++v)
                law_causes(A("set_threshold", {sym(pl), sym("eu"), sym(std::to_string(v))}),
                           A("threshold_eu", {sym(pl)}, std::to_string(v)), f_true());
        }
        for (const std::string &scn : cfg.utilities.scenario_order) {
            for (int l : point_levels) {
                std::string pl = std::to_string(l);
                for (const SpecificationPoint *p : active[l])
                    law_causes(A("set_environment", {sym(scn)}),
                               A("eu", {sym(p->id), sym(pl)},
                                 std::to_string(cfg.utilities.eu_of(scn, l, p->id))),
                               f_true());
            }
        }
    }

    Protocol run() {
        properties = default_properties();
        if (cfg.properties_override)
            for (const auto &[level, entries] : cfg.properties_override->value)
                for (const auto &[id, flag] : entries)
                    properties.value[level][id] = flag;
        validate();
        declare_constants();
        emit_role_facts();
        emit_inertia();
        emit_sanction_model();
        emit_floor_control();

        EmitOptions eo;
        eo.scenario = cfg.utilities.scenario_order.front();
        eo.freeze_eu = frozen_tables;
        eo.freeze_thresholds = frozen_tables;
        eo.restrict_to = cfg.restrict_points;
        for (LawTemplate &law : emit_facts(catalog, cfg.metric, cfg.utilities, properties, eo))
            sd.add_law(std::move(law));

        emit_transition_protocol();
        emit_meta_roles();
        emit_voting();
        emit_governance();

        return Protocol{cfg, std::move(catalog), std::move(properties), std::move(sd)};
    }

    /// Points whose best-candidate policy favours a designated manipulation
    /// type while permitting any actual manipulation are institutionally
    /// incoherent; they are never proposable.
    PropertiesTable default_properties() {
        PropertiesTable out;
        for (int l = 0; l < catalog.dofs().level_count(); ++l) {
            if (catalog.dofs().levels[l].empty())
                continue;
            const auto &dofs = catalog.dofs().at(l);
            size_t bc_ix = dofs.size(), mpt_ix = dofs.size();
            for (size_t i = 0; i < dofs.size(); ++i) {
                if (dofs[i].name == "bc")
                    bc_ix = i;
                if (dofs[i].name == "per_mpt")
                    mpt_ix = i;
            }
            for (const SpecificationPoint &p : catalog.points(l)) {
                bool incoherent = bc_ix < dofs.size() && mpt_ix < dofs.size() &&
                                  p.values[bc_ix] == "rmt" && p.values[mpt_ix] == "any_type";
                out.value[l][p.id] = !incoherent;
            }
        }
        return out;
    }
};

}  // namespace

ProtocolConfig ProtocolConfig::defaults() {
    ProtocolConfig cfg;
    cfg.subjects = {"sub1", "sub2", "sub3", "sub4", "sub5", "sub6"};
    cfg.manipulation_types = {"app_A", "app_B"};
    cfg.levels = 3;
    cfg.dof_catalog.levels = {
        {{"bc", {"random", "fcfs", "rmt", "ns"}},
         {"per_assign", {"3", "6", "9"}},
         {"per_mpt", {"any_type", "expressed_type"}}},
        {{"standing_rules", {"simple", "two_thirds", "three_quarters"}}},
        {},
    };
    cfg.pinned_points = {
        {"sp1", {0, {"fcfs", "9", "any_type"}}},
        {"sp2", {0, {"rmt", "9", "expressed_type"}}},
        {"sp3", {0, {"random", "3", "any_type"}}},
        {"sp26", {1, {"simple"}}},
    };
    cfg.metric.weights = {{0, {2, 1, 1}}, {1, {1}}};

    PointCatalog catalog(cfg.dof_catalog, cfg.pinned_points);
    auto id_of = [&](int level, std::vector<std::string> tuple) {
        for (const SpecificationPoint &p : catalog.points(level))
            if (p.values == tuple)
                return p.id;
        throw ConfigError("defaults: tuple not found");
    };
    cfg.utilities.scenario_order = {"base"};
    auto &base = cfg.utilities.eu["base"];
    for (int l : {0, 1})
        for (const SpecificationPoint &p : catalog.points(l))
            base[l][p.id] = 5;
    base[0][id_of(0, {"fcfs", "3", "any_type"})] = 6;
    base[0]["sp3"] = 3;
    base[1]["sp26"] = 6;
    base[1][id_of(1, {"three_quarters"})] = 4;
    cfg.utilities.threshold_d = {{0, 4}, {1, 2}};
    cfg.utilities.threshold_eu = {{0, 5}, {1, 5}};
    cfg.initial_points = {{0, id_of(0, {"fcfs", "3", "any_type"})},
                          {1, id_of(1, {"three_quarters"})}};
    cfg.top_standing_rule = "three_quarters";
    cfg.rmt_designated_type = "app_A";
    cfg.run_constraint_check = true;
    return cfg;
}

std::vector<std::string> Protocol::active_points(int level) const {
    std::vector<std::string> out;
    auto r = config.restrict_points.find(level);
    for (const SpecificationPoint &p : catalog.points(level)) {
        if (r != config.restrict_points.end() &&
            std::find(r->second.begin(), r->second.end(), p.id) == r->second.end())
            continue;
        out.push_back(p.id);
    }
    return out;
}

Protocol build_description(const ProtocolConfig &cfg) {
    Builder b(cfg);
    return b.run();
}

State initial_state(const cplus::ActionDescription &d, const Protocol &p) {
    const Signature &sig = d.signature();
    const ProtocolConfig &cfg = p.config;
    std::vector<Atom> atoms;
    auto set = [&](const std::string &family, std::vector<std::string> args,
                   const std::string &value) {
        ConstantId c = sig.require(cplus::render_constant(family, args));
        atoms.push_back(Atom{c, sig.require_value(c, value)});
    };

    set("role_of", {cfg.chair, "0"}, "chair");
    set("role_of", {cfg.fcs, "0"}, "fcs");
    for (const std::string &s : cfg.subjects)
        set("role_of", {s, "0"}, "subject");
    std::vector<std::string> agents{cfg.chair, cfg.fcs};
    agents.insert(agents.end(), cfg.subjects.begin(), cfg.subjects.end());
    for (const std::string &a : agents) {
        if (cfg.sanctions.mode == SanctionConfig::Mode::Permanent)
            set("sanctioned", {a}, "f");
        else
            set("sanction_timer", {a}, "0");
    }
    for (const std::string &s : cfg.subjects) {
        set("holder", {s}, "f");
        set("requested", {s}, "null");
        set("req_pos", {s}, "0");
        set("c_alloc", {s}, "0");
    }
    set("next_pos", {}, "1");

    const std::string &scn = cfg.utilities.scenario_order.front();
    for (int l = 0; l < p.catalog.dofs().level_count(); ++l) {
        if (p.catalog.dofs().levels[l].empty())
            continue;
        std::string pl = std::to_string(l);
        const auto &dofs = p.catalog.dofs().at(l);
        set("actual_sp", {pl}, cfg.initial_points.at(l));
        set("threshold_d", {pl}, std::to_string(cfg.utilities.threshold_d.at(l)));
        set("threshold_eu", {pl}, std::to_string(cfg.utilities.threshold_eu.at(l)));
        for (const std::string &id : p.active_points(l)) {
            const SpecificationPoint &pt = p.catalog.require(id);
            for (size_t i = 0; i < dofs.size(); ++i)
                set("dof", {dofs[i].name, id}, pt.values[i]);
            set("properties", {id, pl}, p.properties.at(l, id) ? "t" : "f");
            set("eu", {id, pl}, std::to_string(cfg.utilities.eu_of(scn, l, id)));
            set("seconded", {id, pl}, "f");
            set("objected", {id, pl}, "f");
            for (const std::string &s : cfg.subjects)
                set("proposal", {s, id, pl}, "f");
        }
    }
    for (int vl = 1; vl < cfg.levels; ++vl) {
        std::string pl = std::to_string(vl);
        set("protocol", {pl}, "idle");
        for (const std::string &s : cfg.subjects)
            set("vote_of", {s, pl}, "none");
    }

    // the scratch arena copy keeps law formula indices valid and lets the
    // requirement atoms append behind them
    FormulaArena scratch = d.arena();
    cplus::search::Completion completion(d, scratch);
    for (const Atom &a : atoms) {
        if (!completion.require(scratch.atom(a), true))
            break;
    }
    auto res = completion.solve_all(2, cfg.budget);
    if (res.solutions.size() == 1)
        return res.solutions[0];
    if (res.solutions.empty()) {
        std::string msg = "the configured initial state is not a state of the description";
        if (!completion.ok())
            msg += " (" + completion.conflict_reason() + ")";
        throw ConfigError(msg);
    }
    throw ConfigError("the configured initial state is ambiguous (" +
                      std::to_string(res.solutions.size()) + " completions)");
}

std::optional<ConstantId> power_fluent_for_action(const Signature &sig, ConstantId action) {
    const cplus::ConstantDecl &a = sig.decl(action);
    std::string family;
    std::vector<std::string> args = a.args;
    if (a.family == "request_floor") {
        family = "powRequest";
        args = {a.args[0], a.args[1]};
    } else if (a.family == "assign_floor") {
        family = "powAssign";
    } else if (a.family == "request_manipulate") {
        family = "powRequestMpt";
    } else if (a.family == "propose") {
        family = "powPropose";
    } else if (a.family == "second") {
        family = "powSecond";
    } else if (a.family == "object") {
        family = "powObject";
    } else if (a.family == "vote") {
        family = "powVote";
        args = {a.args[0], a.args[2]};
    } else if (a.family == "declare") {
        family = "powDeclare";
    } else if (a.family == "end_argumentation") {
        family = "powEndArg";
    } else if (a.family == "enact_direct") {
        family = "powEnactDirect";
    } else {
        return std::nullopt;
    }
    return sig.find(cplus::render_constant(family, args));
}

void validate_step_events(const Signature &sig, const std::vector<ConstantId> &events) {
    if (events.empty())
        throw ConfigError("a narrative step must list at least one event");
    size_t votes = 0;
    for (ConstantId c : events)
        if (sig.decl(c).family == "vote")
            ++votes;
    if (votes != events.size() && events.size() > 1)
        throw ConfigError(
            "concurrency policy: one event per step, except vote events, which may be grouped");
}

}  // namespace rsp
