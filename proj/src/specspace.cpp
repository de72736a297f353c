#include "rsp/specspace.hpp"

#include <algorithm>
#include <cstdlib>

namespace rsp {

using cplus::schema::ConstantRef;
using cplus::schema::f_atom;
using cplus::schema::f_true;
using cplus::schema::LawForm;
using cplus::schema::LawTemplate;
using cplus::schema::Term;

const std::vector<DoF> &DoFCatalog::at(int level) const {
    if (level < 0 || level >= level_count())
        throw SpecSpaceError("no DoF catalog for level " + std::to_string(level));
    return levels[level];
}

void MetricConfig::validate(const DoFCatalog &catalog) const {
    for (int level = 0; level < catalog.level_count(); ++level) {
        if (catalog.levels[level].empty())
            continue;
        auto it = weights.find(level);
        if (it == weights.end())
            throw SpecSpaceError("metric weights missing for level " + std::to_string(level));
        if (it->second.size() != catalog.levels[level].size())
            throw SpecSpaceError("metric weight count differs from DoF count at level " +
                                 std::to_string(level));
        bool positive = false;
        for (int w : it->second) {
            if (w < 0)
                throw SpecSpaceError("metric weights must be non-negative");
            positive = positive || w > 0;
        }
        if (!positive)
            throw SpecSpaceError("at least one metric weight must be positive at level " +
                                 std::to_string(level));
    }
}

int UtilityTable::eu_of(const std::string &scenario, int level, const std::string &point_id) const {
    auto s = eu.find(scenario);
    if (s == eu.end())
        throw SpecSpaceError("unknown utility scenario " + scenario);
    auto l = s->second.find(level);
    if (l == s->second.end())
        throw SpecSpaceError("utility table has no level " + std::to_string(level));
    auto p = l->second.find(point_id);
    if (p == l->second.end())
        throw SpecSpaceError("utility table has no entry for point " + point_id + " at level " +
                             std::to_string(level));
    return p->second;
}

bool PropertiesTable::at(int level, const std::string &id) const {
    auto l = value.find(level);
    if (l == value.end())
        throw SpecSpaceError("properties table has no level " + std::to_string(level));
    auto p = l->second.find(id);
    if (p == l->second.end())
        throw SpecSpaceError("properties table has no entry for point " + id);
    return p->second;
}

int rank(const DoF &dof, const std::string &value) {
    for (size_t i = 0; i < dof.values.size(); ++i)
        if (dof.values[i] == value)
            return static_cast<int>(i);
    throw SpecSpaceError("value " + value + " is not in the " + dof.name + " value list");
}

PointCatalog::PointCatalog(
    DoFCatalog catalog,
    const std::map<std::string, std::pair<int, std::vector<std::string>>> &pinned)
    : catalog_(std::move(catalog)) {
    for (const auto &[id, where] : pinned) {
        if (where.first < 0 || where.first >= catalog_.level_count() ||
            catalog_.levels[where.first].empty())
            throw SpecSpaceError("pinned point " + id + " names a level without DoF");
        if (where.second.size() != catalog_.levels[where.first].size())
            throw SpecSpaceError("pinned point " + id + " arity mismatch");
    }
    by_level_.resize(catalog_.level_count());
    int counter = 0;
    auto next_free_id = [&]() {
        while (true) {
            ++counter;
            std::string candidate = "sp" + std::to_string(counter);
            if (!pinned.count(candidate))
                return candidate;
        }
    };
    for (int level = 0; level < catalog_.level_count(); ++level) {
        const auto &dofs = catalog_.levels[level];
        if (dofs.empty())
            continue;
        std::vector<size_t> cursor(dofs.size(), 0);
        bool done = false;
        while (!done) {
            SpecificationPoint p;
            p.level = level;
            for (size_t i = 0; i < dofs.size(); ++i)
                p.values.push_back(dofs[i].values[cursor[i]]);
            for (const auto &[id, where] : pinned)
                if (where.first == level && where.second == p.values)
                    p.id = id;
            if (p.id.empty())
                p.id = next_free_id();
            by_level_[level].push_back(std::move(p));
            done = true;
            for (size_t i = cursor.size(); i > 0;) {
                --i;
                if (++cursor[i] < dofs[i].values.size()) {
                    done = false;
                    break;
                }
                cursor[i] = 0;
            }
        }
    }
    // ids must be unique across levels
    std::map<std::string, int> seen;
    for (const auto &level : by_level_)
        for (const auto &p : level)
            if (++seen[p.id] > 1)
                throw SpecSpaceError("duplicate point id " + p.id);
}

const std::vector<SpecificationPoint> &PointCatalog::points(int level) const {
    if (level < 0 || level >= static_cast<int>(by_level_.size()) || by_level_[level].empty())
        throw SpecSpaceError("level " + std::to_string(level) + " has no specification points");
    return by_level_[level];
}

const SpecificationPoint *PointCatalog::find(const std::string &id) const {
    for (const auto &level : by_level_)
        for (const auto &p : level)
            if (p.id == id)
                return &p;
    return nullptr;
}

const SpecificationPoint &PointCatalog::require(const std::string &id) const {
    const SpecificationPoint *p = find(id);
    if (!p)
        throw SpecSpaceError("unknown specification point " + id);
    return *p;
}

int distance(const PointCatalog &catalog, const MetricConfig &metric,
             const SpecificationPoint &a, const SpecificationPoint &b) {
    if (a.level != b.level)
        throw SpecSpaceError("distance between points of different levels (" + a.id + ", " + b.id +
                             ")");
    const auto &dofs = catalog.dofs().at(a.level);
    const auto &weights = metric.weights.at(a.level);
    int out = 0;
    for (size_t i = 0; i < dofs.size(); ++i)
        out += weights[i] * std::abs(rank(dofs[i], a.values[i]) - rank(dofs[i], b.values[i]));
    return out;
}

std::vector<LawTemplate> emit_facts(const PointCatalog &catalog, const MetricConfig &metric,
                                    const UtilityTable &utilities,
                                    const PropertiesTable &properties, const EmitOptions &opt) {
    std::vector<LawTemplate> out;
    auto fact = [&](ConstantRef ref, const std::string &value) {
        LawTemplate law;
        law.form = LawForm::CausedIf;
        law.head = f_atom(std::move(ref), Term::sym(value));
        law.condition = f_true();
        out.push_back(std::move(law));
    };
    auto level_points = [&](int level) {
        std::vector<const SpecificationPoint *> pts;
        auto restricted = opt.restrict_to.find(level);
        for (const SpecificationPoint &p : catalog.points(level)) {
            if (restricted != opt.restrict_to.end() &&
                std::find(restricted->second.begin(), restricted->second.end(), p.id) ==
                    restricted->second.end())
                continue;
            pts.push_back(&p);
        }
        return pts;
    };
    for (int level = 0; level < catalog.dofs().level_count(); ++level) {
        const auto &dofs = catalog.dofs().at(level);
        if (dofs.empty())
            continue;
        std::string pl = std::to_string(level);
        auto pts = level_points(level);
        for (const SpecificationPoint *p : pts) {
            for (size_t i = 0; i < dofs.size(); ++i)
                fact({"dof", {Term::sym(dofs[i].name), Term::sym(p->id)}}, p->values[i]);
            fact({"properties", {Term::sym(p->id), Term::sym(pl)}},
                 properties.at(level, p->id) ? "t" : "f");
            if (opt.freeze_eu)
                fact({"eu", {Term::sym(p->id), Term::sym(pl)}},
                     std::to_string(utilities.eu_of(opt.scenario, level, p->id)));
        }
        for (const SpecificationPoint *a : pts)
            for (const SpecificationPoint *b : pts)
                fact({"distance", {Term::sym(a->id), Term::sym(b->id), Term::sym(pl)}},
                     std::to_string(distance(catalog, metric, *a, *b)));
        if (opt.freeze_thresholds) {
            fact({"threshold_d", {Term::sym(pl)}}, std::to_string(utilities.threshold_d.at(level)));
            fact({"threshold_eu", {Term::sym(pl)}},
                 std::to_string(utilities.threshold_eu.at(level)));
        }
    }
    return out;
}

}  // namespace rsp
