#include "cplus/signature.hpp"

#include <algorithm>
#include <set>

namespace cplus {

std::string render_constant(const std::string &family, const std::vector<std::string> &args) {
    if (args.empty())
        return family;
    std::string out = family;
    out += '(';
    for (size_t i = 0; i < args.size(); ++i) {
        if (i)
            out += ", ";
        out += args[i];
    }
    out += ')';
    return out;
}

std::string ConstantDecl::render() const {
    return render_constant(family, args);
}

std::vector<std::string> boolean_domain() {
    return {"f", "t"};
}

Signature::Signature(std::vector<ConstantDecl> decls) : decls_(std::move(decls)) {
    std::sort(decls_.begin(), decls_.end(), [](const ConstantDecl &a, const ConstantDecl &b) {
        return a.render() < b.render();
    });
    for (ConstantId id = 0; id < decls_.size(); ++id) {
        const ConstantDecl &d = decls_[id];
        if (d.domain.size() < 2)
            throw SignatureError("constant " + d.render() + ": domain must have at least 2 elements");
        std::set<std::string> seen(d.domain.begin(), d.domain.end());
        if (seen.size() != d.domain.size())
            throw SignatureError("constant " + d.render() + ": duplicate domain element");
        if (!by_name_.emplace(d.render(), id).second)
            throw SignatureError("duplicate constant " + d.render());
        if (cplus::is_fluent(d.kind))
            fluents_.push_back(id);
        else
            actions_.push_back(id);
    }
}

std::optional<ConstantId> Signature::find(const std::string &rendered) const {
    auto it = by_name_.find(rendered);
    if (it == by_name_.end())
        return std::nullopt;
    return it->second;
}

ConstantId Signature::require(const std::string &rendered) const {
    auto id = find(rendered);
    if (!id)
        throw SignatureError("unknown constant " + rendered);
    return *id;
}

std::optional<ValueId> Signature::find_value(ConstantId c, const std::string &symbol) const {
    const auto &dom = decls_[c].domain;
    for (size_t i = 0; i < dom.size(); ++i)
        if (dom[i] == symbol)
            return static_cast<ValueId>(i);
    return std::nullopt;
}

ValueId Signature::require_value(ConstantId c, const std::string &symbol) const {
    auto v = find_value(c, symbol);
    if (!v)
        throw SignatureError("value " + symbol + " not in domain of " + decls_[c].render());
    return *v;
}

std::string Signature::render_atom(const Atom &a) const {
    const ConstantDecl &d = decls_[a.constant];
    if (d.boolean())
        return a.value == 1 ? d.render() : "!" + d.render();
    return d.render() + "=" + d.domain[a.value];
}

}  // namespace cplus
