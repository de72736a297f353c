#include "cplus/formula.hpp"

#include <algorithm>

namespace cplus {

Formula FormulaArena::add(Node n, std::span<const Formula> kids) {
    n.child_begin = static_cast<uint32_t>(children_.size());
    n.child_count = static_cast<uint32_t>(kids.size());
    children_.insert(children_.end(), kids.begin(), kids.end());
    nodes_.push_back(n);
    return static_cast<Formula>(nodes_.size() - 1);
}

Formula FormulaArena::truth() {
    return add({FormulaOp::True, {}, 0, 0});
}

Formula FormulaArena::falsity() {
    return add({FormulaOp::False, {}, 0, 0});
}

Formula FormulaArena::atom(Atom a) {
    return add({FormulaOp::AtomRef, a, 0, 0});
}

Formula FormulaArena::negate(Formula f) {
    Formula kids[] = {f};
    return add({FormulaOp::Not, {}, 0, 0}, kids);
}

Formula FormulaArena::conj(std::span<const Formula> fs) {
    if (fs.empty())
        return truth();
    if (fs.size() == 1)
        return fs[0];
    return add({FormulaOp::And, {}, 0, 0}, fs);
}

Formula FormulaArena::disj(std::span<const Formula> fs) {
    if (fs.empty())
        return falsity();
    if (fs.size() == 1)
        return fs[0];
    return add({FormulaOp::Or, {}, 0, 0}, fs);
}

Formula FormulaArena::implies(Formula a, Formula b) {
    Formula kids[] = {a, b};
    return add({FormulaOp::Implies, {}, 0, 0}, kids);
}

Formula FormulaArena::import_from(const FormulaArena &src, Formula f) {
    const Node &n = src.node(f);
    switch (n.op) {
    case FormulaOp::True:
        return truth();
    case FormulaOp::False:
        return falsity();
    case FormulaOp::AtomRef:
        return atom(n.atom);
    default: {
        std::vector<Formula> kids;
        for (Formula c : src.children(n))
            kids.push_back(import_from(src, c));
        switch (n.op) {
        case FormulaOp::Not:
            return negate(kids[0]);
        case FormulaOp::And:
            return conj(kids);
        case FormulaOp::Or:
            return disj(kids);
        default:
            return implies(kids[0], kids[1]);
        }
    }
    }
}

void FormulaArena::collect_constants(Formula f, std::vector<ConstantId> &out) const {
    const Node &n = nodes_[f];
    if (n.op == FormulaOp::AtomRef) {
        if (std::find(out.begin(), out.end(), n.atom.constant) == out.end())
            out.push_back(n.atom.constant);
        return;
    }
    for (Formula c : children(n))
        collect_constants(c, out);
}

std::string FormulaArena::render(Formula f, const Signature &sig) const {
    const Node &n = nodes_[f];
    switch (n.op) {
    case FormulaOp::True:
        return "true";
    case FormulaOp::False:
        return "false";
    case FormulaOp::AtomRef:
        return sig.render_atom(n.atom);
    case FormulaOp::Not:
        return "!(" + render(children(n)[0], sig) + ")";
    case FormulaOp::And:
    case FormulaOp::Or: {
        std::string sep = n.op == FormulaOp::And ? " & " : " | ";
        std::string out = "(";
        auto kids = children(n);
        for (size_t i = 0; i < kids.size(); ++i) {
            if (i)
                out += sep;
            out += render(kids[i], sig);
        }
        return out + ")";
    }
    case FormulaOp::Implies:
        return "(" + render(children(n)[0], sig) + " -> " + render(children(n)[1], sig) + ")";
    }
    return "?";
}

}  // namespace cplus
