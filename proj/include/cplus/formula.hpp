#ifndef CPLUS_FORMULA_HPP
#define CPLUS_FORMULA_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cplus/signature.hpp"

namespace cplus {

enum class FormulaOp : uint8_t { True, False, AtomRef, Not, And, Or, Implies };

/// Ground formulas live in a shared arena (one per action description).
/// A Formula is just a node index; copying is free and evaluation walks the
/// arena without allocation.
using Formula = uint32_t;

class FormulaArena {
public:
    struct Node {
        FormulaOp op;
        Atom atom;             // AtomRef only
        uint32_t child_begin;  // span into children_
        uint32_t child_count;
    };

    Formula truth();
    Formula falsity();
    Formula atom(Atom a);
    Formula negate(Formula f);
    Formula conj(std::span<const Formula> fs);
    Formula disj(std::span<const Formula> fs);
    Formula implies(Formula a, Formula b);

    Formula conj(std::initializer_list<Formula> fs) {
        return conj(std::span<const Formula>(fs.begin(), fs.size()));
    }
    Formula disj(std::initializer_list<Formula> fs) {
        return disj(std::span<const Formula>(fs.begin(), fs.size()));
    }

    const Node &node(Formula f) const { return nodes_[f]; }
    std::span<const Formula> children(const Node &n) const {
        return {children_.data() + n.child_begin, n.child_count};
    }
    size_t node_count() const { return nodes_.size(); }

    /// Collects the distinct constants mentioned in f, in first-seen order.
    void collect_constants(Formula f, std::vector<ConstantId> &out) const;

    std::string render(Formula f, const Signature &sig) const;

    /// Recursively copies a formula from another arena into this one.
    Formula import_from(const FormulaArena &src, Formula f);

private:
    Formula add(Node n, std::span<const Formula> kids = {});
    std::vector<Node> nodes_;
    std::vector<Formula> children_;
};

}  // namespace cplus

#endif
