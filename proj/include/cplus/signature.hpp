#ifndef CPLUS_SIGNATURE_HPP
#define CPLUS_SIGNATURE_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace cplus {

using ConstantId = uint32_t;
using ValueId = uint16_t;

inline constexpr ConstantId kNoConstant = UINT32_MAX;

/// Error for malformed signatures, formulas referencing unknown constants, etc.
struct SignatureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ConstantKind : uint8_t {
    SimpleFluent,
    StaticallyDeterminedFluent,
    Action,
};

inline bool is_fluent(ConstantKind k) {
    return k != ConstantKind::Action;
}

/// A multi-valued constant. Ground constants keep their schema structure
/// (family name + argument symbols) so they can be rendered and matched;
/// the kernel itself only ever works with the interned id.
struct ConstantDecl {
    std::string family;
    std::vector<std::string> args;
    ConstantKind kind = ConstantKind::SimpleFluent;
    std::vector<std::string> domain;  // declared order is meaningful (ranking)

    std::string render() const;
    bool boolean() const {
        return domain.size() == 2 && domain[0] == "f" && domain[1] == "t";
    }
    friend bool operator==(const ConstantDecl &, const ConstantDecl &) = default;
};

std::string render_constant(const std::string &family, const std::vector<std::string> &args);

/// Boolean domains use {f, t} in that order; value id 1 is "true".
std::vector<std::string> boolean_domain();

struct Atom {
    ConstantId constant = kNoConstant;
    ValueId value = 0;

    friend bool operator==(const Atom &, const Atom &) = default;
    friend auto operator<=>(const Atom &, const Atom &) = default;
};

/// An interned multi-valued signature. Constants are sorted by rendered name
/// at finalization so that all downstream output is deterministic.
class Signature {
public:
    Signature() = default;
    explicit Signature(std::vector<ConstantDecl> decls);

    size_t size() const { return decls_.size(); }
    const ConstantDecl &decl(ConstantId id) const { return decls_[id]; }
    const std::vector<ConstantDecl> &decls() const { return decls_; }

    std::optional<ConstantId> find(const std::string &rendered) const;
    ConstantId require(const std::string &rendered) const;

    std::optional<ValueId> find_value(ConstantId c, const std::string &symbol) const;
    ValueId require_value(ConstantId c, const std::string &symbol) const;

    const std::string &value_name(const Atom &a) const {
        return decls_[a.constant].domain[a.value];
    }
    std::string render_atom(const Atom &a) const;

    size_t domain_size(ConstantId c) const { return decls_[c].domain.size(); }
    bool is_fluent(ConstantId c) const { return cplus::is_fluent(decls_[c].kind); }
    bool is_simple(ConstantId c) const { return decls_[c].kind == ConstantKind::SimpleFluent; }
    bool is_action(ConstantId c) const { return decls_[c].kind == ConstantKind::Action; }

    const std::vector<ConstantId> &fluents() const { return fluents_; }
    const std::vector<ConstantId> &actions() const { return actions_; }

    friend bool operator==(const Signature &a, const Signature &b) {
        return a.decls_ == b.decls_;
    }

private:
    std::vector<ConstantDecl> decls_;
    std::unordered_map<std::string, ConstantId> by_name_;
    std::vector<ConstantId> fluents_;
    std::vector<ConstantId> actions_;
};

}  // namespace cplus

#endif
