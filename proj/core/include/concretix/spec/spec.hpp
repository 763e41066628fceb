#pragma once

#include "concretix/spec/version.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace concretix::spec {

class SpecSyntaxError : public SpecError {
public:
    SpecSyntaxError(std::size_t position, const std::string& message);
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

class DuplicateVariantError : public SpecError {
public:
    explicit DuplicateVariantError(const std::string& variant);
};

/// Raised by merge_constraints; carries both sides.
class SpecConflict : public SpecError {
public:
    SpecConflict(std::string detail, std::string lhs, std::string rhs);
    const std::string& detail() const noexcept { return detail_; }
    const std::string& lhs() const noexcept { return lhs_; }
    const std::string& rhs() const noexcept { return rhs_; }

private:
    std::string detail_, lhs_, rhs_;
};

using VariantValue = std::variant<bool, std::string>;

std::string to_string(const VariantValue& v);

struct CompilerConstraint {
    std::string name;
    VersionConstraint versions;

    friend bool operator==(const CompilerConstraint&, const CompilerConstraint&) = default;
};

/// Constraints on a single node. A missing name makes the node anonymous,
/// which is how `when` conditions such as `+mpi` are written.
struct NodeConstraint {
    std::optional<std::string> name;
    VersionConstraint versions;
    std::optional<CompilerConstraint> compiler;
    std::map<std::string, VariantValue> variants;
    /// Compiler flags (`cflags="-O2"`). Parsed and rendered, never solved for.
    std::map<std::string, std::string> flags;
    /// A target name; a trailing `:` admits the target and its descendants.
    std::optional<std::string> target;
    std::optional<std::string> os;

    bool empty() const;

    friend bool operator==(const NodeConstraint&, const NodeConstraint&) = default;
};

struct AbstractSpec {
    NodeConstraint root;
    std::vector<NodeConstraint> dependencies;

    const NodeConstraint* dependency(std::string_view name) const;

    friend bool operator==(const AbstractSpec&, const AbstractSpec&) = default;
};

/// Grammar (whitespace between sigils is optional):
///
///     spec    := node ('^' node)*
///     node    := [name] ( '@' versions | '%' compiler ['@' versions]
///                       | '+' variant | '~' variant | key '=' value )*
///
/// `target=` and `os=` set platform fields; `cflags`, `cxxflags`, `fflags`,
/// `cppflags`, `ldflags` and `ldlibs` are flags; other keys are variants,
/// with `true`/`false` read as booleans.
AbstractSpec parse_spec(std::string_view text);

/// Canonical text: name, versions, compiler, boolean variants, valued
/// variants, flags, target, os; dependencies follow in order.
std::string render_spec(const AbstractSpec& spec);
std::string render_node(const NodeConstraint& node);

/// Sorts dependencies by name.
AbstractSpec canonicalize(AbstractSpec spec);

/// Intersects two node constraints. Throws SpecConflict.
NodeConstraint merge_nodes(const NodeConstraint& a, const NodeConstraint& b);

/// Intersects two specs with the same (or an anonymous) root; dependencies
/// with equal names merge. The result is canonical. Throws SpecConflict.
AbstractSpec merge_constraints(const AbstractSpec& a, const AbstractSpec& b);

}  // namespace concretix::spec
