#pragma once

#include "concretix/encode/encoder.hpp"
#include "concretix/logic/solver.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace concretix::encode {

/// A model lacked an attribute every node must have. Always an internal bug.
class MalformedModel : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ConcreteNode {
    std::string name;
    spec::Version version;
    std::map<std::string, spec::VariantValue> variants;
    std::string compiler;
    spec::Version compiler_version;
    std::string os;
    std::string target;
    std::optional<std::string> hash;
    bool build = true;
    bool root = false;

    friend bool operator==(const ConcreteNode&, const ConcreteNode&) = default;
};

/// Nodes sorted by name; a node's id is its index. Edges are sorted.
struct ConcreteDAG {
    std::vector<ConcreteNode> nodes;
    std::vector<std::pair<std::size_t, std::size_t>> edges;

    std::optional<std::size_t> find(std::string_view name) const;
    std::vector<std::size_t> children(std::size_t id) const;
    std::vector<std::size_t> roots() const;
    std::size_t built_count() const;

    friend bool operator==(const ConcreteDAG&, const ConcreteDAG&) = default;
};

ConcreteDAG decode_atoms(const std::vector<logic::GroundAtom>& atoms, const EncodedProblem& problem);
ConcreteDAG decode_model(const logic::GroundProgram& gp, const logic::Model& model, const EncodedProblem& problem);

}  // namespace concretix::encode
