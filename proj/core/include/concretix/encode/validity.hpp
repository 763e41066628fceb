#pragma once

#include "concretix/encode/dag.hpp"

#include <string>
#include <vector>

namespace concretix::encode {

// Each check returns a list of human-readable problems; empty means valid.

std::vector<std::string> check_acyclic(const ConcreteDAG& dag);
std::vector<std::string> check_virtuals_replaced(const ConcreteDAG& dag, const repo::Repo& repo);
/// Built nodes have an edge for every dependency whose condition holds, and
/// the child meets the dependency's constraints. No conflict is triggered.
std::vector<std::string> check_dependencies_resolved(const ConcreteDAG& dag, const repo::Repo& repo);
std::vector<std::string> check_parameters_assigned(const ConcreteDAG& dag, const repo::Repo& repo);
std::vector<std::string> check_input_constraints(const ConcreteDAG& dag, const repo::Repo& repo,
                                                 const std::vector<spec::AbstractSpec>& roots);

std::vector<std::string> check_validity(const ConcreteDAG& dag, const repo::Repo& repo,
                                        const std::vector<spec::AbstractSpec>& roots);

bool node_satisfies(const ConcreteNode& node, const spec::NodeConstraint& c, const repo::RepoConfig& config);
/// Evaluates a `when` spec on node `id`; `^dep` means a direct dependency.
bool condition_holds(const ConcreteDAG& dag, std::size_t id, const spec::AbstractSpec& when,
                     const repo::Repo& repo);
bool node_provides(const ConcreteDAG& dag, std::size_t id, std::string_view virtual_name, const repo::Repo& repo);

}  // namespace concretix::encode
