#pragma once

#include "concretix/diag/diagnostics.hpp"
#include "concretix/encode/dag.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace concretix::driver {

/// Root-first tree; children are indented under their parent with a `^`
/// prefix and each node is expanded once. With a repo, only non-default
/// variant values and variants named in `inputs` are shown.
std::string render_tree(const encode::ConcreteDAG& dag, const repo::Repo* repo = nullptr,
                        const std::vector<spec::AbstractSpec>& inputs = {});

std::string render_json(const encode::ConcreteDAG& dag);
/// Inverse of render_json. Throws std::invalid_argument.
encode::ConcreteDAG parse_json(std::string_view text);

std::string render_diagnostic(const diag::Diagnostic& d, bool with_stats);
std::string render_diagnostic_json(const diag::Diagnostic& d);

}  // namespace concretix::driver
