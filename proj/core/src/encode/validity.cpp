#include "concretix/encode/validity.hpp"

#include <algorithm>
#include <functional>

namespace concretix::encode {

using spec::AbstractSpec;
using spec::NodeConstraint;

bool node_satisfies(const ConcreteNode& node, const NodeConstraint& c, const repo::RepoConfig& config) {
    if (c.name && *c.name != node.name) return false;
    if (!spec::version_satisfies(node.version, c.versions)) return false;
    if (c.compiler) {
        if (c.compiler->name != node.compiler) return false;
        if (!spec::version_satisfies(node.compiler_version, c.compiler->versions)) return false;
    }
    for (const auto& [name, value] : c.variants) {
        auto it = node.variants.find(name);
        if (it == node.variants.end() || it->second != value) return false;
    }
    if (c.target) {
        const std::string& t = *c.target;
        if (!t.empty() && t.back() == ':') {
            if (!config.target_descends(node.target, t.substr(0, t.size() - 1))) return false;
        } else if (t != node.target) {
            return false;
        }
    }
    if (c.os && *c.os != node.os) return false;
    return true;
}

bool node_provides(const ConcreteDAG& dag, std::size_t id, std::string_view virtual_name, const repo::Repo& repo) {
    const auto* recipe = repo.find(dag.nodes[id].name);
    if (!recipe) return false;
    return std::any_of(recipe->provides.begin(), recipe->provides.end(), [&](const repo::ProvidesDecl& p) {
        return p.virtual_name == virtual_name && condition_holds(dag, id, p.when, repo);
    });
}

bool condition_holds(const ConcreteDAG& dag, std::size_t id, const AbstractSpec& when, const repo::Repo& repo) {
    std::size_t subject = id;
    if (when.root.name && *when.root.name != dag.nodes[id].name) {
        auto other = dag.find(*when.root.name);
        if (!other) return false;
        subject = *other;
    }
    if (!node_satisfies(dag.nodes[subject], when.root, repo.config)) return false;
    auto kids = dag.children(subject);
    for (const auto& d : when.dependencies) {
        bool found = std::any_of(kids.begin(), kids.end(), [&](std::size_t k) {
            if (repo.is_virtual(*d.name)) return node_provides(dag, k, *d.name, repo);
            return node_satisfies(dag.nodes[k], d, repo.config);
        });
        if (!found) return false;
    }
    return true;
}

std::vector<std::string> check_acyclic(const ConcreteDAG& dag) {
    enum Color { White, Grey, Black };
    std::vector<Color> color(dag.nodes.size(), White);
    std::vector<std::vector<std::size_t>> adj(dag.nodes.size());
    for (const auto& [f, t] : dag.edges) adj[f].push_back(t);
    std::vector<std::string> out;
    std::function<void(std::size_t)> dfs = [&](std::size_t u) {
        color[u] = Grey;
        for (auto v : adj[u]) {
            if (color[v] == Grey) out.push_back("cycle through " + dag.nodes[u].name + " -> " + dag.nodes[v].name);
            else if (color[v] == White) dfs(v);
        }
        color[u] = Black;
    };
    for (std::size_t i = 0; i < dag.nodes.size(); ++i)
        if (color[i] == White) dfs(i);
    return out;
}

std::vector<std::string> check_virtuals_replaced(const ConcreteDAG& dag, const repo::Repo& repo) {
    std::vector<std::string> out;
    for (const auto& n : dag.nodes) {
        if (repo.is_virtual(n.name)) out.push_back("virtual package " + n.name + " left in the DAG");
        else if (!repo.find(n.name)) out.push_back("unknown package " + n.name + " in the DAG");
    }
    return out;
}

std::vector<std::string> check_dependencies_resolved(const ConcreteDAG& dag, const repo::Repo& repo) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < dag.nodes.size(); ++i) {
        const auto& node = dag.nodes[i];
        const auto* recipe = repo.find(node.name);
        if (!recipe) continue;
        auto kids = dag.children(i);
        if (node.build) {
            for (const auto& d : recipe->dependencies) {
                if (!condition_holds(dag, i, d.when, repo)) continue;
                const std::string& target = *d.target.name;
                bool ok = std::any_of(kids.begin(), kids.end(), [&](std::size_t k) {
                    if (repo.is_virtual(target)) return node_provides(dag, k, target, repo);
                    return node_satisfies(dag.nodes[k], d.target, repo.config);
                });
                if (!ok) out.push_back(node.name + " lacks dependency " + spec::render_node(d.target));
            }
        }
        for (const auto& c : recipe->conflicts)
            if (condition_holds(dag, i, c.matcher, repo) && condition_holds(dag, i, c.when, repo))
                out.push_back(node.name + " triggers conflict: " + c.message);
    }
    return out;
}

std::vector<std::string> check_parameters_assigned(const ConcreteDAG& dag, const repo::Repo& repo) {
    std::vector<std::string> out;
    const auto& cfg = repo.config;
    for (const auto& n : dag.nodes) {
        const auto* recipe = repo.find(n.name);
        if (!recipe) continue;
        if (n.version.str().empty()) out.push_back(n.name + " has no version");
        else if (n.build && !recipe->version_index(n.version))
            out.push_back(n.name + " is built at undeclared version " + n.version.str());
        if (n.build == n.hash.has_value()) out.push_back(n.name + " has an inconsistent reuse hash");
        auto comp = std::find_if(cfg.compilers.begin(), cfg.compilers.end(), [&](const repo::CompilerDecl& c) {
            return c.name == n.compiler && c.version == n.compiler_version;
        });
        if (comp == cfg.compilers.end()) {
            out.push_back(n.name + " uses unconfigured compiler " + n.compiler + "@" + n.compiler_version.str());
        } else if (std::find(comp->targets.begin(), comp->targets.end(), n.target) == comp->targets.end()) {
            out.push_back(n.name + ": compiler " + n.compiler + " does not support " + n.target);
        }
        if (!cfg.target(n.target)) out.push_back(n.name + " has unknown target " + n.target);
        if (std::none_of(cfg.operating_systems.begin(), cfg.operating_systems.end(),
                         [&](const repo::OsDecl& o) { return o.name == n.os; }))
            out.push_back(n.name + " has unknown os " + n.os);
        for (const auto& v : recipe->variants) {
            auto it = n.variants.find(v.name);
            if (it == n.variants.end()) out.push_back(n.name + " has no value for variant " + v.name);
            else if (std::find(v.allowed.begin(), v.allowed.end(), it->second) == v.allowed.end())
                out.push_back(n.name + " has disallowed value " + spec::to_string(it->second) + " for " + v.name);
        }
        for (const auto& [name, value] : n.variants)
            if (!recipe->variant(name)) out.push_back(n.name + " has undeclared variant " + name);
    }
    return out;
}

std::vector<std::string> check_input_constraints(const ConcreteDAG& dag, const repo::Repo& repo,
                                                 const std::vector<AbstractSpec>& roots) {
    std::vector<std::string> out;
    auto anywhere = [&](const NodeConstraint& c, bool root_only) {
        for (std::size_t i = 0; i < dag.nodes.size(); ++i) {
            if (root_only && !dag.nodes[i].root) continue;
            if (repo.is_virtual(*c.name) ? node_provides(dag, i, *c.name, repo)
                                         : node_satisfies(dag.nodes[i], c, repo.config))
                return true;
        }
        return false;
    };
    for (const auto& r : roots) {
        if (!r.root.name) continue;
        if (!anywhere(r.root, true)) out.push_back("no root satisfies " + spec::render_node(r.root));
        for (const auto& d : r.dependencies)
            if (!anywhere(d, false)) out.push_back("no node satisfies ^" + spec::render_node(d));
    }
    return out;
}

std::vector<std::string> check_validity(const ConcreteDAG& dag, const repo::Repo& repo,
                                        const std::vector<AbstractSpec>& roots) {
    std::vector<std::string> out;
    for (auto part : {check_acyclic(dag), check_virtuals_replaced(dag, repo), check_dependencies_resolved(dag, repo),
                      check_parameters_assigned(dag, repo), check_input_constraints(dag, repo, roots)})
        out.insert(out.end(), part.begin(), part.end());
    return out;
}

}  // namespace concretix::encode
