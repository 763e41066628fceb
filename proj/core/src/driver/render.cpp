#include "concretix/driver/render.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace concretix::driver {

using encode::ConcreteDAG;
using encode::ConcreteNode;
using nlohmann::json;

namespace {

std::set<std::string> named_variants(const std::vector<spec::AbstractSpec>& inputs, const std::string& pkg) {
    std::set<std::string> out;
    auto add = [&](const spec::NodeConstraint& c) {
        if (c.name && *c.name == pkg)
            for (const auto& [name, value] : c.variants) out.insert(name);
    };
    for (const auto& s : inputs) {
        add(s.root);
        for (const auto& d : s.dependencies) add(d);
    }
    return out;
}

std::string node_line(const ConcreteNode& n, const repo::Repo* repo, const std::vector<spec::AbstractSpec>& inputs) {
    std::string line = n.name + "@" + n.version.str() + "%" + n.compiler + "@" + n.compiler_version.str();
    const auto* recipe = repo ? repo->find(n.name) : nullptr;
    auto named = named_variants(inputs, n.name);
    auto shown = [&](const std::string& var, const spec::VariantValue& value) {
        if (!repo) return true;
        const auto* decl = recipe ? recipe->variant(var) : nullptr;
        return !decl || decl->default_value != value || named.count(var) > 0;
    };
    std::string pairs;
    for (const auto& [var, value] : n.variants) {
        if (!shown(var, value)) continue;
        if (const bool* b = std::get_if<bool>(&value)) line += (*b ? "+" : "~") + var;
        else pairs += " " + var + "=" + std::get<std::string>(value);
    }
    line += pairs + " arch=" + n.os + "-" + n.target;
    if (!n.build) line += "  [installed] /" + n.hash->substr(0, 7);
    return line;
}

}  // namespace

std::string render_tree(const ConcreteDAG& dag, const repo::Repo* repo, const std::vector<spec::AbstractSpec>& inputs) {
    std::string out;
    std::vector<bool> seen(dag.nodes.size(), false);
    std::function<void(std::size_t, std::size_t)> visit = [&](std::size_t id, std::size_t depth) {
        seen[id] = true;
        out += std::string(depth * 4, ' ');
        if (depth) out += '^';
        out += node_line(dag.nodes[id], repo, inputs) + "\n";
        for (auto c : dag.children(id))
            if (!seen[c]) visit(c, depth + 1);
    };
    for (auto r : dag.roots())
        if (!seen[r]) visit(r, 0);
    for (std::size_t i = 0; i < dag.nodes.size(); ++i)
        if (!seen[i]) visit(i, 0);
    return out;
}

std::string render_json(const ConcreteDAG& dag) {
    json nodes = json::array();
    for (const auto& n : dag.nodes) {
        json variants = json::object();
        for (const auto& [k, v] : n.variants) {
            if (const bool* b = std::get_if<bool>(&v)) variants[k] = *b;
            else variants[k] = std::get<std::string>(v);
        }
        json node = {{"name", n.name},
                     {"version", n.version.str()},
                     {"variants", variants},
                     {"compiler", {{"name", n.compiler}, {"version", n.compiler_version.str()}}},
                     {"os", n.os},
                     {"target", n.target},
                     {"build", n.build},
                     {"root", n.root}};
        if (n.hash) node["hash"] = *n.hash;
        nodes.push_back(std::move(node));
    }
    json edges = json::array();
    for (const auto& [f, t] : dag.edges) edges.push_back({dag.nodes[f].name, dag.nodes[t].name});
    return json{{"nodes", nodes}, {"edges", edges}}.dump(2) + "\n";
}

ConcreteDAG parse_json(std::string_view text) {
    try {
        auto doc = json::parse(text);
        ConcreteDAG dag;
        for (const auto& j : doc.at("nodes")) {
            ConcreteNode n;
            n.name = j.at("name").get<std::string>();
            n.version = spec::Version(j.at("version").get<std::string>());
            for (auto it = j.at("variants").begin(); it != j.at("variants").end(); ++it) {
                if (it.value().is_boolean()) n.variants[it.key()] = it.value().get<bool>();
                else n.variants[it.key()] = it.value().get<std::string>();
            }
            n.compiler = j.at("compiler").at("name").get<std::string>();
            n.compiler_version = spec::Version(j.at("compiler").at("version").get<std::string>());
            n.os = j.at("os").get<std::string>();
            n.target = j.at("target").get<std::string>();
            n.build = j.at("build").get<bool>();
            n.root = j.value("root", false);
            if (j.contains("hash")) n.hash = j.at("hash").get<std::string>();
            dag.nodes.push_back(std::move(n));
        }
        std::sort(dag.nodes.begin(), dag.nodes.end(),
                  [](const ConcreteNode& a, const ConcreteNode& b) { return a.name < b.name; });
        for (const auto& e : doc.at("edges")) {
            auto f = dag.find(e.at(0).get<std::string>()), t = dag.find(e.at(1).get<std::string>());
            if (!f || !t) throw std::invalid_argument("edge refers to an unknown node");
            dag.edges.emplace_back(*f, *t);
        }
        std::sort(dag.edges.begin(), dag.edges.end());
        return dag;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed DAG document: ") + e.what());
    }
}

std::string render_diagnostic(const diag::Diagnostic& d, bool with_stats) {
    std::string out;
    for (const auto& m : d.messages) out += "error: " + m + "\n";
    if (with_stats) out += diag::core_stats(d) + "\n";
    return out;
}

std::string render_diagnostic_json(const diag::Diagnostic& d) {
    json j = {{"satisfiable", false},
              {"errors", d.messages},
              {"minimal", d.minimal},
              {"stats",
               {{"initial_size", d.stats.initial_size},
                {"final_size", d.stats.final_size},
                {"extra_solves", d.stats.extra_solves}}}};
    return j.dump(2) + "\n";
}

}  // namespace concretix::driver
