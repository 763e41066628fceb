#include "concretix/encode/dag.hpp"

#include <algorithm>

namespace concretix::encode {

std::optional<std::size_t> ConcreteDAG::find(std::string_view name) const {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), name,
                               [](const ConcreteNode& n, std::string_view s) { return n.name < s; });
    if (it == nodes.end() || it->name != name) return std::nullopt;
    return static_cast<std::size_t>(it - nodes.begin());
}

std::vector<std::size_t> ConcreteDAG::children(std::size_t id) const {
    std::vector<std::size_t> out;
    for (const auto& [from, to] : edges)
        if (from == id) out.push_back(to);
    return out;
}

std::vector<std::size_t> ConcreteDAG::roots() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].root) out.push_back(i);
    return out;
}

std::size_t ConcreteDAG::built_count() const {
    return static_cast<std::size_t>(std::count_if(nodes.begin(), nodes.end(), [](const ConcreteNode& n) { return n.build; }));
}

namespace {

struct PartialNode {
    bool present = false;
    bool root = false;
    std::vector<std::string> versions;
    std::map<std::string, std::vector<std::string>> variants;
    std::vector<std::pair<std::string, std::string>> compilers;
    std::vector<std::string> oses, targets, hashes;
};

template <class T>
const T& exactly_one(const std::vector<T>& values, const std::string& node, const char* what) {
    if (values.size() != 1)
        throw MalformedModel("node " + node + " has " + std::to_string(values.size()) + " " + what + " values");
    return values.front();
}

}  // namespace

ConcreteDAG decode_atoms(const std::vector<logic::GroundAtom>& atoms, const EncodedProblem& problem) {
    std::map<std::string, PartialNode> parts;
    std::set<std::pair<std::string, std::string>> edges;
    for (const auto& a : atoms) {
        std::string_view pred = a.predicate.str();
        auto arg = [&](std::size_t i) { return std::string(a.args[i].text()); };
        if (pred == "root" && a.args.size() == 1) {
            parts[arg(0)].root = true;
            continue;
        }
        if (pred != "attr" || a.args.size() < 2) continue;
        std::string kind = arg(0);
        std::size_t n = a.args.size();
        if (kind == "node" && n == 2) parts[arg(1)].present = true;
        else if (kind == "version" && n == 3) parts[arg(1)].versions.push_back(arg(2));
        else if (kind == "variant_value" && n == 4) parts[arg(1)].variants[arg(2)].push_back(arg(3));
        else if (kind == "node_compiler_version" && n == 4) parts[arg(1)].compilers.emplace_back(arg(2), arg(3));
        else if (kind == "node_os" && n == 3) parts[arg(1)].oses.push_back(arg(2));
        else if (kind == "node_target" && n == 3) parts[arg(1)].targets.push_back(arg(2));
        else if (kind == "hash" && n == 3) parts[arg(1)].hashes.push_back(arg(2));
        else if (kind == "depends_on" && n == 3) edges.emplace(arg(1), arg(2));
    }

    ConcreteDAG dag;
    for (const auto& [name, p] : parts) {
        if (!p.present) continue;
        if (problem.virtuals.count(name)) throw MalformedModel("virtual package " + name + " appears as a node");
        ConcreteNode node;
        node.name = name;
        node.root = p.root;
        node.version = spec::Version(exactly_one(p.versions, name, "version"));
        const auto& [cname, cver] = exactly_one(p.compilers, name, "compiler");
        node.compiler = cname;
        node.compiler_version = spec::Version(cver);
        node.os = exactly_one(p.oses, name, "os");
        node.target = exactly_one(p.targets, name, "target");
        if (!p.hashes.empty()) {
            node.hash = exactly_one(p.hashes, name, "hash");
            node.build = false;
        }
        auto defaults = problem.variant_defaults.find(name);
        if (defaults != problem.variant_defaults.end()) {
            for (const auto& [var, def] : defaults->second) {
                auto it = p.variants.find(var);
                if (it == p.variants.end()) throw MalformedModel("node " + name + " has no value for variant " + var);
                const std::string& value = exactly_one(it->second, name, ("variant " + var).c_str());
                if (std::holds_alternative<bool>(def)) node.variants[var] = value == "true";
                else node.variants[var] = value;
            }
        }
        dag.nodes.push_back(std::move(node));
    }
    for (const auto& [from, to] : edges) {
        auto f = dag.find(from), t = dag.find(to);
        if (f && t) dag.edges.emplace_back(*f, *t);
    }
    std::sort(dag.edges.begin(), dag.edges.end());
    return dag;
}

ConcreteDAG decode_model(const logic::GroundProgram& gp, const logic::Model& model, const EncodedProblem& problem) {
    std::vector<logic::GroundAtom> atoms;
    atoms.reserve(model.true_atoms.size());
    for (auto id : model.true_atoms) atoms.push_back(gp.atom(id));
    return decode_atoms(atoms, problem);
}

}  // namespace concretix::encode
