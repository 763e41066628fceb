#include "concretix/encode/encoder.hpp"

#include <algorithm>
#include <sstream>

namespace concretix::encode {

using repo::PackageRecipe;
using repo::Repo;
using spec::AbstractSpec;
using spec::NodeConstraint;
using spec::Version;

namespace {

std::string q(std::string_view s) { return logic::quote_string(s); }

std::string atom_text(std::string_view pred, const std::vector<std::string>& args) {
    std::string out(pred);
    if (args.empty()) return out + ".\n";
    out += '(';
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out += ',';
        out += args[i];
    }
    out += ").\n";
    return out;
}

// How an attribute is written: as a requirement of a condition, as a
// constraint imposed by a condition or hash, or as a plain fact.
enum class Mode { Require, Impose, Fact };

class FactWriter {
public:
    explicit FactWriter(const Repo* repo) : repo_(repo) {}

    std::string text;
    std::set<std::pair<std::string, std::string>> version_ranges;
    std::set<std::pair<std::string, std::string>> compiler_ranges;
    std::set<std::string> target_ranges;

    void fact(std::string_view pred, const std::vector<std::string>& args) { text += atom_text(pred, args); }
    void comment(std::string_view c) {
        text += "\n% ";
        text += c;
        text += '\n';
    }

    void attribute(Mode mode, const std::string& id, std::string_view name, std::vector<std::string> args) {
        args.insert(args.begin(), q(name));
        switch (mode) {
            case Mode::Require: args.insert(args.begin(), id); emit_once("condition_requirement", args); break;
            case Mode::Impose: args.insert(args.begin(), id); emit_once("imposed_constraint", args); break;
            case Mode::Fact: emit_once("attr", args); break;
        }
    }

    void emit_once(std::string_view pred, const std::vector<std::string>& args) {
        std::string line = atom_text(pred, args);
        if (emitted_.insert(line).second) text += line;
    }

    bool is_virtual(const std::string& name) const { return repo_ && repo_->is_virtual(name); }

    // Attributes a node must have for a condition to hold.
    void require_node(const std::string& id, const std::string& pkg, const NodeConstraint& c) {
        attribute(Mode::Require, id, "node", {q(pkg)});
        if (!c.versions.any()) {
            std::string r = c.versions.to_string();
            version_ranges.emplace(pkg, r);
            attribute(Mode::Require, id, "version_satisfies", {q(pkg), q(r)});
        }
        if (c.compiler) {
            attribute(Mode::Require, id, "node_compiler", {q(pkg), q(c.compiler->name)});
            if (!c.compiler->versions.any()) {
                std::string r = c.compiler->versions.to_string();
                compiler_ranges.emplace(c.compiler->name, r);
                attribute(Mode::Require, id, "node_compiler_version_satisfies", {q(pkg), q(c.compiler->name), q(r)});
            }
        }
        for (const auto& [name, value] : c.variants)
            attribute(Mode::Require, id, "variant_value", {q(pkg), q(name), q(spec::to_string(value))});
        if (c.target) {
            target_ranges.insert(*c.target);
            attribute(Mode::Require, id, "node_target_satisfies", {q(pkg), q(*c.target)});
        }
        if (c.os) attribute(Mode::Require, id, "node_os", {q(pkg), q(*c.os)});
    }

    // A `when` spec on `pkg`; `^dep` requires a direct dependency.
    void require_spec(const std::string& id, const std::string& pkg, const AbstractSpec& s) {
        std::string subject = s.root.name.value_or(pkg);
        if (s.root.name && *s.root.name != pkg) attribute(Mode::Require, id, "node", {q(pkg)});
        require_node(id, subject, s.root);
        for (const auto& d : s.dependencies) {
            if (is_virtual(*d.name)) {
                attribute(Mode::Require, id, "virtual_on_edge", {q(subject), q(*d.name)});
                continue;
            }
            attribute(Mode::Require, id, "depends_on", {q(subject), q(*d.name)});
            require_node(id, *d.name, d);
        }
    }

    // Constraints placed on a node, either imposed by a condition or given
    // by the user (Mode::Fact). Versions go through version_satisfies in
    // both cases.
    void constrain_node(Mode mode, const std::string& id, const std::string& pkg, const NodeConstraint& c) {
        if (!c.versions.any()) {
            std::string r = c.versions.to_string();
            version_ranges.emplace(pkg, r);
            if (mode == Mode::Fact) fact("version_satisfies", {q(pkg), q(r)});
            else attribute(mode, id, "version_satisfies", {q(pkg), q(r)});
        }
        if (c.compiler) {
            attribute(mode, id, "node_compiler_set", {q(pkg), q(c.compiler->name)});
            if (!c.compiler->versions.any()) {
                std::string r = c.compiler->versions.to_string();
                compiler_ranges.emplace(c.compiler->name, r);
                attribute(mode, id, "node_compiler_version_satisfies", {q(pkg), q(c.compiler->name), q(r)});
            }
        }
        for (const auto& [name, value] : c.variants)
            attribute(mode, id, "variant_set", {q(pkg), q(name), q(spec::to_string(value))});
        if (c.target) {
            target_ranges.insert(*c.target);
            attribute(mode, id, "node_target_satisfies", {q(pkg), q(*c.target)});
        }
        if (c.os) attribute(mode, id, "node_os_set", {q(pkg), q(*c.os)});
    }

private:
    const Repo* repo_;
    std::set<std::string> emitted_;
};

std::string when_suffix(const AbstractSpec& when) {
    std::string w = spec::render_spec(when);
    return w.empty() ? "" : ", when=" + q(w);
}

void write_conflict(FactWriter& w, const PackageRecipe& recipe, const repo::ConflictDecl& c, ConditionId id) {
    std::string sid = std::to_string(id);
    w.fact("condition", {sid});
    w.attribute(Mode::Require, sid, "node", {q(recipe.name)});
    w.require_spec(sid, recipe.name, c.matcher);
    w.require_spec(sid, recipe.name, c.when);
    w.fact("conflict", {sid, q(c.message)});
}

struct CompilerRank {
    std::size_t preference;
    std::string name;
    Version version;
};

std::size_t compiler_preference(const repo::RepoConfig& config, const repo::CompilerDecl& c) {
    const auto& prefs = config.preferences.compilers;
    for (std::size_t i = 0; i < prefs.size(); ++i) {
        auto at = prefs[i].find('@');
        if (prefs[i].substr(0, at) != c.name) continue;
        if (at == std::string::npos) return i;
        if (spec::version_satisfies(c.version, spec::VersionConstraint::parse(prefs[i].substr(at + 1)))) return i;
    }
    return prefs.size();
}

class ProblemEncoder {
public:
    ProblemEncoder(const Repo& repo, const std::vector<AbstractSpec>& roots, const repo::InstalledDatabase* installed,
                   const EncodeOptions& options)
        : repo_(repo), roots_(roots), installed_(installed), options_(options), w_(&repo) {}

    EncodedProblem run() {
        check_roots();
        select_installed();
        check_root_versions();

        EncodedProblem p;
        p.plan = options_.plan;
        p.reuse = options_.reuse;
        p.roots = roots_;
        p.possible = possible_;
        for (const auto& [v, providers] : repo_.virtuals) p.virtuals.insert(v);
        for (const auto& name : possible_) {
            auto& defaults = p.variant_defaults[name];
            for (const auto& v : repo_.get(name).variants) defaults[v.name] = v.default_value;
        }

        write_errors(p);
        write_platform();
        write_virtuals();
        for (const auto& name : possible_) write_package(repo_.get(name), p);
        write_roots();
        write_installed();
        write_ranges();

        p.facts = std::move(w_.text);
        p.logic_program = fixed_logic_program();
        p.objectives = build_objectives(options_.plan, options_.reuse);
        return p;
    }

private:
    void check_roots() {
        std::vector<std::string> names;
        for (const auto& r : roots_) {
            if (!r.root.name) throw spec::SpecError("a root spec must name a package");
            if (!repo_.knows(*r.root.name)) throw repo::UnknownPackage(*r.root.name);
            names.push_back(*r.root.name);
            for (const auto& d : r.dependencies)
                if (!repo_.knows(*d.name)) throw repo::UnknownPackage(*d.name);
        }
        possible_ = repo::possible_dependencies(repo_, names);
    }

    // Installed entries usable in this solve: known package, configured
    // platform, variants the recipe still declares, usable dependencies.
    void select_installed() {
        if (!options_.reuse || !installed_) return;
        const auto& cfg = repo_.config;
        std::set<std::string> ok;
        for (const auto& [hash, e] : installed_->entries) {
            if (!possible_.count(e.name)) continue;
            const auto& recipe = repo_.get(e.name);
            bool good = cfg.target(e.target) != nullptr;
            good = good && std::any_of(cfg.operating_systems.begin(), cfg.operating_systems.end(),
                                       [&](const repo::OsDecl& o) { return o.name == e.os; });
            good = good && std::any_of(cfg.compilers.begin(), cfg.compilers.end(), [&](const repo::CompilerDecl& c) {
                       return c.name == e.compiler && c.version == e.compiler_version;
                   });
            for (const auto& [name, value] : e.variants) {
                const auto* decl = recipe.variant(name);
                good = good && decl && std::find(decl->allowed.begin(), decl->allowed.end(), value) != decl->allowed.end();
            }
            if (good) ok.insert(hash);
        }
        bool changed = true;
        while (changed) {
            changed = false;
            for (auto it = ok.begin(); it != ok.end();) {
                const auto& deps = installed_->entries.at(*it).dependencies;
                if (std::all_of(deps.begin(), deps.end(), [&](const std::string& d) { return ok.count(d) > 0; })) {
                    ++it;
                } else {
                    it = ok.erase(it);
                    changed = true;
                }
            }
        }
        for (const auto& h : ok) {
            const auto& e = installed_->entries.at(h);
            usable_.push_back(&e);
            const auto& recipe = repo_.get(e.name);
            if (!recipe.version_index(e.version)) extra_versions_[e.name].insert(e.version.str());
        }
        std::sort(usable_.begin(), usable_.end(), [](const repo::InstalledSpec* a, const repo::InstalledSpec* b) {
            return std::tie(a->name, a->hash) < std::tie(b->name, b->hash);
        });
    }

    // Versions of `pkg` as written in the facts: declared ones, then
    // installed versions the recipe does not declare.
    std::vector<std::string> versions_of(const PackageRecipe& r) const {
        std::vector<std::string> out;
        for (const auto& v : r.versions) out.push_back(v.version.str());
        if (auto it = extra_versions_.find(r.name); it != extra_versions_.end())
            out.insert(out.end(), it->second.begin(), it->second.end());
        return out;
    }

    std::string declared_text(const PackageRecipe& r, const Version& v) const {
        if (auto i = r.version_index(v)) return r.versions[*i].version.str();
        return v.str();
    }

    void check_root_versions() const {
        auto check = [&](const NodeConstraint& c) {
            const auto* recipe = repo_.find(*c.name);
            if (!recipe || c.versions.any()) return;
            for (const auto& v : versions_of(*recipe))
                if (spec::version_satisfies(Version(v), c.versions)) return;
            throw UnsatisfiableInput("no version of " + *c.name + " satisfies @" + c.versions.to_string());
        };
        for (const auto& r : roots_) {
            check(r.root);
            for (const auto& d : r.dependencies) check(d);
        }
    }

    void write_errors(EncodedProblem& p) {
        std::set<std::string> messages;
        for (const auto& name : possible_)
            for (const auto& c : repo_.get(name).conflicts) messages.insert(c.message);
        for (const auto& m : fixed_error_messages()) messages.erase(m);
        w_.comment("assumable error terms");
        auto add = [&](const std::string& m) {
            w_.fact("error_message", {q(m)});
            p.assumptions.push_back(error_atom(m));
        };
        for (const auto& m : fixed_error_messages()) add(m);
        for (const auto& m : messages) add(m);
        if (options_.reuse) w_.fact("optimize_for_reuse", {});
    }

    void write_platform() {
        const auto& cfg = repo_.config;
        w_.comment("platform");
        for (const auto& o : cfg.operating_systems) {
            w_.fact("os", {q(o.name)});
            w_.fact("os_weight", {q(o.name), std::to_string(o.weight)});
        }
        for (const auto& t : cfg.targets) {
            w_.fact("target", {q(t.name)});
            w_.fact("target_weight", {q(t.name), std::to_string(t.weight)});
        }
        std::vector<const repo::CompilerDecl*> order;
        for (const auto& c : cfg.compilers) order.push_back(&c);
        std::stable_sort(order.begin(), order.end(), [&](const repo::CompilerDecl* a, const repo::CompilerDecl* b) {
            auto pa = compiler_preference(cfg, *a), pb = compiler_preference(cfg, *b);
            if (pa != pb) return pa < pb;
            if (a->name != b->name) return a->name < b->name;
            return spec::version_compare(a->version, b->version) > 0;
        });
        for (std::size_t i = 0; i < order.size(); ++i) {
            const auto& c = *order[i];
            w_.fact("compiler_version", {q(c.name), q(c.version.str())});
            w_.fact("compiler_weight", {q(c.name), q(c.version.str()), std::to_string(i)});
            for (const auto& t : c.targets) w_.fact("compiler_supports_target", {q(c.name), q(c.version.str()), q(t)});
        }
    }

    void write_virtuals() {
        w_.comment("virtual packages");
        for (const auto& [v, providers] : repo_.virtuals) {
            w_.fact("virtual", {q(v)});
            std::vector<std::string> order;
            if (auto it = repo_.config.preferences.providers.find(v); it != repo_.config.preferences.providers.end())
                for (const auto& p : it->second)
                    if (std::find(providers.begin(), providers.end(), p) != providers.end() &&
                        std::find(order.begin(), order.end(), p) == order.end())
                        order.push_back(p);
            for (const auto& p : providers)
                if (std::find(order.begin(), order.end(), p) == order.end()) order.push_back(p);
            for (std::size_t i = 0; i < order.size(); ++i) {
                if (!possible_.count(order[i])) continue;
                w_.fact("possible_provider", {q(v), q(order[i])});
                w_.fact("provider_weight", {q(v), q(order[i]), std::to_string(i)});
            }
        }
    }

    void write_package(const PackageRecipe& r, EncodedProblem& p) {
        w_.comment("package " + r.name);
        const std::string name = q(r.name);
        auto versions = versions_of(r);
        for (std::size_t i = 0; i < versions.size(); ++i) {
            std::size_t weight = std::min(i, r.versions.size());
            w_.fact("version_declared", {name, q(versions[i]), std::to_string(weight)});
            if (i < r.versions.size() && r.versions[i].deprecated) w_.fact("deprecated_version", {name, q(versions[i])});
        }
        for (const auto& v : r.variants) {
            w_.fact("variant", {name, q(v.name)});
            for (const auto& a : v.allowed) w_.fact("variant_possible_value", {name, q(v.name), q(spec::to_string(a))});
            w_.fact("variant_default", {name, q(v.name), q(spec::to_string(v.default_value))});
        }
        for (const auto& d : r.dependencies) {
            ConditionId id = next_id_++;
            std::string sid = std::to_string(id);
            const std::string& target = *d.target.name;
            w_.fact("condition", {sid});
            w_.attribute(Mode::Require, sid, "node", {name});
            w_.require_spec(sid, r.name, d.when);
            if (!repo_.is_virtual(target)) w_.constrain_node(Mode::Impose, sid, target, d.target);
            w_.fact("dependency_condition", {sid, name, q(target)});
            p.provenance[id] = {r.name, "depends_on(" + q(spec::render_node(d.target)) + when_suffix(d.when) + ")", ""};
        }
        for (const auto& c : r.conflicts) {
            ConditionId id = next_id_++;
            write_conflict(w_, r, c, id);
            p.provenance[id] = {r.name, "conflicts(" + q(spec::render_spec(c.matcher)) + when_suffix(c.when) + ")",
                                c.message};
        }
        for (const auto& pr : r.provides) {
            ConditionId id = next_id_++;
            std::string sid = std::to_string(id);
            w_.fact("condition", {sid});
            w_.attribute(Mode::Require, sid, "node", {name});
            w_.require_spec(sid, r.name, pr.when);
            w_.fact("provider_condition", {sid, name, q(pr.virtual_name)});
            p.provenance[id] = {r.name, "provides(" + q(pr.virtual_name) + when_suffix(pr.when) + ")", ""};
        }
    }

    void write_roots() {
        w_.comment("requested specs");
        for (const auto& r : roots_) {
            const std::string& name = *r.root.name;
            if (repo_.is_virtual(name)) {
                w_.fact("virtual_root", {q(name)});
            } else {
                w_.fact("root", {q(name)});
                w_.fact("node", {q(name)});
                w_.constrain_node(Mode::Fact, "", name, r.root);
            }
            for (const auto& d : r.dependencies) {
                w_.fact("user_dependency", {q(*d.name)});
                if (!repo_.is_virtual(*d.name)) w_.constrain_node(Mode::Fact, "", *d.name, d);
            }
        }
    }

    void write_installed() {
        if (usable_.empty()) return;
        w_.comment("installed packages");
        for (const auto* e : usable_) {
            const auto& recipe = repo_.get(e->name);
            std::string h = q(e->hash), n = q(e->name);
            w_.fact("installed_hash", {n, h});
            w_.attribute(Mode::Impose, h, "node", {n});
            w_.attribute(Mode::Impose, h, "version", {n, q(declared_text(recipe, e->version))});
            w_.attribute(Mode::Impose, h, "node_compiler_version", {n, q(e->compiler), q(e->compiler_version.str())});
            w_.attribute(Mode::Impose, h, "node_os", {n, q(e->os)});
            w_.attribute(Mode::Impose, h, "node_target", {n, q(e->target)});
            for (const auto& [var, value] : e->variants)
                w_.attribute(Mode::Impose, h, "variant_set", {n, q(var), q(spec::to_string(value))});
            for (const auto& dh : e->dependencies) {
                const auto& dep = installed_->entries.at(dh);
                w_.attribute(Mode::Impose, h, "depends_on", {n, q(dep.name)});
                w_.attribute(Mode::Impose, h, "hash", {q(dep.name), q(dh)});
            }
        }
    }

    void write_ranges() {
        w_.comment("constraint ranges");
        for (const auto& [pkg, range] : w_.version_ranges) {
            const auto* r = repo_.find(pkg);
            if (!r || !possible_.count(pkg)) continue;
            auto c = spec::VersionConstraint::parse(range);
            for (const auto& v : versions_of(*r))
                if (spec::version_satisfies(Version(v), c)) w_.fact("version_in_range", {q(pkg), q(range), q(v)});
        }
        for (const auto& [comp, range] : w_.compiler_ranges) {
            auto c = spec::VersionConstraint::parse(range);
            for (const auto& decl : repo_.config.compilers)
                if (decl.name == comp && spec::version_satisfies(decl.version, c))
                    w_.fact("compiler_version_in_range", {q(comp), q(range), q(decl.version.str())});
        }
        for (const auto& range : w_.target_ranges) {
            bool descendants = !range.empty() && range.back() == ':';
            std::string base = descendants ? range.substr(0, range.size() - 1) : range;
            for (const auto& t : repo_.config.targets) {
                bool match = descendants ? repo_.config.target_descends(t.name, base) : t.name == base;
                if (match) w_.fact("target_satisfies", {q(range), q(t.name)});
            }
        }
    }

    const Repo& repo_;
    const std::vector<AbstractSpec>& roots_;
    const repo::InstalledDatabase* installed_;
    EncodeOptions options_;
    FactWriter w_;
    std::set<std::string> possible_;
    std::vector<const repo::InstalledSpec*> usable_;
    std::map<std::string, std::set<std::string>> extra_versions_;
    ConditionId next_id_ = 1;
};

}  // namespace

std::string EncodedProblem::text() const { return logic_program + "\n" + objectives + "\n" + facts; }

EncodedProblem encode_problem(const Repo& repo, const std::vector<AbstractSpec>& roots,
                              const repo::InstalledDatabase* installed, const EncodeOptions& options) {
    return ProblemEncoder(repo, roots, installed, options).run();
}

std::string encode_conflict(const PackageRecipe& recipe, const repo::ConflictDecl& conflict, ConditionId id,
                            const Repo* repo) {
    FactWriter w(repo);
    write_conflict(w, recipe, conflict, id);
    return w.text;
}

}  // namespace concretix::encode
