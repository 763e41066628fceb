#include "concretix/repo/repo.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace concretix::repo {

using nlohmann::json;

ParseError::ParseError(const std::string& file, std::size_t line, const std::string& message)
    : RepoError(file + (line ? ":" + std::to_string(line) : std::string()) + ": " + message), file_(file), line_(line) {}

EmptyRepo::EmptyRepo(const std::string& path) : RepoError("no package recipes found in " + path) {}

UnknownDependency::UnknownDependency(const std::string& package, const std::string& target)
    : RepoError("package '" + package + "' depends on unknown package '" + target + "'"),
      package_(package),
      target_(target) {}

NoProviderForVirtual::NoProviderForVirtual(const std::string& virtual_name)
    : RepoError("no package provides virtual '" + virtual_name + "'") {}

UnknownPackage::UnknownPackage(const std::string& name) : RepoError("unknown package '" + name + "'"), name_(name) {}

const VariantDecl* PackageRecipe::variant(std::string_view name) const {
    for (const auto& v : variants)
        if (v.name == name) return &v;
    return nullptr;
}

std::optional<std::size_t> PackageRecipe::version_index(const Version& v) const {
    for (std::size_t i = 0; i < versions.size(); ++i)
        if (spec::version_compare(versions[i].version, v) == 0) return i;
    return std::nullopt;
}

RepoConfig RepoConfig::defaults() {
    RepoConfig c;
    c.compilers.push_back({"gcc", Version("11.2.0"), {"x86_64"}});
    c.targets.push_back({"x86_64", 0, std::nullopt});
    c.operating_systems.push_back({"linux", 0});
    return c;
}

const TargetDecl* RepoConfig::target(std::string_view name) const {
    for (const auto& t : targets)
        if (t.name == name) return &t;
    return nullptr;
}

bool RepoConfig::target_descends(std::string_view name, std::string_view ancestor) const {
    std::set<std::string_view> visited;
    std::optional<std::string_view> cur = name;
    while (cur && visited.insert(*cur).second) {
        if (*cur == ancestor) return true;
        const auto* t = target(*cur);
        if (!t || !t->parent) return false;
        cur = *t->parent;
    }
    return false;
}

const PackageRecipe* Repo::find(std::string_view name) const {
    auto it = recipes.find(std::string(name));
    return it == recipes.end() ? nullptr : &it->second;
}

const PackageRecipe& Repo::get(std::string_view name) const {
    if (const auto* r = find(name)) return *r;
    throw UnknownPackage(std::string(name));
}

bool Repo::is_virtual(std::string_view name) const { return virtuals.count(std::string(name)) > 0; }

namespace {

std::size_t line_of(const std::string& text, std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

json parse_json(const std::string& text, const std::string& file) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        std::string msg = e.what();
        auto pos = msg.find("syntax error");
        throw ParseError(file, line_of(text, e.byte ? e.byte - 1 : 0),
                         pos == std::string::npos ? msg : msg.substr(pos));
    }
}

struct Reader {
    const std::string& file;

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(file, 0, msg); }

    const json& field(const json& obj, const char* key, const char* where) const {
        if (!obj.is_object()) fail(std::string(where) + " must be an object");
        auto it = obj.find(key);
        if (it == obj.end()) fail(std::string(where) + " is missing '" + key + "'");
        return *it;
    }

    std::string str(const json& v, const std::string& what) const {
        if (!v.is_string()) fail(what + " must be a string");
        return v.get<std::string>();
    }

    const json& array(const json& obj, const char* key) const {
        static const json empty = json::array();
        auto it = obj.find(key);
        if (it == obj.end() || it->is_null()) return empty;
        if (!it->is_array()) fail(std::string("'") + key + "' must be a list");
        return *it;
    }

    AbstractSpec spec(const std::string& text, const std::string& what) const {
        try {
            return spec::parse_spec(text);
        } catch (const spec::SpecError& e) {
            fail(what + " '" + text + "': " + e.what());
        }
    }

    AbstractSpec when(const json& obj) const {
        auto it = obj.find("when");
        if (it == obj.end() || it->is_null()) return AbstractSpec{};
        return spec(str(*it, "'when'"), "condition");
    }

    Version version(const std::string& text) const {
        try {
            return Version(text);
        } catch (const spec::VersionError& e) {
            fail(e.what());
        }
    }

    VariantValue value(const json& v, const std::string& what) const {
        if (v.is_boolean()) return v.get<bool>();
        if (v.is_string()) return v.get<std::string>();
        fail(what + " must be a boolean or a string");
    }
};

}  // namespace

PackageRecipe parse_recipe(const std::string& text, const std::string& file) {
    json doc = parse_json(text, file);
    Reader rd{file};
    if (!doc.is_object()) rd.fail("recipe must be an object");
    PackageRecipe r;
    r.name = rd.str(rd.field(doc, "name", "recipe"), "'name'");
    if (r.name.empty()) rd.fail("empty package name");

    for (const auto& v : rd.array(doc, "versions")) {
        VersionDecl d;
        if (v.is_string()) {
            d.version = rd.version(v.get<std::string>());
        } else {
            d.version = rd.version(rd.str(rd.field(v, "version", "version entry"), "'version'"));
            d.deprecated = v.value("deprecated", false);
        }
        r.versions.push_back(std::move(d));
    }
    if (r.versions.empty()) rd.fail("package '" + r.name + "' declares no versions");
    for (std::size_t i = 1; i < r.versions.size(); ++i)
        if (spec::version_compare(r.versions[i - 1].version, r.versions[i].version) <= 0)
            rd.fail("versions of '" + r.name + "' must be listed newest first without repeats");

    for (const auto& v : rd.array(doc, "variants")) {
        VariantDecl d;
        d.name = rd.str(rd.field(v, "name", "variant"), "variant name");
        if (r.variant(d.name)) rd.fail("variant '" + d.name + "' declared twice");
        d.default_value = rd.value(rd.field(v, "default", "variant"), "variant default");
        if (std::holds_alternative<bool>(d.default_value)) {
            d.allowed = {VariantValue(false), VariantValue(true)};
        } else {
            for (const auto& a : rd.array(v, "values")) d.allowed.emplace_back(rd.str(a, "variant value"));
            if (d.allowed.empty()) d.allowed.push_back(d.default_value);
            if (std::find(d.allowed.begin(), d.allowed.end(), d.default_value) == d.allowed.end())
                rd.fail("default of variant '" + d.name + "' is not an allowed value");
        }
        r.variants.push_back(std::move(d));
    }

    for (const auto& d : rd.array(doc, "depends")) {
        std::string text_spec = d.is_string() ? d.get<std::string>() : rd.str(rd.field(d, "spec", "dependency"), "'spec'");
        AbstractSpec target = rd.spec(text_spec, "dependency");
        if (!target.root.name) rd.fail("dependency '" + text_spec + "' must name a package");
        if (!target.dependencies.empty()) rd.fail("dependency '" + text_spec + "' cannot constrain its own dependencies");
        if (*target.root.name == r.name) rd.fail("package '" + r.name + "' depends on itself");
        r.dependencies.push_back({target.root, d.is_string() ? AbstractSpec{} : rd.when(d)});
    }

    for (const auto& c : rd.array(doc, "conflicts")) {
        ConflictDecl d;
        std::string m = c.is_string() ? c.get<std::string>() : rd.str(rd.field(c, "spec", "conflict"), "'spec'");
        d.matcher = rd.spec(m, "conflict");
        if (!c.is_string()) {
            d.when = rd.when(c);
            d.message = c.value("message", "");
        }
        if (d.message.empty()) d.message = r.name + ": conflicts with '" + m + "'";
        r.conflicts.push_back(std::move(d));
    }

    for (const auto& p : rd.array(doc, "provides")) {
        ProvidesDecl d;
        d.virtual_name = p.is_string() ? p.get<std::string>() : rd.str(rd.field(p, "virtual", "provides"), "'virtual'");
        if (!p.is_string()) d.when = rd.when(p);
        r.provides.push_back(std::move(d));
    }
    return r;
}

RepoConfig parse_config(const std::string& text, const std::string& file) {
    json doc = parse_json(text, file);
    Reader rd{file};
    if (!doc.is_object()) rd.fail("config must be an object");
    RepoConfig c = RepoConfig::defaults();

    if (doc.contains("targets")) {
        c.targets.clear();
        for (const auto& t : rd.array(doc, "targets")) {
            TargetDecl d;
            d.name = rd.str(rd.field(t, "name", "target"), "target name");
            d.weight = t.value("weight", 0);
            if (t.contains("parent")) d.parent = rd.str(t["parent"], "target parent");
            if (c.target(d.name)) rd.fail("target '" + d.name + "' declared twice");
            c.targets.push_back(std::move(d));
        }
    }
    for (const auto& t : c.targets)
        if (t.parent && !c.target(*t.parent)) rd.fail("target '" + t.name + "' has unknown parent '" + *t.parent + "'");

    if (doc.contains("operating_systems")) {
        c.operating_systems.clear();
        for (const auto& o : rd.array(doc, "operating_systems")) {
            OsDecl d;
            d.name = o.is_string() ? o.get<std::string>() : rd.str(rd.field(o, "name", "operating system"), "os name");
            if (o.is_object()) d.weight = o.value("weight", 0);
            c.operating_systems.push_back(std::move(d));
        }
    }

    if (doc.contains("compilers")) {
        c.compilers.clear();
        for (const auto& cc : rd.array(doc, "compilers")) {
            CompilerDecl d;
            d.name = rd.str(rd.field(cc, "name", "compiler"), "compiler name");
            d.version = rd.version(rd.str(rd.field(cc, "version", "compiler"), "compiler version"));
            for (const auto& t : rd.array(cc, "targets")) d.targets.push_back(rd.str(t, "compiler target"));
            if (!cc.contains("targets"))
                for (const auto& t : c.targets) d.targets.push_back(t.name);
            for (const auto& t : d.targets)
                if (!c.target(t)) rd.fail("compiler " + d.name + "@" + d.version.str() + " supports unknown target '" + t + "'");
            c.compilers.push_back(std::move(d));
        }
    }

    if (doc.contains("preferences")) {
        const json& p = doc["preferences"];
        if (p.contains("providers")) {
            const json& pv = p["providers"];
            if (!pv.is_object()) rd.fail("'providers' must be an object");
            for (auto it = pv.begin(); it != pv.end(); ++it) {
                std::vector<std::string> names;
                if (!it.value().is_array()) rd.fail("providers of '" + it.key() + "' must be a list");
                for (const auto& n : it.value()) names.push_back(rd.str(n, "provider name"));
                c.preferences.providers[it.key()] = std::move(names);
            }
        }
        for (const auto& n : rd.array(p, "compilers")) c.preferences.compilers.push_back(rd.str(n, "compiler name"));
    }
    if (c.targets.empty()) rd.fail("config declares no targets");
    if (c.operating_systems.empty()) rd.fail("config declares no operating systems");
    if (c.compilers.empty()) rd.fail("config declares no compilers");
    return c;
}

Repo make_repo(std::vector<PackageRecipe> recipes, RepoConfig config) {
    Repo repo;
    repo.config = std::move(config);
    for (auto& r : recipes) {
        std::string name = r.name;
        if (!repo.recipes.emplace(name, std::move(r)).second) throw RepoError("package '" + name + "' defined twice");
    }
    for (const auto& [name, r] : repo.recipes) {
        for (const auto& p : r.provides) {
            if (repo.recipes.count(p.virtual_name))
                throw RepoError("'" + p.virtual_name + "' is both a package and a virtual provided by '" + name + "'");
            repo.virtuals[p.virtual_name].push_back(name);
        }
    }
    for (auto& [v, providers] : repo.virtuals) {
        std::sort(providers.begin(), providers.end());
        providers.erase(std::unique(providers.begin(), providers.end()), providers.end());
    }
    for (const auto& [name, r] : repo.recipes)
        for (const auto& d : r.dependencies)
            if (!repo.knows(*d.target.name)) throw UnknownDependency(name, *d.target.name);
    for (const auto& [v, providers] : repo.config.preferences.providers)
        if (!repo.is_virtual(v)) throw NoProviderForVirtual(v);
    return repo;
}

Repo load_repo(const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) throw RepoError("repository '" + dir.string() + "' is not a directory");
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".pkg") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw EmptyRepo(dir.string());

    auto slurp = [](const fs::path& p) {
        std::ifstream in(p);
        if (!in) throw RepoError("cannot read " + p.string());
        std::ostringstream os;
        os << in.rdbuf();
        return os.str();
    };
    std::vector<PackageRecipe> recipes;
    for (const auto& f : files) {
        auto r = parse_recipe(slurp(f), f.filename().string());
        if (r.name != f.stem().string())
            throw ParseError(f.filename().string(), 0, "recipe name '" + r.name + "' does not match file name");
        recipes.push_back(std::move(r));
    }
    RepoConfig config = RepoConfig::defaults();
    if (fs::exists(dir / "config.json")) config = parse_config(slurp(dir / "config.json"), "config.json");
    return make_repo(std::move(recipes), std::move(config));
}

std::set<std::string> possible_dependencies(const Repo& repo, const std::vector<std::string>& roots) {
    std::set<std::string> out;
    std::vector<std::string> stack;
    auto visit = [&](const std::string& name) {
        if (repo.is_virtual(name)) {
            for (const auto& p : repo.virtuals.at(name))
                if (out.insert(p).second) stack.push_back(p);
            return;
        }
        if (!repo.find(name)) throw UnknownPackage(name);
        if (out.insert(name).second) stack.push_back(name);
    };
    for (const auto& r : roots) visit(r);
    while (!stack.empty()) {
        std::string cur = stack.back();
        stack.pop_back();
        for (const auto& d : repo.get(cur).dependencies) visit(*d.target.name);
    }
    return out;
}

namespace {

void check_node_variants(const Repo& repo, const std::string& owner, const NodeConstraint& node,
                         const std::string& default_pkg, const std::string& context, std::vector<Warning>& out) {
    std::string pkg = node.name.value_or(default_pkg);
    if (!repo.knows(pkg)) {
        out.push_back({owner, context + " references unknown package or virtual '" + pkg + "'"});
        return;
    }
    const auto* recipe = repo.find(pkg);
    if (!recipe) return;
    for (const auto& [name, value] : node.variants) {
        const auto* decl = recipe->variant(name);
        if (!decl) {
            out.push_back({owner, context + " references unknown variant '" + name + "' of '" + pkg + "'"});
            continue;
        }
        if (std::find(decl->allowed.begin(), decl->allowed.end(), value) == decl->allowed.end())
            out.push_back({owner, context + " requires value '" + spec::to_string(value) + "' of variant '" + name +
                                      "' of '" + pkg + "', which is not allowed"});
    }
}

void check_spec(const Repo& repo, const std::string& owner, const AbstractSpec& s, const std::string& context,
                std::vector<Warning>& out) {
    check_node_variants(repo, owner, s.root, owner, context, out);
    for (const auto& d : s.dependencies) check_node_variants(repo, owner, d, owner, context, out);
}

}  // namespace

std::vector<Warning> validate_repo(const Repo& repo) {
    std::vector<Warning> out;
    for (const auto& [name, r] : repo.recipes) {
        if (std::all_of(r.versions.begin(), r.versions.end(), [](const VersionDecl& v) { return v.deprecated; }))
            out.push_back({name, "every version is deprecated"});
        for (const auto& v : r.variants) {
            std::vector<VariantValue> seen;
            for (const auto& a : v.allowed) {
                if (std::find(seen.begin(), seen.end(), a) != seen.end())
                    out.push_back({name, "variant '" + v.name + "' lists value '" + spec::to_string(a) + "' twice"});
                seen.push_back(a);
            }
        }
        for (const auto& d : r.dependencies) {
            check_node_variants(repo, name, d.target, name, "dependency on '" + *d.target.name + "'", out);
            check_spec(repo, name, d.when, "dependency condition", out);
            if (repo.is_virtual(*d.target.name) &&
                (!d.target.versions.any() || !d.target.variants.empty()))
                out.push_back({name, "constraints on virtual '" + *d.target.name + "' are ignored"});
        }
        for (const auto& c : r.conflicts) {
            check_spec(repo, name, c.matcher, "conflict", out);
            check_spec(repo, name, c.when, "conflict condition", out);
        }
        for (const auto& p : r.provides) check_spec(repo, name, p.when, "provides condition", out);
    }
    return out;
}

}  // namespace concretix::repo
