#include "concretix/repo/repo.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

namespace concretix::repo {

using nlohmann::json;

DanglingHash::DanglingHash(const std::string& owner, const std::string& hash)
    : RepoError("installed package '" + owner + "' depends on unknown hash '" + hash + "'"), hash_(hash) {}

void InstalledDatabase::validate() const {
    for (const auto& [hash, e] : entries)
        for (const auto& d : e.dependencies)
            if (!entries.count(d)) throw DanglingHash(e.name + "/" + hash, d);
}

std::string InstalledDatabase::to_json() const {
    json arr = json::array();
    for (const auto& [hash, e] : entries) {
        json variants = json::object();
        for (const auto& [k, v] : e.variants) {
            if (const bool* b = std::get_if<bool>(&v)) variants[k] = *b;
            else variants[k] = std::get<std::string>(v);
        }
        arr.push_back({{"hash", hash},
                       {"name", e.name},
                       {"version", e.version.str()},
                       {"variants", variants},
                       {"compiler", {{"name", e.compiler}, {"version", e.compiler_version.str()}}},
                       {"os", e.os},
                       {"target", e.target},
                       {"dependencies", e.dependencies}});
    }
    return json{{"installed", arr}}.dump(2);
}

namespace {

[[noreturn]] void fail(const std::string& file, const std::string& msg) { throw ParseError(file, 0, msg); }

std::string get_str(const json& obj, const char* key, const std::string& file) {
    auto it = obj.find(key);
    if (it == obj.end() || !it->is_string()) fail(file, std::string("installed entry needs a string '") + key + "'");
    return it->get<std::string>();
}

Version get_version(const std::string& text, const std::string& file) {
    try {
        return Version(text);
    } catch (const spec::VersionError& e) {
        fail(file, e.what());
    }
}

}  // namespace

InstalledDatabase parse_installed(const std::string& text, const std::string& file) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i)
            if (text[i] == '\n') ++line;
        throw ParseError(file, line, "invalid JSON");
    }
    const json* list = &doc;
    if (doc.is_object()) {
        auto it = doc.find("installed");
        if (it == doc.end()) fail(file, "expected an 'installed' list");
        list = &*it;
    }
    if (!list->is_array()) fail(file, "installed database must be a list");

    InstalledDatabase db;
    for (const auto& e : *list) {
        if (!e.is_object()) fail(file, "installed entry must be an object");
        InstalledSpec s;
        s.hash = get_str(e, "hash", file);
        s.name = get_str(e, "name", file);
        s.version = get_version(get_str(e, "version", file), file);
        if (auto it = e.find("variants"); it != e.end()) {
            if (!it->is_object()) fail(file, "'variants' must be an object");
            for (auto v = it->begin(); v != it->end(); ++v) {
                if (v.value().is_boolean()) s.variants[v.key()] = v.value().get<bool>();
                else if (v.value().is_string()) s.variants[v.key()] = v.value().get<std::string>();
                else fail(file, "variant '" + v.key() + "' must be a boolean or a string");
            }
        }
        auto comp = e.find("compiler");
        if (comp == e.end()) fail(file, "installed entry '" + s.hash + "' has no compiler");
        if (comp->is_string()) {
            auto text_c = comp->get<std::string>();
            auto at = text_c.find('@');
            if (at == std::string::npos) fail(file, "compiler must be written name@version");
            s.compiler = text_c.substr(0, at);
            s.compiler_version = get_version(text_c.substr(at + 1), file);
        } else {
            s.compiler = get_str(*comp, "name", file);
            s.compiler_version = get_version(get_str(*comp, "version", file), file);
        }
        s.os = get_str(e, "os", file);
        s.target = get_str(e, "target", file);
        if (auto it = e.find("dependencies"); it != e.end()) {
            if (!it->is_array()) fail(file, "'dependencies' must be a list of hashes");
            for (const auto& d : *it) {
                if (!d.is_string()) fail(file, "dependency hashes must be strings");
                s.dependencies.push_back(d.get<std::string>());
            }
        }
        std::string hash = s.hash;
        if (!db.entries.emplace(hash, std::move(s)).second) fail(file, "hash '" + hash + "' appears twice");
    }
    db.validate();
    return db;
}

InstalledDatabase load_installed(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw RepoError("cannot read installed database " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return parse_installed(os.str(), path.filename().string());
}

}  // namespace concretix::repo
