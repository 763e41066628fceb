#pragma once

#include "concretix/spec/spec.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace concretix::repo {

using spec::AbstractSpec;
using spec::NodeConstraint;
using spec::VariantValue;
using spec::Version;

class RepoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public RepoError {
public:
    ParseError(const std::string& file, std::size_t line, const std::string& message);
    const std::string& file() const noexcept { return file_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::string file_;
    std::size_t line_;
};

class EmptyRepo : public RepoError {
public:
    explicit EmptyRepo(const std::string& path);
};

class UnknownDependency : public RepoError {
public:
    UnknownDependency(const std::string& package, const std::string& target);
    const std::string& package() const noexcept { return package_; }
    const std::string& target() const noexcept { return target_; }

private:
    std::string package_, target_;
};

class NoProviderForVirtual : public RepoError {
public:
    explicit NoProviderForVirtual(const std::string& virtual_name);
};

class UnknownPackage : public RepoError {
public:
    explicit UnknownPackage(const std::string& name);
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

struct VersionDecl {
    Version version;
    bool deprecated = false;
};

/// A boolean variant has allowed values {true, false}; a valued variant lists
/// its allowed strings.
struct VariantDecl {
    std::string name;
    VariantValue default_value;
    std::vector<VariantValue> allowed;
};

struct DependencyDecl {
    NodeConstraint target;
    AbstractSpec when;
};

struct ConflictDecl {
    AbstractSpec matcher;
    AbstractSpec when;
    std::string message;
};

struct ProvidesDecl {
    std::string virtual_name;
    AbstractSpec when;
};

struct PackageRecipe {
    std::string name;
    std::vector<VersionDecl> versions;  // newest first; index is the preference weight
    std::vector<VariantDecl> variants;
    std::vector<DependencyDecl> dependencies;
    std::vector<ConflictDecl> conflicts;
    std::vector<ProvidesDecl> provides;

    const VariantDecl* variant(std::string_view name) const;
    std::optional<std::size_t> version_index(const Version& v) const;
};

struct CompilerDecl {
    std::string name;
    Version version;
    std::vector<std::string> targets;
};

/// Lower weight is better. `parent` makes `target=parent:` match this target.
struct TargetDecl {
    std::string name;
    int weight = 0;
    std::optional<std::string> parent;
};

struct OsDecl {
    std::string name;
    int weight = 0;
};

struct Preferences {
    std::map<std::string, std::vector<std::string>> providers;
    std::vector<std::string> compilers;
};

struct RepoConfig {
    std::vector<CompilerDecl> compilers;
    std::vector<TargetDecl> targets;
    std::vector<OsDecl> operating_systems;
    Preferences preferences;

    /// gcc@11.2.0 for x86_64, linux.
    static RepoConfig defaults();

    const TargetDecl* target(std::string_view name) const;
    /// True if `name` equals `ancestor` or descends from it.
    bool target_descends(std::string_view name, std::string_view ancestor) const;
};

struct Repo {
    std::map<std::string, PackageRecipe> recipes;
    std::map<std::string, std::vector<std::string>> virtuals;  // sorted provider names
    RepoConfig config;

    const PackageRecipe* find(std::string_view name) const;
    const PackageRecipe& get(std::string_view name) const;  // throws UnknownPackage
    bool is_virtual(std::string_view name) const;
    bool knows(std::string_view name) const { return find(name) || is_virtual(name); }
};

struct Warning {
    std::string package;
    std::string message;

    friend bool operator==(const Warning&, const Warning&) = default;
};

/// Parses one recipe document.
PackageRecipe parse_recipe(const std::string& text, const std::string& file = "<recipe>");
RepoConfig parse_config(const std::string& text, const std::string& file = "config.json");

/// Builds a repo from recipes, resolving virtuals and cross references.
/// Throws UnknownDependency or NoProviderForVirtual.
Repo make_repo(std::vector<PackageRecipe> recipes, RepoConfig config);

/// Loads every `*.pkg` file and the optional `config.json` in `dir`.
Repo load_repo(const std::filesystem::path& dir);

/// Transitive closure over all dependencies (conditions ignored) and all
/// providers of virtuals. Virtual names themselves are not included.
std::set<std::string> possible_dependencies(const Repo& repo, const std::vector<std::string>& roots);

std::vector<Warning> validate_repo(const Repo& repo);

// ---- installed packages ---------------------------------------------------

class DanglingHash : public RepoError {
public:
    DanglingHash(const std::string& owner, const std::string& hash);
    const std::string& hash() const noexcept { return hash_; }

private:
    std::string hash_;
};

struct InstalledSpec {
    std::string hash;
    std::string name;
    Version version;
    std::map<std::string, VariantValue> variants;
    std::string compiler;
    Version compiler_version;
    std::string os;
    std::string target;
    std::vector<std::string> dependencies;  // hashes
};

struct InstalledDatabase {
    std::map<std::string, InstalledSpec> entries;  // by hash

    /// Throws DanglingHash when a dependency hash is not an entry.
    void validate() const;
    std::string to_json() const;
};

InstalledDatabase parse_installed(const std::string& text, const std::string& file = "installed.json");
InstalledDatabase load_installed(const std::filesystem::path& path);

}  // namespace concretix::repo
