#include "concretix/spec/spec.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace concretix::spec {

SpecSyntaxError::SpecSyntaxError(std::size_t position, const std::string& message)
    : SpecError("spec syntax error at position " + std::to_string(position) + ": " + message), position_(position) {}

DuplicateVariantError::DuplicateVariantError(const std::string& variant)
    : SpecError("variant '" + variant + "' given more than once") {}

SpecConflict::SpecConflict(std::string detail, std::string lhs, std::string rhs)
    : SpecError("conflicting constraints '" + lhs + "' and '" + rhs + "': " + detail),
      detail_(std::move(detail)),
      lhs_(std::move(lhs)),
      rhs_(std::move(rhs)) {}

std::string to_string(const VariantValue& v) {
    if (const bool* b = std::get_if<bool>(&v)) return *b ? "true" : "false";
    return std::get<std::string>(v);
}

bool NodeConstraint::empty() const {
    return !name && versions.any() && !compiler && variants.empty() && flags.empty() && !target && !os;
}

const NodeConstraint* AbstractSpec::dependency(std::string_view name) const {
    for (const auto& d : dependencies)
        if (d.name && *d.name == name) return &d;
    return nullptr;
}

namespace {

const std::set<std::string, std::less<>> flag_keys = {"cflags", "cxxflags", "fflags", "cppflags", "ldflags", "ldlibs"};

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.'; }

bool version_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || std::string_view("._-:,").find(c) != std::string_view::npos; }

bool value_char(char c) { return version_char(c) || c == '/'; }

class SpecParser {
public:
    explicit SpecParser(std::string_view text) : text_(text) {}

    AbstractSpec parse() {
        AbstractSpec spec;
        skip_ws();
        if (at_end()) throw SpecSyntaxError(0, "empty spec");
        NodeConstraint* cur = &spec.root;
        while (true) {
            skip_ws();
            if (at_end()) break;
            char c = text_[pos_];
            std::size_t start = pos_;
            switch (c) {
                case '^': {
                    ++pos_;
                    skip_ws();
                    std::string name = ident("package name after '^'");
                    spec.dependencies.emplace_back();
                    cur = &spec.dependencies.back();
                    cur->name = std::move(name);
                    break;
                }
                case '@': {
                    ++pos_;
                    if (!cur->versions.any()) throw SpecSyntaxError(start, "multiple version constraints");
                    cur->versions = versions(start);
                    break;
                }
                case '%': {
                    ++pos_;
                    if (cur->compiler) throw SpecSyntaxError(start, "multiple compilers");
                    skip_ws();
                    CompilerConstraint comp;
                    comp.name = ident("compiler name after '%'");
                    if (!at_end() && text_[pos_] == '@') {
                        std::size_t at = pos_++;
                        comp.versions = versions(at);
                    }
                    cur->compiler = std::move(comp);
                    break;
                }
                case '+':
                case '~': {
                    ++pos_;
                    skip_ws();
                    std::string name = ident("variant name");
                    set_variant(*cur, name, c == '+');
                    break;
                }
                default: {
                    if (!ident_char(c)) throw SpecSyntaxError(start, std::string("unexpected character '") + c + "'");
                    std::string word = ident("name");
                    if (!at_end() && text_[pos_] == '=') {
                        ++pos_;
                        key_value(*cur, word, value(start), start);
                    } else {
                        if (cur->name) throw SpecSyntaxError(start, "unexpected package name '" + word + "'");
                        if (!cur->empty())
                            throw SpecSyntaxError(start, "package name '" + word + "' must precede its constraints");
                        cur->name = std::move(word);
                    }
                }
            }
        }
        // repeated dependencies merge into one constraint
        std::vector<NodeConstraint> deps;
        for (auto& d : spec.dependencies) {
            auto it = std::find_if(deps.begin(), deps.end(), [&](const NodeConstraint& e) { return e.name == d.name; });
            if (it == deps.end()) deps.push_back(std::move(d));
            else *it = merge_nodes(*it, d);
        }
        spec.dependencies = std::move(deps);
        return spec;
    }

private:
    bool at_end() const { return pos_ >= text_.size(); }

    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    std::string ident(const char* what) {
        std::size_t start = pos_;
        if (at_end() || (!std::isalnum(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != '_'))
            throw SpecSyntaxError(pos_, std::string("expected ") + what);
        while (!at_end() && ident_char(text_[pos_])) ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    VersionConstraint versions(std::size_t sigil) {
        std::size_t start = pos_;
        while (!at_end() && version_char(text_[pos_])) ++pos_;
        if (start == pos_) throw SpecSyntaxError(sigil, "expected versions after '@'");
        try {
            return VersionConstraint::parse(text_.substr(start, pos_ - start));
        } catch (const VersionError& e) {
            throw SpecSyntaxError(start, e.what());
        }
    }

    std::string value(std::size_t key_start) {
        if (!at_end() && (text_[pos_] == '"' || text_[pos_] == '\'')) {
            char quote = text_[pos_++];
            std::size_t start = pos_;
            while (!at_end() && text_[pos_] != quote) ++pos_;
            if (at_end()) throw SpecSyntaxError(start - 1, "unterminated quoted value");
            std::string out(text_.substr(start, pos_ - start));
            ++pos_;
            return out;
        }
        std::size_t start = pos_;
        while (!at_end() && value_char(text_[pos_])) ++pos_;
        if (start == pos_) throw SpecSyntaxError(key_start, "expected value after '='");
        return std::string(text_.substr(start, pos_ - start));
    }

    void set_variant(NodeConstraint& node, const std::string& name, VariantValue v) {
        if (!node.variants.emplace(name, std::move(v)).second) throw DuplicateVariantError(name);
    }

    void key_value(NodeConstraint& node, const std::string& key, std::string val, std::size_t start) {
        if (key == "target") {
            if (node.target) throw SpecSyntaxError(start, "multiple targets");
            node.target = std::move(val);
        } else if (key == "os") {
            if (node.os) throw SpecSyntaxError(start, "multiple operating systems");
            node.os = std::move(val);
        } else if (flag_keys.count(key)) {
            if (!node.flags.emplace(key, std::move(val)).second) throw SpecSyntaxError(start, "repeated flag " + key);
        } else if (val == "true" || val == "false") {
            set_variant(node, key, val == "true");
        } else {
            set_variant(node, key, std::move(val));
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

bool needs_quotes(const std::string& v) {
    return v.empty() || std::any_of(v.begin(), v.end(), [](char c) { return !value_char(c); });
}

}  // namespace

AbstractSpec parse_spec(std::string_view text) { return SpecParser(text).parse(); }

std::string render_node(const NodeConstraint& node) {
    std::string head = node.name.value_or("");
    if (!node.versions.any()) head += "@" + node.versions.to_string();
    if (node.compiler) {
        head += "%" + node.compiler->name;
        if (!node.compiler->versions.any()) head += "@" + node.compiler->versions.to_string();
    }
    std::vector<std::string> pairs;
    for (const auto& [name, value] : node.variants) {
        if (const bool* b = std::get_if<bool>(&value)) head += (*b ? "+" : "~") + name;
    }
    for (const auto& [name, value] : node.variants) {
        if (const auto* s = std::get_if<std::string>(&value))
            pairs.push_back(name + "=" + (needs_quotes(*s) ? "\"" + *s + "\"" : *s));
    }
    for (const auto& [key, value] : node.flags)
        pairs.push_back(key + "=" + (needs_quotes(value) ? "\"" + value + "\"" : value));
    if (node.target) pairs.push_back("target=" + *node.target);
    if (node.os) pairs.push_back("os=" + *node.os);
    std::string out = head;
    for (const auto& p : pairs) {
        if (!out.empty()) out += ' ';
        out += p;
    }
    return out;
}

std::string render_spec(const AbstractSpec& spec) {
    std::string out = render_node(spec.root);
    for (const auto& d : spec.dependencies) {
        if (!out.empty()) out += ' ';
        out += "^" + render_node(d);
    }
    return out;
}

AbstractSpec canonicalize(AbstractSpec spec) {
    std::stable_sort(spec.dependencies.begin(), spec.dependencies.end(),
                     [](const NodeConstraint& a, const NodeConstraint& b) { return a.name < b.name; });
    return spec;
}

NodeConstraint merge_nodes(const NodeConstraint& a, const NodeConstraint& b) {
    auto conflict = [&](const std::string& detail) { return SpecConflict(detail, render_node(a), render_node(b)); };
    NodeConstraint out = a;
    if (a.name && b.name && *a.name != *b.name) throw conflict("different packages");
    if (!out.name) out.name = b.name;

    auto v = a.versions.intersect(b.versions);
    if (!v) throw conflict("version ranges do not intersect");
    out.versions = *v;

    if (b.compiler) {
        if (!a.compiler) {
            out.compiler = b.compiler;
        } else {
            if (a.compiler->name != b.compiler->name) throw conflict("different compilers");
            auto cv = a.compiler->versions.intersect(b.compiler->versions);
            if (!cv) throw conflict("compiler version ranges do not intersect");
            out.compiler->versions = *cv;
        }
    }
    for (const auto& [name, value] : b.variants) {
        auto [it, inserted] = out.variants.emplace(name, value);
        if (!inserted && it->second != value) throw conflict("variant '" + name + "' disagrees");
    }
    for (const auto& [key, value] : b.flags) {
        auto [it, inserted] = out.flags.emplace(key, value);
        if (!inserted && it->second != value) throw conflict("flag '" + key + "' disagrees");
    }
    if (b.target) {
        if (out.target && *out.target != *b.target) throw conflict("different targets");
        out.target = b.target;
    }
    if (b.os) {
        if (out.os && *out.os != *b.os) throw conflict("different operating systems");
        out.os = b.os;
    }
    return out;
}

AbstractSpec merge_constraints(const AbstractSpec& a, const AbstractSpec& b) {
    AbstractSpec out;
    out.root = merge_nodes(a.root, b.root);
    out.dependencies = a.dependencies;
    for (const auto& d : b.dependencies) {
        auto it = std::find_if(out.dependencies.begin(), out.dependencies.end(),
                               [&](const NodeConstraint& e) { return e.name == d.name; });
        if (it == out.dependencies.end()) out.dependencies.push_back(d);
        else *it = merge_nodes(*it, d);
    }
    return canonicalize(std::move(out));
}

}  // namespace concretix::spec
