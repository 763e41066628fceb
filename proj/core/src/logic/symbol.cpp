#include "concretix/logic/symbol.hpp"

#include <deque>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace concretix::logic {

namespace {

class SymbolTable {
public:
    SymbolTable() { intern(""); }

    std::uint32_t intern(std::string_view text) {
        {
            std::shared_lock lock(mutex_);
            if (auto it = index_.find(text); it != index_.end()) return it->second;
        }
        std::unique_lock lock(mutex_);
        if (auto it = index_.find(text); it != index_.end()) return it->second;
        auto id = static_cast<std::uint32_t>(storage_.size());
        const std::string& stored = storage_.emplace_back(text);
        index_.emplace(std::string_view(stored), id);
        return id;
    }

    std::string_view name(std::uint32_t id) const {
        std::shared_lock lock(mutex_);
        return storage_[id];
    }

private:
    mutable std::shared_mutex mutex_;
    std::deque<std::string> storage_;  // deque keeps references stable
    std::unordered_map<std::string_view, std::uint32_t> index_;
};

SymbolTable& table() {
    static SymbolTable instance;
    return instance;
}

}  // namespace

Symbol::Symbol(std::string_view text) : id_(table().intern(text)) {}

std::string_view Symbol::str() const noexcept { return table().name(id_); }

std::string_view Value::text() const noexcept {
    if (kind_ == Kind::Integer) return {};
    return table().name(static_cast<std::uint32_t>(data_));
}

std::string quote_string(std::string_view text) {
    std::string out;
    out.reserve(text.size() + 2);
    out.push_back('"');
    for (char c : text) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            default: out.push_back(c);
        }
    }
    out.push_back('"');
    return out;
}

std::string Value::to_string() const {
    switch (kind_) {
        case Kind::Integer: return std::to_string(data_);
        case Kind::Identifier: return std::string(text());
        case Kind::String: return quote_string(text());
    }
    return {};
}

std::strong_ordering operator<=>(const Value& a, const Value& b) noexcept {
    if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
    if (a.kind_ == Value::Kind::Integer) return a.data_ <=> b.data_;
    if (a.data_ == b.data_) return std::strong_ordering::equal;
    return a.text().compare(b.text()) <=> 0;
}

}  // namespace concretix::logic
