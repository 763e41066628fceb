#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace concretix::logic {

/// Interned string handle. Two symbols are equal iff their text is equal.
class Symbol {
public:
    Symbol() = default;
    explicit Symbol(std::string_view text);

    std::string_view str() const noexcept;
    std::uint32_t id() const noexcept { return id_; }

    friend bool operator==(Symbol a, Symbol b) noexcept { return a.id_ == b.id_; }

private:
    std::uint32_t id_ = 0;  // 0 is the empty string
};

/// A ground constant: integer, identifier (`foo`) or quoted string (`"foo"`).
class Value {
public:
    enum class Kind : std::uint8_t { Integer, Identifier, String };

    Value() = default;

    static Value integer(std::int64_t n) noexcept { return Value(Kind::Integer, n); }
    static Value identifier(std::string_view text) { return Value(Kind::Identifier, Symbol(text).id()); }
    static Value string(std::string_view text) { return Value(Kind::String, Symbol(text).id()); }

    Kind kind() const noexcept { return kind_; }
    bool is_integer() const noexcept { return kind_ == Kind::Integer; }
    std::int64_t as_integer() const noexcept { return data_; }
    /// Text of an identifier or string (unquoted). Empty for integers.
    std::string_view text() const noexcept;

    /// Source form: integers in decimal, identifiers verbatim, strings quoted.
    std::string to_string() const;

    friend bool operator==(const Value& a, const Value& b) noexcept {
        return a.kind_ == b.kind_ && a.data_ == b.data_;
    }
    /// Integers < identifiers < strings; identifiers and strings order by text.
    friend std::strong_ordering operator<=>(const Value& a, const Value& b) noexcept;

    std::size_t hash() const noexcept {
        return std::hash<std::int64_t>{}(data_) * 31u + static_cast<std::size_t>(kind_);
    }

private:
    Value(Kind k, std::int64_t d) noexcept : kind_(k), data_(d) {}

    Kind kind_ = Kind::Integer;
    std::int64_t data_ = 0;
};

std::string quote_string(std::string_view text);

}  // namespace concretix::logic

template <>
struct std::hash<concretix::logic::Value> {
    std::size_t operator()(const concretix::logic::Value& v) const noexcept { return v.hash(); }
};
