#pragma once

#include "concretix/logic/symbol.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace concretix::logic {

struct SourceLocation {
    int line = 0;
    int column = 0;
};

class SyntaxError : public std::runtime_error {
public:
    SyntaxError(SourceLocation loc, const std::string& message);
    SourceLocation location() const noexcept { return loc_; }

private:
    SourceLocation loc_;
};

class SafetyError : public std::runtime_error {
public:
    SafetyError(SourceLocation loc, std::string rule, std::string variable);
    SourceLocation location() const noexcept { return loc_; }
    const std::string& rule_text() const noexcept { return rule_; }
    const std::string& variable() const noexcept { return variable_; }

private:
    SourceLocation loc_;
    std::string rule_;
    std::string variable_;
};

/// A first-order term. Arithmetic is evaluated once all variables are bound.
struct Term {
    enum class Kind : std::uint8_t { Constant, Variable, Binary };
    enum class Op : char { Add = '+', Sub = '-', Mul = '*' };

    Kind kind = Kind::Constant;
    Value value;                 // Constant
    std::uint32_t variable = 0;  // Variable: index into Rule::variables
    Op op = Op::Add;             // Binary
    std::shared_ptr<const Term> lhs, rhs;

    static Term constant(Value v) {
        Term t;
        t.value = v;
        return t;
    }
    static Term var(std::uint32_t index) {
        Term t;
        t.kind = Kind::Variable;
        t.variable = index;
        return t;
    }
    static Term binary(Op op, Term a, Term b);

    bool is_ground() const noexcept;
};

struct Atom {
    Symbol predicate;
    std::vector<Term> args;

    std::size_t arity() const noexcept { return args.size(); }
};

enum class CompareOp : std::uint8_t { Eq, Ne, Lt, Le, Gt, Ge };

struct Literal {
    enum class Kind : std::uint8_t { Positive, Negative, Comparison, Conditional };

    Kind kind = Kind::Positive;
    Atom atom;                      // Positive, Negative, Conditional
    CompareOp op = CompareOp::Eq;   // Comparison
    Term lhs, rhs;                  // Comparison
    std::vector<Literal> condition; // Conditional: `atom : condition`
};

struct ChoiceElement {
    Atom head;
    std::vector<Literal> condition;
};

struct MinimizeElement {
    Term weight;
    Term level;
    std::vector<Term> tuple;
};

enum class RuleKind : std::uint8_t { Fact, Normal, Choice, Integrity, Minimize };

struct Rule {
    RuleKind kind = RuleKind::Normal;
    Atom head;                              // Fact, Normal
    std::optional<std::int64_t> lower;      // Choice
    std::optional<std::int64_t> upper;      // Choice
    std::vector<ChoiceElement> elements;    // Choice
    MinimizeElement minimize;               // Minimize (one element per rule)
    std::vector<Literal> body;
    std::vector<std::string> variables;     // names, indexed by Term::variable
    SourceLocation location;
};

struct Program {
    std::vector<Rule> rules;

    void append(const Program& other) { rules.insert(rules.end(), other.rules.begin(), other.rules.end()); }
};

/// Renders a rule back into the logic language.
std::string to_string(const Rule& rule);
std::string to_string(const Program& program);

/// Throws SafetyError when a variable is not bound by a positive body literal.
void check_safety(const Rule& rule);

}  // namespace concretix::logic
