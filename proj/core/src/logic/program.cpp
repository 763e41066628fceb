#include "concretix/logic/program.hpp"

#include <set>
#include <sstream>

namespace concretix::logic {

SyntaxError::SyntaxError(SourceLocation loc, const std::string& message)
    : std::runtime_error(std::to_string(loc.line) + ":" + std::to_string(loc.column) + ": syntax error: " + message),
      loc_(loc) {}

SafetyError::SafetyError(SourceLocation loc, std::string rule, std::string variable)
    : std::runtime_error(std::to_string(loc.line) + ":" + std::to_string(loc.column) + ": unsafe variable '" +
                         variable + "' in rule: " + rule),
      loc_(loc),
      rule_(std::move(rule)),
      variable_(std::move(variable)) {}

Term Term::binary(Op op, Term a, Term b) {
    Term t;
    t.kind = Kind::Binary;
    t.op = op;
    t.lhs = std::make_shared<const Term>(std::move(a));
    t.rhs = std::make_shared<const Term>(std::move(b));
    return t;
}

bool Term::is_ground() const noexcept {
    switch (kind) {
        case Kind::Constant: return true;
        case Kind::Variable: return false;
        case Kind::Binary: return lhs->is_ground() && rhs->is_ground();
    }
    return false;
}

namespace {

void write_term(std::ostream& os, const Term& t, const std::vector<std::string>& vars) {
    switch (t.kind) {
        case Term::Kind::Constant: os << t.value.to_string(); break;
        case Term::Kind::Variable: os << (t.variable < vars.size() ? vars[t.variable] : "_"); break;
        case Term::Kind::Binary:
            write_term(os, *t.lhs, vars);
            os << static_cast<char>(t.op);
            if (t.rhs->kind == Term::Kind::Binary) {
                os << '(';
                write_term(os, *t.rhs, vars);
                os << ')';
            } else {
                write_term(os, *t.rhs, vars);
            }
            break;
    }
}

void write_atom(std::ostream& os, const Atom& a, const std::vector<std::string>& vars) {
    os << a.predicate.str();
    if (a.args.empty()) return;
    os << '(';
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (i) os << ',';
        write_term(os, a.args[i], vars);
    }
    os << ')';
}

const char* op_text(CompareOp op) {
    switch (op) {
        case CompareOp::Eq: return "=";
        case CompareOp::Ne: return "!=";
        case CompareOp::Lt: return "<";
        case CompareOp::Le: return "<=";
        case CompareOp::Gt: return ">";
        case CompareOp::Ge: return ">=";
    }
    return "?";
}

void write_literal(std::ostream& os, const Literal& l, const std::vector<std::string>& vars);

void write_literals(std::ostream& os, const std::vector<Literal>& lits, const std::vector<std::string>& vars,
                    const char* sep) {
    for (std::size_t i = 0; i < lits.size(); ++i) {
        if (i) os << sep;
        write_literal(os, lits[i], vars);
    }
}

void write_literal(std::ostream& os, const Literal& l, const std::vector<std::string>& vars) {
    switch (l.kind) {
        case Literal::Kind::Positive: write_atom(os, l.atom, vars); break;
        case Literal::Kind::Negative:
            os << "not ";
            write_atom(os, l.atom, vars);
            break;
        case Literal::Kind::Comparison:
            write_term(os, l.lhs, vars);
            os << ' ' << op_text(l.op) << ' ';
            write_term(os, l.rhs, vars);
            break;
        case Literal::Kind::Conditional:
            write_atom(os, l.atom, vars);
            os << " : ";
            write_literals(os, l.condition, vars, ", ");
            break;
    }
}

bool has_conditional(const std::vector<Literal>& body) {
    for (const auto& l : body)
        if (l.kind == Literal::Kind::Conditional) return true;
    return false;
}

void write_body(std::ostream& os, const std::vector<Literal>& body, const std::vector<std::string>& vars) {
    write_literals(os, body, vars, has_conditional(body) ? "; " : ", ");
}

}  // namespace

std::string to_string(const Rule& rule) {
    std::ostringstream os;
    const auto& vars = rule.variables;
    switch (rule.kind) {
        case RuleKind::Fact:
            write_atom(os, rule.head, vars);
            break;
        case RuleKind::Normal:
            write_atom(os, rule.head, vars);
            os << " :- ";
            write_body(os, rule.body, vars);
            break;
        case RuleKind::Integrity:
            os << ":- ";
            write_body(os, rule.body, vars);
            break;
        case RuleKind::Choice:
            if (rule.lower) os << *rule.lower << ' ';
            os << "{ ";
            for (std::size_t i = 0; i < rule.elements.size(); ++i) {
                if (i) os << "; ";
                write_atom(os, rule.elements[i].head, vars);
                if (!rule.elements[i].condition.empty()) {
                    os << " : ";
                    write_literals(os, rule.elements[i].condition, vars, ", ");
                }
            }
            os << " }";
            if (rule.upper) os << ' ' << *rule.upper;
            if (!rule.body.empty()) {
                os << " :- ";
                write_body(os, rule.body, vars);
            }
            break;
        case RuleKind::Minimize:
            os << "#minimize { ";
            write_term(os, rule.minimize.weight, vars);
            os << '@';
            write_term(os, rule.minimize.level, vars);
            for (const auto& t : rule.minimize.tuple) {
                os << ',';
                write_term(os, t, vars);
            }
            if (!rule.body.empty()) {
                os << " : ";
                write_literals(os, rule.body, vars, ", ");
            }
            os << " }";
            break;
    }
    os << '.';
    return os.str();
}

std::string to_string(const Program& program) {
    std::string out;
    for (const auto& r : program.rules) {
        out += to_string(r);
        out += '\n';
    }
    return out;
}

namespace {

void collect_vars(const Term& t, std::set<std::uint32_t>& out) {
    switch (t.kind) {
        case Term::Kind::Constant: break;
        case Term::Kind::Variable: out.insert(t.variable); break;
        case Term::Kind::Binary:
            collect_vars(*t.lhs, out);
            collect_vars(*t.rhs, out);
            break;
    }
}

void collect_vars(const Atom& a, std::set<std::uint32_t>& out) {
    for (const auto& t : a.args) collect_vars(t, out);
}

// Variables bound by plain variable arguments of positive atoms.
void collect_binding(const std::vector<Literal>& lits, std::set<std::uint32_t>& out) {
    for (const auto& l : lits) {
        if (l.kind != Literal::Kind::Positive) continue;
        for (const auto& t : l.atom.args)
            if (t.kind == Term::Kind::Variable) out.insert(t.variable);
    }
}

void collect_vars(const Literal& l, std::set<std::uint32_t>& out) {
    switch (l.kind) {
        case Literal::Kind::Positive:
        case Literal::Kind::Negative: collect_vars(l.atom, out); break;
        case Literal::Kind::Comparison:
            collect_vars(l.lhs, out);
            collect_vars(l.rhs, out);
            break;
        case Literal::Kind::Conditional:
            collect_vars(l.atom, out);
            for (const auto& c : l.condition) collect_vars(c, out);
            break;
    }
}

struct SafetyChecker {
    const Rule& rule;

    [[noreturn]] void fail(std::uint32_t var) const {
        throw SafetyError(rule.location, to_string(rule),
                          var < rule.variables.size() ? rule.variables[var] : std::string("_"));
    }

    void require(const std::set<std::uint32_t>& used, const std::set<std::uint32_t>& bound) const {
        for (auto v : used)
            if (!bound.count(v)) fail(v);
    }

    void check_local(const Atom& head, const std::vector<Literal>& condition,
                     const std::set<std::uint32_t>& global) const {
        std::set<std::uint32_t> bound = global;
        collect_binding(condition, bound);
        std::set<std::uint32_t> used;
        collect_vars(head, used);
        for (const auto& c : condition) {
            if (c.kind == Literal::Kind::Conditional) fail(0);
            collect_vars(c, used);
        }
        require(used, bound);
    }

    void run() const {
        std::set<std::uint32_t> global;
        collect_binding(rule.body, global);
        for (const auto& l : rule.body) {
            if (l.kind == Literal::Kind::Conditional) {
                check_local(l.atom, l.condition, global);
            } else {
                std::set<std::uint32_t> used;
                collect_vars(l, used);
                require(used, global);
            }
        }
        std::set<std::uint32_t> used;
        switch (rule.kind) {
            case RuleKind::Fact:
            case RuleKind::Normal: collect_vars(rule.head, used); break;
            case RuleKind::Integrity: break;
            case RuleKind::Choice:
                for (const auto& e : rule.elements) check_local(e.head, e.condition, global);
                break;
            case RuleKind::Minimize:
                collect_vars(rule.minimize.weight, used);
                collect_vars(rule.minimize.level, used);
                for (const auto& t : rule.minimize.tuple) collect_vars(t, used);
                break;
        }
        require(used, global);
    }
};

}  // namespace

void check_safety(const Rule& rule) { SafetyChecker{rule}.run(); }

}  // namespace concretix::logic
