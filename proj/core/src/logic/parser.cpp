#include "concretix/logic/parser.hpp"

#include <cctype>
#include <charconv>
#include <unordered_map>

namespace concretix::logic {

namespace {

enum class Tok {
    Ident, Variable, String, Number,
    If, Dot, Comma, Semi, Colon, LParen, RParen, LBrace, RBrace, At,
    Minimize, Not,
    Eq, Ne, Lt, Le, Gt, Ge,
    Plus, Minus, Star,
    End,
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::int64_t number = 0;
    SourceLocation loc;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        skip_space();
        Token t;
        t.loc = {line_, col_};
        if (pos_ >= src_.size()) return t;
        char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
            t.kind = Tok::Number;
            t.text = std::string(src_.substr(start, pos_ - start));
            auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.number);
            if (ec != std::errc()) throw SyntaxError(t.loc, "integer out of range");
            return t;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                advance();
            t.text = std::string(src_.substr(start, pos_ - start));
            if (t.text == "not") {
                t.kind = Tok::Not;
            } else if (std::isupper(static_cast<unsigned char>(c)) || c == '_') {
                t.kind = Tok::Variable;
            } else {
                t.kind = Tok::Ident;
            }
            return t;
        }
        if (c == '"') {
            advance();
            t.kind = Tok::String;
            while (true) {
                if (pos_ >= src_.size() || src_[pos_] == '\n') throw SyntaxError(t.loc, "unterminated string");
                char d = src_[pos_];
                advance();
                if (d == '"') break;
                if (d == '\\') {
                    if (pos_ >= src_.size()) throw SyntaxError(t.loc, "unterminated string");
                    char e = src_[pos_];
                    advance();
                    t.text.push_back(e == 'n' ? '\n' : e);
                } else {
                    t.text.push_back(d);
                }
            }
            return t;
        }
        if (c == '#') {
            std::size_t start = pos_;
            advance();
            while (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_]))) advance();
            auto word = src_.substr(start, pos_ - start);
            if (word != "#minimize") throw SyntaxError(t.loc, "unknown directive '" + std::string(word) + "'");
            t.kind = Tok::Minimize;
            return t;
        }
        advance();
        auto peek_is = [&](char d) {
            if (pos_ < src_.size() && src_[pos_] == d) {
                advance();
                return true;
            }
            return false;
        };
        switch (c) {
            case ':': t.kind = peek_is('-') ? Tok::If : Tok::Colon; break;
            case '.': t.kind = Tok::Dot; break;
            case ',': t.kind = Tok::Comma; break;
            case ';': t.kind = Tok::Semi; break;
            case '(': t.kind = Tok::LParen; break;
            case ')': t.kind = Tok::RParen; break;
            case '{': t.kind = Tok::LBrace; break;
            case '}': t.kind = Tok::RBrace; break;
            case '@': t.kind = Tok::At; break;
            case '+': t.kind = Tok::Plus; break;
            case '-': t.kind = Tok::Minus; break;
            case '*': t.kind = Tok::Star; break;
            case '=': t.kind = Tok::Eq; break;
            case '!':
                if (!peek_is('=')) throw SyntaxError(t.loc, "expected '!='");
                t.kind = Tok::Ne;
                break;
            case '<': t.kind = peek_is('=') ? Tok::Le : Tok::Lt; break;
            case '>': t.kind = peek_is('=') ? Tok::Ge : Tok::Gt; break;
            default: throw SyntaxError(t.loc, std::string("unexpected character '") + c + "'");
        }
        return t;
    }

private:
    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_space() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '%') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

class Parser {
public:
    explicit Parser(std::string_view text) : lex_(text) {
        cur_ = lex_.next();
        ahead_ = lex_.next();
    }

    Program run() {
        Program prog;
        while (cur_.kind != Tok::End) statement(prog);
        return prog;
    }

private:
    void shift() {
        cur_ = std::move(ahead_);
        ahead_ = lex_.next();
    }

    [[noreturn]] void error(const std::string& msg) const { throw SyntaxError(cur_.loc, msg); }

    void expect(Tok k, const char* what) {
        if (cur_.kind != k) error(std::string("expected ") + what);
        shift();
    }

    Term variable(const std::string& name) {
        if (name == "_") {
            rule_.variables.push_back("_");
            return Term::var(static_cast<std::uint32_t>(rule_.variables.size() - 1));
        }
        auto it = vars_.find(name);
        if (it != vars_.end()) return Term::var(it->second);
        auto idx = static_cast<std::uint32_t>(rule_.variables.size());
        rule_.variables.push_back(name);
        vars_.emplace(name, idx);
        return Term::var(idx);
    }

    static Term fold(Term::Op op, Term a, Term b) {
        if (a.kind == Term::Kind::Constant && b.kind == Term::Kind::Constant && a.value.is_integer() &&
            b.value.is_integer()) {
            auto x = a.value.as_integer(), y = b.value.as_integer();
            std::int64_t r = op == Term::Op::Add ? x + y : op == Term::Op::Sub ? x - y : x * y;
            return Term::constant(Value::integer(r));
        }
        return Term::binary(op, std::move(a), std::move(b));
    }

    Term primary() {
        switch (cur_.kind) {
            case Tok::Number: {
                auto n = cur_.number;
                shift();
                return Term::constant(Value::integer(n));
            }
            case Tok::String: {
                auto v = Value::string(cur_.text);
                shift();
                return Term::constant(v);
            }
            case Tok::Ident: {
                if (ahead_.kind == Tok::LParen) error("function terms are not supported");
                auto v = Value::identifier(cur_.text);
                shift();
                return Term::constant(v);
            }
            case Tok::Variable: {
                auto name = cur_.text;
                shift();
                return variable(name);
            }
            case Tok::LParen: {
                shift();
                Term t = term();
                expect(Tok::RParen, "')'");
                return t;
            }
            case Tok::Minus: {
                shift();
                Term t = primary();
                return fold(Term::Op::Sub, Term::constant(Value::integer(0)), std::move(t));
            }
            default: error("expected a term");
        }
    }

    Term product() {
        Term t = primary();
        while (cur_.kind == Tok::Star) {
            shift();
            t = fold(Term::Op::Mul, std::move(t), primary());
        }
        return t;
    }

    Term term() {
        Term t = product();
        while (cur_.kind == Tok::Plus || cur_.kind == Tok::Minus) {
            auto op = cur_.kind == Tok::Plus ? Term::Op::Add : Term::Op::Sub;
            shift();
            t = fold(op, std::move(t), product());
        }
        return t;
    }

    Atom atom() {
        if (cur_.kind != Tok::Ident) error("expected an atom");
        Atom a;
        a.predicate = Symbol(cur_.text);
        shift();
        if (cur_.kind == Tok::LParen) {
            shift();
            a.args.push_back(term());
            while (cur_.kind == Tok::Comma) {
                shift();
                a.args.push_back(term());
            }
            expect(Tok::RParen, "')'");
        }
        return a;
    }

    static bool is_compare(Tok k) {
        return k == Tok::Eq || k == Tok::Ne || k == Tok::Lt || k == Tok::Le || k == Tok::Gt || k == Tok::Ge;
    }

    static CompareOp compare_op(Tok k) {
        switch (k) {
            case Tok::Eq: return CompareOp::Eq;
            case Tok::Ne: return CompareOp::Ne;
            case Tok::Lt: return CompareOp::Lt;
            case Tok::Le: return CompareOp::Le;
            case Tok::Gt: return CompareOp::Gt;
            default: return CompareOp::Ge;
        }
    }

    // A literal that is not conditional.
    Literal simple_literal() {
        Literal lit;
        if (cur_.kind == Tok::Not) {
            shift();
            lit.kind = Literal::Kind::Negative;
            lit.atom = atom();
            return lit;
        }
        bool looks_like_atom = cur_.kind == Tok::Ident && !is_compare(ahead_.kind) && ahead_.kind != Tok::Plus &&
                               ahead_.kind != Tok::Minus && ahead_.kind != Tok::Star;
        if (looks_like_atom) {
            lit.kind = Literal::Kind::Positive;
            lit.atom = atom();
            return lit;
        }
        lit.kind = Literal::Kind::Comparison;
        lit.lhs = term();
        if (!is_compare(cur_.kind)) error("expected a comparison operator");
        lit.op = compare_op(cur_.kind);
        shift();
        lit.rhs = term();
        return lit;
    }

    std::vector<Literal> condition_list() {
        std::vector<Literal> out;
        out.push_back(simple_literal());
        while (cur_.kind == Tok::Comma) {
            shift();
            out.push_back(simple_literal());
        }
        return out;
    }

    std::vector<Literal> body() {
        std::vector<Literal> out;
        while (true) {
            Literal lit = simple_literal();
            if (cur_.kind == Tok::Colon) {
                if (lit.kind != Literal::Kind::Positive) error("only positive atoms can be conditional");
                shift();
                lit.kind = Literal::Kind::Conditional;
                lit.condition = condition_list();
                out.push_back(std::move(lit));
                if (cur_.kind == Tok::Semi) {
                    shift();
                    continue;
                }
                break;
            }
            out.push_back(std::move(lit));
            if (cur_.kind == Tok::Comma || cur_.kind == Tok::Semi) {
                shift();
                continue;
            }
            break;
        }
        return out;
    }

    void begin_rule(RuleKind kind) {
        rule_ = Rule{};
        rule_.kind = kind;
        rule_.location = cur_.loc;
        vars_.clear();
    }

    void finish_rule(Program& prog) {
        check_safety(rule_);
        prog.rules.push_back(std::move(rule_));
    }

    void choice_rule(Program& prog) {
        begin_rule(RuleKind::Choice);
        if (cur_.kind == Tok::Number) {
            rule_.lower = cur_.number;
            shift();
        }
        expect(Tok::LBrace, "'{'");
        if (cur_.kind != Tok::RBrace) {
            while (true) {
                ChoiceElement e;
                e.head = atom();
                if (cur_.kind == Tok::Colon) {
                    shift();
                    e.condition = condition_list();
                }
                rule_.elements.push_back(std::move(e));
                if (cur_.kind != Tok::Semi) break;
                shift();
            }
        }
        expect(Tok::RBrace, "'}'");
        if (cur_.kind == Tok::Number) {
            rule_.upper = cur_.number;
            shift();
        }
        if (rule_.lower && *rule_.lower < 0) error("negative choice bound");
        if (rule_.lower && rule_.upper && *rule_.lower > *rule_.upper) error("choice lower bound exceeds upper bound");
        if (cur_.kind == Tok::If) {
            shift();
            rule_.body = body();
        }
        expect(Tok::Dot, "'.'");
        finish_rule(prog);
    }

    void minimize_statement(Program& prog) {
        auto loc = cur_.loc;
        shift();
        expect(Tok::LBrace, "'{'");
        while (cur_.kind != Tok::RBrace) {
            begin_rule(RuleKind::Minimize);
            rule_.location = loc;
            rule_.minimize.weight = term();
            if (cur_.kind == Tok::At) {
                shift();
                rule_.minimize.level = term();
            } else {
                rule_.minimize.level = Term::constant(Value::integer(0));
            }
            while (cur_.kind == Tok::Comma) {
                shift();
                rule_.minimize.tuple.push_back(term());
            }
            if (cur_.kind == Tok::Colon) {
                shift();
                rule_.body = condition_list();
            }
            finish_rule(prog);
            if (cur_.kind != Tok::Semi) break;
            shift();
        }
        expect(Tok::RBrace, "'}'");
        expect(Tok::Dot, "'.'");
    }

    void statement(Program& prog) {
        switch (cur_.kind) {
            case Tok::If:
                begin_rule(RuleKind::Integrity);
                shift();
                rule_.body = body();
                expect(Tok::Dot, "'.'");
                finish_rule(prog);
                return;
            case Tok::Minimize: minimize_statement(prog); return;
            case Tok::Number:
            case Tok::LBrace: choice_rule(prog); return;
            case Tok::Ident: break;
            default: error("expected a statement");
        }
        begin_rule(RuleKind::Fact);
        rule_.head = atom();
        if (cur_.kind == Tok::If) {
            shift();
            rule_.kind = RuleKind::Normal;
            rule_.body = body();
        }
        expect(Tok::Dot, "'.'");
        finish_rule(prog);
    }

    Lexer lex_;
    Token cur_, ahead_;
    Rule rule_;
    std::unordered_map<std::string, std::uint32_t> vars_;
};

}  // namespace

Program parse_program(std::string_view text) { return Parser(text).run(); }

}  // namespace concretix::logic
