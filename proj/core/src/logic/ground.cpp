#include "concretix/logic/ground.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

namespace concretix::logic {

std::string GroundAtom::to_string() const {
    std::string out(predicate.str());
    if (args.empty()) return out;
    out += '(';
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out += ',';
        out += args[i].to_string();
    }
    out += ')';
    return out;
}

AtomId GroundProgram::add_atom(const GroundAtom& atom, bool hidden) {
    auto [it, inserted] = index_.try_emplace(atom, static_cast<AtomId>(atoms_.size()));
    if (inserted) {
        atoms_.push_back(atom);
        hidden_.push_back(hidden);
    }
    return it->second;
}

std::optional<AtomId> GroundProgram::find(const GroundAtom& atom) const {
    auto it = index_.find(atom);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

namespace {

void write_body(std::ostream& os, const GroundProgram& gp, const std::vector<AtomId>& pos,
                const std::vector<AtomId>& neg) {
    bool first = true;
    for (auto a : pos) {
        os << (first ? "" : ", ") << gp.atom(a).to_string();
        first = false;
    }
    for (auto a : neg) {
        os << (first ? "" : ", ") << "not " << gp.atom(a).to_string();
        first = false;
    }
}

}  // namespace

std::string GroundProgram::to_string() const {
    std::ostringstream os;
    for (const auto& r : rules) {
        os << atom(r.head).to_string();
        if (!r.positive.empty() || !r.negative.empty()) {
            os << " :- ";
            write_body(os, *this, r.positive, r.negative);
        }
        os << ".\n";
    }
    for (const auto& c : choices) {
        if (c.lower) os << *c.lower << ' ';
        os << "{ ";
        for (std::size_t i = 0; i < c.elements.size(); ++i) {
            const auto& e = c.elements[i];
            os << (i ? "; " : "") << atom(e.head).to_string();
            if (!e.positive.empty() || !e.negative.empty()) {
                os << " : ";
                write_body(os, *this, e.positive, e.negative);
            }
        }
        os << " }";
        if (c.upper) os << ' ' << *c.upper;
        if (!c.positive.empty() || !c.negative.empty()) {
            os << " :- ";
            write_body(os, *this, c.positive, c.negative);
        }
        os << ".\n";
    }
    for (const auto& ic : integrity) {
        os << ":- ";
        write_body(os, *this, ic.positive, ic.negative);
        os << ".\n";
    }
    for (const auto& m : minimize)
        os << "#minimize { " << m.weight << '@' << m.level << ',' << m.tuple << " : " << atom(m.atom).to_string()
           << " }.\n";
    return os.str();
}

GroundingBudgetExceeded::GroundingBudgetExceeded(std::size_t limit)
    : std::runtime_error("grounding exceeded the budget of " + std::to_string(limit) + " ground rules") {}

namespace {

using PredKey = std::uint64_t;

PredKey pred_key(Symbol name, std::size_t arity) { return (std::uint64_t(name.id()) << 16) | arity; }
PredKey pred_key(const Atom& a) { return pred_key(a.predicate, a.arity()); }
PredKey pred_key(const GroundAtom& a) { return pred_key(a.predicate, a.args.size()); }

struct Binding {
    std::vector<Value> values;
    std::vector<char> bound;

    explicit Binding(std::size_t n) : values(n), bound(n, 0) {}
};

std::optional<Value> eval(const Term& t, const Binding& b) {
    switch (t.kind) {
        case Term::Kind::Constant: return t.value;
        case Term::Kind::Variable:
            if (!b.bound[t.variable]) return std::nullopt;
            return b.values[t.variable];
        case Term::Kind::Binary: {
            auto l = eval(*t.lhs, b);
            auto r = eval(*t.rhs, b);
            if (!l || !r || !l->is_integer() || !r->is_integer()) return std::nullopt;
            auto x = l->as_integer(), y = r->as_integer();
            switch (t.op) {
                case Term::Op::Add: return Value::integer(x + y);
                case Term::Op::Sub: return Value::integer(x - y);
                case Term::Op::Mul: return Value::integer(x * y);
            }
        }
    }
    return std::nullopt;
}

bool evaluable(const Term& t, const std::vector<char>& bound) {
    switch (t.kind) {
        case Term::Kind::Constant: return true;
        case Term::Kind::Variable: return bound[t.variable];
        case Term::Kind::Binary: return evaluable(*t.lhs, bound) && evaluable(*t.rhs, bound);
    }
    return false;
}

void mark_vars(const Term& t, std::vector<char>& bound) {
    if (t.kind == Term::Kind::Variable) bound[t.variable] = 1;
}

std::optional<GroundAtom> instantiate(const Atom& a, const Binding& b) {
    GroundAtom g;
    g.predicate = a.predicate;
    g.args.reserve(a.args.size());
    for (const auto& t : a.args) {
        auto v = eval(t, b);
        if (!v) return std::nullopt;
        g.args.push_back(*v);
    }
    return g;
}

bool compare(CompareOp op, const Value& a, const Value& b) {
    auto c = a <=> b;
    switch (op) {
        case CompareOp::Eq: return c == 0;
        case CompareOp::Ne: return c != 0;
        case CompareOp::Lt: return c < 0;
        case CompareOp::Le: return c <= 0;
        case CompareOp::Gt: return c > 0;
        case CompareOp::Ge: return c >= 0;
    }
    return false;
}

struct Relation {
    std::vector<AtomId> atoms;
    std::map<std::size_t, std::unordered_map<Value, std::vector<AtomId>>> index;
};

// One step of a join plan: match a positive atom or check a comparison.
struct Step {
    const Literal* literal = nullptr;
    bool delta = false;  // restrict the match to the delta range
};

using Plan = std::vector<Step>;

// Orders positive atoms greedily by number of bound arguments and schedules
// comparisons as soon as their variables are bound.
Plan make_plan(const std::vector<const Literal*>& lits, std::vector<char> bound, std::optional<std::size_t> first) {
    std::vector<const Literal*> positives, comparisons;
    for (auto* l : lits) {
        if (l->kind == Literal::Kind::Positive) positives.push_back(l);
        else if (l->kind == Literal::Kind::Comparison) comparisons.push_back(l);
    }
    Plan plan;
    std::vector<char> used(positives.size(), 0);
    std::vector<char> cmp_done(comparisons.size(), 0);
    auto flush_comparisons = [&] {
        for (std::size_t i = 0; i < comparisons.size(); ++i) {
            if (cmp_done[i]) continue;
            if (evaluable(comparisons[i]->lhs, bound) && evaluable(comparisons[i]->rhs, bound)) {
                plan.push_back({comparisons[i], false});
                cmp_done[i] = 1;
            }
        }
    };
    auto take = [&](std::size_t i, bool delta) {
        used[i] = 1;
        plan.push_back({positives[i], delta});
        for (const auto& t : positives[i]->atom.args) mark_vars(t, bound);
        flush_comparisons();
    };
    flush_comparisons();
    if (first) take(*first, true);
    for (std::size_t step = first ? 1 : 0; step < positives.size(); ++step) {
        std::optional<std::size_t> best;
        int best_score = -1;
        for (std::size_t i = 0; i < positives.size(); ++i) {
            if (used[i]) continue;
            int score = 0;
            bool ok = true;
            for (const auto& t : positives[i]->atom.args) {
                if (t.kind == Term::Kind::Binary && !evaluable(t, bound)) ok = false;
                if (evaluable(t, bound)) ++score;
            }
            if (ok && score > best_score) {
                best = i;
                best_score = score;
            }
        }
        if (!best) throw GroundingError("cannot order body literals: arithmetic over unbound variables");
        take(*best, false);
    }
    for (std::size_t i = 0; i < comparisons.size(); ++i)
        if (!cmp_done[i]) throw GroundingError("comparison over unbound variables");
    return plan;
}

struct Instance {
    std::vector<AtomId> positive;
    std::vector<AtomId> negative;
};

class Grounder {
public:
    Grounder(const Program& p, const GroundingOptions& o) : prog_(p), opts_(o) {}

    GroundProgram run() {
        classify_predicates();
        add_facts();
        saturate();
        instantiate_all();
        simplify();
        return std::move(out_);
    }

private:
    // ---- atom store ---------------------------------------------------------

    AtomId add(const GroundAtom& g) {
        auto before = store_.atom_count();
        AtomId id = store_.add_atom(g);
        if (store_.atom_count() != before) {
            auto& rel = relations_[pred_key(g)];
            rel.atoms.push_back(id);
            for (auto& [pos, idx] : rel.index) idx[g.args[pos]].push_back(id);
        }
        return id;
    }

    const std::vector<AtomId>* candidates(const Atom& pat, const Binding& b) {
        auto it = relations_.find(pred_key(pat));
        if (it == relations_.end()) return nullptr;
        Relation& rel = it->second;
        for (std::size_t pos = 0; pos < pat.args.size(); ++pos) {
            if (!evaluable(pat.args[pos], b.bound)) continue;
            auto v = eval(pat.args[pos], b);
            if (!v) return nullptr;
            auto idx_it = rel.index.find(pos);
            if (idx_it == rel.index.end()) {
                auto& idx = rel.index[pos];
                for (AtomId id : rel.atoms) idx[store_.atom(id).args[pos]].push_back(id);
                idx_it = rel.index.find(pos);
            }
            auto bucket = idx_it->second.find(*v);
            if (bucket == idx_it->second.end()) return nullptr;
            return &bucket->second;
        }
        return &rel.atoms;
    }

    // ---- joins --------------------------------------------------------------

    struct Range {
        AtomId lo = 0, hi = 0;        // delta range
        AtomId limit = 0;             // visible atoms are < limit
    };

    bool match(const Atom& pat, const GroundAtom& g, Binding& b, std::vector<std::uint32_t>& newly) {
        for (std::size_t i = 0; i < pat.args.size(); ++i) {
            const Term& t = pat.args[i];
            if (t.kind == Term::Kind::Variable && !b.bound[t.variable]) {
                b.values[t.variable] = g.args[i];
                b.bound[t.variable] = 1;
                newly.push_back(t.variable);
                continue;
            }
            auto v = eval(t, b);
            if (!v || !(*v == g.args[i])) return false;
        }
        return true;
    }

    void join(const Plan& plan, std::size_t k, Binding& b, const Range& r, const std::function<void(Binding&)>& emit) {
        if (k == plan.size()) {
            emit(b);
            return;
        }
        const Literal& lit = *plan[k].literal;
        if (lit.kind == Literal::Kind::Comparison) {
            auto x = eval(lit.lhs, b), y = eval(lit.rhs, b);
            if (x && y && compare(lit.op, *x, *y)) join(plan, k + 1, b, r, emit);
            return;
        }
        const auto* cands = candidates(lit.atom, b);
        if (!cands) return;
        AtomId lo = plan[k].delta ? r.lo : 0;
        AtomId hi = plan[k].delta ? r.hi : r.limit;
        std::vector<std::uint32_t> newly;
        // Index buckets only grow at the end; snapshot the size for safety.
        std::size_t n = cands->size();
        for (std::size_t i = 0; i < n; ++i) {
            AtomId id = (*cands)[i];
            if (id < lo || id >= hi) continue;
            newly.clear();
            if (match(lit.atom, store_.atom(id), b, newly)) join(plan, k + 1, b, r, emit);
            for (auto v : newly) b.bound[v] = 0;
        }
    }

    // Expands `atom : condition` over fact predicates. Returns false when one of
    // the expanded atoms is not (yet) derivable.
    bool expand_conditional(const Literal& lit, Binding& b, AtomId limit, std::vector<AtomId>* out) {
        std::vector<const Literal*> cond;
        for (const auto& c : lit.condition) cond.push_back(&c);
        Plan plan = make_plan(cond, b.bound, std::nullopt);
        bool ok = true;
        Range r{0, 0, limit};
        join(plan, 0, b, r, [&](Binding& inner) {
            if (!ok) return;
            auto g = instantiate(lit.atom, inner);
            if (!g) return;
            auto id = store_.find(*g);
            if (!id || *id >= limit) {
                ok = false;
                return;
            }
            if (out) out->push_back(*id);
        });
        return ok;
    }

    // ---- preparation ----------------------------------------------------------

    void classify_predicates() {
        std::unordered_set<PredKey> derived;
        for (const auto& r : prog_.rules) {
            if (r.kind == RuleKind::Normal) derived.insert(pred_key(r.head));
            if (r.kind == RuleKind::Choice)
                for (const auto& e : r.elements) derived.insert(pred_key(e.head));
        }
        for (const auto& r : prog_.rules) {
            auto check = [&](const Literal& l) {
                if (l.kind != Literal::Kind::Conditional) return;
                for (const auto& c : l.condition) {
                    if (c.kind == Literal::Kind::Positive && derived.count(pred_key(c.atom)))
                        throw GroundingError("conditional literal condition '" + std::string(c.atom.predicate.str()) +
                                             "' must be defined by facts only");
                    if (c.kind == Literal::Kind::Negative)
                        throw GroundingError("negative literals are not supported in conditions");
                }
            };
            for (const auto& l : r.body) check(l);
        }
    }

    void add_facts() {
        Binding empty(0);
        for (const auto& r : prog_.rules) {
            if (r.kind != RuleKind::Fact) continue;
            auto g = instantiate(r.head, empty);
            if (!g) throw GroundingError("fact with non-integer arithmetic: " + to_string(r));
            fact_ids_.insert(add(*g));
        }
    }

    struct Producer {
        const Rule* rule = nullptr;
        const Atom* head = nullptr;
        std::vector<const Literal*> literals;     // positives and comparisons
        std::vector<const Literal*> conditionals; // expanded after the join
        std::size_t positive_count = 0;
    };

    std::vector<Producer> producers() const {
        std::vector<Producer> out;
        auto base = [](const Rule& r) {
            Producer p;
            p.rule = &r;
            for (const auto& l : r.body) {
                if (l.kind == Literal::Kind::Conditional) p.conditionals.push_back(&l);
                else if (l.kind != Literal::Kind::Negative) p.literals.push_back(&l);
            }
            return p;
        };
        for (const auto& r : prog_.rules) {
            if (r.kind == RuleKind::Normal) {
                Producer p = base(r);
                p.head = &r.head;
                out.push_back(std::move(p));
            } else if (r.kind == RuleKind::Choice) {
                for (const auto& e : r.elements) {
                    Producer p = base(r);
                    p.head = &e.head;
                    for (const auto& c : e.condition)
                        if (c.kind != Literal::Kind::Negative) p.literals.push_back(&c);
                    out.push_back(std::move(p));
                }
            }
        }
        for (auto& p : out)
            for (auto* l : p.literals)
                if (l->kind == Literal::Kind::Positive) ++p.positive_count;
        return out;
    }

    // ---- phase 1: derivable atoms --------------------------------------------

    void saturate() {
        auto prods = producers();
        std::vector<std::vector<Plan>> delta_plans(prods.size());
        std::vector<Plan> full_plans(prods.size());
        for (std::size_t i = 0; i < prods.size(); ++i) {
            std::vector<char> bound(prods[i].rule->variables.size(), 0);
            full_plans[i] = make_plan(prods[i].literals, bound, std::nullopt);
            std::size_t pos_index = 0;
            for (auto* l : prods[i].literals) {
                if (l->kind != Literal::Kind::Positive) continue;
                // make_plan numbers positives in order of appearance
                delta_plans[i].push_back(make_plan(prods[i].literals, bound, pos_index));
                ++pos_index;
            }
        }

        AtomId lo = 0;
        bool first_round = true;
        while (true) {
            AtomId hi = static_cast<AtomId>(store_.atom_count());
            if (!first_round && lo == hi) break;
            std::vector<GroundAtom> pending;
            for (std::size_t i = 0; i < prods.size(); ++i) {
                const Producer& p = prods[i];
                Binding b(p.rule->variables.size());
                Range r{lo, hi, hi};
                auto emit = [&](Binding& bb) {
                    for (auto* c : p.conditionals)
                        if (!expand_conditional(*c, bb, hi, nullptr)) return;
                    auto g = instantiate(*p.head, bb);
                    if (g && !store_.find(*g)) pending.push_back(std::move(*g));
                };
                bool full = first_round || !p.conditionals.empty();
                if (full) {
                    if (first_round || p.positive_count > 0 || !p.conditionals.empty())
                        join(full_plans[i], 0, b, Range{0, hi, hi}, emit);
                } else {
                    for (const auto& plan : delta_plans[i]) join(plan, 0, b, r, emit);
                }
            }
            for (auto& g : pending) add(g);
            if (store_.atom_count() > opts_.max_ground_rules) throw GroundingBudgetExceeded(opts_.max_ground_rules);
            lo = hi;
            first_round = false;
        }
        possible_ = static_cast<AtomId>(store_.atom_count());
    }

    // ---- phase 2: instantiate every rule ---------------------------------------

    void count_instance() {
        if (++instances_ > opts_.max_ground_rules) throw GroundingBudgetExceeded(opts_.max_ground_rules);
    }

    // Grounds negative literals; returns false if the instance is dropped.
    bool ground_body(const std::vector<Literal>& body, Binding& b, Instance& inst) {
        for (const auto& l : body) {
            if (l.kind == Literal::Kind::Positive) {
                auto g = instantiate(l.atom, b);
                if (!g) return false;
                auto id = store_.find(*g);
                if (!id) return false;
                inst.positive.push_back(*id);
            } else if (l.kind == Literal::Kind::Negative) {
                auto g = instantiate(l.atom, b);
                if (!g) return false;
                if (auto id = store_.find(*g)) inst.negative.push_back(*id);
            } else if (l.kind == Literal::Kind::Conditional) {
                if (!expand_conditional(l, b, possible_, &inst.positive)) return false;
            }
        }
        return true;
    }

    Plan body_plan(const Rule& r) {
        std::vector<const Literal*> lits;
        for (const auto& l : r.body)
            if (l.kind == Literal::Kind::Positive || l.kind == Literal::Kind::Comparison) lits.push_back(&l);
        return make_plan(lits, std::vector<char>(r.variables.size(), 0), std::nullopt);
    }

    void instantiate_all() {
        Range all{0, 0, possible_};
        for (const auto& r : prog_.rules) {
            if (r.kind == RuleKind::Fact) continue;
            Plan plan = body_plan(r);
            Binding b(r.variables.size());
            switch (r.kind) {
                case RuleKind::Normal:
                    join(plan, 0, b, all, [&](Binding& bb) {
                        Instance inst;
                        if (!ground_body(r.body, bb, inst)) return;
                        auto head = instantiate(r.head, bb);
                        if (!head) return;
                        auto hid = store_.find(*head);
                        if (!hid) return;
                        count_instance();
                        rules_.push_back({*hid, std::move(inst.positive), std::move(inst.negative)});
                    });
                    break;
                case RuleKind::Integrity:
                    join(plan, 0, b, all, [&](Binding& bb) {
                        Instance inst;
                        if (!ground_body(r.body, bb, inst)) return;
                        count_instance();
                        integrity_.push_back({std::move(inst.positive), std::move(inst.negative)});
                    });
                    break;
                case RuleKind::Choice: {
                    std::vector<Plan> element_plans;
                    std::vector<char> body_bound(r.variables.size(), 0);
                    for (const auto& l : r.body)
                        if (l.kind == Literal::Kind::Positive)
                            for (const auto& t : l.atom.args) mark_vars(t, body_bound);
                    for (const auto& e : r.elements) {
                        std::vector<const Literal*> lits;
                        for (const auto& c : e.condition)
                            if (c.kind != Literal::Kind::Negative) lits.push_back(&c);
                        element_plans.push_back(make_plan(lits, body_bound, std::nullopt));
                    }
                    join(plan, 0, b, all, [&](Binding& bb) {
                        Instance inst;
                        if (!ground_body(r.body, bb, inst)) return;
                        GroundChoice gc;
                        gc.lower = r.lower;
                        gc.upper = r.upper;
                        gc.positive = std::move(inst.positive);
                        gc.negative = std::move(inst.negative);
                        for (std::size_t ei = 0; ei < r.elements.size(); ++ei) {
                            const auto& e = r.elements[ei];
                            join(element_plans[ei], 0, bb, all, [&](Binding& eb) {
                                Instance cond;
                                if (!ground_body(e.condition, eb, cond)) return;
                                auto head = instantiate(e.head, eb);
                                if (!head) return;
                                auto hid = store_.find(*head);
                                if (!hid) return;
                                gc.elements.push_back({*hid, std::move(cond.positive), std::move(cond.negative)});
                            });
                        }
                        count_instance();
                        choices_.push_back(std::move(gc));
                    });
                    break;
                }
                case RuleKind::Minimize:
                    join(plan, 0, b, all, [&](Binding& bb) {
                        Instance inst;
                        if (!ground_body(r.body, bb, inst)) return;
                        auto w = eval(r.minimize.weight, bb);
                        auto lv = eval(r.minimize.level, bb);
                        if (!w || !lv || !w->is_integer() || !lv->is_integer())
                            throw GroundingError("minimize weight and level must be integers: " + to_string(r));
                        std::string key;
                        for (std::size_t i = 0; i < r.minimize.tuple.size(); ++i) {
                            auto v = eval(r.minimize.tuple[i], bb);
                            if (!v) return;
                            if (i) key += ',';
                            key += v->to_string();
                        }
                        count_instance();
                        auto& bodies = minimize_[{lv->as_integer(), w->as_integer(), key}];
                        bodies.push_back(std::move(inst));
                    });
                    break;
                case RuleKind::Fact: break;
            }
        }
    }

    // ---- phase 3: simplification ------------------------------------------------

    enum class Status : std::uint8_t { Unknown, True, False };

    bool dead(const std::vector<AtomId>& pos, const std::vector<AtomId>& neg) const {
        for (auto a : pos)
            if (status_[a] == Status::False) return true;
        for (auto a : neg)
            if (status_[a] == Status::True) return true;
        return false;
    }

    bool certain(const std::vector<AtomId>& pos, const std::vector<AtomId>& neg) const {
        for (auto a : pos)
            if (status_[a] != Status::True) return false;
        for (auto a : neg)
            if (status_[a] != Status::False) return false;
        return true;
    }

    void strip(std::vector<AtomId>& pos, std::vector<AtomId>& neg) const {
        std::erase_if(pos, [&](AtomId a) { return status_[a] == Status::True; });
        std::erase_if(neg, [&](AtomId a) { return status_[a] == Status::False; });
        std::sort(pos.begin(), pos.end());
        pos.erase(std::unique(pos.begin(), pos.end()), pos.end());
        std::sort(neg.begin(), neg.end());
        neg.erase(std::unique(neg.begin(), neg.end()), neg.end());
    }

    void simplify() {
        status_.assign(possible_, Status::Unknown);
        for (auto id : fact_ids_) status_[id] = Status::True;

        bool changed = true;
        while (changed) {
            changed = false;
            // certainly true: rule bodies that certainly hold
            for (const auto& r : rules_) {
                if (status_[r.head] != Status::True && certain(r.positive, r.negative)) {
                    status_[r.head] = Status::True;
                    changed = true;
                }
            }
            // certainly false: no live support left
            std::vector<char> supported(possible_, 0);
            for (const auto& r : rules_)
                if (!dead(r.positive, r.negative)) supported[r.head] = 1;
            for (const auto& c : choices_) {
                if (dead(c.positive, c.negative)) continue;
                for (const auto& e : c.elements)
                    if (!dead(e.positive, e.negative)) supported[e.head] = 1;
            }
            for (AtomId a = 0; a < possible_; ++a) {
                if (status_[a] == Status::Unknown && !supported[a]) {
                    status_[a] = Status::False;
                    changed = true;
                }
            }
        }

        // Copy atoms into the output program.
        for (AtomId a = 0; a < possible_; ++a) out_.add_atom(store_.atom(a));
        for (AtomId a = 0; a < possible_; ++a)
            if (status_[a] == Status::True) out_.rules.push_back({a, {}, {}});

        for (auto& r : rules_) {
            if (status_[r.head] == Status::True || dead(r.positive, r.negative)) continue;
            strip(r.positive, r.negative);
            out_.rules.push_back(std::move(r));
        }
        for (auto& c : choices_) {
            if (dead(c.positive, c.negative)) continue;
            strip(c.positive, c.negative);
            std::vector<GroundChoiceElement> elements;
            std::set<std::tuple<AtomId, std::vector<AtomId>, std::vector<AtomId>>> seen;
            for (auto& e : c.elements) {
                if (dead(e.positive, e.negative)) continue;
                strip(e.positive, e.negative);
                if (!seen.emplace(e.head, e.positive, e.negative).second) continue;
                elements.push_back(std::move(e));
            }
            c.elements = std::move(elements);
            bool bounded = c.lower.value_or(0) > 0 || c.upper.has_value();
            if (c.elements.empty() && !bounded) continue;
            out_.choices.push_back(std::move(c));
        }
        for (auto& ic : integrity_) {
            if (dead(ic.positive, ic.negative)) continue;
            strip(ic.positive, ic.negative);
            out_.integrity.push_back(std::move(ic));
        }

        std::int64_t aux_counter = 0;
        const Symbol aux_name("#aux");
        for (auto& [key, bodies] : minimize_) {
            auto& [level, weight, tuple] = key;
            if (weight == 0) continue;
            std::vector<Instance> live;
            bool always = false;
            for (auto& inst : bodies) {
                if (dead(inst.positive, inst.negative)) continue;
                strip(inst.positive, inst.negative);
                if (inst.positive.empty() && inst.negative.empty()) always = true;
                live.push_back(std::move(inst));
            }
            if (live.empty()) continue;
            AtomId atom;
            if (!always && live.size() == 1 && live[0].positive.size() == 1 && live[0].negative.empty()) {
                atom = live[0].positive[0];
            } else {
                atom = out_.add_atom(GroundAtom{aux_name, {Value::integer(aux_counter++)}}, true);
                if (always) {
                    out_.rules.push_back({atom, {}, {}});
                } else {
                    for (auto& inst : live) out_.rules.push_back({atom, std::move(inst.positive), std::move(inst.negative)});
                }
            }
            out_.minimize.push_back({atom, weight, level, tuple});
        }
    }

    const Program& prog_;
    GroundingOptions opts_;
    GroundProgram store_;
    GroundProgram out_;
    std::unordered_map<PredKey, Relation> relations_;
    std::unordered_set<AtomId> fact_ids_;
    AtomId possible_ = 0;
    std::size_t instances_ = 0;

    std::vector<GroundRule> rules_;
    std::vector<GroundChoice> choices_;
    std::vector<GroundIntegrity> integrity_;
    std::map<std::tuple<std::int64_t, std::int64_t, std::string>, std::vector<Instance>> minimize_;
    std::vector<Status> status_;
};

}  // namespace

GroundProgram ground(const Program& program, const GroundingOptions& options) {
    return Grounder(program, options).run();
}

}  // namespace concretix::logic
