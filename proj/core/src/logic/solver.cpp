#include "concretix/logic/solver.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <map>
#include <random>
#include <unordered_map>

namespace concretix::logic {

namespace {

using Var = std::uint32_t;
using Lit = std::uint32_t;

constexpr Lit no_lit = std::numeric_limits<Lit>::max();
constexpr std::int32_t no_reason = -1;
constexpr std::int32_t pb_reason = -2;

inline Lit mk_lit(Var v, bool negative = false) { return (v << 1) | Lit(negative); }
inline Lit neg(Lit l) { return l ^ 1u; }
inline Var var_of(Lit l) { return l >> 1; }
inline bool is_neg(Lit l) { return l & 1u; }

double luby(double y, int x) {
    int size = 1, seq = 0;
    while (size < x + 1) {
        ++seq;
        size = 2 * size + 1;
    }
    while (size - 1 != x) {
        size = (size - 1) >> 1;
        --seq;
        x = x % size;
    }
    double r = 1;
    for (int i = 0; i < seq; ++i) r *= y;
    return r;
}

struct Clause {
    std::vector<Lit> lits;
    bool learnt = false;
    bool deleted = false;
    double activity = 0;
};

// guard -> sum of weights of true terms <= bound. No guard means always on.
struct PB {
    Lit guard = no_lit;
    std::vector<std::pair<Lit, std::int64_t>> terms;
    std::int64_t bound = 0;
    std::int64_t sum = 0;
    std::int64_t max_weight = 0;
};

struct Support {
    AtomId head;
    Lit body;
    std::vector<AtomId> positive;
};

enum class Status { Sat, Unsat };

class Solver {
public:
    Solver(const GroundProgram& gp, const SolveOptions& opts) : gp_(gp), opts_(opts) {
        if (opts.budget) deadline_ = std::chrono::steady_clock::now() + *opts.budget;
        build();
    }

    Lit atom_lit(AtomId a) const { return mk_lit(a); }

    Status search(const std::vector<Lit>& assumptions);

    std::vector<Lit> failed;  // negations of the failing assumptions after Unsat

    std::vector<AtomId> visible_model() const {
        std::vector<AtomId> out;
        for (AtomId a = 0; a < n_atoms_; ++a)
            if (!gp_.hidden(a) && model_[a] == 1) out.push_back(a);
        return out;
    }

    bool model_true(AtomId a) const { return model_[a] == 1; }

    void add_blocking_clause(const std::vector<Lit>& lits) {
        backtrack(0);
        add_clause(lits);
    }

    Var new_selector() {
        Var v = new_var();
        return v;
    }

    void add_pb(Lit guard, std::vector<std::pair<Lit, std::int64_t>> terms, std::int64_t bound) {
        backtrack(0);
        PB pb;
        pb.guard = guard;
        pb.bound = bound;
        for (auto& [l, w] : terms) {
            if (w == 0) continue;
            if (w < 0) {
                pb.bound -= w;
                pb.terms.emplace_back(neg(l), -w);
            } else {
                pb.terms.emplace_back(l, w);
            }
        }
        auto idx = static_cast<std::uint32_t>(pbs_.size());
        for (auto& [l, w] : pb.terms) {
            occ_[l].emplace_back(idx, w);
            if (value(l) == 1) pb.sum += w;
            pb.max_weight = std::max(pb.max_weight, w);
        }
        if (guard != no_lit) guard_occ_[guard].push_back(idx);
        pbs_.push_back(std::move(pb));
        if (!check_pb(idx) || !propagate()) unsat_ = true;
    }

    void add_unit(Lit l) {
        backtrack(0);
        add_clause({l});
    }

    SolveStats stats;

private:
    // ---- construction ---------------------------------------------------------

    Var new_var() {
        Var v = static_cast<Var>(vval_.size());
        vval_.push_back(0);
        level_.push_back(0);
        reason_.push_back(no_reason);
        expl_.emplace_back();
        seen_.push_back(0);
        phase_.push_back(0);
        activity_.push_back(0);
        heap_pos_.push_back(-1);
        watches_.emplace_back();
        watches_.emplace_back();
        occ_.emplace_back();
        occ_.emplace_back();
        guard_occ_.emplace_back();
        guard_occ_.emplace_back();
        return v;
    }

    Lit body_lit(std::vector<Lit> lits) {
        std::sort(lits.begin(), lits.end());
        lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
        for (std::size_t i = 1; i < lits.size(); ++i)
            if (lits[i] == neg(lits[i - 1])) return neg(true_lit_);
        if (lits.empty()) return true_lit_;
        if (lits.size() == 1) return lits[0];
        auto it = bodies_.find(lits);
        if (it != bodies_.end()) return it->second;
        Lit b = mk_lit(new_var());
        std::vector<Lit> back{b};
        for (auto l : lits) {
            add_clause({neg(b), l});
            back.push_back(neg(l));
        }
        add_clause(back);
        bodies_.emplace(lits, b);
        return b;
    }

    std::vector<Lit> lits_of(const std::vector<AtomId>& pos, const std::vector<AtomId>& negs) const {
        std::vector<Lit> out;
        for (auto a : pos) out.push_back(mk_lit(a));
        for (auto a : negs) out.push_back(mk_lit(a, true));
        return out;
    }

    void build() {
        n_atoms_ = static_cast<Var>(gp_.atom_count());
        for (Var v = 0; v < n_atoms_; ++v) new_var();
        true_lit_ = mk_lit(new_var());
        add_clause({true_lit_});

        std::vector<std::vector<Lit>> support_lits(n_atoms_);
        auto add_support = [&](AtomId head, Lit body, std::vector<AtomId> pos) {
            support_lits[head].push_back(body);
            supports_.push_back({head, body, std::move(pos)});
        };

        for (const auto& r : gp_.rules) {
            Lit b = body_lit(lits_of(r.positive, r.negative));
            add_clause({neg(b), mk_lit(r.head)});
            add_support(r.head, b, r.positive);
        }

        for (const auto& c : gp_.choices) {
            auto cl = lits_of(c.positive, c.negative);
            Lit cb = body_lit(cl);
            std::map<AtomId, std::vector<Lit>> conditions;
            for (const auto& e : c.elements) {
                auto el = lits_of(e.positive, e.negative);
                conditions[e.head].push_back(body_lit(el));
                auto both = cl;
                both.insert(both.end(), el.begin(), el.end());
                std::vector<AtomId> pos = c.positive;
                pos.insert(pos.end(), e.positive.begin(), e.positive.end());
                add_support(e.head, body_lit(both), std::move(pos));
            }
            if (!c.lower && !c.upper) continue;
            std::vector<Lit> counted;
            for (auto& [head, conds] : conditions) {
                Lit h = mk_lit(head);
                if (std::find(conds.begin(), conds.end(), true_lit_) != conds.end()) {
                    counted.push_back(h);
                    continue;
                }
                Lit cnt = mk_lit(new_var());
                add_clause({neg(cnt), h});
                std::vector<Lit> any{neg(cnt)};
                for (auto d : conds) {
                    any.push_back(d);
                    add_clause({neg(h), neg(d), cnt});
                }
                add_clause(any);
                counted.push_back(cnt);
            }
            auto n = static_cast<std::int64_t>(counted.size());
            if (c.upper) {
                std::vector<std::pair<Lit, std::int64_t>> terms;
                for (auto l : counted) terms.emplace_back(l, 1);
                add_pb(cb, std::move(terms), *c.upper);
            }
            if (c.lower && *c.lower > 0) {
                std::vector<std::pair<Lit, std::int64_t>> terms;
                for (auto l : counted) terms.emplace_back(neg(l), 1);
                add_pb(cb, std::move(terms), n - *c.lower);
            }
        }

        for (const auto& ic : gp_.integrity) {
            std::vector<Lit> clause;
            for (auto l : lits_of(ic.positive, ic.negative)) clause.push_back(neg(l));
            add_clause(clause);
        }

        for (AtomId a = 0; a < n_atoms_; ++a) {
            auto& s = support_lits[a];
            if (std::find(s.begin(), s.end(), true_lit_) != s.end()) continue;
            std::vector<Lit> clause{mk_lit(a, true)};
            clause.insert(clause.end(), s.begin(), s.end());
            add_clause(clause);
        }

        supports_of_atom_.assign(n_atoms_, {});
        pos_occ_.assign(n_atoms_, {});
        for (std::uint32_t i = 0; i < supports_.size(); ++i) {
            supports_of_atom_[supports_[i].head].push_back(i);
            for (auto a : supports_[i].positive) pos_occ_[a].push_back(i);
        }

        std::mt19937_64 rng(opts_.seed);
        std::uniform_real_distribution<double> noise(0.0, 1e-6);
        for (Var v = 0; v < n_atoms_; ++v) {
            if (opts_.seed != 0) activity_[v] = noise(rng);
            heap_insert(v);
        }
        if (!unsat_ && !propagate()) unsat_ = true;
    }

    // ---- assignment -------------------------------------------------------------

    int value(Lit l) const {
        int v = vval_[var_of(l)];
        return is_neg(l) ? -v : v;
    }

    int decision_level() const { return static_cast<int>(trail_lim_.size()); }

    void assign(Lit l, std::int32_t reason) {
        Var v = var_of(l);
        vval_[v] = is_neg(l) ? -1 : 1;
        level_[v] = decision_level();
        reason_[v] = reason;
        trail_.push_back(l);
        for (auto& [pb, w] : occ_[l]) pbs_[pb].sum += w;
    }

    void assign_explained(Lit l, std::vector<Lit> expl) {
        Var v = var_of(l);
        expl_[v] = std::move(expl);
        assign(l, pb_reason);
    }

    void backtrack(int level) {
        if (decision_level() <= level) return;
        for (std::size_t i = trail_.size(); i-- > static_cast<std::size_t>(trail_lim_[level]);) {
            Lit l = trail_[i];
            Var v = var_of(l);
            for (auto& [pb, w] : occ_[l]) pbs_[pb].sum -= w;
            phase_[v] = is_neg(l) ? 0 : 1;
            vval_[v] = 0;
            reason_[v] = no_reason;
            if (v < n_atoms_ && heap_pos_[v] < 0) heap_insert(v);
        }
        trail_.resize(trail_lim_[level]);
        trail_lim_.resize(level);
        qhead_ = trail_.size();
    }

    // ---- clauses ------------------------------------------------------------------

    // Adds a clause at decision level 0.
    void add_clause(std::vector<Lit> lits) {
        if (unsat_) return;
        assert(decision_level() == 0);
        std::sort(lits.begin(), lits.end());
        lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
        std::vector<Lit> kept;
        for (std::size_t i = 0; i < lits.size(); ++i) {
            if (i + 1 < lits.size() && lits[i + 1] == neg(lits[i])) return;
            int v = value(lits[i]);
            if (v == 1) return;
            if (v == 0) kept.push_back(lits[i]);
        }
        if (kept.empty()) {
            unsat_ = true;
            return;
        }
        if (kept.size() == 1) {
            assign(kept[0], no_reason);
            if (!propagate()) unsat_ = true;
            return;
        }
        attach(std::move(kept), false);
    }

    std::uint32_t attach(std::vector<Lit> lits, bool learnt) {
        auto cref = static_cast<std::uint32_t>(clauses_.size());
        watches_[neg(lits[0])].push_back(cref);
        watches_[neg(lits[1])].push_back(cref);
        clauses_.push_back({std::move(lits), learnt, false, 0});
        if (learnt) ++learnt_count_;
        return cref;
    }

    std::vector<Lit> reason_lits(Var v) const {
        if (reason_[v] == pb_reason) return expl_[v];
        if (reason_[v] >= 0) return clauses_[reason_[v]].lits;
        return {};
    }

    // ---- propagation ----------------------------------------------------------------

    bool check_pb(std::uint32_t idx) {
        PB& pb = pbs_[idx];
        int g = pb.guard == no_lit ? 1 : value(pb.guard);
        if (g == -1) return true;
        auto true_terms = [&](std::vector<Lit>& out) {
            for (auto& [l, w] : pb.terms)
                if (value(l) == 1) out.push_back(neg(l));
        };
        if (pb.sum > pb.bound) {
            std::vector<Lit> lits;
            if (pb.guard != no_lit) lits.push_back(neg(pb.guard));
            true_terms(lits);
            if (g == 1) {
                conflict_ = std::move(lits);
                return false;
            }
            // guard undefined: it must be false
            std::vector<Lit> expl{neg(pb.guard)};
            expl.insert(expl.end(), lits.begin() + 1, lits.end());
            assign_explained(neg(pb.guard), std::move(expl));
            return true;
        }
        if (g != 1) return true;
        std::int64_t slack = pb.bound - pb.sum;
        if (pb.max_weight <= slack) return true;
        std::vector<Lit> base;
        bool have_base = false;
        for (std::size_t i = 0; i < pb.terms.size(); ++i) {
            auto [l, w] = pb.terms[i];
            if (w <= slack || value(l) != 0) continue;
            if (!have_base) {
                if (pb.guard != no_lit) base.push_back(neg(pb.guard));
                true_terms(base);
                have_base = true;
            }
            std::vector<Lit> expl{neg(l)};
            expl.insert(expl.end(), base.begin(), base.end());
            assign_explained(neg(l), std::move(expl));
        }
        return true;
    }

    bool propagate() {
        while (qhead_ < trail_.size()) {
            Lit p = trail_[qhead_++];
            ++props_;
            auto& ws = watches_[p];
            std::size_t i = 0, j = 0;
            Lit false_lit = neg(p);
            bool conflict = false;
            while (i < ws.size()) {
                std::uint32_t cref = ws[i++];
                Clause& c = clauses_[cref];
                if (c.deleted) continue;
                auto& lits = c.lits;
                if (lits[0] == false_lit) std::swap(lits[0], lits[1]);
                if (value(lits[0]) == 1) {
                    ws[j++] = cref;
                    continue;
                }
                bool moved = false;
                for (std::size_t k = 2; k < lits.size(); ++k) {
                    if (value(lits[k]) != -1) {
                        std::swap(lits[1], lits[k]);
                        watches_[neg(lits[1])].push_back(cref);
                        moved = true;
                        break;
                    }
                }
                if (moved) continue;
                ws[j++] = cref;
                if (value(lits[0]) == -1) {
                    conflict_ = lits;
                    conflict = true;
                    while (i < ws.size()) ws[j++] = ws[i++];
                    break;
                }
                assign(lits[0], static_cast<std::int32_t>(cref));
            }
            ws.resize(j);
            if (conflict) return false;
            for (std::size_t k = 0; k < occ_[p].size(); ++k)
                if (!check_pb(occ_[p][k].first)) return false;
            for (std::size_t k = 0; k < guard_occ_[p].size(); ++k)
                if (!check_pb(guard_occ_[p][k])) return false;
        }
        return true;
    }

    // ---- conflict analysis ---------------------------------------------------------------

    void bump(Var v) {
        if (v >= n_atoms_) return;
        if ((activity_[v] += var_inc_) > 1e100) {
            for (Var u = 0; u < n_atoms_; ++u) activity_[u] *= 1e-100;
            var_inc_ *= 1e-100;
        }
        if (heap_pos_[v] >= 0) heap_up(heap_pos_[v]);
    }

    // Returns the learnt clause (asserting literal first) and the backjump level.
    std::pair<std::vector<Lit>, int> analyze(std::vector<Lit> conflict) {
        std::vector<Lit> out{no_lit};
        int path = 0;
        Lit p = no_lit;
        std::size_t idx = trail_.size();
        std::vector<Lit> lits = std::move(conflict);
        std::vector<Var> touched;
        while (true) {
            for (std::size_t j = (p == no_lit ? 0 : 1); j < lits.size(); ++j) {
                Lit q = lits[j];
                Var v = var_of(q);
                if (seen_[v] || level_[v] == 0) continue;
                seen_[v] = 1;
                touched.push_back(v);
                bump(v);
                if (level_[v] >= decision_level()) ++path;
                else out.push_back(q);
            }
            while (!seen_[var_of(trail_[--idx])]) {}
            p = trail_[idx];
            seen_[var_of(p)] = 0;
            if (--path == 0) break;
            lits = reason_lits(var_of(p));
        }
        out[0] = neg(p);

        // drop literals implied by the rest of the clause
        std::vector<Lit> kept{out[0]};
        for (std::size_t i = 1; i < out.size(); ++i) {
            Var v = var_of(out[i]);
            if (reason_[v] == no_reason) {
                kept.push_back(out[i]);
                continue;
            }
            auto r = reason_lits(v);
            bool redundant = true;
            for (std::size_t k = 1; k < r.size(); ++k) {
                Var u = var_of(r[k]);
                if (!seen_[u] && level_[u] > 0) {
                    redundant = false;
                    break;
                }
            }
            if (!redundant) kept.push_back(out[i]);
        }
        for (auto v : touched) seen_[v] = 0;

        int bt = 0;
        if (kept.size() > 1) {
            std::size_t best = 1;
            for (std::size_t i = 2; i < kept.size(); ++i)
                if (level_[var_of(kept[i])] > level_[var_of(kept[best])]) best = i;
            std::swap(kept[1], kept[best]);
            bt = level_[var_of(kept[1])];
        }
        return {std::move(kept), bt};
    }

    // Collects the assumptions responsible for `p` being true.
    void analyze_final(Lit p) {
        failed.clear();
        failed.push_back(p);
        if (decision_level() == 0) return;
        seen_[var_of(p)] = 1;
        for (std::size_t i = trail_.size(); i-- > static_cast<std::size_t>(trail_lim_[0]);) {
            Var x = var_of(trail_[i]);
            if (!seen_[x]) continue;
            if (reason_[x] == no_reason) {
                if (level_[x] > 0) failed.push_back(neg(trail_[i]));
            } else {
                auto r = reason_lits(x);
                for (std::size_t k = 1; k < r.size(); ++k)
                    if (level_[var_of(r[k])] > 0) seen_[var_of(r[k])] = 1;
            }
            seen_[x] = 0;
        }
        seen_[var_of(p)] = 0;
    }

    // Handles a fully falsified clause found outside of propagation.
    // Returns false when the problem became unsatisfiable at level 0.
    bool add_conflicting(std::vector<Lit> lits) {
        std::erase_if(lits, [&](Lit l) { return level_[var_of(l)] == 0 && value(l) == -1; });
        if (lits.empty()) return false;
        std::sort(lits.begin(), lits.end(),
                  [&](Lit a, Lit b) { return level_[var_of(a)] > level_[var_of(b)]; });
        int top = level_[var_of(lits[0])];
        if (lits.size() == 1) {
            backtrack(0);
            assign(lits[0], no_reason);
            return true;
        }
        backtrack(top);
        if (level_[var_of(lits[1])] < top) {
            // exactly one literal at the top level: it becomes asserting
            int second = level_[var_of(lits[1])];
            backtrack(second);
            auto cref = attach(lits, true);
            assign(clauses_[cref].lits[0], static_cast<std::int32_t>(cref));
            return true;
        }
        attach(lits, true);
        pending_conflict_ = true;
        conflict_ = std::move(lits);
        return true;
    }

    bool resolve_conflict() {
        ++stats.conflicts;
        ++conflicts_since_restart_;
        if (decision_level() == 0) return false;
        auto [learnt, bt] = analyze(conflict_);
        backtrack(bt);
        if (learnt.size() == 1) {
            assign(learnt[0], no_reason);
        } else {
            auto cref = attach(learnt, true);
            clauses_[cref].activity = clause_inc_;
            assign(learnt[0], static_cast<std::int32_t>(cref));
        }
        var_inc_ /= 0.95;
        clause_inc_ /= 0.999;
        return true;
    }

    void reduce_learnts() {
        std::vector<std::uint32_t> cands;
        for (std::uint32_t i = 0; i < clauses_.size(); ++i) {
            const auto& c = clauses_[i];
            if (!c.learnt || c.deleted || c.lits.size() <= 2) continue;
            Var v = var_of(c.lits[0]);
            if (reason_[v] == static_cast<std::int32_t>(i) && value(c.lits[0]) == 1) continue;
            cands.push_back(i);
        }
        std::sort(cands.begin(), cands.end(), [&](auto a, auto b) {
            if (clauses_[a].activity != clauses_[b].activity) return clauses_[a].activity < clauses_[b].activity;
            return a < b;
        });
        for (std::size_t i = 0; i < cands.size() / 2; ++i) {
            clauses_[cands[i]].deleted = true;
            clauses_[cands[i]].lits.clear();
            clauses_[cands[i]].lits.shrink_to_fit();
            --learnt_count_;
        }
        max_learnts_ = static_cast<std::size_t>(max_learnts_ * 1.1);
    }

    // ---- unfounded sets ----------------------------------------------------------------

    // Returns a loop nogood violated by the current total assignment, or an
    // empty vector when every true atom is founded.
    std::vector<Lit> unfounded_nogood() {
        std::vector<char> founded(n_atoms_, 0);
        std::vector<std::uint32_t> missing(supports_.size());
        std::vector<AtomId> queue;
        for (std::uint32_t i = 0; i < supports_.size(); ++i) {
            missing[i] = static_cast<std::uint32_t>(supports_[i].positive.size());
            const auto& s = supports_[i];
            if (missing[i] == 0 && value(s.body) == 1 && !founded[s.head]) {
                founded[s.head] = 1;
                queue.push_back(s.head);
            }
        }
        while (!queue.empty()) {
            AtomId a = queue.back();
            queue.pop_back();
            for (auto si : pos_occ_[a]) {
                if (--missing[si] != 0) continue;
                const auto& s = supports_[si];
                if (value(s.body) == 1 && !founded[s.head]) {
                    founded[s.head] = 1;
                    queue.push_back(s.head);
                }
            }
        }
        std::vector<char> in_u(n_atoms_, 0);
        AtomId pick = 0;
        int best_level = -1;
        bool any = false;
        for (AtomId a = 0; a < n_atoms_; ++a) {
            if (value(mk_lit(a)) == 1 && !founded[a]) {
                in_u[a] = 1;
                any = true;
                if (level_[a] > best_level) {
                    best_level = level_[a];
                    pick = a;
                }
            }
        }
        if (!any) return {};
        std::vector<Lit> clause{mk_lit(pick, true)};
        for (AtomId a = 0; a < n_atoms_; ++a) {
            if (!in_u[a]) continue;
            for (auto si : supports_of_atom_[a]) {
                const auto& s = supports_[si];
                bool external = std::none_of(s.positive.begin(), s.positive.end(), [&](AtomId b) { return in_u[b]; });
                if (external) clause.push_back(s.body);
            }
        }
        std::sort(clause.begin() + 1, clause.end());
        clause.erase(std::unique(clause.begin() + 1, clause.end()), clause.end());
        ++stats.loop_nogoods;
        return clause;
    }

    // ---- decisions ---------------------------------------------------------------------

    bool heap_less(Var a, Var b) const {
        if (activity_[a] != activity_[b]) return activity_[a] > activity_[b];
        return a < b;
    }

    void heap_up(int i) {
        Var v = heap_[i];
        while (i > 0) {
            int parent = (i - 1) / 2;
            if (!heap_less(v, heap_[parent])) break;
            heap_[i] = heap_[parent];
            heap_pos_[heap_[i]] = i;
            i = parent;
        }
        heap_[i] = v;
        heap_pos_[v] = i;
    }

    void heap_down(int i) {
        Var v = heap_[i];
        int n = static_cast<int>(heap_.size());
        while (true) {
            int child = 2 * i + 1;
            if (child >= n) break;
            if (child + 1 < n && heap_less(heap_[child + 1], heap_[child])) ++child;
            if (!heap_less(heap_[child], v)) break;
            heap_[i] = heap_[child];
            heap_pos_[heap_[i]] = i;
            i = child;
        }
        heap_[i] = v;
        heap_pos_[v] = i;
    }

    void heap_insert(Var v) {
        heap_pos_[v] = static_cast<int>(heap_.size());
        heap_.push_back(v);
        heap_up(heap_pos_[v]);
    }

    Var heap_pop() {
        Var top = heap_[0];
        heap_pos_[top] = -1;
        Var last = heap_.back();
        heap_.pop_back();
        if (!heap_.empty()) {
            heap_[0] = last;
            heap_pos_[last] = 0;
            heap_down(0);
        }
        return top;
    }

    std::optional<Lit> pick_branch() {
        while (!heap_.empty()) {
            Var v = heap_pop();
            if (vval_[v] == 0) return mk_lit(v, phase_[v] == 0);
        }
        for (Var v = n_atoms_; v < vval_.size(); ++v)
            if (vval_[v] == 0) return mk_lit(v, true);
        return std::nullopt;
    }

    void check_time() {
        if (!deadline_) return;
        if (++time_checks_ % 128 != 0) return;
        if (std::chrono::steady_clock::now() > *deadline_) throw TimeoutError("solver time budget exhausted");
    }

    void save_model() {
        model_.assign(n_atoms_, 0);
        for (Var v = 0; v < n_atoms_; ++v) model_[v] = vval_[v];
    }

    const GroundProgram& gp_;
    SolveOptions opts_;
    std::optional<std::chrono::steady_clock::time_point> deadline_;

    Var n_atoms_ = 0;
    Lit true_lit_ = 0;
    bool unsat_ = false;
    bool pending_conflict_ = false;

    std::vector<std::int8_t> vval_;
    std::vector<int> level_;
    std::vector<std::int32_t> reason_;
    std::vector<std::vector<Lit>> expl_;
    std::vector<char> seen_;
    std::vector<char> phase_;
    std::vector<double> activity_;
    std::vector<int> heap_pos_;
    std::vector<Var> heap_;
    double var_inc_ = 1.0;
    double clause_inc_ = 1.0;

    std::vector<Lit> trail_;
    std::vector<std::size_t> trail_lim_;
    std::size_t qhead_ = 0;
    std::vector<Lit> conflict_;

    std::vector<Clause> clauses_;
    std::vector<std::vector<std::uint32_t>> watches_;
    std::size_t learnt_count_ = 0;
    std::size_t max_learnts_ = 20000;

    std::vector<PB> pbs_;
    std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>> occ_;
    std::vector<std::vector<std::uint32_t>> guard_occ_;

    std::map<std::vector<Lit>, Lit> bodies_;
    std::vector<Support> supports_;
    std::vector<std::vector<std::uint32_t>> supports_of_atom_;
    std::vector<std::vector<std::uint32_t>> pos_occ_;

    std::vector<std::int8_t> model_;
    std::uint64_t props_ = 0;
    std::uint64_t time_checks_ = 0;
    std::uint64_t conflicts_since_restart_ = 0;
    int restarts_ = 0;
};

Status Solver::search(const std::vector<Lit>& assumptions) {
    failed.clear();
    backtrack(0);
    if (unsat_) return Status::Unsat;
    double restart_limit = 64 * luby(2, restarts_);
    conflicts_since_restart_ = 0;
    while (true) {
        check_time();
        bool ok = !pending_conflict_ && propagate();
        pending_conflict_ = false;
        if (!ok) {
            if (!resolve_conflict()) {
                unsat_ = true;
                return Status::Unsat;
            }
            if (conflicts_since_restart_ >= restart_limit) {
                ++restarts_;
                restart_limit = 64 * luby(2, restarts_);
                conflicts_since_restart_ = 0;
                backtrack(0);
            }
            if (learnt_count_ > max_learnts_ + trail_.size()) reduce_learnts();
            continue;
        }
        if (static_cast<std::size_t>(decision_level()) < assumptions.size()) {
            Lit p = assumptions[decision_level()];
            int v = value(p);
            if (v == -1) {
                analyze_final(neg(p));
                return Status::Unsat;
            }
            trail_lim_.push_back(trail_.size());
            if (v == 0) assign(p, no_reason);
            continue;
        }
        auto next = pick_branch();
        if (!next) {
            auto nogood = unfounded_nogood();
            if (nogood.empty()) {
                save_model();
                ++stats.models;
                return Status::Sat;
            }
            if (!add_conflicting(std::move(nogood))) {
                unsat_ = true;
                return Status::Unsat;
            }
            continue;
        }
        ++stats.decisions;
        trail_lim_.push_back(trail_.size());
        assign(*next, no_reason);
    }
}

}  // namespace

namespace {

std::vector<GroundAtom> core_atoms(const GroundProgram& gp, const Solver& s,
                                   const std::vector<std::pair<Lit, std::size_t>>& lits,
                                   const std::vector<GroundAtom>& assumptions) {
    (void)gp;
    std::vector<GroundAtom> out;
    std::vector<char> taken(assumptions.size(), 0);
    for (Lit f : s.failed) {
        Lit a = neg(f);
        for (const auto& [l, idx] : lits)
            if (l == a && !taken[idx]) {
                taken[idx] = 1;
                out.push_back(assumptions[idx]);
            }
    }
    return out;
}

ObjectiveVector objective_of(const GroundProgram& gp, const Solver& s) {
    std::map<std::int64_t, std::int64_t, std::greater<>> sums;
    for (const auto& m : gp.minimize) {
        sums.try_emplace(m.level, 0);
        if (s.model_true(m.atom)) sums[m.level] += m.weight;
    }
    ObjectiveVector v;
    for (const auto& [l, w] : sums) v.levels.emplace_back(l, w);
    return v;
}

}  // namespace

SolveResult solve(const GroundProgram& gp, const std::vector<GroundAtom>& assumptions, const SolveOptions& options) {
    std::vector<std::pair<Lit, std::size_t>> lits;
    for (std::size_t i = 0; i < assumptions.size(); ++i) {
        auto id = gp.find(assumptions[i]);
        if (!id) return SolveResult(UnsatCore{{assumptions[i]}});
        lits.emplace_back(mk_lit(*id), i);
    }
    std::vector<Lit> assume;
    for (auto& [l, i] : lits) assume.push_back(l);

    Solver s(gp, options);
    if (s.search(assume) == Status::Unsat) {
        SolveResult r(UnsatCore{core_atoms(gp, s, lits, assumptions)});
        r.stats = s.stats;
        return r;
    }
    Model best{s.visible_model(), objective_of(gp, s)};

    if (options.optimize && !gp.minimize.empty()) {
        std::map<std::int64_t, std::vector<std::pair<Lit, std::int64_t>>, std::greater<>> levels;
        for (const auto& m : gp.minimize) levels[m.level].emplace_back(mk_lit(m.atom), m.weight);
        for (const auto& [level, terms] : levels) {
            while (true) {
                std::int64_t current = best.objective.at(level);
                std::int64_t floor = 0;
                for (const auto& [l, w] : terms)
                    if (w < 0) floor += w;
                if (current > floor) {
                    Lit sel = mk_lit(s.new_selector());
                    s.add_pb(sel, terms, current - 1);
                    auto with_sel = assume;
                    with_sel.push_back(sel);
                    if (s.search(with_sel) == Status::Sat) {
                        best = Model{s.visible_model(), objective_of(gp, s)};
                        continue;
                    }
                    s.add_unit(neg(sel));
                }
                // the level is optimal: keep it there while lower levels improve
                s.add_pb(no_lit, terms, current);
                break;
            }
        }
    }
    SolveResult r(std::move(best));
    r.stats = s.stats;
    return r;
}

std::vector<Model> enumerate_models(const GroundProgram& gp, std::size_t limit, const SolveOptions& options) {
    std::vector<Model> out;
    Solver s(gp, options);
    while (out.size() < limit && s.search({}) == Status::Sat) {
        out.push_back(Model{s.visible_model(), objective_of(gp, s)});
        std::vector<Lit> block;
        for (AtomId a = 0; a < gp.atom_count(); ++a) {
            if (gp.hidden(a)) continue;
            block.push_back(mk_lit(a, s.model_true(a)));
        }
        if (block.empty()) break;
        s.add_blocking_clause(std::move(block));
    }
    return out;
}

}  // namespace concretix::logic
