#include "concretix/logic/solver.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace concretix::logic {

std::int64_t ObjectiveVector::at(std::int64_t level) const noexcept {
    for (const auto& [l, w] : levels)
        if (l == level) return w;
    return 0;
}

std::string ObjectiveVector::to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < levels.size(); ++i)
        os << (i ? " " : "") << levels[i].second << '@' << levels[i].first;
    os << ']';
    return os.str();
}

std::strong_ordering compare_objectives(const ObjectiveVector& a, const ObjectiveVector& b) {
    std::set<std::int64_t, std::greater<>> all;
    for (const auto& [l, w] : a.levels) all.insert(l);
    for (const auto& [l, w] : b.levels) all.insert(l);
    for (auto l : all) {
        auto c = a.at(l) <=> b.at(l);
        if (c != 0) return c;
    }
    return std::strong_ordering::equal;
}

bool Model::contains(AtomId id) const { return std::binary_search(true_atoms.begin(), true_atoms.end(), id); }

namespace {

bool holds(const std::vector<char>& in, const std::vector<AtomId>& pos, const std::vector<AtomId>& neg) {
    for (auto a : pos)
        if (!in[a]) return false;
    for (auto a : neg)
        if (in[a]) return false;
    return true;
}

// Hidden atoms are defined only by rules over visible atoms.
void add_hidden(const GroundProgram& gp, std::vector<char>& in) {
    for (const auto& r : gp.rules)
        if (gp.hidden(r.head) && holds(in, r.positive, r.negative)) in[r.head] = 1;
}

}  // namespace

ObjectiveVector evaluate_objective(const GroundProgram& gp, const std::vector<AtomId>& true_atoms) {
    std::vector<char> in(gp.atom_count(), 0);
    for (auto a : true_atoms)
        if (a < in.size()) in[a] = 1;
    add_hidden(gp, in);
    std::map<std::int64_t, std::int64_t, std::greater<>> sums;
    for (const auto& m : gp.minimize) {
        sums.try_emplace(m.level, 0);
        if (in[m.atom]) sums[m.level] += m.weight;
    }
    ObjectiveVector v;
    for (const auto& [l, w] : sums) v.levels.emplace_back(l, w);
    return v;
}

bool is_stable_model(const GroundProgram& gp, const std::vector<AtomId>& candidate) {
    const std::size_t n = gp.atom_count();
    std::vector<char> in(n, 0);
    for (auto a : candidate) {
        if (a >= n || gp.hidden(a)) return false;
        in[a] = 1;
    }

    add_hidden(gp, in);

    for (const auto& r : gp.rules)
        if (holds(in, r.positive, r.negative) && !in[r.head]) return false;
    for (const auto& ic : gp.integrity)
        if (holds(in, ic.positive, ic.negative)) return false;
    for (const auto& c : gp.choices) {
        if (!holds(in, c.positive, c.negative)) continue;
        std::set<AtomId> counted;
        for (const auto& e : c.elements)
            if (in[e.head] && holds(in, e.positive, e.negative)) counted.insert(e.head);
        auto k = static_cast<std::int64_t>(counted.size());
        if (c.lower && k < *c.lower) return false;
        if (c.upper && k > *c.upper) return false;
    }

    // Least model of the reduct: negative literals are evaluated against the
    // candidate; chosen atoms act as facts when their choice applies.
    std::vector<char> least(n, 0);
    bool changed = true;
    while (changed) {
        changed = false;
        auto fire = [&](AtomId head, const std::vector<AtomId>& pos, const std::vector<AtomId>& neg) {
            if (least[head]) return;
            for (auto a : neg)
                if (in[a]) return;
            for (auto a : pos)
                if (!least[a]) return;
            least[head] = 1;
            changed = true;
        };
        for (const auto& r : gp.rules) fire(r.head, r.positive, r.negative);
        for (const auto& c : gp.choices) {
            for (const auto& e : c.elements) {
                if (!in[e.head] || least[e.head]) continue;
                std::vector<AtomId> pos = c.positive, neg = c.negative;
                pos.insert(pos.end(), e.positive.begin(), e.positive.end());
                neg.insert(neg.end(), e.negative.begin(), e.negative.end());
                fire(e.head, pos, neg);
            }
        }
    }
    return least == in;
}

}  // namespace concretix::logic
