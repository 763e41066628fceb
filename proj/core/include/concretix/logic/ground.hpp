#pragma once

#include "concretix/logic/program.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace concretix::logic {

using AtomId = std::uint32_t;

struct GroundAtom {
    Symbol predicate;
    std::vector<Value> args;

    std::string to_string() const;

    friend bool operator==(const GroundAtom&, const GroundAtom&) = default;
};

struct GroundAtomHash {
    std::size_t operator()(const GroundAtom& a) const noexcept {
        std::size_t h = a.predicate.id() * 0x9e3779b97f4a7c15ULL;
        for (const auto& v : a.args) h = (h ^ v.hash()) * 0x100000001b3ULL;
        return h ^ a.args.size();
    }
};

/// `head :- positive, not negative.` A fact has both bodies empty.
struct GroundRule {
    AtomId head = 0;
    std::vector<AtomId> positive;
    std::vector<AtomId> negative;
};

/// A choice element `head : condition`. The element counts towards the
/// bounds when both the head and its condition hold.
struct GroundChoiceElement {
    AtomId head = 0;
    std::vector<AtomId> positive;
    std::vector<AtomId> negative;
};

struct GroundChoice {
    std::optional<std::int64_t> lower;
    std::optional<std::int64_t> upper;
    std::vector<GroundChoiceElement> elements;
    std::vector<AtomId> positive;
    std::vector<AtomId> negative;
};

struct GroundIntegrity {
    std::vector<AtomId> positive;
    std::vector<AtomId> negative;
};

/// One `#minimize` tuple: contributes `weight` at `level` while `atom` holds.
struct GroundMinimize {
    AtomId atom = 0;
    std::int64_t weight = 0;
    std::int64_t level = 0;
    std::string tuple;
};

class GroundProgram {
public:
    AtomId add_atom(const GroundAtom& atom, bool hidden = false);
    std::optional<AtomId> find(const GroundAtom& atom) const;

    std::size_t atom_count() const noexcept { return atoms_.size(); }
    const GroundAtom& atom(AtomId id) const { return atoms_[id]; }
    /// Hidden atoms are introduced by the grounder and never reported in models.
    bool hidden(AtomId id) const { return hidden_[id]; }

    std::vector<GroundRule> rules;
    std::vector<GroundChoice> choices;
    std::vector<GroundIntegrity> integrity;
    std::vector<GroundMinimize> minimize;

    std::string to_string() const;

private:
    std::vector<GroundAtom> atoms_;
    std::vector<bool> hidden_;
    std::unordered_map<GroundAtom, AtomId, GroundAtomHash> index_;
};

class GroundingBudgetExceeded : public std::runtime_error {
public:
    explicit GroundingBudgetExceeded(std::size_t limit);
};

class GroundingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GroundingOptions {
    std::size_t max_ground_rules = 5'000'000;
};

/// Bottom-up instantiation over the set of derivable atoms, followed by
/// simplification: facts are removed from bodies, rules with an impossible
/// positive literal are dropped and atoms that are certainly true become facts.
///
/// Conditional literals (`a(X) : c(X)`) require their condition predicates to
/// be defined by facts only.
GroundProgram ground(const Program& program, const GroundingOptions& options = {});

}  // namespace concretix::logic
