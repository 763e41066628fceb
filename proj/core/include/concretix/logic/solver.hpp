#pragma once

#include "concretix/logic/ground.hpp"

#include <chrono>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace concretix::logic {

/// (level, total weight) pairs sorted by descending level.
struct ObjectiveVector {
    std::vector<std::pair<std::int64_t, std::int64_t>> levels;

    std::int64_t at(std::int64_t level) const noexcept;
    std::string to_string() const;

    friend bool operator==(const ObjectiveVector&, const ObjectiveVector&) = default;
};

/// Lexicographic comparison, higher levels first; absent levels count as 0.
std::strong_ordering compare_objectives(const ObjectiveVector& a, const ObjectiveVector& b);

/// Sums the minimize entries of `gp` that hold when exactly the visible
/// atoms `true_atoms` are true.
ObjectiveVector evaluate_objective(const GroundProgram& gp, const std::vector<AtomId>& true_atoms);

struct Model {
    std::vector<AtomId> true_atoms;  // sorted, visible atoms only
    ObjectiveVector objective;

    bool contains(AtomId id) const;
};

struct UnsatCore {
    std::vector<GroundAtom> atoms;
};

class TimeoutError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SolveOptions {
    std::uint64_t seed = 0;
    std::optional<std::chrono::milliseconds> budget;
    bool optimize = true;
};

struct SolveStats {
    std::uint64_t conflicts = 0;
    std::uint64_t decisions = 0;
    std::uint64_t models = 0;
    std::uint64_t loop_nogoods = 0;
};

class SolveResult {
public:
    explicit SolveResult(Model m) : value_(std::move(m)) {}
    explicit SolveResult(UnsatCore c) : value_(std::move(c)) {}

    bool satisfiable() const noexcept { return std::holds_alternative<Model>(value_); }
    const Model& model() const { return std::get<Model>(value_); }
    const UnsatCore& core() const { return std::get<UnsatCore>(value_); }

    SolveStats stats;

private:
    std::variant<Model, UnsatCore> value_;
};

/// Finds a stable model that is optimal for all minimize levels, with every
/// assumption atom forced true. When there is none, the result carries a core
/// drawn from the assumptions. Unknown assumption atoms yield the core {atom}.
///
/// Throws TimeoutError when the budget runs out.
SolveResult solve(const GroundProgram& gp, const std::vector<GroundAtom>& assumptions = {},
                  const SolveOptions& options = {});

/// Up to `limit` distinct stable models, ignoring minimize statements.
std::vector<Model> enumerate_models(const GroundProgram& gp, std::size_t limit, const SolveOptions& options = {});

/// True iff `candidate` (visible atoms) is a stable model of `gp`.
bool is_stable_model(const GroundProgram& gp, const std::vector<AtomId>& candidate);

}  // namespace concretix::logic
