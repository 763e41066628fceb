#pragma once

#include "concretix/encode/encoder.hpp"
#include "concretix/logic/solver.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace concretix::diag {

enum class CoreStrategy { Linear, Batched };

/// Accepts "linear" or "batched"; throws std::invalid_argument.
CoreStrategy parse_core_strategy(std::string_view text);

struct MinimizationStats {
    std::size_t initial_size = 0;
    std::size_t final_size = 0;
    std::size_t extra_solves = 0;
};

struct MinimizedCore {
    logic::UnsatCore core;
    MinimizationStats stats;
    bool minimal = true;  // false when a re-solve timed out
};

/// Deletion-based minimization. Linear drops one assumption at a time and
/// re-solves once per element. Batched tries to drop halves first and
/// recurses into the halves it cannot drop.
///
/// `core` must be unsatisfiable with `gp`. A timeout stops early and returns
/// the smallest core found so far, marked as not minimal.
MinimizedCore minimize_core(const logic::GroundProgram& gp, const logic::UnsatCore& core, CoreStrategy strategy,
                            const logic::SolveOptions& options = {});

struct Diagnostic {
    std::vector<std::string> messages;  // deduplicated, sorted
    logic::UnsatCore core;
    MinimizationStats stats;
    bool minimal = true;
};

/// Text of an `error("...")` atom; other atoms render as themselves.
std::string message_of(const logic::GroundAtom& atom);

Diagnostic explain(const logic::GroundProgram& gp, const logic::UnsatCore& core, CoreStrategy strategy,
                   const logic::SolveOptions& options = {});

/// One line: initial and final core size and the number of extra solves.
std::string core_stats(const Diagnostic& d);

}  // namespace concretix::diag
