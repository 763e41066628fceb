#pragma once

#include "concretix/diag/diagnostics.hpp"
#include "concretix/encode/dag.hpp"

#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace concretix::driver {

/// Milliseconds spent in each phase. Setup generates facts, load parses the
/// program, ground instantiates it and solve searches (including diagnosis).
struct PhaseTimings {
    double setup_ms = 0;
    double load_ms = 0;
    double ground_ms = 0;
    double solve_ms = 0;

    double total_ms() const { return setup_ms + load_ms + ground_ms + solve_ms; }
    std::string to_string() const;
};

enum class OutputFormat { Tree, Json, Facts };

OutputFormat parse_output_format(std::string_view text);

struct SolveOptions {
    bool reuse = false;
    std::uint64_t seed = 0;
    std::chrono::milliseconds budget{60'000};
    diag::CoreStrategy core_strategy = diag::CoreStrategy::Linear;
    OutputFormat format = OutputFormat::Tree;
    encode::ObjectiveLevelPlan plan = encode::ObjectiveLevelPlan::standard();
};

/// The time budget ran out; `phase()` names the phase that was running.
class PhaseTimeout : public std::runtime_error {
public:
    PhaseTimeout(std::string phase, const PhaseTimings& timings);
    const std::string& phase() const noexcept { return phase_; }
    const PhaseTimings& timings() const noexcept { return timings_; }

private:
    std::string phase_;
    PhaseTimings timings_;
};

struct Concretization {
    std::variant<encode::ConcreteDAG, diag::Diagnostic> outcome;
    PhaseTimings timings;
    std::size_t possible_dependencies = 0;
    std::size_t ground_atoms = 0;
    logic::ObjectiveVector objective;
    logic::SolveStats stats;

    bool satisfiable() const { return std::holds_alternative<encode::ConcreteDAG>(outcome); }
    const encode::ConcreteDAG& dag() const { return std::get<encode::ConcreteDAG>(outcome); }
    const diag::Diagnostic& diagnostic() const { return std::get<diag::Diagnostic>(outcome); }
};

/// Runs the whole pipeline. A satisfiable result has passed every validity
/// check; an unsatisfiable one carries a minimized diagnostic.
///
/// Throws PhaseTimeout, encode::UnsatisfiableInput and the loading errors of
/// the other modules.
Concretization concretize(const repo::Repo& repo, const std::vector<spec::AbstractSpec>& specs,
                          const repo::InstalledDatabase* installed, const SolveOptions& options);

}  // namespace concretix::driver
