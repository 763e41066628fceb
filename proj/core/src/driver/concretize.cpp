#include "concretix/driver/concretize.hpp"

#include "concretix/encode/validity.hpp"
#include "concretix/logic/parser.hpp"

#include <cstdio>

namespace concretix::driver {

using clock = std::chrono::steady_clock;

std::string PhaseTimings::to_string() const {
    char buf[160];
    std::snprintf(buf, sizeof buf, "setup %.2f ms, load %.2f ms, ground %.2f ms, solve %.2f ms, total %.2f ms",
                  setup_ms, load_ms, ground_ms, solve_ms, total_ms());
    return buf;
}

OutputFormat parse_output_format(std::string_view text) {
    if (text == "tree") return OutputFormat::Tree;
    if (text == "json") return OutputFormat::Json;
    if (text == "facts") return OutputFormat::Facts;
    throw std::invalid_argument("unknown output format '" + std::string(text) + "'");
}

PhaseTimeout::PhaseTimeout(std::string phase, const PhaseTimings& timings)
    : std::runtime_error("time budget exhausted during " + phase), phase_(std::move(phase)), timings_(timings) {}

namespace {

double elapsed_ms(clock::time_point since) {
    return std::chrono::duration<double, std::milli>(clock::now() - since).count();
}

}  // namespace

Concretization concretize(const repo::Repo& repo, const std::vector<spec::AbstractSpec>& specs,
                          const repo::InstalledDatabase* installed, const SolveOptions& options) {
    if (options.budget.count() <= 0) throw std::invalid_argument("time budget must be positive");
    Concretization out;
    PhaseTimings& t = out.timings;
    const auto deadline = clock::now() + options.budget;
    auto check_deadline = [&](const char* phase) {
        if (clock::now() > deadline) throw PhaseTimeout(phase, t);
    };
    auto remaining = [&] {
        auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - clock::now());
        return std::max(left, std::chrono::milliseconds(1));
    };

    auto t0 = clock::now();
    auto problem = encode::encode_problem(repo, specs, installed, {options.reuse, options.plan});
    out.possible_dependencies = problem.possible.size();
    t.setup_ms = elapsed_ms(t0);
    check_deadline("setup");

    t0 = clock::now();
    auto program = logic::parse_program(problem.text());
    t.load_ms = elapsed_ms(t0);
    check_deadline("load");

    t0 = clock::now();
    auto gp = logic::ground(program);
    out.ground_atoms = gp.atom_count();
    t.ground_ms = elapsed_ms(t0);
    check_deadline("ground");

    t0 = clock::now();
    logic::SolveOptions so;
    so.seed = options.seed;
    so.budget = remaining();
    try {
        auto result = logic::solve(gp, problem.assumptions, so);
        out.stats = result.stats;
        if (result.satisfiable()) {
            out.objective = result.model().objective;
            auto dag = encode::decode_model(gp, result.model(), problem);
            auto problems = encode::check_validity(dag, repo, specs);
            if (!problems.empty()) throw std::logic_error("internal error: solution is not valid: " + problems.front());
            out.outcome = std::move(dag);
        } else {
            so.budget = remaining();
            out.outcome = diag::explain(gp, result.core(), options.core_strategy, so);
        }
    } catch (const logic::TimeoutError&) {
        t.solve_ms = elapsed_ms(t0);
        throw PhaseTimeout("solve", t);
    }
    t.solve_ms = elapsed_ms(t0);
    return out;
}

}  // namespace concretix::driver
