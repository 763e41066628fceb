#include "concretix/diag/diagnostics.hpp"

#include <algorithm>
#include <stdexcept>

namespace concretix::diag {

using logic::GroundAtom;

CoreStrategy parse_core_strategy(std::string_view text) {
    if (text == "linear") return CoreStrategy::Linear;
    if (text == "batched") return CoreStrategy::Batched;
    throw std::invalid_argument("unknown core strategy '" + std::string(text) + "'");
}

namespace {

struct Timeout {};

class Minimizer {
public:
    Minimizer(const logic::GroundProgram& gp, const logic::SolveOptions& options) : gp_(gp), options_(options) {
        options_.optimize = false;
    }

    std::size_t solves = 0;

    bool unsat(const std::vector<GroundAtom>& assumptions) {
        ++solves;
        try {
            return !logic::solve(gp_, assumptions, options_).satisfiable();
        } catch (const logic::TimeoutError&) {
            throw Timeout{};
        }
    }

    // `current` starts as the full core and shrinks in place, so a timeout
    // leaves the best core found so far.
    void linear(std::vector<GroundAtom>& current) {
        std::vector<GroundAtom> order = current;
        for (const auto& a : order) {
            std::vector<GroundAtom> trial;
            for (const auto& b : current)
                if (!(b == a)) trial.push_back(b);
            if (unsat(trial)) current = std::move(trial);
        }
    }

    // Smallest subset M of `cand` with required ∪ M unsatisfiable, assuming
    // required ∪ cand is unsatisfiable.
    std::vector<GroundAtom> batched(const std::vector<GroundAtom>& required, const std::vector<GroundAtom>& cand) {
        if (cand.empty()) return {};
        if (cand.size() == 1) return unsat(required) ? std::vector<GroundAtom>{} : cand;
        std::size_t half = (cand.size() + 1) / 2;
        std::vector<GroundAtom> lo(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(half));
        std::vector<GroundAtom> hi(cand.begin() + static_cast<std::ptrdiff_t>(half), cand.end());
        if (unsat(join(required, lo))) return batched(required, lo);
        if (unsat(join(required, hi))) return batched(required, hi);
        auto keep_hi = batched(join(required, lo), hi);
        auto keep_lo = batched(join(required, keep_hi), lo);
        return join(keep_lo, keep_hi);
    }

    static std::vector<GroundAtom> join(const std::vector<GroundAtom>& a, const std::vector<GroundAtom>& b) {
        std::vector<GroundAtom> out = a;
        out.insert(out.end(), b.begin(), b.end());
        return out;
    }

private:
    const logic::GroundProgram& gp_;
    logic::SolveOptions options_;
};

}  // namespace

MinimizedCore minimize_core(const logic::GroundProgram& gp, const logic::UnsatCore& core, CoreStrategy strategy,
                            const logic::SolveOptions& options) {
    MinimizedCore out;
    out.stats.initial_size = core.atoms.size();
    Minimizer m(gp, options);
    std::vector<GroundAtom> current = core.atoms;
    try {
        if (strategy == CoreStrategy::Linear) m.linear(current);
        else current = m.batched({}, current);
    } catch (const Timeout&) {
        out.minimal = false;
    }
    out.core.atoms = std::move(current);
    out.stats.final_size = out.core.atoms.size();
    out.stats.extra_solves = m.solves;
    return out;
}

std::string message_of(const GroundAtom& atom) {
    if (atom.predicate.str() == "error" && atom.args.size() == 1 && !atom.args[0].is_integer())
        return std::string(atom.args[0].text());
    return atom.to_string();
}

Diagnostic explain(const logic::GroundProgram& gp, const logic::UnsatCore& core, CoreStrategy strategy,
                   const logic::SolveOptions& options) {
    auto min = minimize_core(gp, core, strategy, options);
    Diagnostic d;
    for (const auto& a : min.core.atoms) d.messages.push_back(message_of(a));
    std::sort(d.messages.begin(), d.messages.end());
    d.messages.erase(std::unique(d.messages.begin(), d.messages.end()), d.messages.end());
    d.core = std::move(min.core);
    d.stats = min.stats;
    d.minimal = min.minimal;
    return d;
}

std::string core_stats(const Diagnostic& d) {
    std::string s = "core " + std::to_string(d.stats.initial_size) + " -> " + std::to_string(d.stats.final_size) +
                    " after " + std::to_string(d.stats.extra_solves) + " extra solves";
    if (!d.minimal) s += " (not minimal: time budget exhausted)";
    return s;
}

}  // namespace concretix::diag
