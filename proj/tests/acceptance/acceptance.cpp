// Runs the acceptance criteria and prints one PASS/FAIL line for each.

#include "checks.hpp"
#include "random_programs.hpp"
#include "repo_gen.hpp"
#include "unsat_cases.hpp"

#include "concretix/diag/diagnostics.hpp"
#include "concretix/encode/validity.hpp"
#include "concretix/logic/parser.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace concretix;
using namespace concretix::testing;

namespace {

// A criterion either passes or explains in `detail` why not.
struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
};

logic::GroundProgram ground_text(const std::string& text) { return logic::ground(logic::parse_program(text)); }

const encode::ConcreteNode* find(const encode::ConcreteDAG& d, const char* name) {
    auto id = d.find(name);
    return id ? &d.nodes[*id] : nullptr;
}

bool has_edge(const encode::ConcreteDAG& d, const char* from, const char* to) {
    auto a = d.find(from), b = d.find(to);
    return a && b && std::find(d.edges.begin(), d.edges.end(), std::pair{*a, *b}) != d.edges.end();
}

bool variant_is(const encode::ConcreteNode* n, const std::string& v, const spec::VariantValue& value) {
    return n && n->variants.count(v) && n->variants.at(v) == value;
}

Outcome stable_model_oracle() {
    Outcome o;
    std::mt19937_64 rng(20240601);
    auto start = std::chrono::steady_clock::now();
    for (int i = 0; i < 200 && o.pass; ++i) {
        auto p = random_prop_program(rng, {15, 25, 0, 0});
        o.require(library_models(p.text()) == oracle_stable_models(p), "program " + std::to_string(i) + " differs");
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.require(s < 60, "took " + std::to_string(s) + " s");
    if (o.pass) o.detail = "200 programs in " + std::to_string(s).substr(0, 4) + " s";
    return o;
}

Outcome diamond_models() {
    Outcome o;
    auto models = library_models(R"(
depends_on(a,b). depends_on(a,c). depends_on(b,d). depends_on(c,d).
node(D) :- node(P), depends_on(P,D).
1 { node(a); node(b) }.
)");
    std::set<std::set<std::string>> nodes;
    for (const auto& m : models) {
        std::set<std::string> n;
        for (const auto& a : m)
            if (a.rfind("node(", 0) == 0) n.insert(a);
        nodes.insert(n);
    }
    o.require(nodes == std::set<std::set<std::string>>{{"node(b)", "node(d)"},
                                                        {"node(a)", "node(b)", "node(c)", "node(d)"}},
              std::to_string(models.size()) + " models");
    return o;
}

Outcome lexicographic_optimality() {
    Outcome o;
    std::mt19937_64 rng(99);
    for (int i = 0; i < 100 && o.pass; ++i) {
        auto p = random_prop_program(rng, {12, 20, 2, 4});
        auto best = oracle_best_objective(p);
        auto r = logic::solve(ground_text(p.text()));
        o.require(r.satisfiable() == best.has_value(), "satisfiability differs on program " + std::to_string(i));
        if (!o.pass || !best) continue;
        for (const auto& [level, sum] : *best)
            o.require(r.model().objective.at(level) == sum, "objective differs on program " + std::to_string(i));
    }
    return o;
}

Outcome hpctoolkit_scenario() {
    Outcome o;
    auto r = repo::load_repo(fixture_dir("hpctoolkit"));
    auto c = run(r, {"hpctoolkit ^mpich"});
    o.require(c.satisfiable(), "unsatisfiable");
    if (!o.pass) return o;
    o.require(variant_is(find(c.dag(), "hpctoolkit"), "mpi", true), "mpi variant is not true");
    o.require(has_edge(c.dag(), "hpctoolkit", "mpich"), "no edge to mpich");
    return o;
}

Outcome berkeleygw_scenario() {
    Outcome o;
    auto r = repo::load_repo(fixture_dir("berkeleygw"));
    for (const char* spec : {"berkeleygw ^openblas", "berkeleygw+openmp ^openblas"}) {
        auto c = run(r, {spec});
        o.require(c.satisfiable(), std::string(spec) + " is unsatisfiable");
        if (!o.pass) return o;
        o.require(variant_is(find(c.dag(), "berkeleygw"), "openmp", true), "root openmp is not true");
        o.require(variant_is(find(c.dag(), "openblas"), "threads", std::string("openmp")),
                  std::string(spec) + ": openblas threads is not openmp");
    }
    return o;
}

Outcome reuse_preference() {
    Outcome o;
    auto req = load_request({"cmake_reuse", {"cmake"}, true});
    auto with = run(req.repo, {"cmake"}, &*req.installed, true);
    auto without = run(req.repo, {"cmake"}, &*req.installed, false);
    o.require(with.satisfiable() && without.satisfiable(), "unsatisfiable");
    if (!o.pass) return o;
    auto* reused = find(with.dag(), "cmake");
    auto* fresh = find(without.dag(), "cmake");
    o.require(reused && reused->version.str() == "3.21.1" && !reused->build, "reuse did not pick installed 3.21.1");
    o.require(fresh && fresh->version.str() == "3.21.4" && fresh->build, "fresh build is not 3.21.4");
    return o;
}

Outcome reuse_counts() {
    Outcome o;
    auto req = load_request({"reuse20", {"pkg01 ^pkg04@2.0"}, true});
    auto with = run(req.repo, {"pkg01 ^pkg04@2.0"}, &*req.installed, true);
    auto without = run(req.repo, {"pkg01 ^pkg04@2.0"}, &*req.installed, false);
    o.require(with.satisfiable() && without.satisfiable(), "unsatisfiable");
    if (!o.pass) return o;
    auto n = with.dag().nodes.size(), built = with.dag().built_count();
    o.require(n == 20 && built == 4, std::to_string(n - built) + " reused, " + std::to_string(built) + " built");
    o.require(without.dag().built_count() == 20,
              "without reuse " + std::to_string(without.dag().built_count()) + " built");
    if (o.pass) o.detail = "16 reused + 4 built; 20 built without reuse";
    return o;
}

Outcome defaults_not_degraded() {
    Outcome o;
    auto req = load_request({"cmake_openssl", {"cmake"}, true});
    auto c = run(req.repo, {"cmake"}, &*req.installed, true);
    o.require(c.satisfiable(), "unsatisfiable");
    if (!o.pass) return o;
    o.require(variant_is(find(c.dag(), "cmake"), "ssl", true), "cmake was built ~ssl");
    o.require(find(c.dag(), "openssl") != nullptr, "openssl omitted");
    return o;
}

Outcome minimal_core_toy() {
    Outcome o;
    auto gp = ground_text("{ foo(x); foo(y); bar(z) }.\n:- foo(A), foo(B), A != B.\n");
    auto a = [](const char* p, const char* c) { return logic::GroundAtom{logic::Symbol(p), {logic::Value::identifier(c)}}; };
    logic::SolveOptions plain;
    plain.optimize = false;
    auto r = logic::solve(gp, {a("bar", "z"), a("foo", "x"), a("foo", "y")}, plain);
    o.require(!r.satisfiable(), "satisfiable");
    if (!o.pass) return o;
    auto m = diag::minimize_core(gp, r.core(), diag::CoreStrategy::Linear);
    o.require(m.core.atoms.size() == 2, "core has " + std::to_string(m.core.atoms.size()) + " elements");
    o.require(core_minimality_problems(gp, m.core).empty(), "core is not minimal");
    return o;
}

Outcome core_minimality() {
    Outcome o;
    auto cases = unsat_cases();
    o.require(cases.size() >= 50, "only " + std::to_string(cases.size()) + " cases");
    for (const auto& c : cases) {
        if (!o.pass) break;
        auto g = encode_and_ground(c.repo, c.specs);
        auto res = logic::solve(g.program, g.problem.assumptions);
        o.require(!res.satisfiable(), c.name + " is satisfiable");
        if (!o.pass) break;
        auto linear = diag::explain(g.program, res.core(), diag::CoreStrategy::Linear);
        auto batched = diag::explain(g.program, res.core(), diag::CoreStrategy::Batched);
        o.require(core_minimality_problems(g.program, linear.core).empty(), c.name + ": linear core not minimal");
        o.require(core_minimality_problems(g.program, batched.core).empty(), c.name + ": batched core not minimal");
        o.require(linear.core.atoms.size() == batched.core.atoms.size(), c.name + ": strategies disagree on size");
        o.require(linear.stats.extra_solves <= g.problem.assumptions.size(), c.name + ": too many solves");
    }
    if (o.pass) o.detail = std::to_string(cases.size()) + " cases";
    return o;
}

Outcome validity_suite() {
    Outcome o;
    std::size_t solves = 0;
    for (const auto& req : fixture_corpus()) {
        auto loaded = load_request(req);
        auto c = run(loaded.repo, req.specs, loaded.installed ? &*loaded.installed : nullptr, req.reuse);
        o.require(c.satisfiable(), req.repo + ": " + req.specs.front() + " is unsatisfiable");
        if (!o.pass) break;
        auto problems = encode::check_validity(c.dag(), loaded.repo, parse_specs(req.specs));
        o.require(problems.empty(), req.repo + ": " + (problems.empty() ? "" : problems.front()));
        ++solves;
    }
    for (std::uint64_t seed = 1; seed <= 5 && o.pass; ++seed) {
        auto r = generate_repo(15, seed).load();
        for (const auto& [name, _] : r.recipes) {
            auto c = run(r, {name});
            o.require(c.satisfiable(), "generated " + name + " is unsatisfiable");
            if (!o.pass) break;
            o.require(encode::check_validity(c.dag(), r, parse_specs({name})).empty(), "generated " + name + " invalid");
            ++solves;
        }
    }
    if (o.pass) o.detail = std::to_string(solves) + " solves";
    return o;
}

Outcome desk_scale() {
    Outcome o;
    auto r = generate_repo(50, 2022).load();
    o.require(r.virtuals.size() == 1 && r.virtuals.begin()->second.size() == 2, "expected one virtual, two providers");
    double worst = 0, sum = 0;
    std::string worst_root;
    for (const auto& [name, _] : r.recipes) {
        auto c = run(r, {name});
        const auto& t = c.timings;
        o.require(t.setup_ms > 0 && t.load_ms > 0 && t.ground_ms > 0 && t.solve_ms > 0,
                  name + ": missing phase timing");
        if (t.total_ms() > worst) {
            worst = t.total_ms();
            worst_root = name;
        }
        sum += t.total_ms();
    }
    o.require(worst < 5000, worst_root + " took " + std::to_string(worst) + " ms");
    std::ostringstream d;
    d.precision(1);
    d << std::fixed << r.recipes.size() << " roots, mean " << sum / static_cast<double>(r.recipes.size()) << " ms, max "
      << worst << " ms (" << worst_root << ")";
    if (o.pass) o.detail = d.str();
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"stable models match the brute-force oracle", stable_model_oracle},
        {"diamond dependency program has its two stable models", diamond_models},
        {"lexicographic optimum matches brute force", lexicographic_optimality},
        {"hpctoolkit ^mpich infers +mpi", hpctoolkit_scenario},
        {"berkeleygw forces openblas threads=openmp", berkeleygw_scenario},
        {"reuse picks installed cmake 3.21.1", reuse_preference},
        {"reuse20 reuses 16 and builds 4", reuse_counts},
        {"cmake keeps its default ssl variant under reuse", defaults_not_degraded},
        {"foo(x)/foo(y) core minimizes to 2", minimal_core_toy},
        {"unsat cores are minimal and strategies agree", core_minimality},
        {"every corpus solution is valid", validity_suite},
        {"50-package repo solves each root in under 5 s", desk_scale},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += o.pass ? 0 : 1;
        std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << (i + 1) << " " << criteria[i].first;
        if (!o.detail.empty()) std::cout << " (" << o.detail << ")";
        std::cout << "\n" << std::flush;
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failures)) << "/" << criteria.size() << " criteria passed\n";
    return failures == 0 ? 0 : 1;
}
