#include "checks.hpp"
#include "repo_gen.hpp"

#include "concretix/logic/parser.hpp"

#include <benchmark/benchmark.h>

using namespace concretix;
using namespace concretix::testing;

namespace {

void concretize_fixture(benchmark::State& state, const char* repo_name, const char* spec, bool reuse) {
    auto req = load_request({repo_name, {spec}, reuse});
    const auto* db = req.installed ? &*req.installed : nullptr;
    for (auto _ : state) benchmark::DoNotOptimize(run(req.repo, {spec}, db, reuse));
}

void generated_repo(benchmark::State& state) {
    auto r = generate_repo(static_cast<int>(state.range(0)), 2022).load();
    for (auto _ : state) benchmark::DoNotOptimize(run(r, {"g00"}));
}

void ground_closure(benchmark::State& state) {
    std::string text;
    for (int i = 0; i < state.range(0); ++i) text += "edge(" + std::to_string(i) + "," + std::to_string(i + 1) + ").\n";
    text += "path(X,Y) :- edge(X,Y).\npath(X,Z) :- path(X,Y), edge(Y,Z).\n";
    auto program = logic::parse_program(text);
    for (auto _ : state) benchmark::DoNotOptimize(logic::ground(program));
}

}  // namespace

BENCHMARK_CAPTURE(concretize_fixture, example, "example", "example", false)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(concretize_fixture, hpctoolkit, "hpctoolkit", "hpctoolkit ^mpich", false)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(concretize_fixture, reuse20, "reuse20", "pkg01 ^pkg04@2.0", true)->Unit(benchmark::kMillisecond);
BENCHMARK(generated_repo)->Arg(20)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(ground_closure)->Arg(25)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
