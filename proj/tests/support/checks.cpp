#include "checks.hpp"

#include "repo_gen.hpp"

#include "concretix/logic/parser.hpp"
#include "concretix/spec/spec.hpp"

#include <filesystem>
#include <map>
#include <set>

namespace concretix::testing {

std::vector<std::string> atom_texts(const logic::GroundProgram& gp, const std::vector<logic::AtomId>& atoms) {
    std::vector<std::string> out;
    for (auto a : atoms) out.push_back(gp.atom(a).to_string());
    return out;
}

ModelSet library_models(const logic::GroundProgram& gp) {
    ModelSet out;
    for (const auto& m : logic::enumerate_models(gp, 1u << 20)) {
        auto texts = atom_texts(gp, m.true_atoms);
        out.insert(AtomSet(texts.begin(), texts.end()));
    }
    return out;
}

ModelSet library_models(const std::string& program_text) {
    return library_models(logic::ground(logic::parse_program(program_text)));
}

std::vector<spec::AbstractSpec> parse_specs(const std::vector<std::string>& specs) {
    std::vector<spec::AbstractSpec> out;
    for (const auto& s : specs) out.push_back(spec::parse_spec(s));
    return out;
}

Grounded encode_and_ground(const repo::Repo& repo, const std::vector<std::string>& specs,
                           const repo::InstalledDatabase* installed, bool reuse, const std::string& extra_rules) {
    encode::EncodeOptions options;
    options.reuse = reuse;
    auto problem = encode::encode_problem(repo, parse_specs(specs), installed, options);
    auto gp = logic::ground(logic::parse_program(problem.text() + extra_rules));
    return {std::move(problem), std::move(gp)};
}

driver::Concretization run(const repo::Repo& repo, const std::vector<std::string>& specs,
                           const repo::InstalledDatabase* installed, bool reuse, diag::CoreStrategy strategy) {
    driver::SolveOptions options;
    options.reuse = reuse;
    options.core_strategy = strategy;
    return driver::concretize(repo, parse_specs(specs), installed, options);
}

std::vector<std::string> core_minimality_problems(const logic::GroundProgram& gp, const logic::UnsatCore& core) {
    std::vector<std::string> out;
    logic::SolveOptions no_opt;
    no_opt.optimize = false;
    if (logic::solve(gp, core.atoms, no_opt).satisfiable()) out.push_back("the core itself is satisfiable");
    for (std::size_t i = 0; i < core.atoms.size(); ++i) {
        auto rest = core.atoms;
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
        if (!logic::solve(gp, rest, no_opt).satisfiable())
            out.push_back("dropping " + core.atoms[i].to_string() + " leaves an unsatisfiable core");
    }
    return out;
}

namespace {

// `attr(args...)` for the arguments that follow the condition id.
std::string attr_text(const logic::GroundAtom& fact) {
    logic::GroundAtom a{logic::Symbol("attr"), {fact.args.begin() + 1, fact.args.end()}};
    return a.to_string();
}

}  // namespace

std::vector<std::string> condition_semantics_problems(const logic::GroundProgram& gp, const logic::Model& model) {
    std::set<std::string> truth;
    std::map<std::string, std::vector<std::string>> requirements, impositions;
    std::set<std::string> conditions, holds, imposed;
    for (auto id : model.true_atoms) {
        const auto& a = gp.atom(id);
        truth.insert(a.to_string());
        auto pred = a.predicate.str();
        if (pred == "condition") conditions.insert(a.args[0].to_string());
        else if (pred == "condition_holds") holds.insert(a.args[0].to_string());
        else if (pred == "impose") imposed.insert(a.args[0].to_string());
        else if (pred == "condition_requirement") requirements[a.args[0].to_string()].push_back(attr_text(a));
        else if (pred == "imposed_constraint") impositions[a.args[0].to_string()].push_back(attr_text(a));
    }
    std::vector<std::string> out;
    for (const auto& id : conditions) {
        bool all = true;
        for (const auto& r : requirements[id]) all &= truth.count(r) > 0;
        if (all != (holds.count(id) > 0))
            out.push_back("condition " + id + (all ? " has its requirements but does not hold" : " holds without its requirements"));
    }
    for (const auto& id : imposed)
        for (const auto& c : impositions[id])
            if (!truth.count(c)) out.push_back("condition " + id + " is imposed but " + c + " is false");
    return out;
}

std::vector<FixtureRequest> fixture_corpus() {
    return {
        {"example", {"example"}},
        {"example", {"example@1.0.0 ^zlib@1.2.11"}},
        {"example", {"example~bzip"}},
        {"example", {"example ^openmpilike"}},
        {"example", {"example ^mpichlike pmi=simple"}},
        {"example", {"example%gcc@10.3.1"}},
        {"example", {"example os=centos8 target=skylake"}},
        {"example", {"example", "zlib@1.2.8:"}},
        {"example", {"mpi"}},
        {"example", {"zlib"}},
        {"example", {"bzip2@1.0.7:"}},
        {"hpctoolkit", {"hpctoolkit"}},
        {"hpctoolkit", {"hpctoolkit ^mpich"}},
        {"hpctoolkit", {"hpctoolkit ^openmpi"}},
        {"hpctoolkit", {"hpctoolkit+mpi"}},
        {"hpctoolkit", {"hpctoolkit", "openmpi"}},
        {"berkeleygw", {"berkeleygw"}},
        {"berkeleygw", {"berkeleygw ^openblas"}},
        {"berkeleygw", {"berkeleygw ^netlib-lapack"}},
        {"berkeleygw", {"berkeleygw~openmp ^openblas"}},
        {"h5utils", {"h5utils"}},
        {"h5utils", {"h5utils~png"}},
        {"cmake_reuse", {"cmake"}},
        {"cmake_reuse", {"cmake"}, true},
        {"cmake_reuse", {"cmake@3.21.4"}, true},
        {"cmake_reuse", {"zlib~shared"}, true},
        {"cmake_openssl", {"cmake"}},
        {"cmake_openssl", {"cmake"}, true},
        {"cmake_openssl", {"cmake~ssl"}, true},
        {"reuse20", {"pkg01 ^pkg04@2.0"}},
        {"reuse20", {"pkg01 ^pkg04@2.0"}, true},
        {"reuse20", {"pkg01"}, true},
        {"reuse20", {"pkg03@1.0"}, true},
    };
}

LoadedRequest load_request(const FixtureRequest& r) {
    LoadedRequest out{repo::load_repo(fixture_dir(r.repo)), std::nullopt};
    auto db = fixture_dir(r.repo) / "installed.json";
    if (r.reuse && std::filesystem::exists(db)) out.installed = repo::load_installed(db);
    return out;
}

}  // namespace concretix::testing
