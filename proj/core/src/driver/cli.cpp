#include "concretix/driver/cli.hpp"

#include "concretix/driver/concretize.hpp"
#include "concretix/driver/render.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace concretix::driver {

namespace {

constexpr int exit_ok = 0;
constexpr int exit_unsat = 1;
constexpr int exit_input = 2;
constexpr int exit_timeout = 3;

struct SolveArgs {
    std::vector<std::string> specs;
    std::string repo_dir = ".";
    std::string installed;
    bool reuse = false;
    bool explain = false;
    bool time = false;
    bool all = false;
    bool show_facts = false;
    std::uint64_t seed = 0;
    long budget_ms = 60'000;
    std::string format = "tree";
    std::string strategy = "linear";
    std::string out_csv;
};

void write_csv_row(std::ostream& os, const std::string& pkg, std::size_t possible, const PhaseTimings& t) {
    char buf[200];
    std::snprintf(buf, sizeof buf, ",%zu,%.3f,%.3f,%.3f,%.3f,%.3f\n", possible, t.setup_ms, t.load_ms, t.ground_ms,
                  t.solve_ms, t.total_ms());
    os << pkg << buf;
}

int sweep(const repo::Repo& repo, const repo::InstalledDatabase* installed, const SolveOptions& options,
          std::ostream& csv, std::ostream& err) {
    csv << "package,possible_deps,setup_ms,load_ms,ground_ms,solve_ms,total_ms\n";
    int status = exit_ok;
    for (const auto& [name, recipe] : repo.recipes) {
        spec::AbstractSpec s;
        s.root.name = name;
        try {
            auto r = concretize(repo, {s}, installed, options);
            write_csv_row(csv, name, r.possible_dependencies, r.timings);
            if (!r.satisfiable()) err << name << ": unsatisfiable\n";
        } catch (const PhaseTimeout& e) {
            write_csv_row(csv, name, repo::possible_dependencies(repo, {name}).size(), e.timings());
            err << name << ": " << e.what() << "\n";
            status = exit_timeout;
        } catch (const encode::UnsatisfiableInput& e) {
            err << name << ": " << e.what() << "\n";
        }
    }
    return status;
}

SolveOptions make_options(const SolveArgs& a) {
    SolveOptions o;
    o.reuse = a.reuse;
    o.seed = a.seed;
    o.budget = std::chrono::milliseconds(a.budget_ms);
    o.core_strategy = diag::parse_core_strategy(a.strategy);
    o.format = parse_output_format(a.format);
    if (a.show_facts) o.format = OutputFormat::Facts;
    if (a.budget_ms <= 0) throw std::invalid_argument("--budget-ms must be positive");
    return o;
}

int run_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
    SolveOptions options = make_options(a);
    auto repo = repo::load_repo(a.repo_dir);
    std::optional<repo::InstalledDatabase> db;
    if (!a.installed.empty()) db = repo::load_installed(a.installed);
    const repo::InstalledDatabase* installed = db ? &*db : nullptr;

    if (a.all) return sweep(repo, installed, options, out, err);
    if (a.specs.empty()) throw CLI::ValidationError("solve", "at least one spec is required");

    std::vector<spec::AbstractSpec> specs;
    for (const auto& s : a.specs) specs.push_back(spec::parse_spec(s));

    if (options.format == OutputFormat::Facts) {
        out << encode::encode_problem(repo, specs, installed, {options.reuse, options.plan}).text();
        return exit_ok;
    }

    Concretization r;
    try {
        r = concretize(repo, specs, installed, options);
    } catch (const PhaseTimeout& e) {
        err << "error: " << e.what() << "\n";
        if (a.time) err << "timings: " << e.timings().to_string() << "\n";
        return exit_timeout;
    }
    std::ostream& timing_stream = options.format == OutputFormat::Json ? err : out;
    int code = exit_ok;
    if (r.satisfiable()) {
        out << (options.format == OutputFormat::Json ? render_json(r.dag()) : render_tree(r.dag(), &repo, specs));
    } else {
        code = exit_unsat;
        if (options.format == OutputFormat::Json) out << render_diagnostic_json(r.diagnostic());
        else out << render_diagnostic(r.diagnostic(), a.explain);
    }
    if (a.time) timing_stream << "timings: " << r.timings.to_string() << "\n";
    return code;
}

int run_validate(const std::string& dir, std::ostream& out) {
    auto repo = repo::load_repo(dir);
    auto warnings = repo::validate_repo(repo);
    for (const auto& w : warnings) out << "warning: " << w.package << ": " << w.message << "\n";
    out << repo.recipes.size() << " packages, " << repo.virtuals.size() << " virtuals, " << warnings.size()
        << " warnings\n";
    return exit_ok;
}

int run_bench(const SolveArgs& a, std::ostream& out, std::ostream& err) {
    SolveOptions options = make_options(a);
    auto repo = repo::load_repo(a.repo_dir);
    std::optional<repo::InstalledDatabase> db;
    if (!a.installed.empty()) db = repo::load_installed(a.installed);
    std::ofstream csv(a.out_csv);
    if (!csv) throw std::runtime_error("cannot write " + a.out_csv);
    int code = sweep(repo, db ? &*db : nullptr, options, csv, err);
    out << "wrote " << repo.recipes.size() << " rows to " << a.out_csv << "\n";
    return code;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Concretize abstract package specs into dependency DAGs."};
    app.name("concretix");
    app.require_subcommand(1);

    SolveArgs a;
    auto* solve = app.add_subcommand("solve", "Concretize one or more specs");
    solve->add_option("specs", a.specs, "Abstract specs, e.g. \"hdf5@1.10.2 ^zlib\"");
    solve->add_option("--repo", a.repo_dir, "Recipe directory");
    solve->add_option("--installed", a.installed, "Installed package database (JSON)");
    solve->add_flag("--reuse", a.reuse, "Prefer installed packages");
    solve->add_flag("--explain", a.explain, "Print core minimization statistics when unsatisfiable");
    solve->add_flag("--time", a.time, "Print phase timings");
    solve->add_flag("--all", a.all, "Solve every package in the repo and print CSV timings");
    solve->add_flag("--show-facts", a.show_facts, "Print the logic program and facts instead of solving");
    solve->add_option("--seed", a.seed, "Solver seed");
    solve->add_option("--budget-ms", a.budget_ms, "Time budget in milliseconds");
    solve->add_option("--format", a.format, "tree, json or facts")->check(CLI::IsMember({"tree", "json", "facts"}));
    solve->add_option("--core-strategy", a.strategy, "linear or batched")->check(CLI::IsMember({"linear", "batched"}));

    std::string validate_dir = ".";
    auto* validate = app.add_subcommand("validate", "Load a repo and report warnings");
    validate->add_option("--repo", validate_dir, "Recipe directory");

    auto* bench = app.add_subcommand("bench", "Solve every package and write phase timings as CSV");
    bench->add_option("--repo", a.repo_dir, "Recipe directory");
    bench->add_option("--out", a.out_csv, "CSV output file")->required();
    bench->add_option("--installed", a.installed, "Installed package database (JSON)");
    bench->add_flag("--reuse", a.reuse, "Prefer installed packages");
    bench->add_option("--budget-ms", a.budget_ms, "Time budget per package in milliseconds");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_input;
    }

    try {
        if (*solve) return run_solve(a, out, err);
        if (*validate) return run_validate(validate_dir, out);
        return run_bench(a, out, err);
    } catch (const encode::UnsatisfiableInput& e) {
        out << "error: " << e.what() << "\n";
        return exit_unsat;
    } catch (const CLI::Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_input;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_input;
    }
}

int cli_main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return cli_main(args, std::cout, std::cerr);
}

}  // namespace concretix::driver
