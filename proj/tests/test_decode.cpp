#include "checks.hpp"
#include "repo_gen.hpp"

#include "concretix/encode/dag.hpp"
#include "concretix/encode/validity.hpp"

#include <catch_amalgamated.hpp>

using namespace concretix;
using namespace concretix::testing;

namespace {

encode::ConcreteDAG solve_dag(const repo::Repo& r, const std::vector<std::string>& specs,
                              const repo::InstalledDatabase* db = nullptr, bool reuse = false) {
    auto g = encode_and_ground(r, specs, db, reuse);
    auto res = logic::solve(g.program, g.problem.assumptions);
    REQUIRE(res.satisfiable());
    return encode::decode_model(g.program, res.model(), g.problem);
}

const encode::ConcreteNode& node(const encode::ConcreteDAG& d, const char* name) {
    auto id = d.find(name);
    REQUIRE(id);
    return d.nodes[*id];
}

bool has_edge(const encode::ConcreteDAG& d, const char* from, const char* to) {
    auto a = d.find(from), b = d.find(to);
    return a && b && std::find(d.edges.begin(), d.edges.end(), std::pair{*a, *b}) != d.edges.end();
}

}  // namespace

TEST_CASE("requesting mpich turns on the mpi variant") {
    auto d = solve_dag(repo::load_repo(fixture_dir("hpctoolkit")), {"hpctoolkit ^mpich"});
    CHECK(std::get<bool>(node(d, "hpctoolkit").variants.at("mpi")));
    CHECK(has_edge(d, "hpctoolkit", "mpich"));
    CHECK_FALSE(d.find("mpi"));
    CHECK_FALSE(d.find("openmpi"));
}

TEST_CASE("a single leaf decodes to one node") {
    auto r = repo_from_documents({{"leaf", R"({"name": "leaf", "versions": ["1.0"]})"}});
    auto d = solve_dag(r, {"leaf"});
    REQUIRE(d.nodes.size() == 1);
    CHECK(d.edges.empty());
    const auto& n = d.nodes[0];
    CHECK(n.name == "leaf");
    CHECK(n.version.str() == "1.0");
    CHECK(n.compiler == "gcc");
    CHECK(n.os == "linux");
    CHECK(n.target == "x86_64");
    CHECK(n.build);
    CHECK(n.root);
    CHECK_FALSE(n.hash);
}

TEST_CASE("reused nodes carry their hash and are not built") {
    auto r = repo::load_repo(fixture_dir("cmake_reuse"));
    auto db = repo::load_installed(fixture_dir("cmake_reuse") / "installed.json");
    auto d = solve_dag(r, {"cmake"}, &db, true);
    const auto& z = node(d, "zlib");
    CHECK_FALSE(z.build);
    CHECK(z.hash == "7fatdzrjxp3vkqbd2kwskq7r5oxgvwak");
    CHECK(z.version.str() == "1.2.11");
    CHECK(d.built_count() == 0);
}

TEST_CASE("models without required attributes are rejected") {
    auto r = repo::load_repo(fixture_dir("example"));
    encode::EncodeOptions o;
    auto problem = encode::encode_problem(r, parse_specs({"zlib"}), nullptr, o);
    auto node_atom = logic::GroundAtom{logic::Symbol("attr"),
                                       {logic::Value::string("node"), logic::Value::string("zlib")}};
    CHECK_THROWS_AS(encode::decode_atoms({node_atom}, problem), encode::MalformedModel);
}

TEST_CASE("validity checks reject broken DAGs") {
    auto r = repo::load_repo(fixture_dir("example"));
    auto roots = parse_specs({"example"});
    auto good = solve_dag(r, {"example"});
    REQUIRE(encode::check_validity(good, r, roots).empty());

    SECTION("cycle") {
        auto d = good;
        auto ex = *d.find("example"), z = *d.find("zlib");
        d.edges.emplace_back(z, ex);
        std::sort(d.edges.begin(), d.edges.end());
        CHECK_FALSE(encode::check_acyclic(d).empty());
    }
    SECTION("virtual left as a node") {
        auto d = good;
        auto n = d.nodes[0];
        n.name = "mpi";
        d.nodes.push_back(n);
        CHECK_FALSE(encode::check_virtuals_replaced(d, r).empty());
    }
    SECTION("missing dependency edge") {
        auto d = good;
        auto ex = *d.find("example"), z = *d.find("zlib");
        d.edges.erase(std::find(d.edges.begin(), d.edges.end(), std::pair{ex, z}));
        CHECK_FALSE(encode::check_dependencies_resolved(d, r).empty());
    }
    SECTION("dependency constraint violated") {
        auto d = good;
        d.nodes[*d.find("zlib")].version = spec::Version("1.2.7");
        CHECK_FALSE(encode::check_dependencies_resolved(d, r).empty());
    }
    SECTION("conflict triggered") {
        auto d = good;
        d.nodes[*d.find("example")].compiler = "intel";
        d.nodes[*d.find("example")].compiler_version = spec::Version("2021.4");
        CHECK_FALSE(encode::check_dependencies_resolved(d, r).empty());
    }
    SECTION("unassigned variant") {
        auto d = good;
        d.nodes[*d.find("zlib")].variants.clear();
        CHECK_FALSE(encode::check_parameters_assigned(d, r).empty());
    }
    SECTION("undeclared version") {
        auto d = good;
        d.nodes[*d.find("zlib")].version = spec::Version("9.9");
        CHECK_FALSE(encode::check_parameters_assigned(d, r).empty());
    }
    SECTION("root constraint violated") {
        auto d = good;
        CHECK_FALSE(encode::check_input_constraints(d, r, parse_specs({"example~bzip"})).empty());
        CHECK_FALSE(encode::check_input_constraints(d, r, parse_specs({"example ^openmpilike"})).empty());
    }
}

TEST_CASE("condition evaluation on DAGs") {
    auto r = repo::load_repo(fixture_dir("example"));
    auto d = solve_dag(r, {"example ^mpichlike"});
    auto ex = *d.find("example");
    CHECK(encode::condition_holds(d, ex, spec::parse_spec("+bzip"), r));
    CHECK(encode::condition_holds(d, ex, spec::parse_spec("@1.1.0: ^zlib"), r));
    CHECK_FALSE(encode::condition_holds(d, ex, spec::parse_spec("^openmpilike"), r));
    CHECK(encode::node_provides(d, *d.find("mpichlike"), "mpi", r));
    CHECK(encode::node_satisfies(d.nodes[ex], spec::parse_spec("example target=x86_64:").root, r.config));
    CHECK_FALSE(encode::node_satisfies(d.nodes[ex], spec::parse_spec("example%intel").root, r.config));
}

TEST_CASE("every corpus solution is a valid DAG") {
    for (const auto& req : fixture_corpus()) {
        auto loaded = load_request(req);
        auto d = solve_dag(loaded.repo, req.specs, loaded.installed ? &*loaded.installed : nullptr, req.reuse);
        INFO(req.repo << ": " << req.specs.front());
        CHECK(encode::check_validity(d, loaded.repo, parse_specs(req.specs)).empty());
        for (const auto& n : d.nodes) CHECK(n.hash.has_value() == !n.build);
    }
}

TEST_CASE("generated repos decode to valid DAGs") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto r = generate_repo(10, seed).load();
        for (const auto& [name, _] : r.recipes) {
            INFO("seed " << seed << " root " << name);
            auto c = run(r, {name});
            REQUIRE(c.satisfiable());
            CHECK(encode::check_validity(c.dag(), r, parse_specs({name})).empty());
        }
    }
}
