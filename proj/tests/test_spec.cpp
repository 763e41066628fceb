#include "concretix/spec/spec.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace concretix::spec;

namespace {

Version v(const char* s) { return Version(s); }

// Independent ordering for purely numeric dotted versions.
std::vector<int> numbers(const std::string& s) {
    std::vector<int> out;
    std::size_t i = 0;
    while (i < s.size()) {
        auto j = s.find('.', i);
        if (j == std::string::npos) j = s.size();
        out.push_back(std::stoi(s.substr(i, j - i)));
        i = j + 1;
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

std::string random_version(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> len(1, 4), num(0, 12);
    std::string out;
    for (int i = 0, n = len(rng); i < n; ++i) out += (i ? "." : "") + std::to_string(num(rng));
    return out;
}

std::string random_node(std::mt19937_64& rng, const std::string& name) {
    std::uniform_int_distribution<int> coin(0, 1), pick(0, 3);
    std::string out = name;
    if (coin(rng)) out += "@" + random_version(rng) + (coin(rng) ? ":" : "");
    if (coin(rng)) out += std::string("%") + (coin(rng) ? "gcc" : "clang") + (coin(rng) ? "@" + random_version(rng) : "");
    static const char* variants[] = {"shared", "mpi", "openmp", "pic"};
    for (int i = 0; i < 4; ++i)
        if (coin(rng) && coin(rng)) out += (coin(rng) ? "+" : "~") + std::string(variants[i]);
    if (!coin(rng)) out += " threads=" + std::string(pick(rng) % 2 ? "openmp" : "pthreads");
    if (!coin(rng) && !coin(rng)) out += " target=" + std::string(coin(rng) ? "x86_64" : "aarch64:");
    if (!coin(rng) && !coin(rng)) out += " os=linux";
    if (!coin(rng) && !coin(rng)) out += " cflags=\"-O2 -g\"";
    return out;
}

}  // namespace

TEST_CASE("version ordering examples") {
    CHECK(version_compare(v("1.10"), v("1.9")) == std::strong_ordering::greater);
    CHECK(version_compare(v("1.2"), v("1.2.0")) == std::strong_ordering::equal);
    CHECK(version_compare(v("2.0"), v("2.0rc1")) == std::strong_ordering::less);
    CHECK(version_compare(v("1.13.1"), v("1.12.1")) == std::strong_ordering::greater);
}

TEST_CASE("version ordering agrees with integer vectors") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 2000; ++i) {
        auto a = random_version(rng), b = random_version(rng);
        INFO(a << " vs " << b);
        CHECK(version_compare(Version(a), Version(b)) == (numbers(a) <=> numbers(b)));
    }
}

TEST_CASE("a point constraint admits extensions of the version") {
    auto c = VersionConstraint::parse("1.10");
    CHECK(version_satisfies(v("1.10"), c));
    CHECK(version_satisfies(v("1.10.4"), c));
    CHECK_FALSE(version_satisfies(v("1.1"), c));
    CHECK_FALSE(version_satisfies(v("1.100"), c));
    CHECK(version_has_prefix(v("1.10.4"), v("1.10")));
    CHECK_FALSE(version_has_prefix(v("1.100"), v("1.10")));
}

TEST_CASE("version ranges") {
    CHECK(version_satisfies(v("1.6.37"), VersionConstraint::parse("1.6.0:")));
    CHECK_FALSE(version_satisfies(v("1.5.30"), VersionConstraint::parse("1.6.0:")));
    CHECK(version_satisfies(v("1.4.9"), VersionConstraint::parse(":1.4")));
    CHECK(version_satisfies(v("3.0"), VersionConstraint::parse("1.2:1.4,3")));
    CHECK_FALSE(version_satisfies(v("2.0"), VersionConstraint::parse("1.2:1.4,3")));
    CHECK(version_satisfies(v("0.1"), VersionConstraint{}));
    CHECK_FALSE(VersionConstraint::parse("1.2:1.4").intersect(VersionConstraint::parse("1.5:")).has_value());
    auto both = VersionConstraint::parse("1.2:1.8").intersect(VersionConstraint::parse("1.5:"));
    REQUIRE(both);
    CHECK(both->to_string() == "1.5:1.8");
}

TEST_CASE("parse a full spec") {
    auto s = parse_spec("hdf5@1.12.1:%gcc@11.2.0+mpi~shared api=v18 target=skylake os=linux ^mpich@3.4");
    REQUIRE(s.root.name == "hdf5");
    CHECK(s.root.versions.to_string() == "1.12.1:");
    REQUIRE(s.root.compiler);
    CHECK(s.root.compiler->name == "gcc");
    CHECK(std::get<bool>(s.root.variants.at("mpi")));
    CHECK_FALSE(std::get<bool>(s.root.variants.at("shared")));
    CHECK(std::get<std::string>(s.root.variants.at("api")) == "v18");
    CHECK(s.root.target == "skylake");
    CHECK(s.root.os == "linux");
    REQUIRE(s.dependencies.size() == 1);
    CHECK(s.dependencies[0].name == "mpich");
}

TEST_CASE("anonymous nodes parse as conditions") {
    auto s = parse_spec("+mpi");
    CHECK_FALSE(s.root.name);
    CHECK(s.root.variants.count("mpi"));
}

TEST_CASE("spec syntax errors carry a position") {
    try {
        parse_spec("zlib@@1");
        FAIL("expected a syntax error");
    } catch (const SpecSyntaxError& e) {
        CHECK(e.position() == 4);  // the dangling sigil
    }
    CHECK_THROWS_AS(parse_spec("zlib+pic~pic"), DuplicateVariantError);
    CHECK_THROWS_AS(parse_spec("zlib ^"), SpecSyntaxError);
}

TEST_CASE("rendering is canonical") {
    CHECK(render_spec(parse_spec("zlib ~shared+pic @1.2")) == "zlib@1.2+pic~shared");
    CHECK(render_spec(parse_spec("zlib cflags=\"-O2\" os=linux target=x86_64")) ==
          "zlib cflags=-O2 target=x86_64 os=linux");
}

TEST_CASE("parse and render round-trip") {
    std::mt19937_64 rng(3);
    static const char* names[] = {"hdf5", "mpich", "zlib", "openblas", "py-numpy"};
    for (int i = 0; i < 500; ++i) {
        std::string text = random_node(rng, names[i % 5]);
        for (int d = 0, n = static_cast<int>(rng() % 3); d < n; ++d) text += " ^" + random_node(rng, names[(i + d + 1) % 5]);
        INFO(text);
        auto spec = parse_spec(text);
        auto rendered = render_spec(spec);
        CHECK(parse_spec(rendered) == spec);
        CHECK(render_spec(parse_spec(rendered)) == rendered);
    }
}

TEST_CASE("merging intersects constraints") {
    auto m = merge_constraints(parse_spec("hdf5@1.10:+mpi"), parse_spec("hdf5@:1.12 ^zlib"));
    CHECK(render_spec(m) == "hdf5@1.10:1.12+mpi ^zlib");
    CHECK_THROWS_AS(merge_constraints(parse_spec("hdf5+mpi"), parse_spec("hdf5~mpi")), SpecConflict);
    CHECK_THROWS_AS(merge_constraints(parse_spec("hdf5@1.10"), parse_spec("hdf5@1.12")), SpecConflict);
    CHECK_THROWS_AS(merge_constraints(parse_spec("hdf5%gcc"), parse_spec("hdf5%clang")), SpecConflict);
    CHECK_THROWS_AS(merge_constraints(parse_spec("hdf5"), parse_spec("zlib")), SpecConflict);
    try {
        merge_constraints(parse_spec("hdf5 target=x86_64"), parse_spec("hdf5 target=aarch64"));
        FAIL("expected a conflict");
    } catch (const SpecConflict& e) {
        CHECK_FALSE(e.lhs().empty());
        CHECK_FALSE(e.rhs().empty());
    }
}

TEST_CASE("merging is commutative and associative") {
    std::mt19937_64 rng(8);
    auto attempt = [](auto f) -> std::optional<std::string> {
        try {
            return render_spec(f());
        } catch (const SpecConflict&) {
            return std::nullopt;
        }
    };
    for (int i = 0; i < 400; ++i) {
        auto a = parse_spec(random_node(rng, "hdf5") + " ^" + random_node(rng, "zlib"));
        auto b = parse_spec(random_node(rng, "hdf5"));
        auto c = parse_spec(random_node(rng, "hdf5") + " ^" + random_node(rng, "zlib"));
        INFO(render_spec(a) << " | " << render_spec(b) << " | " << render_spec(c));
        CHECK(attempt([&] { return merge_constraints(a, b); }) == attempt([&] { return merge_constraints(b, a); }));
        CHECK(attempt([&] { return merge_constraints(merge_constraints(a, b), c); }) ==
              attempt([&] { return merge_constraints(a, merge_constraints(b, c)); }));
    }
}
