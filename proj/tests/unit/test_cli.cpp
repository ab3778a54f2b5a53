#include "doctest.h"

#include "cache.hpp"
#include "experiment.hpp"

#include <filesystem>
#include <fstream>

using namespace selmer::cli;

namespace {

std::string field_of(const std::string& text) {
    try {
        auto s = ExperimentSpec::parse(text);
        normalize(s);
    } catch (const SpecError& e) {
        return e.field();
    }
    return "";
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("spec parsing") {
    auto s = ExperimentSpec::parse("# comment\nkind = cells\ng=1\nf=0\nn=2\n");
    CHECK(s.kind == "cells");
    CHECK(s.params.at("g") == "1");
    auto t = ExperimentSpec::parse("n=2\nf=0\nkind=cells\ng=1");
    CHECK(s.canonical() == t.canonical());
}

TEST_CASE("errors name the offending field") {
    CHECK(field_of("g=1") == "kind");
    CHECK(field_of("kind=nope") == "kind");
    CHECK(field_of("kind=cells\ng=1\nf=0\nn=2\nbogus=3") == "bogus");
    CHECK(field_of("kind=kernel-dist\nnu=3\nrank=3\nmode=fast") == "mode");
    CHECK(field_of("kind=kernel-dist\nnu=3\nrank=3\nmode=mc\nsamples=0") == "samples");
    CHECK(field_of("kind=cells\ng=1\ng=2") == "g");
    CHECK(field_of("kind=cells\njunk") == "line 2");
}

TEST_CASE("sampled kinds get a recorded seed and sample size") {
    auto s = ExperimentSpec::parse("kind=kernel-dist\nnu=3\nrank=3\nmode=mc");
    normalize(s);
    CHECK(s.params.at("seed") == "1729");
    CHECK(s.params.at("samples") == "100000");
}

TEST_CASE("run a small point") {
    auto s = ExperimentSpec::parse("kind=cells\ng=0\nf=0\nn=2");
    normalize(s);
    auto o = run_point(s);
    CHECK(o.result.at("count") == 2);
    CHECK_FALSE(o.check_failed);
}

TEST_CASE("sha256 and cache round trip") {
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    auto dir = std::filesystem::temp_directory_path() / "selmer_cache_test";
    std::filesystem::remove_all(dir);
    ResultCache c(dir);
    CHECK_FALSE(c.lookup("k1"));
    selmer::json v{{"x", 1}};
    c.store("k1", v, "cells");
    auto got = c.lookup("k1");
    REQUIRE(got);
    CHECK(*got == v);
    CHECK(std::filesystem::exists(dir / "index.tsv"));
    std::filesystem::remove_all(dir);
}

}
