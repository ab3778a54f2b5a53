#include "doctest.h"

#include "selmer/eigendist.hpp"

#include <random>

using namespace selmer;

namespace {

FiniteModule Z(std::vector<int64_t> o) { return FiniteModule::from_orders(o); }

ModuleDistribution random_exact(std::mt19937_64& rng, const std::vector<FiniteModule>& pool) {
    std::map<FiniteModule, BigInt> w;
    for (auto& m : pool)
        if (rng() % 3) w[m] = 1 + rng() % 20;
    if (w.empty()) w[pool.front()] = 1;
    return ModuleDistribution::from_counts(w);
}

}  // namespace

TEST_SUITE("eigendist") {

TEST_CASE("kernel distribution of tiny populations") {
    auto s = QuadSpace::diagonal({1, 1, 1}, 9);
    auto id = ModMatrix::identity(3, 9);
    auto d = kernel_distribution(s, Population::explicit_list({{id}}), SamplingMode::exact());
    CHECK(d.probability(Z({9, 9, 9})) == 1);
    auto e = kernel_distribution(s, Population::explicit_list({{-id}}), SamplingMode::exact());
    CHECK(e.probability(FiniteModule::trivial()) == 1);
}

TEST_CASE("exact sums to one, empirical counts sum to N") {
    auto s = QuadSpace::diagonal({1, 1, 1}, 3);
    auto d = kernel_distribution(s, Population::all(), SamplingMode::exact());
    Rational total = 0;
    for (auto& [m, p] : d.probabilities()) total += p;
    CHECK(total == 1);
    CHECK_NOTHROW(d.validate());

    auto mc = kernel_distribution(s, Population::all(), SamplingMode::monte_carlo(5000, 17));
    uint64_t n = 0;
    for (auto& [m, c] : mc.counts()) n += c;
    CHECK(n == 5000);
    CHECK(mc.samples() == 5000);
    CHECK(mc.seed() == 17);
    CHECK_NOTHROW(mc.validate());
}

TEST_CASE("generating function examples") {
    CHECK(generating_function(ModuleDistribution::point_mass(FiniteModule::trivial()), 3) ==
          RationalPoly::constant(1));
    auto u = ModuleDistribution::exact({{FiniteModule::trivial(), Rational(1, 2)}, {Z({3}), Rational(1, 2)}});
    CHECK(generating_function(u, 3) == RationalPoly({Rational(1, 2), Rational(1, 2)}));
}

TEST_CASE("tv distance examples") {
    auto a = ModuleDistribution::point_mass(Z({3}));
    auto t = ModuleDistribution::point_mass(FiniteModule::trivial());
    CHECK(tv_distance(a, a, 1) == 0);
    CHECK(tv_distance(a, t, 1) == 4);
    CHECK(tv_distance(a, t, 0) == 2);
}

TEST_CASE("property: tv distance is a metric on random triples") {
    std::mt19937_64 rng(314);
    auto pool = modules_up_to(Modulus(9), 81);
    for (int trial = 0; trial < 300; ++trial) {
        auto x = random_exact(rng, pool), y = random_exact(rng, pool), z = random_exact(rng, pool);
        for (int m : {0, 1, 2}) {
            REQUIRE(tv_distance(x, y, m) == tv_distance(y, x, m));
            REQUIRE(tv_distance(x, z, m) <= tv_distance(x, y, m) + tv_distance(y, z, m));
            REQUIRE(tv_distance(x, x, m) == 0);
        }
        bool same = x.probabilities() == y.probabilities();
        REQUIRE((tv_distance(x, y, 0) == 0) == same);
    }
}

TEST_CASE("expected count examples") {
    auto t = ModuleDistribution::point_mass(FiniteModule::trivial());
    CHECK(expected_count(t, FiniteModule::trivial(), MapKind::Hom) == 1);
    auto u = ModuleDistribution::exact({{FiniteModule::trivial(), Rational(1, 2)}, {Z({3}), Rational(1, 2)}});
    CHECK(expected_count(u, Z({3}), MapKind::Hom) == 2);
}

TEST_CASE("property: even-dimensional B and C cosets have equal generating functions") {
    for (auto& s : {QuadSpace::split(1, 3), QuadSpace::split(2, 3), QuadSpace::diagonal({1, 1, 1, 1}, 3),
                    QuadSpace::diagonal({1, 1, 1, 2}, 3), QuadSpace::split(1, 5), QuadSpace::diagonal({1, 1, 1, 1}, 5)}) {
        auto r = coset_identity_check(s);
        CHECK(r.gf.at(CosetLabel::B) == r.gf.at(CosetLabel::C));
        for (auto& [label, poly] : r.gf) CHECK(poly.eval(Rational(1)) == 1);
    }
}

TEST_CASE("count statistics on an empirical sample") {
    ModuleDistribution d(ModuleDistribution::Mode::Empirical);
    d.add_sample(FiniteModule::trivial(), 2);
    d.add_sample(Z({3}), 2);
    auto st = count_statistics(d, Z({3}), MapKind::Hom);
    CHECK(st.n == 4);
    CHECK(st.mean == doctest::Approx(2.0));
    CHECK(st.stderr_ > 0);
}

}
