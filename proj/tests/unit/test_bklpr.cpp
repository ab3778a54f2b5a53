#include "doctest.h"

#include "selmer/bklpr.hpp"
#include "selmer/verify/oracles.hpp"

#include <random>

using namespace selmer;

TEST_SUITE("bklpr") {

TEST_CASE("maximal isotropic counts") {
    CHECK(enumerate_isotropics(SplitSpace::make(1, 3, 1)).size() == 2);
    CHECK(enumerate_isotropics(SplitSpace::make(2, 3, 1)).size() == 8);
    CHECK(enumerate_isotropics(SplitSpace::make(2, 3, 2)).size() == 24);
    CHECK(isotropic_count(3, 3, 1) == 2 * 4 * 10);
    CHECK(enumerate_isotropics(SplitSpace::make(3, 3, 1)).size() == 80);
    CHECK(enumerate_isotropics(SplitSpace::make(2, 5, 1)).size() == 12);
}

TEST_CASE("sampled frames are isotropic and canonical forms are enumerated ones") {
    auto sp = SplitSpace::make(3, 3, 2);
    auto all = enumerate_isotropics(sp);
    std::set<Isotropic> known(all.begin(), all.end());
    IsotropicSampler smp(sp, 41);
    for (int i = 0; i < 500; ++i) {
        auto f = smp.sample_frame();
        REQUIRE(is_isotropic(sp, f));
        REQUIRE(known.count(canonical_isotropic(f, 3)));
    }
}

TEST_CASE("intersection module examples") {
    auto sp = SplitSpace::make(2, 3, 2);
    auto z = standard_isotropic(sp);
    CHECK(intersection_module(z, z) == FiniteModule::from_orders({9, 9}));
    ModMatrix w(2, 4, 9);
    w.set(0, 2, 1);
    w.set(1, 3, 1);
    CHECK(intersection_module(z, canonical_isotropic(w, 3)) == FiniteModule::trivial());
}

TEST_CASE("exhaustive distribution at nu = 3, n = 1") {
    auto full = bklpr_distribution(Modulus(3), 1, BklprVariant::Full, SamplingMode::exact());
    CHECK(full.dist.probability(FiniteModule::cyclic(3)) == Rational(1, 2));
    CHECK(full.dist.probability(FiniteModule::trivial()) == Rational(1, 2));
    auto odd = bklpr_distribution(Modulus(3), 1, BklprVariant::Parity1, SamplingMode::exact());
    CHECK(odd.dist.probability(FiniteModule::cyclic(3)) == 1);
    CHECK(parse_bklpr_variant("parity0") == BklprVariant::Parity0);
}

TEST_CASE("property: closed-form moment equals exhaustive enumeration") {
    for (auto [l, j, n] : {std::tuple{3, 1, 1}, {3, 1, 2}, {5, 1, 1}})
        for (int rank : {1, 2}) {
            auto h = FiniteModule::elementary(l, rank);
            CAPTURE(l);
            CAPTURE(n);
            CAPTURE(rank);
            CHECK(finite_n_moment(l, j, n, h) == oracle::isotropic_pair_moment(l, j, n, h));
        }
    CHECK(finite_n_moment(3, 1, 2, FiniteModule::cyclic(3)) == 2);
}

TEST_CASE("moment tends to #Sym^2 H") {
    auto h = FiniteModule::from_orders({9, 3});
    Rational gap = Rational(sym2_order(h)) - finite_n_moment(3, 2, 40, h);
    CHECK(gap >= 0);
    CHECK(static_cast<double>(gap) < 1e-15);
}

TEST_CASE("property: alternating cokernel torsion is always a square") {
    std::mt19937_64 rng(8);
    for (int m : {4, 5, 6, 7})
        for (int i = 0; i < 400; ++i) REQUIRE(alternating_cokernel_sample(m, 3, 10, 2, rng).module.is_square());
}

TEST_CASE("Grassmannian law sums to one and matches enumeration at n = 2") {
    auto law = ogr_dimension_law(3, 2);
    Rational total = 0;
    for (auto& [d, p] : law) total += p;
    CHECK(total == 1);
    auto ex = bklpr_distribution(Modulus(3), 2, BklprVariant::Full, SamplingMode::exact());
    for (auto& [d, p] : law) CHECK(ex.dist.probability(FiniteModule::elementary(3, d)) == p);
}

}
