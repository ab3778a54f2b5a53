#include "doctest.h"

#include "selmer/quadspace.hpp"
#include "selmer/verify/oracles.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <map>

using namespace selmer;

namespace {

std::vector<QuadSpace> signature_spaces() {
    return {QuadSpace::diagonal({1, 1, 1}, 3), QuadSpace::diagonal({1, 2, 1, 1}, 5), QuadSpace::diagonal({1, 1, 1}, 9),
            QuadSpace::diagonal({1, 1, 1}, 15), QuadSpace::split(2, 3)};
}

}  // namespace

TEST_SUITE("quadspace") {

TEST_CASE("is_orthogonal examples") {
    auto s = QuadSpace::diagonal({1, 1, 1}, 3);
    auto id = ModMatrix::identity(3, 3);
    CHECK(is_orthogonal(s, id));
    CHECK(is_orthogonal(s, -id));
    // 2^2 = 4 = 1 mod 3, so this one preserves the form
    CHECK(is_orthogonal(s, ModMatrix::diagonal({2, 1, 1}, 3)));
    CHECK_FALSE(is_orthogonal(s, ModMatrix::from_rows({{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}, 3)));
}

TEST_CASE("dickson and reflections") {
    auto s = QuadSpace::diagonal({1, 1, 1}, 3);
    auto id = ModMatrix::identity(3, 3);
    CHECK(dickson(s, {id}) == std::vector<uint8_t>{0});
    CHECK(dickson(s, {-id}) == std::vector<uint8_t>{1});
    auto r = reflection(s, {1, 0, 0});
    CHECK(r.m == ModMatrix::diagonal({-1, 1, 1}, 3));
    CHECK(dickson(s, r) == std::vector<uint8_t>{1});
    CHECK(dickson(s, reflection(s, {1, 1, 0})) == std::vector<uint8_t>{1});
    CHECK_THROWS(reflection(s, {1, 1, 1}));  // Q = 3 = 0

    auto s15 = QuadSpace::diagonal({1, 1, 1}, 15);
    CHECK(dickson(s15, reflection(s15, {1, 0, 0})) == std::vector<uint8_t>{1, 1});
}

TEST_CASE("spinor norm examples") {
    auto s = QuadSpace::diagonal({1, 1, 1}, 3);
    CHECK(spinor_minus(s, {ModMatrix::identity(3, 3)}) == std::vector<uint8_t>{0});
    auto rv = reflection(s, {1, 0, 0});
    auto rw = reflection(s, {0, 1, 0});
    CHECK(spinor_minus(s, rv) == std::vector<uint8_t>{1});  // -1 is a nonsquare mod 3
    CHECK(spinor_minus(s, {rv.m * rw.m}) == std::vector<uint8_t>{0});
}

TEST_CASE("omega membership") {
    auto s3 = QuadSpace::diagonal({1, 1, 1}, 3);
    CHECK(omega_member(s3, {ModMatrix::identity(3, 3)}));
    CHECK_FALSE(omega_member(s3, reflection(s3, {1, 0, 0})));

    auto s5 = QuadSpace::diagonal({1, 1, 1}, 5);
    std::vector<int64_t> v{1, 0, 0}, w{1, 1, 0};
    REQUIRE(s5.Q(v) == 1);
    REQUIRE(s5.Q(w) == 2);
    OrthoElement g{reflection(s5, v).m * reflection(s5, w).m};
    CHECK(dickson(s5, g) == std::vector<uint8_t>{0});
    CHECK(spinor_minus(s5, g) == std::vector<uint8_t>{1});
    CHECK_FALSE(omega_member(s5, g));
}

TEST_CASE("enumeration examples and the naive oracle") {
    auto a = QuadSpace::diagonal({1, 1, 1}, 3);
    auto b = QuadSpace(Modulus(3), ModMatrix::from_rows({{0, 2}, {2, 0}}, 3));
    auto c = QuadSpace::diagonal({1, 1}, 3);
    CHECK(enumerate_orthogonal(a).size() == 48);
    CHECK(enumerate_orthogonal(b).size() == 4);
    CHECK(enumerate_orthogonal(c).size() == 8);
    for (auto* s : {&a, &b, &c}) {
        CHECK(oracle::orthogonal_count_naive(*s) == enumerate_orthogonal(*s).size());
        CHECK(orthogonal_group_order(*s) == enumerate_orthogonal(*s).size());
    }
    for (auto& s : {QuadSpace::diagonal({1, 1, 1}, 5), QuadSpace::diagonal({1, 1, 1}, 9), QuadSpace::split(2, 3),
                    QuadSpace::diagonal({1, 1, 1}, 15)})
        CHECK(orthogonal_group_order(s) == enumerate_orthogonal(s).size());
    CHECK_THROWS_AS(enumerate_orthogonal(QuadSpace::split(3, 5), 1000), BudgetExceeded);
}

TEST_CASE("property: signature is a homomorphism on random pairs") {
    for (auto& s : signature_spaces()) {
        OrthoSampler smp(s, 99);
        for (int i = 0; i < 10'000; ++i) {
            auto g = smp.sample(), h = smp.sample();
            OrthoElement gh{g.m * h.m};
            REQUIRE(is_orthogonal(s, gh.m));
            REQUIRE(coset_signature(s, gh) == coset_signature(s, g) + coset_signature(s, h));
        }
    }
}

TEST_CASE("property: spinor norm does not depend on the reflection decomposition") {
    for (auto& s : signature_spaces()) {
        OrthoSampler smp(s, 7);
        for (int i = 0; i < 2'000; ++i) {
            auto g = smp.sample();
            REQUIRE(spinor_minus(s, g, false) == spinor_minus(s, g, true));
        }
    }
}

TEST_CASE("property: sampler is uniform (chi-square, p > 1e-3)") {
    for (auto& s : {QuadSpace::diagonal({1, 1, 1}, 3), QuadSpace::diagonal({1, 1, 1}, 5), QuadSpace::diagonal({1, 1}, 7),
                    QuadSpace::split(1, 9)}) {
        auto all = enumerate_orthogonal(s);
        REQUIRE(all.size() <= 1000);
        std::map<std::vector<int64_t>, uint64_t> hits;
        for (auto& g : all) hits[g.m.data()] = 0;
        const uint64_t per = 40, N = per * all.size();
        OrthoSampler smp(s, 2024);
        for (uint64_t i = 0; i < N; ++i) {
            auto it = hits.find(smp.sample().m.data());
            REQUIRE(it != hits.end());
            ++it->second;
        }
        double chi2 = 0;
        for (auto& [k, c] : hits) chi2 += (c - double(per)) * (c - double(per)) / per;
        boost::math::chi_squared dist(static_cast<double>(all.size() - 1));
        double p = boost::math::cdf(boost::math::complement(dist, chi2));
        CAPTURE(chi2);
        CHECK(p > 1e-3);
    }
}

TEST_CASE("coset sampler stays in its coset") {
    auto s = QuadSpace::diagonal({1, 1, 1}, 15);
    OrthoSampler smp(s, 3);
    for (uint32_t bits = 0; bits < 16; ++bits) {
        auto c = CosetSignature::from_bits(bits, 2);
        for (int i = 0; i < 50; ++i) REQUIRE(coset_signature(s, smp.sample(c)) == c);
    }
    CHECK(uniform_signature(CosetLabel::B, 1).label() == "B");
    CHECK(parse_coset_label("C") == CosetLabel::C);
}

}
