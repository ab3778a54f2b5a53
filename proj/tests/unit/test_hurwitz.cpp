#include "doctest.h"

#include "selmer/hurwitz.hpp"

using namespace selmer;

namespace {

ModMatrix mat(std::vector<std::vector<int64_t>> rows) { return ModMatrix::from_rows(rows, 3); }

NielsenDatum genus0(std::vector<AspElement> branch, std::vector<AspElement> fixed = {}) {
    NielsenDatum d;
    d.branch = std::move(branch);
    d.fixed = std::move(fixed);
    return d;
}

}  // namespace

TEST_SUITE("hurwitz") {

TEST_CASE("branch class size and conjugation closure") {
    AffSymp G(Modulus(3), 1);
    auto c = G.branch_class();
    CHECK(c.size() == 9);
    CHECK(G.branch_class_size() == 9);
    std::set<std::vector<int64_t>> keys;
    for (auto& x : c) keys.insert(x.key());
    auto T = G.make(mat({{1, 1}, {0, 1}}), {{2, 1}});
    for (auto& x : c) {
        REQUIRE(keys.count(G.conjugate(T, x).key()));
        REQUIRE(G.order(x) == 2);
    }
    CHECK(AffSymp(Modulus(15), 1).branch_class_size() == 225);
    CHECK(AffSymp(Modulus(3), 2).branch_class().size() == 81);
}

TEST_CASE("group operations") {
    AffSymp H(Modulus(3), 1);
    auto x = H.make(mat({{0, 1}, {2, 0}}), {{1, 2}});
    CHECK(H.multiply(x, H.inverse(x)) == H.identity());
    CHECK(H.is_symplectic(mat({{1, 1}, {0, 1}})));
    CHECK(H.is_symplectic(mat({{2, 0}, {0, 2}})));  // det 4 = 1
    CHECK_FALSE(H.is_symplectic(mat({{2, 0}, {0, 1}})));
    CHECK_THROWS(H.make(mat({{2, 0}, {0, 1}})));
}

TEST_CASE("half twist examples") {
    AffSymp G(Modulus(3), 1);
    auto m1 = -ModMatrix::identity(2, 3);
    auto a = G.make(m1, {{1, 0}}), b = G.make(m1, {{0, 0}});
    auto out = braid_act(G, {BraidMove::Kind::HalfTwist, 0}, genus0({a, b}));
    CHECK(out.branch[0] == G.make(m1, {{2, 0}}));
    CHECK(out.branch[1] == a);
    auto same = genus0({a, a});
    CHECK(braid_act(G, {BraidMove::Kind::HalfTwist, 0}, same) == same);
    CHECK(braid_act_inverse_half_twist(G, 0, out) == genus0({a, b}));
}

TEST_CASE("orbit counting") {
    AffSymp G(Modulus(3), 1);
    auto c = G.branch_class();
    std::vector<NielsenDatum> pairs;
    for (auto& x : c)
        for (auto& y : c) pairs.push_back(genus0({x, y}));
    CHECK(orbit_count(G, pairs, {}).count == pairs.size());
    auto rep = orbit_count(G, pairs, {{BraidMove::Kind::HalfTwist, 0}});
    // diagonal pairs are fixed points
    size_t singletons = std::count(rep.sizes.begin(), rep.sizes.end(), size_t{1});
    CHECK(singletons == c.size());
    CHECK(Rational(rep.count) == cyclic_burnside_pairs(G, c));
    CHECK_THROWS_AS(orbit_count(G, {pairs[1]}, {{BraidMove::Kind::HalfTwist, 0}}), std::invalid_argument);
}

TEST_CASE("property: braid moves preserve valid data (nu=3, r=1, g=0, n=2) exhaustively") {
    AffSymp G(Modulus(3), 1);
    auto c = G.branch_class();
    std::vector<ModMatrix> mats;
    for (int64_t a = 0; a < 3; ++a)
        for (int64_t b = 0; b < 3; ++b)
            for (int64_t cc = 0; cc < 3; ++cc)
                for (int64_t d = 0; d < 3; ++d)
                    if (mod_reduce(a * d - b * cc, 3) == 1) mats.push_back(mat({{a, b}, {cc, d}}));
    REQUIRE(mats.size() == 24);
    std::vector<AspElement> all;
    for (auto& M : mats)
        for (int64_t x = 0; x < 3; ++x)
            for (int64_t y = 0; y < 3; ++y) all.push_back(G.make(M, {{x, y}}));

    size_t valid = 0;
    auto try_datum = [&](const NielsenDatum& d) {
        if (!validate(G, d).empty()) return;
        ++valid;
        for (auto& mv : standard_moves(2, static_cast<int>(d.fixed.size()))) {
            auto e = braid_act(G, mv, d);
            CAPTURE(mv.str());
            REQUIRE(validate(G, e).empty());
        }
        REQUIRE(validate(G, braid_act_inverse_half_twist(G, 0, d)).empty());
    };
    for (auto& x : c)
        for (auto& y : c) {
            try_datum(genus0({x, y}));
            for (auto& f : all) try_datum(genus0({x, y}, {f}));
        }
    CHECK(valid > 0);
}

TEST_CASE("torsor count examples") {
    auto I = ModMatrix::identity(2, 3);
    TorsorSpec g1{Modulus(3), 1, 1, {I, I}, {I}, 2};
    auto t = torsor_count(g1);
    CHECK(t.base_relation_ok);
    CHECK(t.count == 81);
    CHECK(t.matches);
    CHECK(torsor_count_brute_force(g1).count == 81);

    // a single fixed puncture at genus 0 forces M = id, so a drop-2 puncture is degenerate
    TorsorSpec bad{Modulus(3), 1, 0, {}, {-I}, 2};
    auto b = torsor_count(bad);
    CHECK_FALSE(b.base_relation_ok);
    CHECK(b.sum_drop == 2);
    CHECK(b.formula == 9);

    auto T = mat({{0, 1}, {2, 0}});
    TorsorSpec two{Modulus(3), 1, 0, {}, {T, inverse(T)}, 2};
    auto u = torsor_count(two);
    CHECK(u.base_relation_ok);
    CHECK(u.sum_drop == 4);
    CHECK(u.count == u.formula);
    CHECK(torsor_count_brute_force(two).count == u.count);
}

TEST_CASE("drop and extension condition") {
    auto I = ModMatrix::identity(2, 9);
    CHECK(drop(I) == 0);
    CHECK(drop(-I) == 2);
    CHECK(drop(ModMatrix::from_rows({{1, 1}, {0, 1}}, 9)) == 1);
    CHECK(extension_condition(ModMatrix::from_rows({{1, 1}, {0, 1}}, 9), {1, 0}));
    CHECK_FALSE(extension_condition(ModMatrix::from_rows({{1, 1}, {0, 1}}, 9), {0, 1}));
}

TEST_CASE("burnside components examples") {
    auto s = QuadSpace::diagonal({1, 1}, 3);
    auto id = ModMatrix::identity(2, 3);
    auto h = FiniteModule::cyclic(3);
    CHECK(burnside_components({{id}}, h) == 9);
    CHECK(burnside_components({{id}, {-id}}, h) == 5);
    CHECK(hom_orbits_direct({{id}, {-id}}, h) == 5);
}

TEST_CASE("property: burnside average equals union-find orbits") {
    for (auto& s : {QuadSpace::diagonal({1, 1}, 3), QuadSpace::diagonal({1, 1, 1}, 3), QuadSpace::split(1, 5),
                    QuadSpace::diagonal({1, 1}, 9)}) {
        auto G = enumerate_orthogonal(s);
        std::vector<OrthoElement> so;
        for (auto& g : G)
            if (dickson(s, g) == std::vector<uint8_t>(s.modulus().omega(), 0)) so.push_back(g);
        for (auto& h : {FiniteModule::cyclic(s.modulus().factors()[0].first),
                        FiniteModule::elementary(s.modulus().factors()[0].first, 2)})
            for (auto* grp : {&G, &so}) {
                auto b = burnside_components(*grp, h);
                REQUIRE(denominator(b) == 1);
                REQUIRE(numerator(b) == hom_orbits_direct(*grp, h));
            }
    }
}

TEST_CASE("invariant image") {
    auto s = QuadSpace::diagonal({1, 1, 1}, 3);
    auto id = ModMatrix::identity(3, 3);
    CHECK(invariant_image(s, {{id}}).order() == 1);
    auto r = reflection(s, {1, 0, 0});
    auto img = invariant_image(s, {r});
    CHECK(img.order() == 2);
    CHECK(img.contains(coset_signature(s, r)));
}

}
