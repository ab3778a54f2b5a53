#include "doctest.h"

#include "selmer/linalg.hpp"
#include "selmer/matrix.hpp"
#include "selmer/numeric.hpp"
#include "selmer/polynomial.hpp"

#include <random>

using namespace selmer;

TEST_SUITE("numeric") {

TEST_CASE("modular helpers") {
    CHECK(mod_reduce(-1, 9) == 8);
    CHECK(inv_mod(2, 9) == 5);
    CHECK_THROWS_AS(inv_mod(3, 9), std::domain_error);
    CHECK(valuation(18, 3, 4) == 2);
    CHECK(valuation(0, 3, 4) == 4);
    CHECK(legendre(2, 3) == -1);
    CHECK(legendre(4, 5) == 1);
    CHECK(square_class(2, 5) == 1);
    CHECK(factorize(45) == std::vector<std::pair<int64_t, int>>{{3, 2}, {5, 1}});
    CHECK(binomial(6, 2) == 15);
}

TEST_CASE("rational round trip") {
    Rational r(-32, 9);
    CHECK(to_string(r) == "-32/9");
    CHECK(parse_rational("-32/9") == r);
    CHECK(to_string(Rational(4)) == "4");
    CHECK(rat_pow(3, -2) == Rational(1, 9));
}

TEST_CASE("polynomial arithmetic") {
    RationalPoly a({Rational(1), Rational(1)});  // 1 + t
    RationalPoly b({Rational(-1), Rational(1)});  // t - 1
    auto p = a * b;
    CHECK(p == RationalPoly({Rational(-1), Rational(0), Rational(1)}));
    CHECK((p - p).is_zero());
    CHECK(p.eval(Rational(3)) == 8);
}

TEST_CASE("smith valuations examples") {
    CHECK(smith_valuations(ModMatrix::identity(2, 9), 3, 2) == std::vector<int>{0, 0});
    CHECK(smith_valuations(ModMatrix::diagonal({3, 1}, 9), 3, 2) == std::vector<int>{0, 1});
    CHECK(smith_valuations(ModMatrix::from_rows({{0, 3}, {6, 0}}, 27), 3, 3) == std::vector<int>{1, 1});
}

TEST_CASE("property: U M V = D for random matrices over Z/27 and Z/25") {
    std::mt19937_64 rng(11);
    for (auto [l, K] : {std::pair<int64_t, int>{3, 3}, {5, 2}}) {
        int64_t q = ipow(l, K);
        for (int trial = 0; trial < 200; ++trial) {
            int r = 1 + static_cast<int>(rng() % 4), c = 1 + static_cast<int>(rng() % 4);
            ModMatrix m(r, c, q);
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < c; ++j) m.set(i, j, static_cast<int64_t>(rng() % q) * ((rng() % 3) ? 1 : l));
            auto sf = smith_form(m, l, K, true);
            auto d = sf.U * m * sf.V;
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < c; ++j) {
                    int64_t want = (i == j && sf.valuations[i] < K) ? ipow(l, sf.valuations[i]) : 0;
                    REQUIRE(d(i, j) == want);
                }
            CHECK(std::is_sorted(sf.valuations.begin(), sf.valuations.end()));
        }
    }
}

TEST_CASE("inverse and solve") {
    auto m = ModMatrix::from_rows({{1, 2}, {3, 4}}, 15);
    auto inv = inverse(m);
    CHECK((m * inv).is_identity());
    auto x = solve(m, {1, 1});
    REQUIRE(x);
    CHECK(m.apply(*x) == std::vector<int64_t>{1, 1});
    CHECK_FALSE(solve(ModMatrix::diagonal({3, 3}, 9), {1, 0}));
    CHECK(image_size(ModMatrix::diagonal({3, 1}, 9)) == 27);
    CHECK(crt_combine({1, 2}, {3, 5}) == 7);
}

TEST_CASE("sparse linear algebra") {
    // columns (1,1,0), (0,1,1), (1,2,1): rank 2, kernel spanned by (1,1,-1)
    SparseMatrix m{3, {{{0, 1}, {1, 1}}, {{1, 1}, {2, 1}}, {{0, 1}, {1, 2}, {2, 1}}}};
    CHECK(rank(m) == 2);
    auto k = kernel_basis(m);
    REQUIRE(k.size() == 1);
    SparseMatrix kv{3, {k[0]}};
    CHECK(is_zero(multiply(m, kv)));
    CHECK(rank(m, Field::mod(7)) == 2);
    // over F_2-like small primes a dependency can appear: (1,1) and (1,-2) are dependent mod 3
    SparseMatrix n{2, {{{0, 1}, {1, 1}}, {{0, 1}, {1, -2}}}};
    CHECK(rank(n) == 2);
    CHECK(rank(n, Field::mod(3)) == 1);

    EchelonBasis e(3);
    CHECK(e.insert({{0, 1}, {2, 1}}));
    CHECK_FALSE(e.insert({{0, 2}, {2, 2}}));
    CHECK(e.contains({{0, Rational(1, 2)}, {2, Rational(1, 2)}}));
    CHECK(e.rank() == 1);
}

}
