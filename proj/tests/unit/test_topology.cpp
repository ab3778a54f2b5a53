#include "doctest.h"

#include "selmer/topology.hpp"

using namespace selmer;

namespace {

GradedOrbitRing small_ring(int N) {
    AffSymp G(Modulus(3), 1);
    return GradedOrbitRing::build(rack_from_class(G, G.branch_class()), N);
}

}  // namespace

TEST_SUITE("topology") {

TEST_CASE("cell examples") {
    auto a = enumerate_cells(0, 0, 1);
    REQUIRE(a.size() == 1);
    CHECK(a[0].b == 1);
    CHECK(a[0].P == std::vector<int>{1});
    CHECK(enumerate_cells(0, 0, 2).size() == 2);
    CHECK(enumerate_cells(1, 0, 1).size() == 3);
    CHECK(cell_bound(1, 0, 1) == 8);
}

TEST_CASE("property: cell counts match the closed form and bound (g, f <= 2, n <= 8)") {
    for (int g = 0; g <= 2; ++g)
        for (int f = 0; f <= 2; ++f)
            for (int n = 0; n <= 8; ++n) {
                auto cells = enumerate_cells(g, f, n);
                CAPTURE(g);
                CAPTURE(f);
                CAPTURE(n);
                REQUIRE(BigInt(cells.size()) == cell_count_closed_form(g, f, n));
                REQUIRE(BigInt(cells.size()) <= cell_bound(g, f, n));
                int top = 0;
                for (auto& c : cells) top = std::max(top, c.dimension());
                REQUIRE(top == 2 * n);
            }
}

TEST_CASE("racks") {
    // transpositions in S_3
    Rack t{3, {0, 2, 1, 2, 1, 0, 1, 0, 2}};
    CHECK(is_rack(t));
    Rack broken{2, {0, 0, 1, 1}};
    CHECK_FALSE(is_rack(broken));
    AffSymp G(Modulus(3), 1);
    auto r = rack_from_class(G, G.branch_class());
    CHECK(r.size == 9);
    CHECK(is_rack(r));
}

TEST_CASE("orbit ring basics") {
    auto R = small_ring(4);
    CHECK(R.basis_size(0) == 1);
    CHECK(R.basis_size(1) == 9);
    CHECK(R.basis_size(2) == 33);
    CHECK(R.tuple_count(3) == 729);
    uint64_t total = 0;
    for (int o = 0; o < R.basis_size(3); ++o) total += R.orbit_size(3, o);
    CHECK(total == 729);
    auto digits = std::vector<int>{4, 0, 7};
    CHECK(R.decode(3, R.encode(digits)) == digits);
    CHECK(R.well_defined(4));
    CHECK(R.associative(2));
}

TEST_CASE("K-complex on a small window") {
    auto R = small_ring(5);
    auto k = k_complex(R, 5);
    CHECK(k.d_squared_zero);
    CHECK(k.right_action_zero);
    CHECK(k.failures.empty());
    auto kp = k_complex(R, 5, Field::mod(7));
    CHECK(kp.h0 == k.h0);
    CHECK(kp.h1 == k.h1);
}

TEST_CASE("U operator is central and homogeneous") {
    auto R = small_ring(6);
    std::vector<uint64_t> orders(9, 2);
    auto U = u_operator(R, 1, orders);
    CHECK(U.degree == 2);
    CHECK(u_commutes_with_generators(R, U));
    auto scan = stabilization_scan(R, U);
    CHECK(!scan.rows.empty());
    for (auto& row : scan.rows) CHECK(row.rank + row.kernel == row.source);
}

}
