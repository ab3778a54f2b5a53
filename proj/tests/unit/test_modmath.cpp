#include "doctest.h"

#include "selmer/modmath.hpp"
#include "selmer/verify/oracles.hpp"

#include <random>

using namespace selmer;

namespace {

FiniteModule Zmod(std::vector<int64_t> orders) { return FiniteModule::from_orders(orders); }

// Number of v in (Z/nu)^n with m v = 0, by listing every vector.
uint64_t brute_kernel_size(const ModMatrix& m) {
    int n = m.cols();
    int64_t q = m.mod();
    uint64_t total = 1, hits = 0;
    for (int i = 0; i < n; ++i) total *= q;
    std::vector<int64_t> v(n);
    for (uint64_t code = 0; code < total; ++code) {
        uint64_t c = code;
        for (int i = 0; i < n; ++i, c /= q) v[i] = static_cast<int64_t>(c % q);
        auto w = m.apply(v);
        hits += std::all_of(w.begin(), w.end(), [](int64_t x) { return x == 0; });
    }
    return hits;
}

}  // namespace

TEST_SUITE("modmath") {

TEST_CASE("conjugate partition examples") {
    CHECK(conjugate_partition(Partition({2, 1})) == Partition({2, 1}));
    CHECK(conjugate_partition(Partition({3, 1})) == Partition({2, 1, 1}));
    CHECK(conjugate_partition(Partition()) == Partition());
}

TEST_CASE("property: conjugation is an involution up to size 12") {
    int seen = 0;
    for (int n = 0; n <= 12; ++n)
        for (auto& p : partitions_of(n)) {
            auto c = conjugate_partition(p);
            REQUIRE(c.size() == n);
            REQUIRE(conjugate_partition(c) == p);
            ++seen;
        }
    CHECK(seen == 272);  // sum of p(n) for n <= 12
}

TEST_CASE("modules") {
    auto h = Zmod({9, 3, 5});
    CHECK(h.order() == 135);
    CHECK(h.rank_at(3) == 2);
    CHECK(h.fits(Modulus(45)));
    CHECK_FALSE(h.fits(Modulus(15)));
    CHECK(h.capped(Modulus(15)) == Zmod({3, 3, 5}));
    CHECK(Zmod({3, 3}).is_square());
    CHECK_FALSE(Zmod({9, 3}).is_square());
    CHECK(FiniteModule::trivial().is_square());
    CHECK_THROWS(Modulus(2));
    CHECK(Modulus(45).omega() == 2);
    CHECK(modules_up_to(Modulus(27), 27).size() == 7);  // 1, 3, 9, 27, 3+3, 9+3, 3+3+3
}

TEST_CASE("sym2 order examples") {
    CHECK(sym2_order(Zmod({3})) == 3);
    CHECK(sym2_order(Zmod({3, 3})) == 27);
    CHECK(sym2_order(Zmod({9, 3})) == 81);
}

TEST_CASE("property: sym2 order matches the presentation oracle for all H of order <= 3^6") {
    auto all = modules_up_to(Modulus(729), 729);
    CHECK(all.size() == 1 + 1 + 2 + 3 + 5 + 7 + 11);
    for (auto& h : all) {
        CAPTURE(h.str());
        REQUIRE(sym2_order(h) == oracle::sym2_order_presentation(h));
    }
}

TEST_CASE("count_maps examples") {
    CHECK(count_maps(Zmod({3}), Zmod({9, 3}), MapKind::Hom) == 9);
    CHECK(count_maps(Zmod({3}), Zmod({3}), MapKind::Surj) == 2);
    CHECK(count_maps(Zmod({9, 5}), FiniteModule::trivial(), MapKind::Hom) == 1);
    CHECK(count_maps(FiniteModule::trivial(), FiniteModule::trivial(), MapKind::Surj) == 1);
    CHECK(parse_map_kind("surj") == MapKind::Surj);
    CHECK_THROWS(parse_map_kind("iso"));
}

TEST_CASE("property: hom/surj/inj agree with brute force for orders <= 27 and mixed primes") {
    auto small = modules_up_to(Modulus(27), 27);
    auto mixed = modules_up_to(Modulus(15), 15);
    small.insert(small.end(), mixed.begin(), mixed.end());
    for (auto& a : small)
        for (auto& h : small)
            for (auto k : {MapKind::Hom, MapKind::Surj, MapKind::Inj}) {
                CAPTURE(a.str());
                CAPTURE(h.str());
                REQUIRE(count_maps(a, h, k) == oracle::count_maps_brute(a, h, k));
            }
}

TEST_CASE("property: sum over submodules of surjections counts homomorphisms (orders <= 3^4)") {
    auto mods = modules_up_to(Modulus(81), 81);
    for (auto& h : mods) {
        // #{S <= H : S ~ T} = #Inj(T, H) / #Aut(T)
        std::vector<std::pair<FiniteModule, BigInt>> subs;
        for (auto& t : mods) {
            BigInt inj = count_inj(t, h);
            if (inj == 0) continue;
            BigInt aut = count_surj(t, t);
            REQUIRE(inj % aut == 0);
            subs.push_back({t, inj / aut});
        }
        for (auto& a : mods) {
            BigInt sum = 0;
            for (auto& [t, n] : subs) sum += n * count_surj(a, t);
            CAPTURE(a.str());
            CAPTURE(h.str());
            REQUIRE(sum == count_hom(a, h));
        }
    }
}

TEST_CASE("kernel module examples") {
    auto id = ModMatrix::identity(2, 9);
    CHECK(kernel_module(id - id) == Zmod({9, 9}));
    CHECK(kernel_module(-id - id) == FiniteModule::trivial());
    CHECK(kernel_module(ModMatrix::diagonal({1, -1}, 9) - id) == Zmod({9}));
}

TEST_CASE("property: kernel order equals brute-force solution count (nu in {3,9}, rank <= 3)") {
    std::mt19937_64 rng(5);
    for (int64_t nu : {3, 9})
        for (int n = 1; n <= 3; ++n)
            for (int trial = 0; trial < 150; ++trial) {
                ModMatrix m(n, n, nu);
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) {
                        // bias towards non-units so kernels are interesting
                        int64_t x = static_cast<int64_t>(rng() % nu);
                        if (rng() % 2) x = (x * 3) % nu;
                        m.set(i, j, x);
                    }
                REQUIRE(kernel_module(m).order() == brute_kernel_size(m));
            }
}

TEST_CASE("subspace counts") {
    CHECK(gaussian_binomial(3, 2, 1) == 4);
    CHECK(subspace_count(3, 2) == 6);
    CHECK(subspace_count(2, 3) == 16);
}

}
