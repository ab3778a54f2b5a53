#pragma once

// Slow, independent reference computations. Test-only: nothing in core depends on these.

#include "selmer/bklpr.hpp"
#include "selmer/hurwitz.hpp"
#include "selmer/modmath.hpp"
#include "selmer/quadspace.hpp"

#include <vector>

namespace selmer::oracle {

// Explicit abelian group Z/n_1 x ... x Z/n_k with elements as digit vectors.
struct AbelianGroup {
    std::vector<int64_t> orders;
    static AbelianGroup of(const FiniteModule& m);
    uint64_t size() const;
    std::vector<std::vector<int64_t>> elements() const;
};

// Homomorphism counts by listing generator images and testing the kernel / image directly.
BigInt count_maps_brute(const FiniteModule& a, const FiniteModule& h, MapKind kind);

// #Sym^2 H from the presentation <x_ij | l^min(e_i,e_j) x_ij, x_ij - x_ji> via Smith form.
BigInt sym2_order_presentation(const FiniteModule& h);

// All g with g^T G g = G by scanning every matrix (tiny cases only).
uint64_t orthogonal_count_naive(const QuadSpace& space);

// E[#Inj(H, Z cap W)] over all ordered pairs of maximal isotropics.
Rational isotropic_pair_moment(int64_t l, int j, int n, const FiniteModule& h);

}  // namespace selmer::oracle
