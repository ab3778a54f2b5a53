#pragma once

#include "selmer/modmath.hpp"
#include "selmer/quadspace.hpp"

#include <set>
#include <string>
#include <vector>

namespace selmer {

// Element (M, v_1..v_m) of an affine symplectic group; v_i lives over Z/nu_i.
struct AspElement {
    ModMatrix M;
    std::vector<std::vector<int64_t>> v;

    bool operator==(const AspElement&) const = default;
    std::vector<int64_t> key() const;
};

class AffSymp {
public:
    AffSymp(Modulus nu, int r, std::vector<int64_t> vector_moduli = {});

    const Modulus& modulus() const { return nu_; }
    int64_t nu() const { return nu_.nu(); }
    int r() const { return r_; }
    int dim() const { return 2 * r_; }
    const std::vector<int64_t>& vector_moduli() const { return moduli_; }

    ModMatrix J() const;
    bool is_symplectic(const ModMatrix& m) const;

    AspElement make(const ModMatrix& M, std::vector<std::vector<int64_t>> v) const;  // validates
    AspElement make(const ModMatrix& M) const;  // zero vectors
    AspElement identity() const;
    AspElement multiply(const AspElement& a, const AspElement& b) const;
    AspElement inverse(const AspElement& a) const;
    AspElement conjugate(const AspElement& g, const AspElement& x) const;  // g x g^-1
    AspElement commutator(const AspElement& a, const AspElement& b) const;
    uint64_t order(const AspElement& a, uint64_t limit = 1'000'000) const;
    AspElement translation(const std::vector<std::vector<int64_t>>& t) const;

    // Pi^{-1}(-id): all elements with matrix part -id
    std::vector<AspElement> branch_class() const;
    BigInt branch_class_size() const;

private:
    Modulus nu_;
    int r_;
    std::vector<int64_t> moduli_;
};

bool extension_condition(const ModMatrix& M, const std::vector<int64_t>& v);
int drop(const ModMatrix& M);  // 2r - dim ker(M - 1) mod l, required equal across primes

struct NielsenDatum {
    int genus = 0;
    std::vector<AspElement> handles;  // alpha_1, beta_1, alpha_2, ...
    std::vector<AspElement> fixed;    // fixed-puncture images delta_k
    std::vector<AspElement> branch;   // gamma_1..gamma_n
    bool operator==(const NielsenDatum&) const = default;
    std::vector<int64_t> key() const;
};

AspElement surface_product(const AffSymp& G, const NielsenDatum& d);
// Empty when all constraints hold; otherwise human-readable violations.
std::vector<std::string> validate(const AffSymp& G, const NielsenDatum& d);

struct BraidMove {
    enum class Kind { HalfTwist, Slide };
    Kind kind = Kind::HalfTwist;
    int index = 0;  // half-twist position i (swaps i, i+1) or fixed puncture index
    std::string str() const;
};

NielsenDatum braid_act(const AffSymp& G, const BraidMove& mv, const NielsenDatum& d);
NielsenDatum braid_act_inverse_half_twist(const AffSymp& G, int i, const NielsenDatum& d);
std::vector<BraidMove> standard_moves(int n, int fixed_count, bool with_slides = true);

// Compact disjoint-set forest over dense indices.
class DisjointSets {
public:
    explicit DisjointSets(size_t n);
    uint32_t find(uint32_t x);
    bool unite(uint32_t a, uint32_t b);
    size_t components() const { return components_; }
    size_t size() const { return parent_.size(); }

private:
    std::vector<uint32_t> parent_;
    size_t components_;
};

struct OrbitReport {
    size_t count = 0;
    std::vector<size_t> sizes;
    std::vector<NielsenDatum> representatives;
};

OrbitReport orbit_count(const AffSymp& G, const std::vector<NielsenDatum>& data, const std::vector<BraidMove>& moves,
                        size_t budget = 20'000'000);

// Orbits of the cyclic group generated by the half twist on pairs of elements,
// by Burnside over the powers of the induced permutation.
Rational cyclic_burnside_pairs(const AffSymp& G, const std::vector<AspElement>& elems);

struct TorsorSpec {
    Modulus nu;
    int r;
    int genus;
    std::vector<ModMatrix> handles;  // A_1, B_1, ...
    std::vector<ModMatrix> fixed;    // M_k
    int n;
};

struct TorsorCount {
    BigInt solutions;   // vector assignments satisfying the product relation
    BigInt stabilizer;  // translations fixing every datum
    BigInt count;       // isomorphism classes
    BigInt formula;
    int64_t exponent = 0;
    int sum_drop = 0;
    bool base_relation_ok = false;
    bool free_action = false;
    bool matches = false;
};

TorsorCount torsor_count(const TorsorSpec& spec);
TorsorCount torsor_count_brute_force(const TorsorSpec& spec, const BigInt& budget = 100'000'000);

// (1/|G|) sum_g #Hom(H, ker(g - 1)).
Rational burnside_components(const std::vector<OrthoElement>& group, const FiniteModule& h);
// Orbit count of the diagonal action on Hom(H, V) by explicit union-find.
BigInt hom_orbits_direct(const std::vector<OrthoElement>& group, const FiniteModule& h, size_t budget = 20'000'000);

struct SignatureSubgroup {
    int omega = 0;
    std::set<uint32_t> elements;
    size_t order() const { return elements.size(); }
    bool contains(const CosetSignature& s) const { return elements.count(s.bits()); }
};
SignatureSubgroup invariant_image(const QuadSpace& space, const std::vector<OrthoElement>& generators);

}  // namespace selmer
