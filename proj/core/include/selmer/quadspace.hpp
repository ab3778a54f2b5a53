#pragma once

#include "selmer/matrix.hpp"
#include "selmer/modmath.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace selmer {

// Nondegenerate symmetric bilinear form over Z/nu with Q(v) = B(v, v).
class QuadSpace {
public:
    QuadSpace(Modulus nu, ModMatrix gram);
    static QuadSpace diagonal(const std::vector<int64_t>& d, int64_t nu);
    // Q(v) = sum v_i v_{n+i}
    static QuadSpace split(int n, int64_t nu);

    const Modulus& modulus() const { return nu_; }
    int64_t nu() const { return nu_.nu(); }
    int rank() const { return gram_.rows(); }
    const ModMatrix& gram() const { return gram_; }

    int64_t B(const std::vector<int64_t>& v, const std::vector<int64_t>& w) const;
    int64_t Q(const std::vector<int64_t>& v) const { return B(v, v); }
    // Gram matrix reduced modulo a divisor of nu
    ModMatrix gram_mod(int64_t m) const { return gram_.reduced(m); }

private:
    Modulus nu_;
    ModMatrix gram_;
};

struct OrthoElement {
    ModMatrix m;
    bool operator==(const OrthoElement&) const = default;
};

// Per-prime (Dickson, spinor) bits; index i refers to modulus().factors()[i].
struct CosetSignature {
    std::vector<uint8_t> dickson;
    std::vector<uint8_t> spinor;

    bool is_zero() const;
    CosetSignature operator+(const CosetSignature& o) const;
    bool operator==(const CosetSignature&) const = default;
    uint32_t bits() const;  // dickson bits low, spinor bits above
    static CosetSignature from_bits(uint32_t b, int omega);
    std::string label() const;  // per prime one of O(mega), A, B, C
};

// Coset label convention: A = (0,1), B = (1,0), C = (1,1), Omega = (0,0).
enum class CosetLabel { Omega, A, B, C };
CosetSignature uniform_signature(CosetLabel label, int omega);
CosetLabel parse_coset_label(const std::string& s);
std::string to_string(CosetLabel c);

bool is_orthogonal(const QuadSpace& space, const ModMatrix& m);
std::vector<uint8_t> dickson(const QuadSpace& space, const OrthoElement& g);
OrthoElement reflection(const QuadSpace& space, const std::vector<int64_t>& v);

// Cartan-Dieudonne greedy decomposition mod l; `reversed` flips the candidate order.
std::vector<std::vector<int64_t>> reflection_decomposition(const ModMatrix& g_mod_l, const ModMatrix& gram_mod_l,
                                                           int64_t l, bool reversed = false);
std::vector<uint8_t> spinor_minus(const QuadSpace& space, const OrthoElement& g, bool reversed = false);
CosetSignature coset_signature(const QuadSpace& space, const OrthoElement& g);
bool omega_member(const QuadSpace& space, const OrthoElement& g);

// Closed-form |O(Q)|.
BigInt orthogonal_group_order(const QuadSpace& space);

// Streams every element of O(Q) once, deterministic order; refuses above budget.
void for_each_orthogonal(const QuadSpace& space, const std::function<void(const OrthoElement&)>& fn,
                         const BigInt& budget = 5'000'000);
std::vector<OrthoElement> enumerate_orthogonal(const QuadSpace& space, const BigInt& budget = 5'000'000);

// Exact uniform sampler over O(Q) or one of its cosets.
class OrthoSampler {
public:
    OrthoSampler(const QuadSpace& space, uint64_t seed);

    OrthoElement sample();
    OrthoElement sample(const CosetSignature& coset);
    uint64_t rejections() const { return rejections_; }
    uint64_t seed() const { return seed_; }

private:
    struct Local {
        int64_t l, q;
        ModMatrix F, Finv;       // F^T G F = diag(d)
        std::vector<int64_t> d;
    };
    ModMatrix sample_local(Local& loc);

    const QuadSpace* space_;
    uint64_t seed_;
    std::mt19937_64 rng_;
    std::vector<Local> locals_;
    uint64_t rejections_ = 0;
};

// Orthogonal basis over Z/l^a: F with F^T G F diagonal with unit entries.
ModMatrix diagonalizing_basis(const ModMatrix& gram, int64_t l, int64_t q);

}  // namespace selmer
