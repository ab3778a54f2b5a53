#pragma once

#include "selmer/eigendist.hpp"
#include "selmer/modmath.hpp"
#include "selmer/quadspace.hpp"

#include <random>
#include <vector>

namespace selmer {

// Rank-2n module over Z/l^j with Q(v) = sum v_i v_{n+i}.
struct SplitSpace {
    int n;
    int64_t l;
    int j;
    int64_t q;
    QuadSpace space;

    static SplitSpace make(int n, int64_t l, int j);
};

// Maximal isotropic summand; basis rows in canonical echelon form
// (identity on the mod-l pivot columns).
struct Isotropic {
    ModMatrix rows;  // n x 2n
    bool operator==(const Isotropic&) const = default;
    auto operator<=>(const Isotropic& o) const { return rows.data() <=> o.rows.data(); }
    ModMatrix columns() const { return rows.transpose(); }
};

Isotropic canonical_isotropic(const ModMatrix& rows, int64_t l);
bool is_isotropic(const SplitSpace& sp, const ModMatrix& rows);
Isotropic standard_isotropic(const SplitSpace& sp);  // span(e_1..e_n)

// 2 prod_{i=1}^{n-1}(l^i+1) * l^{(j-1)n(n-1)/2}
BigInt isotropic_count(int n, int64_t l, int j);
std::vector<Isotropic> enumerate_isotropics(const SplitSpace& sp, const BigInt& budget = 2'000'000);

// Uniform maximal isotropic via uniform isotropic frames.
class IsotropicSampler {
public:
    IsotropicSampler(const SplitSpace& sp, uint64_t seed);
    Isotropic sample();
    ModMatrix sample_frame();  // n x 2n rows, not canonicalised
    uint64_t rejections() const { return rejections_; }

private:
    const SplitSpace* sp_;
    std::mt19937_64 rng_;
    uint64_t rejections_ = 0;
};

Isotropic random_isotropic(const SplitSpace& sp, uint64_t seed);

FiniteModule intersection_module(const Isotropic& z, const Isotropic& w);
FiniteModule intersection_module_frames(const ModMatrix& z_rows, const ModMatrix& w_rows);

enum class BklprVariant { Full, Parity0, Parity1 };
BklprVariant parse_bklpr_variant(const std::string& s);
std::string to_string(BklprVariant v);

struct BklprRef {
    Modulus nu;
    BklprVariant variant;
    int n;
    ModuleDistribution dist;
};

BklprRef bklpr_distribution(const Modulus& nu, int n, BklprVariant variant, const SamplingMode& mode);

// Exact law of dim(Z cap W) over F_l for independent uniform maximal isotropics.
std::map<int, Rational> ogr_dimension_law(int64_t l, int n);
ModuleDistribution ogr_elementary_distribution(int64_t l, int n, BklprVariant variant);

// E[#Inj(H, Z cap W)] in closed form; H must be an l-module with exponents <= j.
Rational finite_n_moment(int64_t l, int j, int n, const FiniteModule& h);

struct AlternatingSample {
    FiniteModule module;
    uint64_t rejections = 0;
};
// Torsion of coker of a uniform alternating m x m matrix over Z/l^K, capped at l^j.
AlternatingSample alternating_cokernel_sample(int m, int64_t l, int K, int j, std::mt19937_64& rng);
ModuleDistribution alternating_distribution(int m, int64_t l, int j, uint64_t samples, uint64_t seed, int margin = 16);

}  // namespace selmer
