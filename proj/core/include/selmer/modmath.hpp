#pragma once

#include "selmer/matrix.hpp"
#include "selmer/numeric.hpp"

#include <compare>
#include <map>
#include <string>
#include <vector>

namespace selmer {

// Odd modulus nu >= 3 with its prime factorisation.
class Modulus {
public:
    explicit Modulus(int64_t nu);

    int64_t nu() const { return nu_; }
    const std::vector<std::pair<int64_t, int>>& factors() const { return factors_; }
    std::vector<int64_t> primes() const;
    int omega() const { return static_cast<int>(factors_.size()); }
    int64_t prime_power(size_t i) const { return ipow(factors_[i].first, factors_[i].second); }
    int exponent_of(int64_t l) const;  // 0 if l does not divide nu
    bool operator==(const Modulus& o) const { return nu_ == o.nu_; }

private:
    int64_t nu_;
    std::vector<std::pair<int64_t, int>> factors_;
};

struct Partition {
    std::vector<int> parts;  // weakly decreasing, positive

    Partition() = default;
    explicit Partition(std::vector<int> p);  // sorts and validates
    int size() const;                         // sum of parts
    int length() const { return static_cast<int>(parts.size()); }
    bool empty() const { return parts.empty(); }
    auto operator<=>(const Partition&) const = default;
};

Partition conjugate_partition(const Partition& p);
std::vector<Partition> partitions_of(int n);

// Isomorphism class of a finite module of odd order: prime -> exponent partition.
class FiniteModule {
public:
    FiniteModule() = default;
    explicit FiniteModule(std::map<int64_t, Partition> parts);

    static FiniteModule trivial() { return {}; }
    static FiniteModule cyclic(int64_t order);
    static FiniteModule from_orders(const std::vector<int64_t>& cyclic_orders);
    static FiniteModule elementary(int64_t l, int rank, int exponent = 1);

    const std::map<int64_t, Partition>& parts() const { return parts_; }
    Partition at(int64_t l) const;
    BigInt order() const;
    int rank_at(int64_t l) const { return at(l).length(); }
    bool is_trivial() const { return parts_.empty(); }
    bool fits(const Modulus& nu) const;  // annihilated by nu
    FiniteModule direct_sum(const FiniteModule& o) const;
    FiniteModule capped(const Modulus& nu) const;  // each factor Z/l^e -> Z/l^{min(e, a_l)}
    // true if the module is A + A for some A
    bool is_square() const;
    std::string str() const;

    auto operator<=>(const FiniteModule&) const = default;

private:
    std::map<int64_t, Partition> parts_;
};

// All modules annihilated by nu with order <= max_order.
std::vector<FiniteModule> modules_up_to(const Modulus& nu, int64_t max_order);

enum class MapKind { Hom, Surj, Inj };
MapKind parse_map_kind(const std::string& s);

BigInt count_hom(const FiniteModule& a, const FiniteModule& h);
// Surjection count by Moebius inversion over subgroups containing l*H;
// refuses when H/lH has more than `budget` subspaces.
BigInt count_surj(const FiniteModule& a, const FiniteModule& h, int64_t budget = 2'000'000);
BigInt count_inj(const FiniteModule& a, const FiniteModule& h, int64_t budget = 2'000'000);
BigInt count_maps(const FiniteModule& a, const FiniteModule& h, MapKind kind);

BigInt sym2_order(const FiniteModule& h);

// Kernel of a matrix over Z/nu (columns = unknowns) as a module.
FiniteModule kernel_module(const ModMatrix& m);

// Number of subspaces of F_l^d (Gaussian binomial sum).
BigInt subspace_count(int64_t l, int d);
BigInt gaussian_binomial(int64_t l, int n, int k);

}  // namespace selmer
