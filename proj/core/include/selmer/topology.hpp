#pragma once

#include "selmer/hurwitz.hpp"
#include "selmer/linalg.hpp"

#include <map>
#include <vector>

namespace selmer {

// Cell of the configuration-space decomposition: an n-tuple split into b blocks P,
// 2g handle counts v and f puncture counts w.
struct CellTuple {
    int b = 0;
    std::vector<int> P, v, w;
    int n = 0;
    int dimension() const { return b + n; }
    bool operator==(const CellTuple&) const = default;
};

std::vector<CellTuple> enumerate_cells(int g, int f, int n, size_t budget = 10'000'000);
BigInt cell_count_closed_form(int g, int f, int n);
BigInt cell_bound(int g, int f, int n);  // 2^{2g+f+n}

// Conjugation quandle on a conjugacy class: act(a, b) = a b a^-1.
struct Rack {
    int size = 0;
    std::vector<int> table;  // size*size
    int act(int a, int b) const { return table[static_cast<size_t>(a) * size + b]; }
};

Rack rack_from_class(const AffSymp& G, const std::vector<AspElement>& c);
bool is_rack(const Rack& r);  // self-distributive, bijective left actions

class GradedOrbitRing {
public:
    // Orbits of the half-twist action on c^n for n <= N.
    static GradedOrbitRing build(const Rack& rack, int N, uint64_t budget = 60'000'000);

    int max_degree() const { return N_; }
    const Rack& rack() const { return rack_; }
    int basis_size(int n) const { return static_cast<int>(reps_.at(n).size()); }
    uint64_t tuple_count(int n) const { return pow_.at(n); }
    int orbit_of(int n, uint64_t code) const { return orbit_.at(n)[code]; }
    uint64_t representative(int n, int orbit) const { return reps_.at(n).at(orbit); }
    uint64_t orbit_size(int n, int orbit) const { return sizes_.at(n).at(orbit); }

    uint64_t concat(int /*n1*/, uint64_t x, int n2, uint64_t y) const { return x * pow_.at(n2) + y; }
    std::vector<int> decode(int n, uint64_t code) const;
    uint64_t encode(const std::vector<int>& digits) const;

    // Orbit of rep(i) . rep(j), degree n1 + n2.
    int multiply(int n1, int i, int n2, int j) const;

    // Every member pair lands in the orbit of the representative product (total degree <= max_total).
    bool well_defined(int max_total) const;
    // (a b) c = a (b c) on all basis triples with each degree in [1, max_each].
    bool associative(int max_each) const;

private:
    Rack rack_;
    int N_ = 0;
    std::vector<uint64_t> pow_;
    std::vector<std::vector<int32_t>> orbit_;
    std::vector<std::vector<uint64_t>> reps_;
    std::vector<std::vector<uint64_t>> sizes_;
};

// Homogeneous element sum_{g in c} r_g^{D ord(g)}.
struct UOperator {
    int D = 1;
    int degree = 0;
    std::map<int, int64_t> terms;  // orbit index in `degree` -> coefficient
    // Left multiplication R_n -> R_{n+degree} for every n with n + degree <= N.
    std::vector<SparseMatrix> matrices;
};

UOperator u_operator(const GradedOrbitRing& ring, int D, const std::vector<uint64_t>& orders);

struct StabilizationRow {
    int n = 0;
    int source = 0, target = 0, rank = 0;
    int kernel = 0, cokernel = 0;
    bool bijective = false;
};

struct StabilizationReport {
    std::vector<StabilizationRow> rows;
    int first_bijective = -1;
    bool bijective_after_first = false;
    int threshold = -1;  // least n with every scanned n' >= n bijective
    bool central = false;  // U r_g = r_g U for every g
};

StabilizationReport stabilization_scan(const GradedOrbitRing& ring, const UOperator& U, Field f = Field::rationals());
bool u_commutes_with_generators(const GradedOrbitRing& ring, const UOperator& U);

struct KComplexReport {
    int max_degree = 0;
    Field field;
    // indexed by degree n
    std::vector<int> dim_k0, dim_k1, dim_k2;
    std::vector<int> rank_d1, rank_d2;
    std::vector<int> h0, h1;
    bool d_squared_zero = true;
    bool h0_concentrated = false;
    int h1_top_degree = -1;       // largest n in the window with H_1 != 0
    bool h1_finite_in_window = false;  // H_1 vanishes at the top of the window
    // right multiplication by each degree-one class annihilates H_0 and H_1
    bool right_action_zero = true;
    std::vector<std::string> failures;
};

KComplexReport k_complex(const GradedOrbitRing& ring, int max_degree, Field f = Field::rationals());

}  // namespace selmer
