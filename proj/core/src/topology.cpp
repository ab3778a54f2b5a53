#include "selmer/topology.hpp"

#include <functional>
#include <numeric>
#include <stdexcept>

namespace selmer {

std::vector<CellTuple> enumerate_cells(int g, int f, int n, size_t budget) {
    if (g < 0 || f < 0 || n < 0) throw std::invalid_argument("enumerate_cells: negative argument");
    BigInt est = cell_count_closed_form(g, f, n);
    if (est > budget) throw BudgetExceeded("enumerate_cells", est, BigInt(budget));
    std::vector<CellTuple> out;
    // compositions: P (b parts >= 1), then v (2g parts >= 0), then w (f parts >= 0)
    for (int b = 0; b <= n; ++b) {
        CellTuple t;
        t.b = b;
        t.n = n;
        t.P.assign(b, 1);
        t.v.assign(2 * g, 0);
        t.w.assign(f, 0);
        const int slots = b + 2 * g + f;
        std::vector<int> extra(slots, 0);
        std::function<void(int, int)> rec = [&](int i, int left) {
            if (i == slots) {
                if (left) return;
                for (int k = 0; k < b; ++k) t.P[k] = 1 + extra[k];
                for (int k = 0; k < 2 * g; ++k) t.v[k] = extra[b + k];
                for (int k = 0; k < f; ++k) t.w[k] = extra[b + 2 * g + k];
                out.push_back(t);
                return;
            }
            for (int x = 0; x <= left; ++x) {
                extra[i] = x;
                rec(i + 1, left - x);
            }
        };
        rec(0, n - b);
    }
    return out;
}

BigInt cell_count_closed_form(int g, int f, int n) {
    BigInt total = 0;
    for (int b = 0; b <= n; ++b) {
        int k = b + 2 * g + f;
        if (k == 0)
            total += n == 0 ? 1 : 0;
        else
            total += binomial(n + 2 * g + f - 1, k - 1);
    }
    return total;
}

BigInt cell_bound(int g, int f, int n) { return big_pow(2, 2 * g + f + n); }

Rack rack_from_class(const AffSymp& G, const std::vector<AspElement>& c) {
    Rack r;
    r.size = static_cast<int>(c.size());
    std::map<std::vector<int64_t>, int> idx;
    for (int i = 0; i < r.size; ++i) idx[c[i].key()] = i;
    r.table.resize(static_cast<size_t>(r.size) * r.size);
    for (int a = 0; a < r.size; ++a)
        for (int b = 0; b < r.size; ++b) {
            auto it = idx.find(G.conjugate(c[a], c[b]).key());
            if (it == idx.end()) throw std::invalid_argument("rack_from_class: not closed under conjugation");
            r.table[static_cast<size_t>(a) * r.size + b] = it->second;
        }
    return r;
}

bool is_rack(const Rack& r) {
    for (int a = 0; a < r.size; ++a) {
        std::vector<bool> hit(r.size, false);
        for (int b = 0; b < r.size; ++b) hit[r.act(a, b)] = true;
        if (std::find(hit.begin(), hit.end(), false) != hit.end()) return false;
    }
    for (int a = 0; a < r.size; ++a)
        for (int b = 0; b < r.size; ++b)
            for (int c = 0; c < r.size; ++c)
                if (r.act(a, r.act(b, c)) != r.act(r.act(a, b), r.act(a, c))) return false;
    return true;
}

std::vector<int> GradedOrbitRing::decode(int n, uint64_t code) const {
    std::vector<int> d(n);
    for (int i = n - 1; i >= 0; --i) {
        d[i] = static_cast<int>(code % rack_.size);
        code /= rack_.size;
    }
    return d;
}

uint64_t GradedOrbitRing::encode(const std::vector<int>& digits) const {
    uint64_t c = 0;
    for (int x : digits) c = c * rack_.size + x;
    return c;
}

GradedOrbitRing GradedOrbitRing::build(const Rack& rack, int N, uint64_t budget) {
    if (N < 0 || rack.size < 1) throw std::invalid_argument("GradedOrbitRing: bad arguments");
    GradedOrbitRing R;
    R.rack_ = rack;
    R.N_ = N;
    const uint64_t k = rack.size;
    R.pow_.push_back(1);
    for (int n = 1; n <= N; ++n) {
        if (R.pow_.back() > budget / k) throw BudgetExceeded("GradedOrbitRing::build", BigInt(R.pow_.back()) * k, BigInt(budget));
        R.pow_.push_back(R.pow_.back() * k);
    }
    for (int n = 0; n <= N; ++n) {
        const uint64_t total = R.pow_[n];
        // union-find in place; the parent array becomes the orbit index array
        std::vector<uint32_t> parent(total);
        std::iota(parent.begin(), parent.end(), 0u);
        auto find = [&](uint32_t x) {
            while (parent[x] != x) {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            return x;
        };
        for (uint64_t x = 0; x < total; ++x)
            for (int i = 0; i + 1 < n; ++i) {
                uint64_t hi = R.pow_[n - 1 - i], lo = R.pow_[n - 2 - i];
                int64_t a = (x / hi) % k, b = (x / lo) % k;
                int64_t a2 = rack.act(static_cast<int>(a), static_cast<int>(b));
                uint64_t y = x + (a2 - a) * static_cast<int64_t>(hi) + (a - b) * static_cast<int64_t>(lo);
                uint32_t rx = find(static_cast<uint32_t>(x)), ry = find(static_cast<uint32_t>(y));
                if (rx != ry) parent[std::max(rx, ry)] = std::min(rx, ry);
            }
        std::vector<uint64_t> reps, sizes;
        std::vector<int32_t> orbit(total);
        for (uint64_t x = 0; x < total; ++x) {
            uint32_t r = find(static_cast<uint32_t>(x));
            if (r == x) {
                orbit[x] = static_cast<int32_t>(reps.size());
                reps.push_back(x);
                sizes.push_back(0);
            } else {
                orbit[x] = orbit[r];  // roots are minimal, so already labelled
            }
            ++sizes[orbit[x]];
        }
        R.orbit_.push_back(std::move(orbit));
        R.reps_.push_back(std::move(reps));
        R.sizes_.push_back(std::move(sizes));
    }
    return R;
}

int GradedOrbitRing::multiply(int n1, int i, int n2, int j) const {
    if (n1 + n2 > N_) throw std::out_of_range("GradedOrbitRing::multiply: degree beyond build");
    return orbit_of(n1 + n2, concat(n1, representative(n1, i), n2, representative(n2, j)));
}

bool GradedOrbitRing::well_defined(int max_total) const {
    max_total = std::min(max_total, N_);
    for (int tot = 1; tot <= max_total; ++tot)
        for (int n1 = 1; n1 < tot; ++n1) {
            int n2 = tot - n1;
            for (uint64_t x = 0; x < pow_[n1]; ++x)
                for (uint64_t y = 0; y < pow_[n2]; ++y) {
                    int expect = multiply(n1, orbit_of(n1, x), n2, orbit_of(n2, y));
                    if (orbit_of(tot, concat(n1, x, n2, y)) != expect) return false;
                }
        }
    return true;
}

bool GradedOrbitRing::associative(int max_each) const {
    for (int a = 1; a <= max_each; ++a)
        for (int b = 1; b <= max_each; ++b)
            for (int c = 1; c <= max_each; ++c) {
                if (a + b + c > N_) continue;
                for (int i = 0; i < basis_size(a); ++i)
                    for (int j = 0; j < basis_size(b); ++j)
                        for (int l = 0; l < basis_size(c); ++l)
                            if (multiply(a + b, multiply(a, i, b, j), c, l) != multiply(a, i, b + c, multiply(b, j, c, l)))
                                return false;
            }
    return true;
}

UOperator u_operator(const GradedOrbitRing& ring, int D, const std::vector<uint64_t>& orders) {
    const Rack& rack = ring.rack();
    if (static_cast<int>(orders.size()) != rack.size) throw std::invalid_argument("u_operator: one order per class element");
    if (D < 1) throw std::invalid_argument("u_operator: D must be positive");
    UOperator U;
    U.D = D;
    U.degree = static_cast<int>(D * orders[0]);
    for (uint64_t o : orders)
        if (static_cast<int>(D * o) != U.degree) throw std::invalid_argument("u_operator: inhomogeneous U (orders differ)");
    if (U.degree > ring.max_degree()) throw std::invalid_argument("u_operator: ring not built to deg U");
    for (int g = 0; g < rack.size; ++g) {
        std::vector<int> digits(U.degree, g);
        ++U.terms[ring.orbit_of(U.degree, ring.encode(digits))];
    }
    for (int n = 0; n + U.degree <= ring.max_degree(); ++n) {
        SparseMatrix m;
        m.rows = ring.basis_size(n + U.degree);
        for (int j = 0; j < ring.basis_size(n); ++j) {
            std::map<int, int64_t> acc;
            for (auto [t, c] : U.terms) acc[ring.multiply(U.degree, t, n, j)] += c;
            SparseVec col;
            for (auto [i, c] : acc)
                if (c) col.emplace_back(i, Rational(c));
            m.cols.push_back(std::move(col));
        }
        U.matrices.push_back(std::move(m));
    }
    return U;
}

bool u_commutes_with_generators(const GradedOrbitRing& ring, const UOperator& U) {
    if (U.degree + 1 > ring.max_degree()) return false;
    for (int g = 0; g < ring.basis_size(1); ++g) {
        std::map<int, int64_t> left, right;
        for (auto [t, c] : U.terms) {
            left[ring.multiply(U.degree, t, 1, g)] += c;
            right[ring.multiply(1, g, U.degree, t)] += c;
        }
        if (left != right) return false;
    }
    return true;
}

StabilizationReport stabilization_scan(const GradedOrbitRing& ring, const UOperator& U, Field f) {
    StabilizationReport rep;
    for (size_t n = 0; n < U.matrices.size(); ++n) {
        StabilizationRow row;
        row.n = static_cast<int>(n);
        row.source = U.matrices[n].cols_count();
        row.target = U.matrices[n].rows;
        row.rank = rank(U.matrices[n], f);
        row.kernel = row.source - row.rank;
        row.cokernel = row.target - row.rank;
        row.bijective = row.kernel == 0 && row.cokernel == 0;
        if (row.bijective && rep.first_bijective < 0) rep.first_bijective = row.n;
        rep.rows.push_back(row);
    }
    if (rep.first_bijective >= 0) {
        rep.bijective_after_first = true;
        for (auto& r : rep.rows)
            if (r.n >= rep.first_bijective && !r.bijective) rep.bijective_after_first = false;
    }
    for (int n = static_cast<int>(rep.rows.size()) - 1; n >= 0 && rep.rows[n].bijective; --n) rep.threshold = n;
    rep.central = u_commutes_with_generators(ring, U);
    return rep;
}

namespace {

// Differential pieces of the K-complex in total degree n.
struct KBuilder {
    const GradedOrbitRing& R;
    Field f;
    int k;

    int dimK(int q, int n) const {
        if (n - q < 0) return 0;
        return static_cast<int>(R.tuple_count(q)) * R.basis_size(n - q);
    }

    // d_q : K_q(n) -> K_{q-1}(n)
    SparseMatrix d(int q, int n) const {
        SparseMatrix m;
        m.rows = dimK(q - 1, n);
        const int rdim = R.basis_size(n - q), rdim_next = R.basis_size(n - q + 1);
        for (uint64_t t = 0; t < R.tuple_count(q); ++t) {
            std::vector<int> v = R.decode(q, t);
            for (int j = 0; j < rdim; ++j) {
                std::map<int, int64_t> acc;
                for (int i = 0; i < q; ++i) {
                    std::vector<int> w(v.begin(), v.begin() + i);
                    for (int s = i + 1; s < q; ++s) w.push_back(R.rack().act(v[i], v[s]));
                    int mo = R.orbit_of(n - q + 1, R.concat(1, v[i], n - q, R.representative(n - q, j)));
                    int row = static_cast<int>(R.encode(w)) * rdim_next + mo;
                    acc[row] += (i % 2 ? -1 : 1);
                }
                SparseVec col;
                for (auto [r, c] : acc)
                    if (c) col.emplace_back(r, Rational(c));
                m.cols.push_back(std::move(col));
            }
        }
        return m;
    }

    // right multiplication by generator g: K_q(n) -> K_q(n+1)
    SparseVec right(int q, int n, int g, const SparseVec& x) const {
        const int rdim = R.basis_size(n - q), rdim_next = R.basis_size(n + 1 - q);
        SparseVec out;
        std::map<int, Rational> acc;
        for (auto& [idx, c] : x) {
            int t = idx / rdim, j = idx % rdim;
            int mo = R.orbit_of(n + 1 - q, R.concat(n - q, R.representative(n - q, j), 1, static_cast<uint64_t>(g)));
            acc[t * rdim_next + mo] += c;
        }
        for (auto& [i, c] : acc)
            if (c != 0) out.emplace_back(i, c);
        return out;
    }
};

}  // namespace

KComplexReport k_complex(const GradedOrbitRing& ring, int max_degree, Field f) {
    if (max_degree > ring.max_degree()) throw std::invalid_argument("k_complex: ring not built far enough");
    KComplexReport rep;
    rep.max_degree = max_degree;
    rep.field = f;
    KBuilder B{ring, f, ring.rack().size};
    std::vector<SparseMatrix> d1(max_degree + 1), d2(max_degree + 1);
    for (int n = 0; n <= max_degree; ++n) {
        rep.dim_k0.push_back(B.dimK(0, n));
        rep.dim_k1.push_back(B.dimK(1, n));
        rep.dim_k2.push_back(B.dimK(2, n));
        if (n >= 1) d1[n] = B.d(1, n);
        if (n >= 2) d2[n] = B.d(2, n);
        int r1 = n >= 1 ? rank(d1[n], f) : 0;
        int r2 = n >= 2 ? rank(d2[n], f) : 0;
        rep.rank_d1.push_back(r1);
        rep.rank_d2.push_back(r2);
        rep.h0.push_back(rep.dim_k0[n] - r1);
        rep.h1.push_back(rep.dim_k1[n] - r1 - r2);
        if (n >= 2 && !is_zero(multiply(d1[n], d2[n], f))) {
            rep.d_squared_zero = false;
            rep.failures.push_back("d1 d2 != 0 in degree " + std::to_string(n));
        }
    }
    rep.h0_concentrated = rep.h0[0] == 1;
    for (int n = 1; n <= max_degree; ++n)
        if (rep.h0[n] != 0) rep.h0_concentrated = false;
    for (int n = 0; n <= max_degree; ++n)
        if (rep.h1[n] != 0) rep.h1_top_degree = n;
    rep.h1_finite_in_window = rep.h1_top_degree < max_degree;

    // right action of degree-one classes on H_0 and H_1
    for (int n = 0; n + 1 <= max_degree; ++n) {
        EchelonBasis im1(rep.dim_k0[n + 1], f), im2(rep.dim_k1[n + 1], f);
        for (auto& c : d1[n + 1].cols) im1.insert(c);
        if (n + 1 >= 2)
            for (auto& c : d2[n + 1].cols) im2.insert(c);
        std::vector<SparseVec> cycles0, cycles1;
        for (int i = 0; i < rep.dim_k0[n]; ++i) cycles0.push_back({{i, Rational(1)}});
        if (n >= 1) cycles1 = kernel_basis(d1[n], f);
        for (int g = 0; g < ring.basis_size(1); ++g) {
            for (auto& z : cycles0)
                if (!im1.contains(B.right(0, n, g, z))) {
                    rep.right_action_zero = false;
                    rep.failures.push_back("right action nonzero on H_0, degree " + std::to_string(n));
                    break;
                }
            for (auto& z : cycles1)
                if (!im2.contains(B.right(1, n, g, z))) {
                    rep.right_action_zero = false;
                    rep.failures.push_back("right action nonzero on H_1, degree " + std::to_string(n) + ", g=" +
                                           std::to_string(g));
                    break;
                }
        }
    }
    return rep;
}

}  // namespace selmer
