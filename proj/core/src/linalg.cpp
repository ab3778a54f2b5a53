#include "selmer/linalg.hpp"

#include <algorithm>
#include <stdexcept>
#include <set>

namespace selmer {

namespace {

Rational reduce_coeff(const Rational& x, Field f) {
    if (f.exact()) return x;
    BigInt num = boost::multiprecision::numerator(x), den = boost::multiprecision::denominator(x);
    int64_t n = mod_reduce(static_cast<int64_t>(num % f.p), f.p);
    int64_t d = mod_reduce(static_cast<int64_t>(den % f.p), f.p);
    return Rational(mul_mod(n, inv_mod(d, f.p), f.p));
}

Rational invert(const Rational& x, Field f) {
    if (f.exact()) return 1 / x;
    return Rational(inv_mod(static_cast<int64_t>(boost::multiprecision::numerator(x)), f.p));
}

void canonicalize(SparseVec& v, Field f) {
    std::sort(v.begin(), v.end(), [](auto& a, auto& b) { return a.first < b.first; });
    SparseVec out;
    for (auto& [i, x] : v) {
        if (!out.empty() && out.back().first == i)
            out.back().second += x;
        else
            out.emplace_back(i, x);
    }
    v.clear();
    for (auto& [i, x] : out) {
        Rational y = reduce_coeff(x, f);
        if (y != 0) v.emplace_back(i, y);
    }
}

}  // namespace

SparseVec sparse_add(const SparseVec& a, const SparseVec& b, const Rational& scale, Field f) {
    SparseVec out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            Rational y = reduce_coeff(scale * b[j].second, f);
            if (y != 0) out.emplace_back(b[j].first, y);
            ++j;
        } else {
            Rational y = reduce_coeff(a[i].second + scale * b[j].second, f);
            if (y != 0) out.emplace_back(a[i].first, y);
            ++i;
            ++j;
        }
    }
    return out;
}

EchelonBasis::EchelonBasis(int dim, Field f) : dim_(dim), field_(f) {
    if (!f.exact() && f.p < 2) throw std::invalid_argument("EchelonBasis: bad field characteristic");
}

SparseVec EchelonBasis::reduce(SparseVec v) const {
    canonicalize(v, field_);
    SparseVec done;
    // eliminate leading entries one at a time; entries left of the scan are final
    while (!v.empty()) {
        auto it = rows_.find(v.front().first);
        if (it == rows_.end()) {
            done.push_back(v.front());
            v.erase(v.begin());
            continue;
        }
        Rational c = v.front().second;
        v = sparse_add(v, it->second, -c, field_);
    }
    return done;
}

SparseVec EchelonBasis::normalize(SparseVec v) const {
    Rational inv = invert(v.front().second, field_);
    for (auto& e : v) e.second = reduce_coeff(e.second * inv, field_);
    return v;
}

bool EchelonBasis::insert(SparseVec v) {
    for (auto& e : v)
        if (e.first < 0 || e.first >= dim_) throw std::out_of_range("EchelonBasis: index out of range");
    SparseVec r = reduce(std::move(v));
    if (r.empty()) return false;
    r = normalize(std::move(r));
    int lead = r.front().first;
    rows_.emplace(lead, std::move(r));
    return true;
}

bool EchelonBasis::contains(SparseVec v) const { return reduce(std::move(v)).empty(); }

int rank(const SparseMatrix& m, Field f) {
    EchelonBasis b(m.rows, f);
    // identical columns add nothing; skip them cheaply
    std::set<SparseVec> seen;
    for (auto& c : m.cols) {
        if (c.empty() || !seen.insert(c).second) continue;
        b.insert(c);
        if (b.rank() == m.rows) break;
    }
    return b.rank();
}

std::vector<SparseVec> kernel_basis(const SparseMatrix& m, Field f) {
    // Gauss-Jordan on the columns, tracking combinations: augmented vectors live in
    // k^{rows + cols}, image part first.
    const int R = m.rows, C = m.cols_count();
    std::map<int, SparseVec> pivots;
    std::vector<SparseVec> kernel;
    for (int j = 0; j < C; ++j) {
        SparseVec v = m.cols[j];
        canonicalize(v, f);
        v.emplace_back(R + j, Rational(1));
        while (!v.empty() && v.front().first < R) {
            auto it = pivots.find(v.front().first);
            if (it == pivots.end()) break;
            Rational c = v.front().second;
            v = sparse_add(v, it->second, -c, f);
        }
        if (!v.empty() && v.front().first < R) {
            Rational inv = invert(v.front().second, f);
            for (auto& e : v) e.second = reduce_coeff(e.second * inv, f);
            int lead = v.front().first;
            pivots.emplace(lead, std::move(v));
        } else {
            SparseVec k;
            for (auto& [i, x] : v) k.emplace_back(i - R, x);
            kernel.push_back(std::move(k));
        }
    }
    return kernel;
}

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b, Field f) {
    if (a.cols_count() != b.rows) throw std::invalid_argument("multiply: shape mismatch");
    SparseMatrix out;
    out.rows = a.rows;
    for (auto& col : b.cols) {
        SparseVec acc;
        for (auto& [k, x] : col) acc = sparse_add(acc, a.cols[k], x, f);
        out.cols.push_back(std::move(acc));
    }
    return out;
}

bool is_zero(const SparseMatrix& m) {
    return std::all_of(m.cols.begin(), m.cols.end(), [](auto& c) { return c.empty(); });
}

}  // namespace selmer
