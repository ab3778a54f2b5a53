#include "selmer/verify/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

namespace selmer::oracle {

AbelianGroup AbelianGroup::of(const FiniteModule& m) {
    AbelianGroup g;
    for (auto& [l, p] : m.parts())
        for (int e : p.parts) g.orders.push_back(ipow(l, e));
    return g;
}

uint64_t AbelianGroup::size() const {
    uint64_t s = 1;
    for (int64_t o : orders) s *= o;
    return s;
}

std::vector<std::vector<int64_t>> AbelianGroup::elements() const {
    std::vector<std::vector<int64_t>> out;
    std::vector<int64_t> x(orders.size(), 0);
    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == orders.size()) {
            out.push_back(x);
            return;
        }
        for (int64_t v = 0; v < orders[i]; ++v) {
            x[i] = v;
            rec(i + 1);
        }
    };
    rec(0);
    return out;
}

namespace {

int64_t element_order(const std::vector<int64_t>& x, const std::vector<int64_t>& orders) {
    int64_t o = 1;
    for (size_t i = 0; i < x.size(); ++i) o = std::lcm(o, orders[i] / std::gcd(orders[i], x[i]));
    return o;
}

}  // namespace

BigInt count_maps_brute(const FiniteModule& a, const FiniteModule& h, MapKind kind) {
    AbelianGroup A = AbelianGroup::of(a), H = AbelianGroup::of(h);
    auto helems = H.elements();
    auto aelems = A.elements();
    // admissible images per generator
    std::vector<std::vector<const std::vector<int64_t>*>> imgs(A.orders.size());
    for (size_t i = 0; i < A.orders.size(); ++i)
        for (auto& y : helems)
            if (A.orders[i] % element_order(y, H.orders) == 0) imgs[i].push_back(&y);
    std::vector<const std::vector<int64_t>*> choice(A.orders.size());
    BigInt count = 0;
    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == A.orders.size()) {
            if (kind == MapKind::Hom) {
                ++count;
                return;
            }
            std::set<std::vector<int64_t>> image;
            uint64_t zeros = 0;
            for (auto& x : aelems) {
                std::vector<int64_t> y(H.orders.size(), 0);
                for (size_t g = 0; g < x.size(); ++g)
                    for (size_t c = 0; c < y.size(); ++c) y[c] = (y[c] + x[g] * (*choice[g])[c]) % H.orders[c];
                bool z = std::all_of(y.begin(), y.end(), [](int64_t v) { return v == 0; });
                zeros += z;
                image.insert(std::move(y));
            }
            if (kind == MapKind::Inj && zeros == 1) ++count;
            if (kind == MapKind::Surj && image.size() == H.size()) ++count;
            return;
        }
        for (auto* y : imgs[i]) {
            choice[i] = y;
            rec(i + 1);
        }
    };
    rec(0);
    return count;
}

BigInt sym2_order_presentation(const FiniteModule& h) {
    BigInt total = 1;
    for (auto& [l, p] : h.parts()) {
        const auto& e = p.parts;
        const int k = static_cast<int>(e.size());
        const int K = e.front() + 2;
        const int64_t q = ipow(l, K);
        const int gens = k * k;
        std::vector<std::vector<int64_t>> rel;  // each relation is a column
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) {
                std::vector<int64_t> c(gens, 0);
                c[i * k + j] = ipow(l, std::min(e[i], e[j]));
                rel.push_back(c);
                if (i < j) {
                    std::vector<int64_t> s(gens, 0);
                    s[i * k + j] = 1;
                    s[j * k + i] = -1;
                    rel.push_back(s);
                }
            }
        ModMatrix m(gens, static_cast<int>(rel.size()), q);
        for (size_t c = 0; c < rel.size(); ++c)
            for (int r = 0; r < gens; ++r) m.set(r, static_cast<int>(c), rel[c][r]);
        auto vals = smith_valuations(m, l, K);
        int missing = gens - static_cast<int>(vals.size());
        if (missing > 0) throw std::logic_error("sym2_order_presentation: infinite quotient");
        for (int v : vals) {
            if (v >= K) throw std::logic_error("sym2_order_presentation: precision too low");
            total *= big_pow(l, v);
        }
    }
    return total;
}

uint64_t orthogonal_count_naive(const QuadSpace& space) {
    const ModMatrix& G = space.gram();
    const int n = G.rows();
    const int64_t q = G.mod();
    const uint64_t entries = static_cast<uint64_t>(n) * n;
    double est = std::pow(static_cast<double>(q), static_cast<double>(entries));
    if (est > 5e7) throw BudgetExceeded("orthogonal_count_naive", BigInt(static_cast<uint64_t>(est)), BigInt(50'000'000));
    uint64_t total = 1;
    for (uint64_t i = 0; i < entries; ++i) total *= q;
    uint64_t hits = 0;
    ModMatrix g(n, n, q);
    for (uint64_t code = 0; code < total; ++code) {
        uint64_t c = code;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                g.set(i, j, static_cast<int64_t>(c % q));
                c /= q;
            }
        if (g.transpose() * G * g == G) ++hits;
    }
    return hits;
}

Rational isotropic_pair_moment(int64_t l, int j, int n, const FiniteModule& h) {
    SplitSpace sp = SplitSpace::make(n, l, j);
    const int64_t q = sp.q;
    auto all = enumerate_isotropics(sp);
    // explicit spans
    auto span = [&](const ModMatrix& rows) {
        std::set<std::vector<int64_t>> out;
        std::vector<int64_t> coef(rows.rows(), 0);
        std::function<void(int)> rec = [&](int i) {
            if (i == rows.rows()) {
                std::vector<int64_t> v(rows.cols(), 0);
                for (int r = 0; r < rows.rows(); ++r)
                    for (int c = 0; c < rows.cols(); ++c) v[c] = (v[c] + coef[r] * rows(r, c)) % q;
                out.insert(std::move(v));
                return;
            }
            for (int64_t x = 0; x < q; ++x) {
                coef[i] = x;
                rec(i + 1);
            }
        };
        rec(0);
        return out;
    };
    std::vector<std::set<std::vector<int64_t>>> spans;
    if (j == 1) {
        // every totally isotropic span of n vectors, found by listing all n-tuples
        std::set<std::set<std::vector<int64_t>>> found;
        std::vector<std::vector<int64_t>> vecs;
        {
            ModMatrix id = ModMatrix::identity(2 * n, q);
            for (auto& v : span(id)) vecs.push_back(v);
        }
        std::vector<size_t> pick(n, 0);
        std::function<void(int)> rec = [&](int i) {
            if (i == n) {
                ModMatrix rows(n, 2 * n, q);
                for (int r = 0; r < n; ++r)
                    for (int c = 0; c < 2 * n; ++c) rows.set(r, c, vecs[pick[r]][c]);
                auto S = span(rows);
                if (static_cast<int64_t>(S.size()) != ipow(q, n)) return;
                for (auto& v : S) {
                    int64_t Q = 0;
                    for (int c = 0; c < n; ++c) Q += v[c] * v[n + c];
                    if (Q % q) return;
                }
                found.insert(std::move(S));
                return;
            }
            for (size_t k = 0; k < vecs.size(); ++k) {
                pick[i] = k;
                rec(i + 1);
            }
        };
        rec(0);
        if (found.size() != all.size()) throw std::logic_error("isotropic_pair_moment: enumeration count mismatch");
        spans.assign(found.begin(), found.end());
    } else {
        for (auto& z : all) spans.push_back(span(z.rows));
    }
    AbelianGroup H = AbelianGroup::of(h);
    auto helems = H.elements();
    auto vec_order = [&](const std::vector<int64_t>& v) {
        int64_t o = 1;
        for (int64_t x : v) o = std::lcm(o, q / std::gcd(q, x));
        return o;
    };
    BigInt total = 0;
    for (size_t a = 0; a < spans.size(); ++a)
        for (size_t b = 0; b < spans.size(); ++b) {
            std::vector<std::vector<int64_t>> S;
            for (auto& v : spans[a])
                if (spans[b].count(v)) S.push_back(v);
            std::vector<const std::vector<int64_t>*> choice(H.orders.size());
            std::function<void(size_t)> rec = [&](size_t i) {
                if (i == H.orders.size()) {
                    size_t zeros = 0;
                    for (auto& x : helems) {
                        bool z = true;
                        for (int c = 0; c < 2 * n && z; ++c) {
                            int64_t acc = 0;
                            for (size_t g = 0; g < x.size(); ++g) acc += x[g] * (*choice[g])[c];
                            z = acc % q == 0;
                        }
                        zeros += z;
                    }
                    total += zeros == 1;
                    return;
                }
                for (auto& y : S)
                    if (H.orders[i] % vec_order(y) == 0) {
                        choice[i] = &y;
                        rec(i + 1);
                    }
            };
            rec(0);
        }
    return Rational(total, BigInt(all.size()) * all.size());
}

}  // namespace selmer::oracle
