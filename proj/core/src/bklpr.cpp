#include "selmer/bklpr.hpp"

#include <functional>

namespace selmer {

SplitSpace SplitSpace::make(int n, int64_t l, int j) {
    if (n < 1 || j < 1) throw std::invalid_argument("SplitSpace: n and j must be positive");
    int64_t q = ipow(l, j);
    return SplitSpace{n, l, j, q, QuadSpace::split(n, q)};
}

Isotropic canonical_isotropic(const ModMatrix& rows_in, int64_t l) {
    const int n = rows_in.rows(), c2 = rows_in.cols();
    const int64_t q = rows_in.mod();
    auto A = rows_in.to_rows();
    int r = 0;
    for (int c = 0; c < c2 && r < n; ++c) {
        int piv = -1;
        for (int i = r; i < n; ++i)
            if (A[i][c] % l) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(A[r], A[piv]);
        int64_t inv = inv_mod(A[r][c], q);
        for (auto& x : A[r]) x = mul_mod(x, inv, q);
        for (int i = 0; i < n; ++i) {
            if (i == r || A[i][c] == 0) continue;
            int64_t f = A[i][c];
            for (int k = 0; k < c2; ++k) A[i][k] = mod_reduce(A[i][k] - mul_mod(f, A[r][k], q), q);
        }
        ++r;
    }
    if (r < n) throw std::invalid_argument("canonical_isotropic: rows do not span a direct summand of rank n");
    return {ModMatrix::from_rows(A, q)};
}

namespace {

// 2B for the split form and Q, on raw vectors
int64_t split_pair(const int64_t* x, const int64_t* y, int n, int64_t q) {
    int64_t acc = 0;
    for (int i = 0; i < n; ++i) acc += x[i] * y[n + i] + x[n + i] * y[i];
    return acc % q;
}

int64_t split_q(const int64_t* x, int n, int64_t q) {
    int64_t acc = 0;
    for (int i = 0; i < n; ++i) acc += x[i] * x[n + i];
    return acc % q;
}

}  // namespace

bool is_isotropic(const SplitSpace& sp, const ModMatrix& rows) {
    const int n = sp.n;
    if (rows.rows() != n || rows.cols() != 2 * n) return false;
    auto R = rows.reduced(sp.q).to_rows();
    for (int i = 0; i < n; ++i) {
        if (split_q(R[i].data(), n, sp.q)) return false;
        for (int k = 0; k < i; ++k)
            if (split_pair(R[i].data(), R[k].data(), n, sp.q)) return false;
    }
    return rank_mod_prime(rows.reduced(sp.l), sp.l) == n;
}

Isotropic standard_isotropic(const SplitSpace& sp) {
    ModMatrix m(sp.n, 2 * sp.n, sp.q);
    for (int i = 0; i < sp.n; ++i) m.set(i, i, 1);
    return {m};
}

BigInt isotropic_count(int n, int64_t l, int j) {
    BigInt c = 2;
    for (int i = 1; i < n; ++i) c *= big_pow(l, i) + 1;
    return c * big_pow(l, static_cast<int64_t>(j - 1) * n * (n - 1) / 2);
}

std::vector<Isotropic> enumerate_isotropics(const SplitSpace& sp, const BigInt& budget) {
    BigInt est = isotropic_count(sp.n, sp.l, sp.j);
    if (est > budget) throw BudgetExceeded("enumerate_isotropics", est, budget);
    const int n = sp.n, d = 2 * n;
    const int64_t q = sp.q, l = sp.l;
    std::vector<Isotropic> out;
    std::vector<int> piv(n);
    std::vector<std::vector<int64_t>> rows(n, std::vector<int64_t>(d, 0));

    std::function<void(int)> fill_row;
    fill_row = [&](int i) {
        if (i == n) {
            out.push_back({ModMatrix::from_rows(rows, q)});
            return;
        }
        std::vector<int> freecols;
        for (int c = 0; c < d; ++c)
            if (std::find(piv.begin(), piv.end(), c) == piv.end()) freecols.push_back(c);
        std::vector<int64_t>& row = rows[i];
        std::fill(row.begin(), row.end(), 0);
        row[piv[i]] = 1;
        // entries left of the pivot are multiples of l
        std::vector<int64_t> radix(freecols.size());
        for (size_t t = 0; t < freecols.size(); ++t) radix[t] = freecols[t] < piv[i] ? q / l : q;
        std::vector<int64_t> digit(freecols.size(), 0);
        while (true) {
            for (size_t t = 0; t < freecols.size(); ++t)
                row[freecols[t]] = freecols[t] < piv[i] ? digit[t] * l : digit[t];
            bool ok = split_q(row.data(), n, q) == 0;
            for (int k = 0; k < i && ok; ++k) ok = split_pair(row.data(), rows[k].data(), n, q) == 0;
            if (ok) fill_row(i + 1);
            size_t t = 0;
            while (t < digit.size() && ++digit[t] == radix[t]) digit[t++] = 0;
            if (t == digit.size()) break;
        }
    };
    std::function<void(int, int)> choose = [&](int idx, int start) {
        if (idx == n) {
            fill_row(0);
            return;
        }
        for (int c = start; c < d; ++c) {
            piv[idx] = c;
            choose(idx + 1, c + 1);
        }
    };
    choose(0, 0);
    std::sort(out.begin(), out.end());
    if (BigInt(out.size()) != est)
        throw InvariantViolation("enumerate_isotropics: found " + std::to_string(out.size()) + ", expected " + est.str());
    return out;
}

IsotropicSampler::IsotropicSampler(const SplitSpace& sp, uint64_t seed) : sp_(&sp), rng_(seed) {}

ModMatrix IsotropicSampler::sample_frame() {
    const int n = sp_->n, d = 2 * n;
    const int64_t q = sp_->q, l = sp_->l;
    std::uniform_int_distribution<int64_t> unif(0, q - 1);
    std::vector<std::vector<int64_t>> W(d, std::vector<int64_t>(d, 0));
    for (int i = 0; i < d; ++i) W[i][i] = 1;
    std::vector<std::vector<int64_t>> frame;
    std::vector<std::vector<int64_t>> ech;  // mod-l echelon rows of the frame
    std::vector<int> ech_piv;
    std::vector<int64_t> x(d), red(d);
    for (int k = 0; k < n; ++k) {
        while (true) {
            std::fill(x.begin(), x.end(), 0);
            for (auto& w : W) {
                int64_t c = unif(rng_);
                if (!c) continue;
                for (int t = 0; t < d; ++t) x[t] += c * w[t];
            }
            for (auto& v : x) v %= q;
            if (split_q(x.data(), n, q) != 0) {
                ++rejections_;
                continue;
            }
            // independence mod l
            for (int t = 0; t < d; ++t) red[t] = x[t] % l;
            for (size_t e = 0; e < ech.size(); ++e) {
                int64_t f = red[ech_piv[e]];
                if (!f) continue;
                for (int t = 0; t < d; ++t) red[t] = mod_reduce(red[t] - f * ech[e][t], l);
            }
            int p = -1;
            for (int t = 0; t < d && p < 0; ++t)
                if (red[t]) p = t;
            if (p < 0) {
                ++rejections_;
                continue;
            }
            int64_t inv = inv_mod(red[p], l);
            for (auto& v : red) v = v * inv % l;
            for (size_t e = 0; e < ech.size(); ++e) {
                int64_t f = ech[e][p];
                if (!f) continue;
                for (int t = 0; t < d; ++t) ech[e][t] = mod_reduce(ech[e][t] - f * red[t], l);
            }
            ech.push_back(red);
            ech_piv.push_back(p);
            break;
        }
        frame.push_back(x);
        if (k + 1 == n) break;
        // restrict W to the orthogonal complement of x through a unit pairing
        size_t pu = 0;
        while (split_pair(W[pu].data(), x.data(), n, q) % l == 0) ++pu;
        int64_t inv = inv_mod(split_pair(W[pu].data(), x.data(), n, q), q);
        std::vector<std::vector<int64_t>> next;
        next.reserve(W.size() - 1);
        for (size_t i = 0; i < W.size(); ++i) {
            if (i == pu) continue;
            int64_t c = split_pair(W[i].data(), x.data(), n, q) * inv % q;
            std::vector<int64_t> v(d);
            for (int t = 0; t < d; ++t) v[t] = mod_reduce(W[i][t] - c * W[pu][t], q);
            next.push_back(std::move(v));
        }
        W = std::move(next);
    }
    return ModMatrix::from_rows(frame, q);
}

Isotropic IsotropicSampler::sample() { return canonical_isotropic(sample_frame(), sp_->l); }

Isotropic random_isotropic(const SplitSpace& sp, uint64_t seed) {
    IsotropicSampler s(sp, seed);
    return s.sample();
}

FiniteModule intersection_module_frames(const ModMatrix& z, const ModMatrix& w) {
    if (z.cols() != w.cols() || z.mod() != w.mod()) throw std::invalid_argument("intersection_module: ambient mismatch");
    return kernel_module(hstack(z.transpose(), -w.transpose()));
}

FiniteModule intersection_module(const Isotropic& z, const Isotropic& w) {
    return intersection_module_frames(z.rows, w.rows);
}

BklprVariant parse_bklpr_variant(const std::string& s) {
    if (s == "full") return BklprVariant::Full;
    if (s == "parity0" || s == "0") return BklprVariant::Parity0;
    if (s == "parity1" || s == "1") return BklprVariant::Parity1;
    throw std::invalid_argument("unknown variant '" + s + "' (expected full|parity0|parity1)");
}

std::string to_string(BklprVariant v) {
    switch (v) {
        case BklprVariant::Full: return "full";
        case BklprVariant::Parity0: return "parity0";
        case BklprVariant::Parity1: return "parity1";
    }
    return "?";
}

namespace {

using Law = std::map<FiniteModule, Rational>;

Law convolve(const Law& a, const Law& b) {
    Law out;
    for (auto& [ma, pa] : a)
        for (auto& [mb, pb] : b) out[ma.direct_sum(mb)] += pa * pb;
    return out;
}

}  // namespace

BklprRef bklpr_distribution(const Modulus& nu, int n, BklprVariant variant, const SamplingMode& mode) {
    std::vector<SplitSpace> spaces;
    for (auto [l, a] : nu.factors()) spaces.push_back(SplitSpace::make(n, l, a));

    if (mode.exhaustive) {
        std::vector<std::array<Law, 2>> per;
        Law all_pairs;
        for (auto& sp : spaces) {
            auto iso = enumerate_isotropics(sp, mode.budget);
            std::array<std::map<FiniteModule, BigInt>, 2> counts;
            BigInt pairs = BigInt(iso.size()) * iso.size();
            if (pairs > mode.budget * 16) throw BudgetExceeded("bklpr_distribution: pairs", pairs, mode.budget * 16);
            for (auto& z : iso)
                for (auto& w : iso) {
                    FiniteModule m = intersection_module(z, w);
                    counts[m.rank_at(sp.l) % 2][m] += 1;
                }
            std::array<Law, 2> laws;
            for (int b = 0; b < 2; ++b) laws[b] = ModuleDistribution::from_counts(counts[b]).weights();
            if (spaces.size() == 1) {
                std::map<FiniteModule, BigInt> all = counts[0];
                for (auto& [m, c] : counts[1]) all[m] += c;
                all_pairs = ModuleDistribution::from_counts(all).weights();
            }
            per.push_back(laws);
        }
        auto combined = [&](int b) {
            Law acc{{FiniteModule::trivial(), Rational(1)}};
            for (auto& p : per) acc = convolve(acc, p[b]);
            return acc;
        };
        Law out;
        if (variant == BklprVariant::Parity0) out = combined(0);
        else if (variant == BklprVariant::Parity1) out = combined(1);
        else if (spaces.size() == 1) out = all_pairs;
        else {
            for (int b = 0; b < 2; ++b)
                for (auto& [m, p] : combined(b)) out[m] += p / 2;
        }
        return {nu, variant, n, ModuleDistribution::exact(out)};
    }

    ModuleDistribution d(ModuleDistribution::Mode::Empirical);
    d.set_seed(mode.seed);
    std::mt19937_64 coin(mode.seed);
    std::vector<IsotropicSampler> samplers;
    for (size_t i = 0; i < spaces.size(); ++i)
        samplers.emplace_back(spaces[i], mode.seed + 0x9e3779b97f4a7c15ULL * (i + 1));
    uint64_t parity_rejects = 0;
    for (uint64_t s = 0; s < mode.samples; ++s) {
        int b = variant == BklprVariant::Parity0 ? 0 : variant == BklprVariant::Parity1 ? 1 : static_cast<int>(coin() & 1);
        FiniteModule total;
        for (size_t i = 0; i < spaces.size(); ++i) {
            ModMatrix z = samplers[i].sample_frame();
            while (true) {
                FiniteModule m = intersection_module_frames(z, samplers[i].sample_frame());
                if (m.rank_at(spaces[i].l) % 2 == b) {
                    total = total.direct_sum(m);
                    break;
                }
                ++parity_rejects;
            }
        }
        d.add_sample(total);
    }
    uint64_t rej = parity_rejects;
    for (auto& s : samplers) rej += s.rejections();
    d.add_rejections(rej);
    return {nu, variant, n, d};
}

std::map<int, Rational> ogr_dimension_law(int64_t l, int n) {
    BigInt den = 1;
    for (int i = 0; i < n; ++i) den *= big_pow(l, i) + 1;
    std::map<int, Rational> out;
    for (int k = 0; k <= n; ++k) {
        int64_t e = static_cast<int64_t>(n - k) * (n - k - 1) / 2;
        out[k] = Rational(gaussian_binomial(l, n, k) * big_pow(l, e), den);
    }
    return out;
}

ModuleDistribution ogr_elementary_distribution(int64_t l, int n, BklprVariant variant) {
    std::map<FiniteModule, Rational> w;
    for (auto& [k, p] : ogr_dimension_law(l, n)) {
        int par = k % 2;
        if (variant == BklprVariant::Full) w[FiniteModule::elementary(l, k)] = p;
        else if ((variant == BklprVariant::Parity1) == (par == 1)) w[FiniteModule::elementary(l, k)] = 2 * p;
    }
    return ModuleDistribution::exact(w);
}

Rational finite_n_moment(int64_t l, int j, int n, const FiniteModule& h) {
    for (auto& [p, part] : h.parts())
        if (p != l) throw std::invalid_argument("finite_n_moment: H must be an l-module");
    Partition lam = h.at(l);
    if (!lam.empty() && lam.parts.front() > j) throw std::invalid_argument("finite_n_moment: exponent of H exceeds j");
    const int m = lam.length();
    if (m > n) return 0;
    Rational v(sym2_order(h));
    for (int i = 0; i < m; ++i) v *= 1 - rat_pow(l, i - n);
    // chance that a fixed isotropic m-frame lies in W
    for (int i = n - m; i <= n - 1; ++i) v /= 1 + rat_pow(l, -i);
    return v;
}

AlternatingSample alternating_cokernel_sample(int m, int64_t l, int K, int j, std::mt19937_64& rng) {
    if (m < 1 || K <= j) throw std::invalid_argument("alternating_cokernel_sample: need m >= 1 and K > j");
    const int64_t q = ipow(l, K);
    const int r = m % 2;
    std::uniform_int_distribution<int64_t> unif(0, q - 1);
    AlternatingSample out;
    while (true) {
        ModMatrix a(m, m, q);
        for (int i = 0; i < m; ++i)
            for (int k = i + 1; k < m; ++k) {
                int64_t x = unif(rng);
                a.set(i, k, x);
                a.set(k, i, -x);
            }
        auto vals = smith_valuations(a, l, K);
        int ceiling = 0;
        for (int v : vals) ceiling += v >= K;
        if (ceiling > r) {
            ++out.rejections;
            continue;
        }
        std::vector<int> exps;
        for (int v : vals)
            if (v > 0 && v < K) exps.push_back(std::min(v, j));
        out.module = exps.empty() ? FiniteModule() : FiniteModule({{l, Partition(exps)}});
        if (!out.module.is_square())
            throw InvariantViolation("alternating cokernel torsion is not a square: " + out.module.str());
        return out;
    }
}

ModuleDistribution alternating_distribution(int m, int64_t l, int j, uint64_t samples, uint64_t seed, int margin) {
    std::mt19937_64 rng(seed);
    ModuleDistribution d(ModuleDistribution::Mode::Empirical);
    d.set_seed(seed);
    for (uint64_t i = 0; i < samples; ++i) {
        auto s = alternating_cokernel_sample(m, l, j + margin, j, rng);
        d.add_sample(s.module);
        d.add_rejections(s.rejections);
    }
    return d;
}

}  // namespace selmer
