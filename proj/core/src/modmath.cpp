#include "selmer/modmath.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace selmer {

Modulus::Modulus(int64_t nu) : nu_(nu) {
    if (nu < 3 || nu % 2 == 0) throw std::invalid_argument("Modulus: nu must be odd and >= 3, got " + std::to_string(nu));
    if (nu > (int64_t{1} << 40)) throw std::invalid_argument("Modulus: nu too large");
    factors_ = factorize(nu);
}

std::vector<int64_t> Modulus::primes() const {
    std::vector<int64_t> out;
    for (auto& f : factors_) out.push_back(f.first);
    return out;
}

int Modulus::exponent_of(int64_t l) const {
    for (auto& f : factors_)
        if (f.first == l) return f.second;
    return 0;
}

Partition::Partition(std::vector<int> p) : parts(std::move(p)) {
    for (int x : parts)
        if (x < 1) throw std::invalid_argument("Partition: parts must be positive");
    std::sort(parts.begin(), parts.end(), std::greater<>());
}

int Partition::size() const {
    int s = 0;
    for (int x : parts) s += x;
    return s;
}

Partition conjugate_partition(const Partition& p) {
    Partition out;
    if (p.empty()) return out;
    for (int i = 1; i <= p.parts.front(); ++i) {
        int c = 0;
        for (int x : p.parts) c += x >= i;
        out.parts.push_back(c);
    }
    return out;
}

std::vector<Partition> partitions_of(int n) {
    std::vector<Partition> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int left, int maxp) {
        if (left == 0) {
            Partition p;
            p.parts = cur;
            out.push_back(p);
            return;
        }
        for (int x = std::min(left, maxp); x >= 1; --x) {
            cur.push_back(x);
            rec(left - x, x);
            cur.pop_back();
        }
    };
    rec(n, n);
    return out;
}

FiniteModule::FiniteModule(std::map<int64_t, Partition> parts) {
    for (auto& [l, p] : parts) {
        if (l < 3 || l % 2 == 0 || factorize(l).size() != 1 || factorize(l)[0].second != 1)
            throw std::invalid_argument("FiniteModule: key " + std::to_string(l) + " is not an odd prime");
        if (!p.empty()) parts_[l] = Partition(p.parts);
    }
}

FiniteModule FiniteModule::cyclic(int64_t order) { return from_orders({order}); }

FiniteModule FiniteModule::from_orders(const std::vector<int64_t>& orders) {
    std::map<int64_t, std::vector<int>> acc;
    for (int64_t m : orders) {
        if (m < 1 || m % 2 == 0) throw std::invalid_argument("FiniteModule: cyclic orders must be odd");
        for (auto [l, e] : factorize(m)) acc[l].push_back(e);
    }
    std::map<int64_t, Partition> parts;
    for (auto& [l, v] : acc) parts[l] = Partition(v);
    return FiniteModule(parts);
}

FiniteModule FiniteModule::elementary(int64_t l, int rank, int exponent) {
    if (rank == 0) return {};
    return FiniteModule({{l, Partition(std::vector<int>(rank, exponent))}});
}

Partition FiniteModule::at(int64_t l) const {
    auto it = parts_.find(l);
    return it == parts_.end() ? Partition{} : it->second;
}

BigInt FiniteModule::order() const {
    BigInt o = 1;
    for (auto& [l, p] : parts_) o *= big_pow(l, p.size());
    return o;
}

bool FiniteModule::fits(const Modulus& nu) const {
    for (auto& [l, p] : parts_) {
        int a = nu.exponent_of(l);
        if (a == 0 || p.parts.front() > a) return false;
    }
    return true;
}

FiniteModule FiniteModule::direct_sum(const FiniteModule& o) const {
    std::map<int64_t, Partition> parts = parts_;
    for (auto& [l, p] : o.parts_) {
        auto& dst = parts[l];
        std::vector<int> v = dst.parts;
        v.insert(v.end(), p.parts.begin(), p.parts.end());
        dst = Partition(v);
    }
    return FiniteModule(parts);
}

FiniteModule FiniteModule::capped(const Modulus& nu) const {
    std::map<int64_t, Partition> parts;
    for (auto& [l, p] : parts_) {
        int a = nu.exponent_of(l);
        if (a == 0) continue;
        std::vector<int> v;
        for (int x : p.parts) v.push_back(std::min(x, a));
        parts[l] = Partition(v);
    }
    return FiniteModule(parts);
}

bool FiniteModule::is_square() const {
    for (auto& [l, p] : parts_) {
        if (p.parts.size() % 2) return false;
        for (size_t i = 0; i < p.parts.size(); i += 2)
            if (p.parts[i] != p.parts[i + 1]) return false;
    }
    return true;
}

std::string FiniteModule::str() const {
    if (parts_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [l, p] : parts_)
        for (int e : p.parts) {
            os << (first ? "" : "+") << "Z/" << ipow(l, e);
            first = false;
        }
    return os.str();
}

std::vector<FiniteModule> modules_up_to(const Modulus& nu, int64_t max_order) {
    // per prime: all partitions with parts <= a, keyed by order
    std::vector<std::vector<std::pair<int64_t, Partition>>> per;
    for (auto [l, a] : nu.factors()) {
        std::vector<std::pair<int64_t, Partition>> opts;
        for (int size = 0;; ++size) {
            int64_t ord = ipow(l, size);
            if (ord > max_order) break;
            for (auto& p : partitions_of(size))
                if (p.empty() || p.parts.front() <= a) opts.emplace_back(ord, p);
        }
        per.push_back(opts);
    }
    std::vector<FiniteModule> out;
    std::map<int64_t, Partition> cur;
    std::function<void(size_t, int64_t)> rec = [&](size_t i, int64_t ord) {
        if (i == per.size()) {
            out.emplace_back(cur);
            return;
        }
        int64_t l = nu.factors()[i].first;
        for (auto& [o, p] : per[i]) {
            if (ord * o > max_order) continue;
            cur[l] = p;
            rec(i + 1, ord * o);
        }
        cur.erase(l);
    };
    rec(0, 1);
    std::sort(out.begin(), out.end());
    return out;
}

MapKind parse_map_kind(const std::string& s) {
    if (s == "hom") return MapKind::Hom;
    if (s == "surj") return MapKind::Surj;
    if (s == "inj") return MapKind::Inj;
    throw std::invalid_argument("unknown map kind '" + s + "' (expected hom|surj|inj)");
}

BigInt count_hom(const FiniteModule& a, const FiniteModule& h) {
    BigInt total = 1;
    for (auto& [l, pa] : a.parts()) {
        Partition ph = h.at(l);
        int e = 0;
        for (int x : pa.parts)
            for (int y : ph.parts) e += std::min(x, y);
        total *= big_pow(l, e);
    }
    return total;
}

BigInt gaussian_binomial(int64_t l, int n, int k) {
    if (k < 0 || k > n) return 0;
    BigInt num = 1, den = 1;
    for (int i = 0; i < k; ++i) {
        num *= big_pow(l, n - i) - 1;
        den *= big_pow(l, i + 1) - 1;
    }
    return num / den;
}

BigInt subspace_count(int64_t l, int d) {
    BigInt s = 0;
    for (int k = 0; k <= d; ++k) s += gaussian_binomial(l, d, k);
    return s;
}

namespace {

// Calls f(basis rows) for every subspace of F_l^d, as reduced echelon bases.
void for_each_subspace(int64_t l, int d, const std::function<void(const std::vector<std::vector<int64_t>>&)>& f) {
    for (int k = 0; k <= d; ++k) {
        std::vector<int> piv(k);
        std::function<void(int, int)> choose = [&](int idx, int start) {
            if (idx == k) {
                // free positions: row r, column c > piv[r], c not a pivot
                std::vector<std::pair<int, int>> freepos;
                for (int r = 0; r < k; ++r)
                    for (int c = piv[r] + 1; c < d; ++c)
                        if (std::find(piv.begin(), piv.end(), c) == piv.end()) freepos.emplace_back(r, c);
                std::vector<std::vector<int64_t>> B(k, std::vector<int64_t>(d, 0));
                for (int r = 0; r < k; ++r) B[r][piv[r]] = 1;
                std::vector<int64_t> digits(freepos.size(), 0);
                while (true) {
                    for (size_t i = 0; i < freepos.size(); ++i) B[freepos[i].first][freepos[i].second] = digits[i];
                    f(B);
                    size_t i = 0;
                    while (i < digits.size() && ++digits[i] == l) digits[i++] = 0;
                    if (i == digits.size()) break;
                }
                return;
            }
            for (int c = start; c < d; ++c) {
                piv[idx] = c;
                choose(idx + 1, c + 1);
            }
        };
        choose(0, 0);
    }
}

int span_rank(const std::vector<std::vector<int64_t>>& rows, int /*d*/, int64_t l) {
    if (rows.empty()) return 0;
    return rank_mod_prime(ModMatrix::from_rows(rows, l), l);
}

BigInt count_surj_prime(const std::vector<int>& a, const std::vector<int>& lam, int64_t l, int64_t budget) {
    const int d = static_cast<int>(lam.size());
    if (d == 0) return 1;
    BigInt nsub = subspace_count(l, d);
    if (nsub > budget) throw BudgetExceeded("count_surj: subspace lattice too large", nsub, budget);
    int maxk = 0;
    for (int x : a) maxk = std::max(maxk, x);
    for (int x : lam) maxk = std::max(maxk, x);
    // U_k = span{e_i : lam_i <= k}, a suffix since lam is decreasing
    std::vector<std::vector<std::vector<int64_t>>> U(maxk + 1);
    std::vector<int> sum_min(maxk + 1, 0);
    for (int k = 1; k <= maxk; ++k) {
        for (int i = 0; i < d; ++i) {
            sum_min[k] += std::min(lam[i], k);
            if (lam[i] <= k) {
                std::vector<int64_t> e(d, 0);
                e[i] = 1;
                U[k].push_back(e);
            }
        }
    }
    BigInt total = 0;
    for_each_subspace(l, d, [&](const std::vector<std::vector<int64_t>>& T) {
        int t = static_cast<int>(T.size());
        int c = d - t;
        // log_l |S[l^k]| for each needed k
        int64_t expo = 0;
        for (int k : a) {
            int kk = std::min(k, maxk);
            int du = static_cast<int>(U[kk].size());
            std::vector<std::vector<int64_t>> both = T;
            both.insert(both.end(), U[kk].begin(), U[kk].end());
            int inter = t + du - span_rank(both, d, l);
            expo += sum_min[kk] - du + inter;
        }
        BigInt term = big_pow(l, expo) * big_pow(l, static_cast<int64_t>(c) * (c - 1) / 2);
        if (c % 2) total -= term;
        else total += term;
    });
    return total;
}

}  // namespace

BigInt count_surj(const FiniteModule& a, const FiniteModule& h, int64_t budget) {
    BigInt total = 1;
    for (auto& [l, ph] : h.parts()) {
        total *= count_surj_prime(a.at(l).parts, ph.parts, l, budget);
        if (total == 0) return 0;
    }
    return total;
}

BigInt count_inj(const FiniteModule& a, const FiniteModule& h, int64_t budget) {
    // dual statement: injections A -> H correspond to surjections H -> A
    return count_surj(h, a, budget);
}

BigInt count_maps(const FiniteModule& a, const FiniteModule& h, MapKind kind) {
    switch (kind) {
        case MapKind::Hom: return count_hom(a, h);
        case MapKind::Surj: return count_surj(a, h);
        case MapKind::Inj: return count_inj(a, h);
    }
    return 0;
}

BigInt sym2_order(const FiniteModule& h) {
    BigInt total = 1;
    for (auto& [l, p] : h.parts()) {
        int64_t e = 0;
        for (int c : conjugate_partition(p).parts) e += (static_cast<int64_t>(c) * c + c) / 2;
        total *= big_pow(l, e);
    }
    return total;
}

FiniteModule kernel_module(const ModMatrix& m) {
    Modulus nu(m.mod());
    std::map<int64_t, Partition> parts;
    const int T = std::min(m.rows(), m.cols());
    for (auto [l, a] : nu.factors()) {
        auto vals = smith_valuations(m.reduced(ipow(l, a)), l, a);
        std::vector<int> exps;
        for (int v : vals)
            if (v > 0) exps.push_back(std::min(v, a));
        for (int j = T; j < m.cols(); ++j) exps.push_back(a);
        if (!exps.empty()) parts[l] = Partition(exps);
    }
    return FiniteModule(parts);
}

}  // namespace selmer
