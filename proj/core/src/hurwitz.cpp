#include "selmer/hurwitz.hpp"

#include <functional>
#include <map>
#include <numeric>
#include <unordered_map>

namespace selmer {

std::vector<int64_t> AspElement::key() const {
    std::vector<int64_t> k = M.data();
    for (auto& x : v) k.insert(k.end(), x.begin(), x.end());
    return k;
}

AffSymp::AffSymp(Modulus nu, int r, std::vector<int64_t> vector_moduli)
    : nu_(std::move(nu)), r_(r), moduli_(std::move(vector_moduli)) {
    if (r < 1) throw std::invalid_argument("AffSymp: r must be >= 1");
    if (moduli_.empty()) moduli_.push_back(nu_.nu());
    for (int64_t m : moduli_)
        if (m < 1 || nu_.nu() % m) throw std::invalid_argument("AffSymp: vector modulus must divide nu");
}

ModMatrix AffSymp::J() const {
    ModMatrix j(dim(), dim(), nu());
    for (int i = 0; i < r_; ++i) {
        j.set(i, r_ + i, 1);
        j.set(r_ + i, i, -1);
    }
    return j;
}

bool AffSymp::is_symplectic(const ModMatrix& m) const {
    if (m.rows() != dim() || m.cols() != dim()) return false;
    ModMatrix mm = m.mod() == nu() ? m : ModMatrix::from_rows(m.to_rows(), nu());
    return mm.transpose() * J() * mm == J();
}

AspElement AffSymp::make(const ModMatrix& M, std::vector<std::vector<int64_t>> v) const {
    ModMatrix mm = M.mod() == nu() ? M : ModMatrix::from_rows(M.to_rows(), nu());
    if (!is_symplectic(mm)) throw std::invalid_argument("AffSymp: matrix part is not symplectic: " + M.str());
    if (v.size() != moduli_.size()) throw std::invalid_argument("AffSymp: wrong number of vector parts");
    for (size_t i = 0; i < v.size(); ++i) {
        if (static_cast<int>(v[i].size()) != dim()) throw std::invalid_argument("AffSymp: vector length mismatch");
        for (auto& x : v[i]) x = mod_reduce(x, moduli_[i]);
    }
    return {mm, std::move(v)};
}

AspElement AffSymp::make(const ModMatrix& M) const {
    return make(M, std::vector<std::vector<int64_t>>(moduli_.size(), std::vector<int64_t>(dim(), 0)));
}

AspElement AffSymp::identity() const { return make(ModMatrix::identity(dim(), nu())); }

AspElement AffSymp::multiply(const AspElement& a, const AspElement& b) const {
    AspElement out;
    out.M = a.M * b.M;
    out.v.resize(moduli_.size());
    for (size_t i = 0; i < moduli_.size(); ++i) {
        int64_t m = moduli_[i];
        auto& w = out.v[i];
        w.assign(dim(), 0);
        for (int r = 0; r < dim(); ++r) {
            int64_t acc = a.v[i][r];
            for (int c = 0; c < dim(); ++c) acc += (a.M(r, c) % m) * b.v[i][c];
            w[r] = mod_reduce(acc, m);
        }
    }
    return out;
}

AspElement AffSymp::inverse(const AspElement& a) const {
    AspElement out;
    out.M = selmer::inverse(a.M);
    out.v.resize(moduli_.size());
    for (size_t i = 0; i < moduli_.size(); ++i) {
        int64_t m = moduli_[i];
        out.v[i].assign(dim(), 0);
        for (int r = 0; r < dim(); ++r) {
            int64_t acc = 0;
            for (int c = 0; c < dim(); ++c) acc += (out.M(r, c) % m) * a.v[i][c];
            out.v[i][r] = mod_reduce(-acc, m);
        }
    }
    return out;
}

AspElement AffSymp::conjugate(const AspElement& g, const AspElement& x) const {
    return multiply(multiply(g, x), inverse(g));
}

AspElement AffSymp::commutator(const AspElement& a, const AspElement& b) const {
    return multiply(multiply(a, b), multiply(inverse(a), inverse(b)));
}

uint64_t AffSymp::order(const AspElement& a, uint64_t limit) const {
    AspElement id = identity(), p = a;
    for (uint64_t k = 1; k <= limit; ++k) {
        if (p == id) return k;
        p = multiply(p, a);
    }
    throw std::runtime_error("AffSymp::order: exceeded limit");
}

AspElement AffSymp::translation(const std::vector<std::vector<int64_t>>& t) const {
    return make(ModMatrix::identity(dim(), nu()), t);
}

BigInt AffSymp::branch_class_size() const {
    BigInt s = 1;
    for (int64_t m : moduli_) s *= big_pow(m, dim());
    return s;
}

std::vector<AspElement> AffSymp::branch_class() const {
    if (branch_class_size() > 10'000'000) throw BudgetExceeded("branch_class", branch_class_size(), 10'000'000);
    ModMatrix minus = -ModMatrix::identity(dim(), nu());
    std::vector<AspElement> out;
    std::vector<std::vector<int64_t>> v(moduli_.size(), std::vector<int64_t>(dim(), 0));
    std::function<void(size_t, int)> rec = [&](size_t i, int c) {
        if (i == moduli_.size()) {
            out.push_back({minus, v});
            return;
        }
        if (c == dim()) {
            rec(i + 1, 0);
            return;
        }
        for (int64_t x = 0; x < moduli_[i]; ++x) {
            v[i][c] = x;
            rec(i, c + 1);
        }
    };
    rec(0, 0);
    return out;
}

bool extension_condition(const ModMatrix& M, const std::vector<int64_t>& v) {
    return solve(ModMatrix::identity(M.rows(), M.mod()) - M, v).has_value();
}

int drop(const ModMatrix& M) {
    int d = -1;
    for (auto [l, a] : factorize(M.mod())) {
        int r = rank_mod_prime((M - ModMatrix::identity(M.rows(), M.mod())).reduced(l), l);
        if (d >= 0 && r != d) throw std::invalid_argument("drop: differs across primes for " + M.str());
        d = r;
    }
    return d < 0 ? 0 : d;
}

std::vector<int64_t> NielsenDatum::key() const {
    std::vector<int64_t> k{genus, static_cast<int64_t>(handles.size()), static_cast<int64_t>(fixed.size()),
                           static_cast<int64_t>(branch.size())};
    for (auto* list : {&handles, &fixed, &branch})
        for (auto& e : *list) {
            auto ek = e.key();
            k.insert(k.end(), ek.begin(), ek.end());
        }
    return k;
}

AspElement surface_product(const AffSymp& G, const NielsenDatum& d) {
    AspElement p = G.identity();
    for (size_t i = 0; i + 1 < d.handles.size(); i += 2) p = G.multiply(p, G.commutator(d.handles[i], d.handles[i + 1]));
    for (auto& g : d.branch) p = G.multiply(p, g);
    for (auto& g : d.fixed) p = G.multiply(p, g);
    return p;
}

std::vector<std::string> validate(const AffSymp& G, const NielsenDatum& d) {
    std::vector<std::string> bad;
    if (static_cast<int>(d.handles.size()) != 2 * d.genus) bad.push_back("handle count != 2g");
    auto check_elem = [&](const AspElement& e, const std::string& what) {
        if (!G.is_symplectic(e.M)) bad.push_back(what + ": matrix part not symplectic");
    };
    for (size_t i = 0; i < d.handles.size(); ++i) check_elem(d.handles[i], "handle " + std::to_string(i));
    for (size_t i = 0; i < d.fixed.size(); ++i) check_elem(d.fixed[i], "fixed " + std::to_string(i));
    ModMatrix minus = -ModMatrix::identity(G.dim(), G.nu());
    for (size_t i = 0; i < d.branch.size(); ++i)
        if (!(d.branch[i].M == minus)) bad.push_back("branch " + std::to_string(i) + ": matrix part is not -id");
    for (size_t k = 0; k < d.fixed.size(); ++k)
        for (size_t i = 0; i < G.vector_moduli().size(); ++i)
            if (!extension_condition(d.fixed[k].M.reduced(G.vector_moduli()[i]), d.fixed[k].v[i]))
                bad.push_back("fixed " + std::to_string(k) + ": vector not in im(1 - M)");
    if (bad.empty() && !(surface_product(G, d) == G.identity())) bad.push_back("surface relation fails");
    return bad;
}

std::string BraidMove::str() const {
    return (kind == Kind::HalfTwist ? "sigma" : "slide") + std::to_string(index);
}

namespace {

void twist(const AffSymp& G, std::vector<AspElement>& e, int i) {
    AspElement a = e[i], b = e[i + 1];
    e[i] = G.conjugate(a, b);
    e[i + 1] = a;
}

void untwist(const AffSymp& G, std::vector<AspElement>& e, int i) {
    AspElement a = e[i], b = e[i + 1];
    e[i] = b;
    e[i + 1] = G.conjugate(G.inverse(b), a);
}

}  // namespace

NielsenDatum braid_act(const AffSymp& G, const BraidMove& mv, const NielsenDatum& d) {
    const int n = static_cast<int>(d.branch.size());
    NielsenDatum out = d;
    if (mv.kind == BraidMove::Kind::HalfTwist) {
        if (mv.index < 0 || mv.index + 1 >= n) throw std::invalid_argument("braid_act: invalid half-twist index");
        twist(G, out.branch, mv.index);
        return out;
    }
    if (d.genus != 0) throw std::invalid_argument("braid_act: puncture slides need genus 0");
    const int k = mv.index;
    if (n == 0 || k < 0 || k >= static_cast<int>(d.fixed.size())) throw std::invalid_argument("braid_act: invalid slide index");
    // full twist of the last branch point around fixed puncture k, as a pure braid
    std::vector<AspElement> e = d.branch;
    e.insert(e.end(), d.fixed.begin(), d.fixed.end());
    for (int p = n - 1; p < n - 1 + k; ++p) twist(G, e, p);
    twist(G, e, n - 1 + k);
    twist(G, e, n - 1 + k);
    for (int p = n - 2 + k; p >= n - 1; --p) untwist(G, e, p);
    out.branch.assign(e.begin(), e.begin() + n);
    out.fixed.assign(e.begin() + n, e.end());
    return out;
}

NielsenDatum braid_act_inverse_half_twist(const AffSymp& G, int i, const NielsenDatum& d) {
    if (i < 0 || i + 1 >= static_cast<int>(d.branch.size())) throw std::invalid_argument("invalid half-twist index");
    NielsenDatum out = d;
    untwist(G, out.branch, i);
    return out;
}

std::vector<BraidMove> standard_moves(int n, int fixed_count, bool with_slides) {
    std::vector<BraidMove> mv;
    for (int i = 0; i + 1 < n; ++i) mv.push_back({BraidMove::Kind::HalfTwist, i});
    if (with_slides && n > 0)
        for (int k = 0; k < fixed_count; ++k) mv.push_back({BraidMove::Kind::Slide, k});
    return mv;
}

DisjointSets::DisjointSets(size_t n) : parent_(n), components_(n) {
    if (n > 0xffffffffULL) throw std::length_error("DisjointSets: too many elements");
    std::iota(parent_.begin(), parent_.end(), 0u);
}

uint32_t DisjointSets::find(uint32_t x) {
    while (parent_[x] != x) {
        parent_[x] = parent_[parent_[x]];
        x = parent_[x];
    }
    return x;
}

bool DisjointSets::unite(uint32_t a, uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);
    parent_[b] = a;  // smallest index stays the root
    --components_;
    return true;
}

OrbitReport orbit_count(const AffSymp& G, const std::vector<NielsenDatum>& data, const std::vector<BraidMove>& moves,
                        size_t budget) {
    if (data.size() > budget) throw BudgetExceeded("orbit_count", BigInt(data.size()), BigInt(budget));
    std::map<std::vector<int64_t>, uint32_t> index;
    for (size_t i = 0; i < data.size(); ++i)
        if (!index.emplace(data[i].key(), static_cast<uint32_t>(i)).second)
            throw std::invalid_argument("orbit_count: duplicate datum in set");
    DisjointSets ds(data.size());
    for (size_t i = 0; i < data.size(); ++i)
        for (auto& mv : moves) {
            auto it = index.find(braid_act(G, mv, data[i]).key());
            if (it == index.end()) throw std::invalid_argument("orbit_count: data set not closed under " + mv.str());
            ds.unite(static_cast<uint32_t>(i), it->second);
        }
    OrbitReport rep;
    std::map<uint32_t, size_t> root_slot;
    for (size_t i = 0; i < data.size(); ++i) {
        uint32_t r = ds.find(static_cast<uint32_t>(i));
        auto [it, fresh] = root_slot.emplace(r, rep.sizes.size());
        if (fresh) {
            rep.sizes.push_back(0);
            rep.representatives.push_back(data[r]);
        }
        ++rep.sizes[it->second];
    }
    rep.count = rep.sizes.size();
    return rep;
}

Rational cyclic_burnside_pairs(const AffSymp& G, const std::vector<AspElement>& elems) {
    const size_t m = elems.size(), N = m * m;
    std::map<std::vector<int64_t>, size_t> idx;
    for (size_t i = 0; i < m; ++i) idx[elems[i].key()] = i;
    std::vector<uint32_t> perm(N);
    for (size_t a = 0; a < m; ++a)
        for (size_t b = 0; b < m; ++b) {
            auto ia = idx.find(G.conjugate(elems[a], elems[b]).key());
            if (ia == idx.end()) throw std::invalid_argument("cyclic_burnside_pairs: set not closed under conjugation");
            perm[a * m + b] = static_cast<uint32_t>(ia->second * m + a);
        }
    // order of the permutation
    uint64_t k = 1;
    for (size_t x = 0; x < N; ++x) {
        uint64_t p = 1;
        for (uint32_t y = perm[x]; y != x; y = perm[y]) ++p;
        k = std::lcm(k, p);
    }
    std::vector<uint32_t> power(N);
    std::iota(power.begin(), power.end(), 0u);
    BigInt fixed_total = 0;
    for (uint64_t i = 0; i < k; ++i) {
        for (size_t x = 0; x < N; ++x) fixed_total += power[x] == x;
        for (size_t x = 0; x < N; ++x) power[x] = perm[power[x]];
    }
    return Rational(fixed_total, BigInt(k));
}

namespace {

// matrix parts of the word alpha beta alpha^-1 beta^-1 ... gamma_1..gamma_n delta_1..delta_f
struct Word {
    std::vector<ModMatrix> mats;
    std::vector<int> block;  // parameter block of each factor
    std::vector<int> kind;   // 0 direct, 1 inverse, 2 through (1 - M)
};

Word build_word(const TorsorSpec& s) {
    const int64_t nu = s.nu.nu();
    Word w;
    int blk = 0;
    for (int i = 0; i < s.genus; ++i) {
        ModMatrix A = s.handles[2 * i].reduced(nu), B = s.handles[2 * i + 1].reduced(nu);
        w.mats.insert(w.mats.end(), {A, B, inverse(A), inverse(B)});
        w.block.insert(w.block.end(), {blk, blk + 1, blk, blk + 1});
        w.kind.insert(w.kind.end(), {0, 0, 1, 1});
        blk += 2;
    }
    ModMatrix minus = -ModMatrix::identity(2 * s.r, nu);
    for (int j = 0; j < s.n; ++j) {
        w.mats.push_back(minus);
        w.block.push_back(blk++);
        w.kind.push_back(0);
    }
    for (auto& M : s.fixed) {
        w.mats.push_back(M.reduced(nu));
        w.block.push_back(blk++);
        w.kind.push_back(2);
    }
    return w;
}

void check_spec(const TorsorSpec& s) {
    if (s.n <= 0 || s.n % 2) throw std::invalid_argument("torsor_count: n must be positive and even");
    if (static_cast<int>(s.handles.size()) != 2 * s.genus) throw std::invalid_argument("torsor_count: need 2g handle matrices");
    AffSymp G(s.nu, s.r);
    for (auto* list : {&s.handles, &s.fixed})
        for (auto& M : *list)
            if (!G.is_symplectic(M.reduced(s.nu.nu()))) throw std::invalid_argument("torsor_count: non-symplectic matrix");
}

}  // namespace

TorsorCount torsor_count(const TorsorSpec& s) {
    check_spec(s);
    const int64_t nu = s.nu.nu();
    const int d = 2 * s.r;
    Word w = build_word(s);
    TorsorCount out;
    ModMatrix prod = ModMatrix::identity(d, nu);
    for (auto& M : w.mats) prod = prod * M;
    out.base_relation_ok = prod.is_identity();
    for (auto& M : s.fixed) out.sum_drop += drop(M.reduced(nu));
    out.exponent = static_cast<int64_t>(2 * s.genus - 2 + s.n) * d + out.sum_drop;
    out.formula = big_pow(nu, out.exponent);
    if (!out.base_relation_ok) return out;

    const int nblocks = 2 * s.genus + s.n + static_cast<int>(s.fixed.size());
    ModMatrix L(d, nblocks * d, nu);
    ModMatrix prefix = ModMatrix::identity(d, nu);
    ModMatrix I = ModMatrix::identity(d, nu);
    for (size_t f = 0; f < w.mats.size(); ++f) {
        ModMatrix coef = w.kind[f] == 0 ? I : w.kind[f] == 1 ? -inverse(w.mats[f]) : I - w.mats[f];
        ModMatrix contrib = prefix * coef;
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) L.set(r, w.block[f] * d + c, L(r, w.block[f] * d + c) + contrib(r, c));
        prefix = prefix * w.mats[f];
    }
    BigInt domain = big_pow(nu, static_cast<int64_t>(2 * s.genus + s.n) * d);
    for (auto& M : s.fixed) domain *= image_size(I - M.reduced(nu));
    out.solutions = domain / image_size(L);

    ModMatrix stack(0, d, nu);
    for (int i = 0; i < 2 * s.genus; ++i) stack = vstack(stack, I - s.handles[i].reduced(nu));
    stack = vstack(stack, I + I);
    for (auto& M : s.fixed) stack = vstack(stack, I - M.reduced(nu));
    out.stabilizer = big_pow(nu, d) / image_size(stack);
    out.free_action = out.stabilizer == 1;
    BigInt num = out.solutions * out.stabilizer, den = big_pow(nu, d);
    if (num % den) throw InvariantViolation("torsor_count: orbit count not integral");
    out.count = num / den;
    out.matches = out.count == out.formula;
    return out;
}

TorsorCount torsor_count_brute_force(const TorsorSpec& s, const BigInt& budget) {
    check_spec(s);
    const int64_t nu = s.nu.nu();
    const int d = 2 * s.r;
    AffSymp G(s.nu, s.r);
    TorsorCount out;
    for (auto& M : s.fixed) out.sum_drop += drop(M.reduced(nu));
    out.exponent = static_cast<int64_t>(2 * s.genus - 2 + s.n) * d + out.sum_drop;
    out.formula = big_pow(nu, out.exponent);

    std::vector<std::vector<int64_t>> all;
    {
        std::vector<int64_t> v(d, 0);
        std::function<void(int)> rec = [&](int c) {
            if (c == d) {
                all.push_back(v);
                return;
            }
            for (int64_t x = 0; x < nu; ++x) {
                v[c] = x;
                rec(c + 1);
            }
        };
        rec(0);
    }
    // generator slots: handles (2g), branch (n), fixed (f)
    std::vector<ModMatrix> mats;
    std::vector<std::vector<std::vector<int64_t>>> choices;
    for (auto& A : s.handles) {
        mats.push_back(A.reduced(nu));
        choices.push_back(all);
    }
    for (int j = 0; j < s.n; ++j) {
        mats.push_back(-ModMatrix::identity(d, nu));
        choices.push_back(all);
    }
    for (auto& M : s.fixed) {
        ModMatrix Mr = M.reduced(nu);
        std::set<std::vector<int64_t>> img;
        ModMatrix oneminus = ModMatrix::identity(d, nu) - Mr;
        for (auto& v : all) img.insert(oneminus.apply(v));
        mats.push_back(Mr);
        choices.emplace_back(img.begin(), img.end());
    }
    BigInt leaves = 1;
    for (auto& c : choices) leaves *= c.size();
    if (leaves > budget) throw BudgetExceeded("torsor_count_brute_force", leaves, budget);

    const size_t slots = mats.size();
    const size_t hslots = 2 * static_cast<size_t>(s.genus);
    std::vector<AspElement> elems(slots);
    std::vector<AspElement> prefix(slots + 1);
    prefix[0] = G.identity();
    BigInt solutions = 0, stab_total = 0;
    AspElement id = G.identity();

    auto stabilizer_size = [&]() {
        BigInt st = 0;
        for (auto& t : all) {
            bool fixes = true;
            for (size_t f = 0; f < slots && fixes; ++f) {
                // iota(t) (M, x) iota(t)^-1 = (M, x + t - M t)
                for (int r = 0; r < d && fixes; ++r) {
                    int64_t acc = t[r];
                    for (int c = 0; c < d; ++c) acc -= elems[f].M(r, c) * t[c];
                    fixes = mod_reduce(acc, nu) == 0;
                }
            }
            st += fixes;
        }
        return st;
    };

    std::function<void(size_t)> rec = [&](size_t slot) {
        if (slot == slots) {
            if (prefix[slot] == id) {
                ++solutions;
                stab_total += stabilizer_size();
            }
            return;
        }
        if (slot + 1 == slots && slot >= hslots) {
            // last factor: (P, t)(M, x) = id  iff  P M = I and t + P x = 0
            const AspElement& pre = prefix[slot];
            if (!(pre.M * mats[slot]).is_identity()) return;
            for (auto& x : choices[slot]) {
                bool zero = true;
                for (int r = 0; r < d && zero; ++r) {
                    int64_t acc = pre.v[0][r];
                    for (int c = 0; c < d; ++c) acc += pre.M(r, c) * x[c];
                    zero = mod_reduce(acc, nu) == 0;
                }
                if (!zero) continue;
                elems[slot] = {mats[slot], {x}};
                ++solutions;
                stab_total += stabilizer_size();
            }
            return;
        }
        bool handle_pair_end = slot < hslots && slot % 2 == 1;
        bool handle_pair_start = slot < hslots && slot % 2 == 0;
        for (auto& x : choices[slot]) {
            elems[slot] = {mats[slot], {x}};
            if (handle_pair_start) {
                prefix[slot + 1] = prefix[slot];
            } else if (handle_pair_end) {
                prefix[slot + 1] = G.multiply(prefix[slot - 1], G.commutator(elems[slot - 1], elems[slot]));
            } else {
                prefix[slot + 1] = G.multiply(prefix[slot], elems[slot]);
            }
            rec(slot + 1);
        }
    };
    rec(0);
    out.solutions = solutions;
    ModMatrix prod = ModMatrix::identity(d, nu);
    for (size_t i = 0; i + 1 < hslots; i += 2)
        prod = prod * mats[i] * mats[i + 1] * inverse(mats[i]) * inverse(mats[i + 1]);
    for (size_t f = hslots; f < slots; ++f) prod = prod * mats[f];
    out.base_relation_ok = prod.is_identity();
    // Burnside over translations
    BigInt T = big_pow(nu, d);
    if (stab_total % T) throw InvariantViolation("torsor_count_brute_force: non-integral orbit count");
    out.count = stab_total / T;
    out.stabilizer = solutions == 0 ? BigInt(0) : stab_total / solutions;
    out.free_action = solutions > 0 && stab_total == solutions;
    out.matches = out.count == out.formula;
    return out;
}

Rational burnside_components(const std::vector<OrthoElement>& group, const FiniteModule& h) {
    if (group.empty()) throw std::invalid_argument("burnside_components: empty group");
    BigInt total = 0;
    for (auto& g : group) {
        FiniteModule k = kernel_module(g.m - ModMatrix::identity(g.m.rows(), g.m.mod()));
        total += count_hom(h, k);
    }
    return Rational(total, BigInt(group.size()));
}

BigInt hom_orbits_direct(const std::vector<OrthoElement>& group, const FiniteModule& h, size_t budget) {
    if (group.empty()) throw std::invalid_argument("hom_orbits_direct: empty group");
    const int s = group[0].m.rows();
    const int64_t nu = group[0].m.mod();
    // generators of H as cyclic orders; images of generator i lie in V[h_i] = (nu/h_i) V
    std::vector<int64_t> orders;
    for (auto& [l, p] : h.parts())
        for (int e : p.parts) orders.push_back(ipow(l, e));
    for (int64_t o : orders)
        if (nu % o) throw std::invalid_argument("hom_orbits_direct: H is not annihilated by nu");
    const size_t m = orders.size();
    std::vector<std::vector<std::vector<int64_t>>> img(m);
    std::vector<std::map<std::vector<int64_t>, uint32_t>> pos(m);
    for (size_t i = 0; i < m; ++i) {
        int64_t step = nu / orders[i];
        std::vector<int64_t> v(s, 0);
        std::function<void(int)> rec = [&](int c) {
            if (c == s) {
                pos[i][v] = static_cast<uint32_t>(img[i].size());
                img[i].push_back(v);
                return;
            }
            for (int64_t x = 0; x < orders[i]; ++x) {
                v[c] = x * step;
                rec(c + 1);
            }
        };
        rec(0);
    }
    size_t total = 1;
    for (auto& I : img) {
        total *= I.size();
        if (total > budget) throw BudgetExceeded("hom_orbits_direct", BigInt(total), BigInt(budget));
    }
    DisjointSets ds(total);
    std::vector<size_t> digits(m);
    for (size_t x = 0; x < total; ++x) {
        size_t t = x;
        for (size_t i = m; i-- > 0;) {
            digits[i] = t % img[i].size();
            t /= img[i].size();
        }
        for (auto& g : group) {
            size_t y = 0;
            for (size_t i = 0; i < m; ++i) y = y * img[i].size() + pos[i].at(g.m.apply(img[i][digits[i]]));
            ds.unite(static_cast<uint32_t>(x), static_cast<uint32_t>(y));
        }
    }
    return BigInt(ds.components());
}

SignatureSubgroup invariant_image(const QuadSpace& space, const std::vector<OrthoElement>& generators) {
    SignatureSubgroup sg;
    sg.omega = space.modulus().omega();
    sg.elements.insert(0);
    for (auto& g : generators) {
        if (!is_orthogonal(space, g.m)) throw std::invalid_argument("invariant_image: generator not orthogonal");
        uint32_t b = coset_signature(space, g).bits();
        std::set<uint32_t> next = sg.elements;
        for (uint32_t e : sg.elements) next.insert(e ^ b);
        sg.elements = std::move(next);
    }
    return sg;
}

}  // namespace selmer
