#include "selmer/quadspace.hpp"

#include <algorithm>
#include <numeric>

namespace selmer {

QuadSpace::QuadSpace(Modulus nu, ModMatrix gram) : nu_(std::move(nu)), gram_(std::move(gram)) {
    if (gram_.mod() != nu_.nu()) gram_ = ModMatrix::from_rows(gram_.to_rows(), nu_.nu());
    if (!gram_.is_square() || gram_.rows() < 1) throw std::invalid_argument("QuadSpace: gram must be square, rank >= 1");
    if (!(gram_ == gram_.transpose())) throw std::invalid_argument("QuadSpace: gram not symmetric");
    for (int64_t l : nu_.primes())
        if (det_mod_prime(gram_.reduced(l), l) == 0)
            throw std::invalid_argument("QuadSpace: form degenerate mod " + std::to_string(l));
}

QuadSpace QuadSpace::diagonal(const std::vector<int64_t>& d, int64_t nu) {
    return QuadSpace(Modulus(nu), ModMatrix::diagonal(d, nu));
}

QuadSpace QuadSpace::split(int n, int64_t nu) {
    ModMatrix g(2 * n, 2 * n, nu);
    int64_t half = inv_mod(2, nu);
    for (int i = 0; i < n; ++i) {
        g.set(i, n + i, half);
        g.set(n + i, i, half);
    }
    return QuadSpace(Modulus(nu), g);
}

int64_t QuadSpace::B(const std::vector<int64_t>& v, const std::vector<int64_t>& w) const {
    const int s = rank();
    const int64_t m = nu();
    int64_t acc = 0;
    for (int i = 0; i < s; ++i) {
        if (!v[i]) continue;
        int64_t row = 0;
        for (int j = 0; j < s; ++j) row = (row + mul_mod(gram_(i, j), mod_reduce(w[j], m), m)) % m;
        acc = (acc + mul_mod(mod_reduce(v[i], m), row, m)) % m;
    }
    return acc;
}

bool CosetSignature::is_zero() const {
    for (auto b : dickson)
        if (b) return false;
    for (auto b : spinor)
        if (b) return false;
    return true;
}

CosetSignature CosetSignature::operator+(const CosetSignature& o) const {
    CosetSignature r = *this;
    for (size_t i = 0; i < r.dickson.size(); ++i) r.dickson[i] ^= o.dickson[i];
    for (size_t i = 0; i < r.spinor.size(); ++i) r.spinor[i] ^= o.spinor[i];
    return r;
}

uint32_t CosetSignature::bits() const {
    uint32_t b = 0;
    int w = static_cast<int>(dickson.size());
    for (int i = 0; i < w; ++i) {
        b |= static_cast<uint32_t>(dickson[i]) << i;
        b |= static_cast<uint32_t>(spinor[i]) << (w + i);
    }
    return b;
}

CosetSignature CosetSignature::from_bits(uint32_t b, int omega) {
    CosetSignature s;
    for (int i = 0; i < omega; ++i) {
        s.dickson.push_back((b >> i) & 1);
        s.spinor.push_back((b >> (omega + i)) & 1);
    }
    return s;
}

std::string CosetSignature::label() const {
    static const char* names[4] = {"O", "A", "B", "C"};
    std::string out;
    for (size_t i = 0; i < dickson.size(); ++i) out += names[dickson[i] * 2 + spinor[i]];
    return out;
}

CosetSignature uniform_signature(CosetLabel label, int omega) {
    uint8_t d = label == CosetLabel::B || label == CosetLabel::C;
    uint8_t s = label == CosetLabel::A || label == CosetLabel::C;
    return CosetSignature{std::vector<uint8_t>(omega, d), std::vector<uint8_t>(omega, s)};
}

CosetLabel parse_coset_label(const std::string& s) {
    if (s == "omega" || s == "Omega" || s == "O") return CosetLabel::Omega;
    if (s == "A") return CosetLabel::A;
    if (s == "B") return CosetLabel::B;
    if (s == "C") return CosetLabel::C;
    throw std::invalid_argument("unknown coset label '" + s + "'");
}

std::string to_string(CosetLabel c) {
    switch (c) {
        case CosetLabel::Omega: return "Omega";
        case CosetLabel::A: return "A";
        case CosetLabel::B: return "B";
        case CosetLabel::C: return "C";
    }
    return "?";
}

bool is_orthogonal(const QuadSpace& space, const ModMatrix& m) {
    if (m.rows() != space.rank() || m.cols() != space.rank())
        throw std::invalid_argument("is_orthogonal: dimension mismatch");
    ModMatrix mm = m.mod() == space.nu() ? m : ModMatrix::from_rows(m.to_rows(), space.nu());
    return mm.transpose() * space.gram() * mm == space.gram();
}

std::vector<uint8_t> dickson(const QuadSpace& space, const OrthoElement& g) {
    std::vector<uint8_t> out;
    for (int64_t l : space.modulus().primes()) {
        int64_t d = det_mod_prime(g.m.reduced(l), l);
        if (d == 1) out.push_back(0);
        else if (d == l - 1) out.push_back(1);
        else throw InvariantViolation("dickson: det " + std::to_string(d) + " mod " + std::to_string(l) + " not +-1");
    }
    return out;
}

namespace {

ModMatrix reflection_matrix(const ModMatrix& gram, const std::vector<int64_t>& v, int64_t m) {
    const int s = gram.rows();
    std::vector<int64_t> gv(s, 0);  // G v
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) gv[i] = (gv[i] + mul_mod(gram(i, j), mod_reduce(v[j], m), m)) % m;
    int64_t q = 0;
    for (int i = 0; i < s; ++i) q = (q + mul_mod(mod_reduce(v[i], m), gv[i], m)) % m;
    int64_t c = mul_mod(2, inv_mod(q, m), m);
    ModMatrix r = ModMatrix::identity(s, m);
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) r.set(i, j, r(i, j) - mul_mod(c, mul_mod(mod_reduce(v[i], m), gv[j], m), m));
    return r;
}

int64_t qform(const ModMatrix& gram, const std::vector<int64_t>& v, int64_t m) {
    int64_t acc = 0;
    for (int i = 0; i < gram.rows(); ++i)
        for (int j = 0; j < gram.rows(); ++j)
            acc = (acc + mul_mod(mul_mod(v[i], gram(i, j), m), v[j], m)) % m;
    return acc;
}

}  // namespace

OrthoElement reflection(const QuadSpace& space, const std::vector<int64_t>& v) {
    if (static_cast<int>(v.size()) != space.rank()) throw std::invalid_argument("reflection: dimension mismatch");
    int64_t q = space.Q(v);
    for (int64_t l : space.modulus().primes())
        if (q % l == 0) throw std::invalid_argument("reflection: Q(v) is not a unit mod " + std::to_string(l));
    return {reflection_matrix(space.gram(), v, space.nu())};
}

std::vector<std::vector<int64_t>> reflection_decomposition(const ModMatrix& g, const ModMatrix& gram, int64_t l,
                                                           bool reversed) {
    // Walk an orthogonal anisotropic basis x_1..x_s. Once h fixes x_1..x_{k-1} it preserves their
    // complement, and every reflection below lies in that complement, so earlier steps stay fixed.
    const int s = g.rows();
    ModMatrix F = diagonalizing_basis(gram, l, l);
    std::vector<int> order(s);
    std::iota(order.begin(), order.end(), 0);
    if (reversed) std::reverse(order.begin(), order.end());

    ModMatrix h = g;
    std::vector<std::vector<int64_t>> out;
    auto reflect = [&](const std::vector<int64_t>& w) {
        out.push_back(w);
        h = reflection_matrix(gram, w, l) * h;
    };
    std::vector<int64_t> x(s), w(s);
    for (int k : order) {
        for (int i = 0; i < s; ++i) x[i] = F(i, k);
        auto hx = h.apply(x);
        if (hx == x) continue;
        for (int i = 0; i < s; ++i) w[i] = mod_reduce(hx[i] - x[i], l);
        if (qform(gram, w, l) != 0) {
            reflect(w);  // sends hx to x
            continue;
        }
        // Q(hx - x) = 0 forces Q(hx + x) = 4 Q(x) != 0; that reflection sends hx to -x
        for (int i = 0; i < s; ++i) w[i] = mod_reduce(hx[i] + x[i], l);
        reflect(w);
        reflect(x);
    }
    if (!h.is_identity()) throw InvariantViolation("reflection_decomposition failed for " + g.str());
    return out;
}

std::vector<uint8_t> spinor_minus(const QuadSpace& space, const OrthoElement& g, bool reversed) {
    std::vector<uint8_t> out;
    for (int64_t l : space.modulus().primes()) {
        ModMatrix gram = space.gram_mod(l);
        auto refl = reflection_decomposition(g.m.reduced(l), gram, l, reversed);
        uint8_t bit = 0;
        for (auto& w : refl) bit ^= square_class(-qform(gram, w, l), l);
        out.push_back(bit);
    }
    return out;
}

CosetSignature coset_signature(const QuadSpace& space, const OrthoElement& g) {
    return {dickson(space, g), spinor_minus(space, g)};
}

bool omega_member(const QuadSpace& space, const OrthoElement& g) { return coset_signature(space, g).is_zero(); }

BigInt orthogonal_group_order(const QuadSpace& space) {
    const int s = space.rank();
    BigInt total = 1;
    for (auto [l, a] : space.modulus().factors()) {
        BigInt o;
        if (s % 2) {
            int m = s / 2;
            o = 2 * big_pow(l, static_cast<int64_t>(m) * m);
            for (int i = 1; i <= m; ++i) o *= big_pow(l, 2 * i) - 1;
        } else {
            int m = s / 2;
            int64_t disc = det_mod_prime(space.gram_mod(l), l);
            if (m % 2) disc = l - disc;
            int eps = legendre(disc, l);
            o = 2 * big_pow(l, static_cast<int64_t>(m) * (m - 1)) * (big_pow(l, m) - eps);
            for (int i = 1; i < m; ++i) o *= big_pow(l, 2 * i) - 1;
        }
        o *= big_pow(l, static_cast<int64_t>(a - 1) * s * (s - 1) / 2);
        total *= o;
    }
    return total;
}

void for_each_orthogonal(const QuadSpace& space, const std::function<void(const OrthoElement&)>& fn,
                         const BigInt& budget) {
    BigInt est = orthogonal_group_order(space);
    if (est > budget) throw BudgetExceeded("enumerate_orthogonal", est, budget);
    const int s = space.rank();
    const int64_t m = space.nu();
    BigInt nvec = big_pow(m, s);
    if (nvec > 50'000'000) throw BudgetExceeded("enumerate_orthogonal: vector table", nvec, 50'000'000);
    const int64_t N = static_cast<int64_t>(nvec);

    // vectors in lexicographic order; G*x stored for inner products
    std::vector<int64_t> vec(static_cast<size_t>(N) * s), gvec(static_cast<size_t>(N) * s);
    std::vector<std::vector<int64_t>> by_q(m);
    std::vector<int64_t> x(s, 0);
    for (int64_t idx = 0; idx < N; ++idx) {
        int64_t t = idx;
        for (int i = s - 1; i >= 0; --i) {
            x[i] = t % m;
            t /= m;
        }
        auto gx = space.gram().apply(x);
        std::copy(x.begin(), x.end(), vec.begin() + idx * s);
        std::copy(gx.begin(), gx.end(), gvec.begin() + idx * s);
        int64_t q = 0;
        for (int i = 0; i < s; ++i) q = (q + mul_mod(x[i], gx[i], m)) % m;
        by_q[q].push_back(idx);
    }
    auto inner = [&](int64_t a, int64_t b) {
        int64_t acc = 0;
        for (int i = 0; i < s; ++i) acc += vec[a * s + i] * gvec[b * s + i];
        return acc % m;
    };
    std::vector<int64_t> cols(s);
    ModMatrix M(s, s, m);
    std::function<void(int)> rec = [&](int j) {
        if (j == s) {
            for (int c = 0; c < s; ++c)
                for (int i = 0; i < s; ++i) M.set(i, c, vec[cols[c] * s + i]);
            fn(OrthoElement{M});
            return;
        }
        for (int64_t cand : by_q[space.gram()(j, j)]) {
            bool ok = true;
            for (int i = 0; i < j && ok; ++i) ok = inner(cols[i], cand) == space.gram()(i, j);
            if (!ok) continue;
            cols[j] = cand;
            rec(j + 1);
        }
    };
    rec(0);
}

std::vector<OrthoElement> enumerate_orthogonal(const QuadSpace& space, const BigInt& budget) {
    std::vector<OrthoElement> out;
    for_each_orthogonal(space, [&](const OrthoElement& g) { out.push_back(g); }, budget);
    return out;
}

ModMatrix diagonalizing_basis(const ModMatrix& gram_in, int64_t l, int64_t q) {
    ModMatrix gram = gram_in.reduced(q);
    const int s = gram.rows();
    std::vector<std::vector<int64_t>> W;  // current complement basis
    for (int i = 0; i < s; ++i) {
        std::vector<int64_t> e(s, 0);
        e[i] = 1;
        W.push_back(e);
    }
    auto bil = [&](const std::vector<int64_t>& a, const std::vector<int64_t>& b) {
        auto gb = gram.apply(b);
        int64_t acc = 0;
        for (int i = 0; i < s; ++i) acc = (acc + mul_mod(a[i], gb[i], q)) % q;
        return acc;
    };
    std::vector<std::vector<int64_t>> F;
    while (!W.empty()) {
        std::vector<int64_t> f;
        for (size_t i = 0; i < W.size() && f.empty(); ++i)
            if (bil(W[i], W[i]) % l) f = W[i];
        for (size_t i = 0; i < W.size() && f.empty(); ++i)
            for (size_t j = i + 1; j < W.size() && f.empty(); ++j) {
                std::vector<int64_t> v(s);
                for (int k = 0; k < s; ++k) v[k] = (W[i][k] + W[j][k]) % q;
                if (bil(v, v) % l) f = v;
            }
        if (f.empty()) throw InvariantViolation("diagonalizing_basis: complement has no anisotropic vector");
        F.push_back(f);
        // kernel of x -> B(x, f) inside span W via a unit pairing
        size_t p = 0;
        while (bil(W[p], f) % l == 0) ++p;
        int64_t inv = inv_mod(bil(W[p], f), q);
        std::vector<std::vector<int64_t>> next;
        for (size_t i = 0; i < W.size(); ++i) {
            if (i == p) continue;
            int64_t c = mul_mod(bil(W[i], f), inv, q);
            std::vector<int64_t> v(s);
            for (int k = 0; k < s; ++k) v[k] = mod_reduce(W[i][k] - mul_mod(c, W[p][k], q), q);
            next.push_back(v);
        }
        W = std::move(next);
    }
    ModMatrix out(s, s, q);
    for (int c = 0; c < s; ++c)
        for (int r = 0; r < s; ++r) out.set(r, c, F[c][r]);
    return out;
}

OrthoSampler::OrthoSampler(const QuadSpace& space, uint64_t seed) : space_(&space), seed_(seed), rng_(seed) {
    for (size_t i = 0; i < space.modulus().factors().size(); ++i) {
        Local loc;
        loc.l = space.modulus().factors()[i].first;
        loc.q = space.modulus().prime_power(i);
        loc.F = diagonalizing_basis(space.gram(), loc.l, loc.q);
        loc.Finv = inverse(loc.F);
        ModMatrix D = loc.F.transpose() * space.gram_mod(loc.q) * loc.F;
        for (int k = 0; k < space.rank(); ++k) loc.d.push_back(D(k, k));
        locals_.push_back(std::move(loc));
    }
}

ModMatrix OrthoSampler::sample_local(Local& loc) {
    const int s = space_->rank();
    const int64_t q = loc.q, l = loc.l;
    std::uniform_int_distribution<int64_t> unif(0, q - 1);
    // columns of h in O(diag(d)); D-inner product is sum d_i x_i y_i
    auto dot = [&](const std::vector<int64_t>& a, const std::vector<int64_t>& b) {
        int64_t acc = 0;
        for (int i = 0; i < s; ++i) acc = (acc + mul_mod(mul_mod(a[i], loc.d[i], q), b[i], q)) % q;
        return acc;
    };
    std::vector<std::vector<int64_t>> W;
    for (int i = 0; i < s; ++i) {
        std::vector<int64_t> e(s, 0);
        e[i] = 1;
        W.push_back(e);
    }
    ModMatrix h(s, s, q);
    std::vector<int64_t> x(s), coef;
    for (int k = 0; k < s; ++k) {
        coef.assign(W.size(), 0);
        while (true) {
            std::fill(x.begin(), x.end(), 0);
            for (size_t i = 0; i < W.size(); ++i) {
                coef[i] = unif(rng_);
                if (!coef[i]) continue;
                for (int t = 0; t < s; ++t) x[t] = (x[t] + mul_mod(coef[i], W[i][t], q)) % q;
            }
            if (dot(x, x) == loc.d[k]) break;
            ++rejections_;
        }
        for (int t = 0; t < s; ++t) h.set(t, k, x[t]);
        if (k + 1 == s) break;
        size_t p = 0;
        while (dot(W[p], x) % l == 0) ++p;
        int64_t inv = inv_mod(dot(W[p], x), q);
        std::vector<std::vector<int64_t>> next;
        for (size_t i = 0; i < W.size(); ++i) {
            if (i == p) continue;
            int64_t c = mul_mod(dot(W[i], x), inv, q);
            std::vector<int64_t> v(s);
            for (int t = 0; t < s; ++t) v[t] = mod_reduce(W[i][t] - mul_mod(c, W[p][t], q), q);
            next.push_back(v);
        }
        W = std::move(next);
    }
    return loc.F * h * loc.Finv;
}

OrthoElement OrthoSampler::sample() {
    const int s = space_->rank();
    if (locals_.size() == 1) return {ModMatrix::from_rows(sample_local(locals_[0]).to_rows(), space_->nu())};
    std::vector<ModMatrix> parts;
    std::vector<int64_t> moduli;
    for (auto& loc : locals_) {
        parts.push_back(sample_local(loc));
        moduli.push_back(loc.q);
    }
    ModMatrix g(s, s, space_->nu());
    std::vector<int64_t> res(parts.size());
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) {
            for (size_t k = 0; k < parts.size(); ++k) res[k] = parts[k](i, j);
            g.set(i, j, crt_combine(res, moduli));
        }
    return {g};
}

OrthoElement OrthoSampler::sample(const CosetSignature& coset) {
    while (true) {
        OrthoElement g = sample();
        if (coset_signature(*space_, g) == coset) return g;
        ++rejections_;
    }
}

}  // namespace selmer
