#include "selmer/matrix.hpp"

#include <sstream>

namespace selmer {

ModMatrix::ModMatrix(int rows, int cols, int64_t mod)
    : rows_(rows), cols_(cols), mod_(mod), a_(static_cast<size_t>(rows) * cols, 0) {
    if (rows < 0 || cols < 0 || mod < 1) throw std::invalid_argument("ModMatrix: bad shape or modulus");
}

ModMatrix ModMatrix::identity(int n, int64_t mod) {
    ModMatrix m(n, n, mod);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

ModMatrix ModMatrix::from_rows(const std::vector<std::vector<int64_t>>& rows, int64_t mod) {
    int r = static_cast<int>(rows.size());
    int c = r ? static_cast<int>(rows[0].size()) : 0;
    ModMatrix m(r, c, mod);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[i].size()) != c) throw std::invalid_argument("ModMatrix: ragged rows");
        for (int j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
}

ModMatrix ModMatrix::diagonal(const std::vector<int64_t>& d, int64_t mod) {
    int n = static_cast<int>(d.size());
    ModMatrix m(n, n, mod);
    for (int i = 0; i < n; ++i) m.set(i, i, d[i]);
    return m;
}

ModMatrix ModMatrix::operator*(const ModMatrix& o) const {
    if (cols_ != o.rows_ || mod_ != o.mod_) throw std::invalid_argument("ModMatrix *: shape/modulus mismatch");
    ModMatrix r(rows_, o.cols_, mod_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            int64_t x = (*this)(i, k);
            if (!x) continue;
            for (int j = 0; j < o.cols_; ++j) {
                auto& dst = r.a_[static_cast<size_t>(i) * r.cols_ + j];
                dst = (dst + mul_mod(x, o(k, j), mod_)) % mod_;
            }
        }
    return r;
}

ModMatrix ModMatrix::operator+(const ModMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || mod_ != o.mod_) throw std::invalid_argument("ModMatrix +: mismatch");
    ModMatrix r = *this;
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = (a_[i] + o.a_[i]) % mod_;
    return r;
}

ModMatrix ModMatrix::operator-(const ModMatrix& o) const { return *this + (-o); }

ModMatrix ModMatrix::operator-() const {
    ModMatrix r = *this;
    for (auto& x : r.a_) x = x ? mod_ - x : 0;
    return r;
}

ModMatrix ModMatrix::scaled(int64_t c) const {
    ModMatrix r = *this;
    c = mod_reduce(c, mod_);
    for (auto& x : r.a_) x = mul_mod(x, c, mod_);
    return r;
}

std::vector<int64_t> ModMatrix::apply(const std::vector<int64_t>& v) const {
    if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("ModMatrix::apply: length mismatch");
    std::vector<int64_t> out(rows_, 0);
    for (int i = 0; i < rows_; ++i) {
        int64_t s = 0;
        for (int j = 0; j < cols_; ++j) s = (s + mul_mod((*this)(i, j), mod_reduce(v[j], mod_), mod_)) % mod_;
        out[i] = s;
    }
    return out;
}

ModMatrix ModMatrix::transpose() const {
    ModMatrix r(cols_, rows_, mod_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.a_[static_cast<size_t>(j) * rows_ + i] = (*this)(i, j);
    return r;
}

ModMatrix ModMatrix::reduced(int64_t m) const {
    if (mod_ % m != 0) throw std::invalid_argument("ModMatrix::reduced: modulus does not divide");
    ModMatrix r(rows_, cols_, m);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] % m;
    return r;
}

bool ModMatrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if ((*this)(i, j) != (i == j ? 1 % mod_ : 0)) return false;
    return true;
}

std::vector<std::vector<int64_t>> ModMatrix::to_rows() const {
    std::vector<std::vector<int64_t>> out(rows_, std::vector<int64_t>(cols_));
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out[i][j] = (*this)(i, j);
    return out;
}

std::string ModMatrix::str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows_; ++i) {
        os << (i ? ",[" : "[");
        for (int j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j);
        os << "]";
    }
    os << "] mod " << mod_;
    return os.str();
}

ModMatrix hstack(const ModMatrix& a, const ModMatrix& b) {
    if (a.rows() != b.rows() || a.mod() != b.mod()) throw std::invalid_argument("hstack: mismatch");
    ModMatrix r(a.rows(), a.cols() + b.cols(), a.mod());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) r.set(i, j, a(i, j));
        for (int j = 0; j < b.cols(); ++j) r.set(i, a.cols() + j, b(i, j));
    }
    return r;
}

ModMatrix vstack(const ModMatrix& a, const ModMatrix& b) {
    if (a.cols() != b.cols() || a.mod() != b.mod()) throw std::invalid_argument("vstack: mismatch");
    ModMatrix r(a.rows() + b.rows(), a.cols(), a.mod());
    for (int j = 0; j < a.cols(); ++j) {
        for (int i = 0; i < a.rows(); ++i) r.set(i, j, a(i, j));
        for (int i = 0; i < b.rows(); ++i) r.set(a.rows() + i, j, b(i, j));
    }
    return r;
}

namespace {

// Row echelon over F_p; returns rank and accumulates the determinant sign/product.
int eliminate_mod_prime(std::vector<int64_t>& a, int rows, int cols, int64_t p, int64_t* det) {
    int rank = 0;
    int64_t d = 1;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int piv = -1;
        for (int r = rank; r < rows; ++r)
            if (a[static_cast<size_t>(r) * cols + c] % p) {
                piv = r;
                break;
            }
        if (piv < 0) {
            d = 0;
            continue;
        }
        if (piv != rank) {
            for (int j = 0; j < cols; ++j) std::swap(a[static_cast<size_t>(piv) * cols + j], a[static_cast<size_t>(rank) * cols + j]);
            d = p - d;
        }
        int64_t pv = a[static_cast<size_t>(rank) * cols + c] % p;
        d = mul_mod(d, pv, p);
        int64_t inv = inv_mod(pv, p);
        for (int r = rank + 1; r < rows; ++r) {
            int64_t f = mul_mod(a[static_cast<size_t>(r) * cols + c] % p, inv, p);
            if (!f) continue;
            for (int j = c; j < cols; ++j) {
                auto& x = a[static_cast<size_t>(r) * cols + j];
                x = mod_reduce(x - mul_mod(f, a[static_cast<size_t>(rank) * cols + j], p), p);
            }
        }
        ++rank;
    }
    if (rank < rows || rank < cols) d = 0;
    if (det) *det = mod_reduce(d, p);
    return rank;
}

ModMatrix inverse_prime_power(const ModMatrix& m, int64_t l, int64_t q) {
    int n = m.rows();
    ModMatrix a = m.reduced(q);
    ModMatrix inv = ModMatrix::identity(n, q);
    std::vector<std::vector<int64_t>> A = a.to_rows(), I = inv.to_rows();
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int r = c; r < n; ++r)
            if (A[r][c] % l) {
                piv = r;
                break;
            }
        if (piv < 0) throw std::domain_error("inverse: singular matrix " + m.str());
        std::swap(A[piv], A[c]);
        std::swap(I[piv], I[c]);
        int64_t u = inv_mod(A[c][c], q);
        for (int j = 0; j < n; ++j) {
            A[c][j] = mul_mod(A[c][j], u, q);
            I[c][j] = mul_mod(I[c][j], u, q);
        }
        for (int r = 0; r < n; ++r) {
            if (r == c || !A[r][c]) continue;
            int64_t f = A[r][c];
            for (int j = 0; j < n; ++j) {
                A[r][j] = mod_reduce(A[r][j] - mul_mod(f, A[c][j], q), q);
                I[r][j] = mod_reduce(I[r][j] - mul_mod(f, I[c][j], q), q);
            }
        }
    }
    return ModMatrix::from_rows(I, q);
}

}  // namespace

int64_t det_mod_prime(const ModMatrix& m, int64_t p) {
    if (!m.is_square()) throw std::invalid_argument("det_mod_prime: not square");
    std::vector<int64_t> a = m.data();
    for (auto& x : a) x %= p;
    int64_t d = 0;
    eliminate_mod_prime(a, m.rows(), m.cols(), p, &d);
    if (m.rows() == 0) return 1 % p;
    return d;
}

int rank_mod_prime(const ModMatrix& m, int64_t p) {
    std::vector<int64_t> a = m.data();
    for (auto& x : a) x %= p;
    return eliminate_mod_prime(a, m.rows(), m.cols(), p, nullptr);
}

int64_t crt_combine(const std::vector<int64_t>& residues, const std::vector<int64_t>& moduli) {
    int64_t x = 0, M = 1;
    for (size_t i = 0; i < residues.size(); ++i) {
        int64_t m = moduli[i];
        // x + M*t = r (mod m)
        int64_t t = mul_mod(mod_reduce(residues[i] - x, m), inv_mod(M % m, m), m);
        x += M * t;
        M *= m;
        x = mod_reduce(x, M);
    }
    return x;
}

ModMatrix inverse(const ModMatrix& m) {
    if (!m.is_square()) throw std::invalid_argument("inverse: not square");
    auto f = factorize(m.mod());
    if (f.empty()) return ModMatrix(m.rows(), m.cols(), 1);
    std::vector<ModMatrix> parts;
    std::vector<int64_t> moduli;
    for (auto [l, a] : f) {
        int64_t q = ipow(l, a);
        parts.push_back(inverse_prime_power(m, l, q));
        moduli.push_back(q);
    }
    ModMatrix out(m.rows(), m.cols(), m.mod());
    std::vector<int64_t> res(parts.size());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            for (size_t k = 0; k < parts.size(); ++k) res[k] = parts[k](i, j);
            out.set(i, j, crt_combine(res, moduli));
        }
    return out;
}

SmithForm smith_form(const ModMatrix& m, int64_t l, int K, bool with_transforms) {
    int64_t q = ipow(l, K);
    if (m.mod() != q) throw std::invalid_argument("smith_form: matrix modulus is not l^K");
    const int R = m.rows(), C = m.cols();
    std::vector<std::vector<int64_t>> A = m.to_rows();
    std::vector<std::vector<int64_t>> U, V;
    if (with_transforms) {
        U = ModMatrix::identity(R, q).to_rows();
        V = ModMatrix::identity(C, q).to_rows();
    }
    std::vector<int64_t> lpow(K + 1, 1);
    for (int i = 1; i <= K; ++i) lpow[i] = lpow[i - 1] * l;

    SmithForm out;
    const int T = std::min(R, C);
    out.valuations.assign(T, K);
    for (int t = 0; t < T; ++t) {
        // minimal valuation, ties row-major
        int bi = -1, bj = -1, bv = K;
        for (int i = t; i < R && bv > 0; ++i)
            for (int j = t; j < C; ++j) {
                int v = valuation(A[i][j], l, K);
                if (v < bv) {
                    bv = v;
                    bi = i;
                    bj = j;
                    if (v == 0) break;
                }
            }
        if (bi < 0) break;  // remaining block is zero
        std::swap(A[t], A[bi]);
        if (with_transforms) std::swap(U[t], U[bi]);
        if (bj != t) {
            for (int i = 0; i < R; ++i) std::swap(A[i][t], A[i][bj]);
            if (with_transforms)
                for (int i = 0; i < C; ++i) std::swap(V[i][t], V[i][bj]);
        }
        // normalise pivot to l^bv
        int64_t unit = A[t][t] / lpow[bv];
        int64_t uinv = inv_mod(unit, q);
        for (int j = 0; j < C; ++j) A[t][j] = mul_mod(A[t][j], uinv, q);
        if (with_transforms)
            for (int j = 0; j < R; ++j) U[t][j] = mul_mod(U[t][j], uinv, q);
        for (int i = t + 1; i < R; ++i) {
            if (!A[i][t]) continue;
            int64_t f = A[i][t] / lpow[bv];
            for (int j = t; j < C; ++j) A[i][j] = mod_reduce(A[i][j] - mul_mod(f, A[t][j], q), q);
            if (with_transforms)
                for (int j = 0; j < R; ++j) U[i][j] = mod_reduce(U[i][j] - mul_mod(f, U[t][j], q), q);
        }
        for (int j = t + 1; j < C; ++j) {
            if (!A[t][j]) continue;
            int64_t f = A[t][j] / lpow[bv];
            A[t][j] = 0;
            if (with_transforms)
                for (int i = 0; i < C; ++i) V[i][j] = mod_reduce(V[i][j] - mul_mod(f, V[i][t], q), q);
        }
        out.valuations[t] = bv;
    }
    if (with_transforms) {
        out.U = ModMatrix::from_rows(U, q);
        out.V = ModMatrix::from_rows(V, q);
        if (R == 0) out.U = ModMatrix(0, 0, q);
        if (C == 0) out.V = ModMatrix(0, 0, q);
    }
    return out;
}

std::vector<int> smith_valuations(const ModMatrix& m, int64_t l, int K) { return smith_form(m, l, K).valuations; }

namespace {

std::optional<std::vector<int64_t>> solve_prime_power(const ModMatrix& m, const std::vector<int64_t>& b, int64_t l, int K) {
    int64_t q = ipow(l, K);
    ModMatrix mq = m.reduced(q);
    SmithForm s = smith_form(mq, l, K, true);
    std::vector<int64_t> bq(b.size());
    for (size_t i = 0; i < b.size(); ++i) bq[i] = mod_reduce(b[i], q);
    std::vector<int64_t> c = s.U.apply(bq);
    std::vector<int64_t> y(m.cols(), 0);
    for (int i = 0; i < m.rows(); ++i) {
        int v = i < static_cast<int>(s.valuations.size()) ? s.valuations[i] : K;
        if (v >= K) {
            if (c[i] != 0) return std::nullopt;
            continue;
        }
        int64_t lv = ipow(l, v);
        if (c[i] % lv) return std::nullopt;
        y[i] = c[i] / lv;
    }
    return s.V.apply(y);
}

}  // namespace

std::optional<std::vector<int64_t>> solve(const ModMatrix& m, const std::vector<int64_t>& b) {
    if (static_cast<int>(b.size()) != m.rows()) throw std::invalid_argument("solve: rhs length mismatch");
    auto f = factorize(m.mod());
    std::vector<std::vector<int64_t>> parts;
    std::vector<int64_t> moduli;
    for (auto [l, a] : f) {
        auto x = solve_prime_power(m, b, l, a);
        if (!x) return std::nullopt;
        parts.push_back(*x);
        moduli.push_back(ipow(l, a));
    }
    std::vector<int64_t> out(m.cols(), 0);
    std::vector<int64_t> res(parts.size());
    for (int j = 0; j < m.cols(); ++j) {
        for (size_t k = 0; k < parts.size(); ++k) res[k] = parts[k][j];
        out[j] = crt_combine(res, moduli);
    }
    return out;
}

BigInt image_size(const ModMatrix& m) {
    BigInt total = 1;
    for (auto [l, a] : factorize(m.mod())) {
        auto v = smith_valuations(m.reduced(ipow(l, a)), l, a);
        for (int x : v) total *= big_pow(l, a - x);
    }
    return total;
}

}  // namespace selmer
