#pragma once

#include "selmer/numeric.hpp"

#include <optional>
#include <string>
#include <vector>

namespace selmer {

// Dense matrix over Z/mZ, row-major, entries kept reduced.
class ModMatrix {
public:
    ModMatrix() = default;
    ModMatrix(int rows, int cols, int64_t mod);
    static ModMatrix identity(int n, int64_t mod);
    static ModMatrix from_rows(const std::vector<std::vector<int64_t>>& rows, int64_t mod);
    static ModMatrix diagonal(const std::vector<int64_t>& d, int64_t mod);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int64_t mod() const { return mod_; }

    int64_t operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }
    void set(int i, int j, int64_t v) { a_[static_cast<size_t>(i) * cols_ + j] = mod_reduce(v, mod_); }
    const std::vector<int64_t>& data() const { return a_; }

    ModMatrix operator*(const ModMatrix& o) const;
    ModMatrix operator+(const ModMatrix& o) const;
    ModMatrix operator-(const ModMatrix& o) const;
    ModMatrix operator-() const;
    ModMatrix scaled(int64_t c) const;
    std::vector<int64_t> apply(const std::vector<int64_t>& v) const;
    ModMatrix transpose() const;
    ModMatrix reduced(int64_t m) const;  // m must divide mod()
    bool operator==(const ModMatrix& o) const = default;
    bool is_identity() const;
    bool is_square() const { return rows_ == cols_; }

    std::vector<std::vector<int64_t>> to_rows() const;
    std::string str() const;

private:
    int rows_ = 0, cols_ = 0;
    int64_t mod_ = 1;
    std::vector<int64_t> a_;
};

ModMatrix hstack(const ModMatrix& a, const ModMatrix& b);
ModMatrix vstack(const ModMatrix& a, const ModMatrix& b);

// Determinant over a prime field.
int64_t det_mod_prime(const ModMatrix& m, int64_t p);
int rank_mod_prime(const ModMatrix& m, int64_t p);

// Inverse over Z/mZ for any odd m (per prime power, then CRT); throws if singular.
ModMatrix inverse(const ModMatrix& m);

// Smith form over Z/l^K: U*M*V = D with D(i,i) = l^{v_i} (0 once v_i = K).
struct SmithForm {
    std::vector<int> valuations;  // ascending, length min(rows, cols), capped at K
    ModMatrix U, V;
};
SmithForm smith_form(const ModMatrix& m, int64_t l, int K, bool with_transforms = false);
std::vector<int> smith_valuations(const ModMatrix& m, int64_t l, int K);

// Solve m*x = b over Z/mod; nullopt if no solution.
std::optional<std::vector<int64_t>> solve(const ModMatrix& m, const std::vector<int64_t>& b);

// #im(m) over Z/mod.
BigInt image_size(const ModMatrix& m);

int64_t crt_combine(const std::vector<int64_t>& residues, const std::vector<int64_t>& moduli);

}  // namespace selmer
