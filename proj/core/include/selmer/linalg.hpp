#pragma once

#include "selmer/numeric.hpp"

#include <map>
#include <optional>
#include <vector>

namespace selmer {

// Sparse vector: strictly increasing indices, nonzero values.
using SparseVec = std::vector<std::pair<int, Rational>>;

// Field for rank computations: Q exactly, or F_p for a small-prime rerun.
struct Field {
    int64_t p = 0;  // 0 means the rationals
    static Field rationals() { return {0}; }
    static Field mod(int64_t p) { return {p}; }
    bool exact() const { return p == 0; }
};

// Incremental row echelon basis of a subspace of k^dim.
class EchelonBasis {
public:
    explicit EchelonBasis(int dim, Field f = Field::rationals());

    // True when v was independent of the current basis (and is now added).
    bool insert(SparseVec v);
    bool contains(SparseVec v) const;
    int rank() const { return static_cast<int>(rows_.size()); }
    int dim() const { return dim_; }

private:
    SparseVec reduce(SparseVec v) const;
    SparseVec normalize(SparseVec v) const;

    int dim_;
    Field field_;
    std::map<int, SparseVec> rows_;  // leading index -> row with leading coefficient 1
};

// Columns of a matrix as sparse vectors over k^rows.
struct SparseMatrix {
    int rows = 0;
    std::vector<SparseVec> cols;
    int cols_count() const { return static_cast<int>(cols.size()); }
};

SparseVec sparse_add(const SparseVec& a, const SparseVec& b, const Rational& scale, Field f);
int rank(const SparseMatrix& m, Field f = Field::rationals());
// Basis of {x : M x = 0}, each vector over k^{cols}.
std::vector<SparseVec> kernel_basis(const SparseMatrix& m, Field f = Field::rationals());
// Composition A*B (A is rows x k, B is k x n).
SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b, Field f = Field::rationals());
bool is_zero(const SparseMatrix& m);

}  // namespace selmer
