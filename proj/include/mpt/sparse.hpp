#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mpt/dense.hpp"

namespace mpt {

struct Triplet {
    std::size_t row;
    std::size_t col;
    double value;
};

/// Compressed-row sparse matrix with sorted, duplicate-free column indices.
class SparseMatrix {
public:
    SparseMatrix() = default;
    /// Validates the CSR invariants; with `symmetric` set, also checks that
    /// stored values mirror across the diagonal (relative tolerance 1e-13).
    SparseMatrix(std::size_t nrows, std::size_t ncols, std::vector<std::size_t> row_offsets,
                 std::vector<std::size_t> col_indices, std::vector<double> values,
                 bool symmetric = false);

    /// Duplicates are summed. Entries that sum to exactly zero are kept so
    /// the pattern stays structural.
    static SparseMatrix from_triplets(std::size_t nrows, std::size_t ncols,
                                      std::vector<Triplet> triplets, bool symmetric = false);
    static SparseMatrix identity(std::size_t n);

    std::size_t nrows() const { return nrows_; }
    std::size_t ncols() const { return ncols_; }
    std::size_t nnz() const { return values_.size(); }
    bool symmetric() const { return symmetric_; }

    std::span<const std::size_t> row_offsets() const { return row_offsets_; }
    std::span<const std::size_t> col_indices() const { return col_indices_; }
    std::span<const double> values() const { return values_; }

    /// Stored value at (i, j), or 0 when (i, j) is not in the pattern.
    double at(std::size_t i, std::size_t j) const;

    /// y = A x
    void multiply(std::span<const double> x, std::span<double> y) const;
    std::vector<double> multiply(std::span<const double> x) const;

    /// max |a_ij - a_ji| over the union of both patterns.
    double max_asymmetry() const;

    DenseMatrix to_dense() const;

private:
    std::size_t nrows_ = 0;
    std::size_t ncols_ = 0;
    std::vector<std::size_t> row_offsets_{0};
    std::vector<std::size_t> col_indices_;
    std::vector<double> values_;
    bool symmetric_ = false;
};

/// a*A + b*B. The result is flagged symmetric when both inputs are.
SparseMatrix linear_combination(double a, const SparseMatrix& A, double b, const SparseMatrix& B);

/// Exact sparse Cholesky factorization A = L L^T (up-looking, natural
/// ordering). Only the lower triangle of A (columns <= row in CSR) is read.
///
/// The factor is immutable after construction, so concurrent solves on
/// distinct buffers are safe.
class SpdFactorization {
public:
    /// Throws NotSpdError on a non-positive pivot and std::invalid_argument
    /// for a non-square input.
    explicit SpdFactorization(const SparseMatrix& a);

    std::size_t size() const { return n_; }
    std::size_t factor_nnz() const { return li_.size(); }

    /// Solves A x = b in place.
    void solve_in_place(std::span<double> x) const;
    std::vector<double> solve(std::span<const double> b) const;

private:
    std::size_t n_ = 0;
    // L in compressed-column form; the diagonal is the first entry of each column.
    std::vector<std::size_t> lp_;
    std::vector<std::size_t> li_;
    std::vector<double> lx_;
};

}  // namespace mpt
