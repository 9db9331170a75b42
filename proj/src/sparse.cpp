#include "mpt/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mpt {

SparseMatrix::SparseMatrix(std::size_t nrows, std::size_t ncols, std::vector<std::size_t> row_offsets,
                           std::vector<std::size_t> col_indices, std::vector<double> values,
                           bool symmetric)
    : nrows_(nrows),
      ncols_(ncols),
      row_offsets_(std::move(row_offsets)),
      col_indices_(std::move(col_indices)),
      values_(std::move(values)),
      symmetric_(symmetric) {
    if (row_offsets_.size() != nrows_ + 1 || row_offsets_.front() != 0 ||
        row_offsets_.back() != col_indices_.size() || col_indices_.size() != values_.size()) {
        throw std::invalid_argument("SparseMatrix: inconsistent CSR arrays");
    }
    for (std::size_t i = 0; i < nrows_; ++i) {
        if (row_offsets_[i] > row_offsets_[i + 1]) {
            throw std::invalid_argument("SparseMatrix: row offsets must be nondecreasing");
        }
        for (std::size_t p = row_offsets_[i]; p < row_offsets_[i + 1]; ++p) {
            if (col_indices_[p] >= ncols_) {
                throw std::invalid_argument("SparseMatrix: column index out of range");
            }
            if (p > row_offsets_[i] && col_indices_[p] <= col_indices_[p - 1]) {
                throw std::invalid_argument("SparseMatrix: column indices must be strictly increasing");
            }
        }
    }
    if (symmetric_) {
        if (nrows_ != ncols_) throw std::invalid_argument("SparseMatrix: symmetric matrix must be square");
        double scale = 0.0;
        for (double v : values_) scale = std::max(scale, std::abs(v));
        if (max_asymmetry() > 1e-13 * scale) {
            throw std::invalid_argument("SparseMatrix: values are not symmetric");
        }
    }
}

SparseMatrix SparseMatrix::from_triplets(std::size_t nrows, std::size_t ncols,
                                         std::vector<Triplet> triplets, bool symmetric) {
    for (const auto& t : triplets) {
        if (t.row >= nrows || t.col >= ncols) {
            throw std::invalid_argument("SparseMatrix::from_triplets: index out of range");
        }
    }
    std::stable_sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    std::vector<std::size_t> offsets(nrows + 1, 0);
    std::vector<std::size_t> cols;
    std::vector<double> vals;
    cols.reserve(triplets.size());
    vals.reserve(triplets.size());
    for (std::size_t k = 0; k < triplets.size(); ++k) {
        const auto& t = triplets[k];
        if (k > 0 && triplets[k - 1].row == t.row && triplets[k - 1].col == t.col) {
            vals.back() += t.value;
            continue;
        }
        cols.push_back(t.col);
        vals.push_back(t.value);
        ++offsets[t.row + 1];
    }
    for (std::size_t i = 0; i < nrows; ++i) offsets[i + 1] += offsets[i];
    return SparseMatrix(nrows, ncols, std::move(offsets), std::move(cols), std::move(vals), symmetric);
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
    std::vector<std::size_t> offsets(n + 1);
    std::vector<std::size_t> cols(n);
    for (std::size_t i = 0; i <= n; ++i) offsets[i] = i;
    for (std::size_t i = 0; i < n; ++i) cols[i] = i;
    return SparseMatrix(n, n, std::move(offsets), std::move(cols), std::vector<double>(n, 1.0), true);
}

double SparseMatrix::at(std::size_t i, std::size_t j) const {
    if (i >= nrows_ || j >= ncols_) throw std::out_of_range("SparseMatrix::at");
    const auto first = col_indices_.begin() + static_cast<std::ptrdiff_t>(row_offsets_[i]);
    const auto last = col_indices_.begin() + static_cast<std::ptrdiff_t>(row_offsets_[i + 1]);
    const auto it = std::lower_bound(first, last, j);
    if (it == last || *it != j) return 0.0;
    return values_[static_cast<std::size_t>(it - col_indices_.begin())];
}

void SparseMatrix::multiply(std::span<const double> x, std::span<double> y) const {
    if (x.size() != ncols_ || y.size() != nrows_) {
        throw std::invalid_argument("SparseMatrix::multiply: length mismatch");
    }
    for (std::size_t i = 0; i < nrows_; ++i) {
        double s = 0.0;
        for (std::size_t p = row_offsets_[i]; p < row_offsets_[i + 1]; ++p) {
            s += values_[p] * x[col_indices_[p]];
        }
        y[i] = s;
    }
}

std::vector<double> SparseMatrix::multiply(std::span<const double> x) const {
    std::vector<double> y(nrows_);
    multiply(x, y);
    return y;
}

double SparseMatrix::max_asymmetry() const {
    if (nrows_ != ncols_) throw std::invalid_argument("max_asymmetry: matrix is not square");
    double m = 0.0;
    for (std::size_t i = 0; i < nrows_; ++i) {
        for (std::size_t p = row_offsets_[i]; p < row_offsets_[i + 1]; ++p) {
            m = std::max(m, std::abs(values_[p] - at(col_indices_[p], i)));
        }
    }
    return m;
}

DenseMatrix SparseMatrix::to_dense() const {
    DenseMatrix d(nrows_, ncols_);
    for (std::size_t i = 0; i < nrows_; ++i) {
        for (std::size_t p = row_offsets_[i]; p < row_offsets_[i + 1]; ++p) {
            d(i, col_indices_[p]) = values_[p];
        }
    }
    return d;
}

SparseMatrix linear_combination(double a, const SparseMatrix& A, double b, const SparseMatrix& B) {
    if (A.nrows() != B.nrows() || A.ncols() != B.ncols()) {
        throw std::invalid_argument("linear_combination: shape mismatch");
    }
    const auto ap = A.row_offsets(), bp = B.row_offsets();
    const auto ai = A.col_indices(), bi = B.col_indices();
    const auto ax = A.values(), bx = B.values();
    std::vector<std::size_t> offsets(A.nrows() + 1, 0);
    std::vector<std::size_t> cols;
    std::vector<double> vals;
    cols.reserve(std::max(A.nnz(), B.nnz()));
    vals.reserve(std::max(A.nnz(), B.nnz()));
    for (std::size_t i = 0; i < A.nrows(); ++i) {
        std::size_t p = ap[i], q = bp[i];
        while (p < ap[i + 1] || q < bp[i + 1]) {
            if (q == bp[i + 1] || (p < ap[i + 1] && ai[p] < bi[q])) {
                cols.push_back(ai[p]);
                vals.push_back(a * ax[p++]);
            } else if (p == ap[i + 1] || bi[q] < ai[p]) {
                cols.push_back(bi[q]);
                vals.push_back(b * bx[q++]);
            } else {
                cols.push_back(ai[p]);
                vals.push_back(a * ax[p++] + b * bx[q++]);
            }
        }
        offsets[i + 1] = cols.size();
    }
    return SparseMatrix(A.nrows(), A.ncols(), std::move(offsets), std::move(cols), std::move(vals),
                        A.symmetric() && B.symmetric());
}

}  // namespace mpt
