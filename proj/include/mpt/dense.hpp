#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace mpt {

/// Small row-major dense matrix. Used for the J x J coupling data and for
/// the dense oracles on tiny meshes.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

    static DenseMatrix identity(std::size_t n);
    static DenseMatrix diagonal(std::span<const double> d);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
    std::span<const double> data() const { return data_; }

    DenseMatrix transpose() const;
    std::vector<double> diag() const;

    double frobenius_norm() const;
    /// Frobenius norm of the off-diagonal part.
    double off_diagonal_norm() const;
    double max_abs() const;
    /// max_ij |a_ij - a_ji|; requires a square matrix.
    double max_asymmetry() const;
    bool all_finite() const;

    friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
    friend DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b);
    friend DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);
    friend DenseMatrix operator*(double s, const DenseMatrix& a);

    std::vector<double> multiply(std::span<const double> x) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Dense Cholesky factor b = L L^T of an SPD matrix (lower triangle stored).
class DenseCholesky {
public:
    /// Throws NotSpdError on a non-positive pivot.
    explicit DenseCholesky(const DenseMatrix& b);

    const DenseMatrix& lower() const { return l_; }
    std::size_t size() const { return l_.rows(); }

    /// In-place L y = b.
    void forward(std::span<double> x) const;
    /// In-place L^T y = b.
    void backward(std::span<double> x) const;
    std::vector<double> solve(std::span<const double> b) const;

private:
    DenseMatrix l_;
};

}  // namespace mpt
