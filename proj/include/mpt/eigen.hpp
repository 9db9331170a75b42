#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "mpt/dense.hpp"

namespace mpt {

struct SymmetricEigen {
    std::vector<double> values;  // ascending
    DenseMatrix vectors;         // orthonormal, column k pairs with values[k]
};

/// Cyclic Jacobi eigendecomposition S = Q diag(values) Q^T.
///
/// Sweeps stop once the off-diagonal Frobenius norm drops to
/// 1e-14 * ||S||_F. Eigenvalues are returned in ascending order and each
/// eigenvector is signed so that its largest-magnitude entry (first one on
/// ties) is positive. Throws std::invalid_argument when S is not square or
/// asymmetric beyond 1e-12 * ||S||_F.
SymmetricEigen dense_sym_eig(const DenseMatrix& s);

/// Eigenvalues (ascending) of the symmetric-definite pencil (a, b), i.e. the
/// spectrum of b^{-1} a, via b = L L^T and the standard problem
/// L^{-1} a L^{-T}. Throws NotSpdError when b is not SPD.
std::vector<double> generalized_sym_eig(const DenseMatrix& a, const DenseMatrix& b);

/// L^{-1} a L^{-T} for b = L L^T, explicitly symmetrized.
DenseMatrix reduce_generalized(const DenseMatrix& a, const DenseCholesky& b_factor);

/// k-th smallest eigenvalue (0-based) of the symmetric tridiagonal matrix
/// with diagonal `alpha` and off-diagonal `beta`, by Sturm-sequence
/// bisection.
double tridiag_eigenvalue(std::span<const double> alpha, std::span<const double> beta, std::size_t k);

/// (lambda_min, lambda_max) of a symmetric tridiagonal matrix. `beta` must
/// have alpha.size() - 1 entries. Throws std::invalid_argument on empty input.
std::pair<double, double> tridiag_eig_extremes(std::span<const double> alpha,
                                               std::span<const double> beta);

}  // namespace mpt
