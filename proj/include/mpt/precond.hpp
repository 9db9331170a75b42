#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "mpt/mpt_system.hpp"
#include "mpt/sparse.hpp"
#include "mpt/transform.hpp"

namespace mpt {

struct BlockWeights {
    double stiffness;
    double mass;
};

/// Block-diagonal preconditioner applied through exact sparse Cholesky
/// solves, one per network. Blocks are factorized once at construction and
/// reused for every application.
class BlockDiagPrecond {
public:
    BlockDiagPrecond(std::vector<BlockWeights> weights, SharedMatrix stiffness, SharedMatrix mass);

    std::size_t blocks() const { return weights_.size(); }
    std::size_t block_size() const { return block_size_; }
    std::size_t size() const { return blocks() * block_size_; }
    std::span<const BlockWeights> block_defs() const { return weights_; }
    const SparseMatrix& block_matrix(std::size_t j) const { return matrices_.at(j); }

    /// z = B^{-1} r, block by block.
    void apply(std::span<const double> r, std::span<double> z) const;
    std::vector<double> apply(std::span<const double> r) const;

    /// y = B x (the preconditioner as an operator, not its inverse).
    std::vector<double> multiply(std::span<const double> x) const;

    /// <B x, x>, the squared B-norm.
    double norm_squared(std::span<const double> x) const;

private:
    std::vector<BlockWeights> weights_;
    std::size_t block_size_ = 0;
    std::vector<SparseMatrix> matrices_;
    std::vector<SpdFactorization> factors_;
};

/// Blocks K_j S + xi_j M with xi_j the lumped exchange of network j.
BlockDiagPrecond build_standard_precond(const NetworkParams& params, SharedMatrix stiffness, SharedMatrix mass);

/// Blocks k_tilde_j S + xi_tilde_j M; identical to the transformed operator.
BlockDiagPrecond build_transformed_precond(const CongruenceTransform& ct, SharedMatrix stiffness,
                                           SharedMatrix mass);

/// Dense copy of B (not B^{-1}); subject to kMaxDenseDimension.
DenseMatrix materialize_dense(const BlockDiagPrecond& pre);

}  // namespace mpt
