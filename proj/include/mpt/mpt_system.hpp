#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "mpt/dense.hpp"
#include "mpt/sparse.hpp"

namespace mpt {

/// Material data for J coupled pressure networks.
///
/// `xi(j, i)` is the exchange coefficient into network j from network i.
/// It must be symmetric and nonnegative with a zero diagonal; permeabilities
/// must be strictly positive.
struct NetworkParams {
    std::size_t j_count = 0;
    std::vector<double> k;
    DenseMatrix xi;

    /// Throws std::invalid_argument describing the first violated invariant.
    void validate() const;

    /// No exchange between any pair.
    static NetworkParams uncoupled(std::vector<double> k);
    /// Two networks with exchange `xi12` between them.
    static NetworkParams two_network(double k1, double k2, double xi12);
};

struct CouplingMatrices {
    DenseMatrix k_diag;
    DenseMatrix e;
    std::vector<double> xi_lumped;  // row sums of xi
};

CouplingMatrices build_coupling(const NetworkParams& params);

using SharedMatrix = std::shared_ptr<const SparseMatrix>;

/// Matrix-free J x J block operator over one stiffness and one mass matrix:
/// block (j, i) = stiff_coeff(j, i) * Stiffness + mass_coeff(j, i) * Mass.
/// Vectors are stacked network by network: entries [j*n, (j+1)*n) hold p_j.
class BlockOperator {
public:
    BlockOperator(DenseMatrix stiff_coeff, DenseMatrix mass_coeff, SharedMatrix stiffness,
                  SharedMatrix mass);

    std::size_t blocks() const { return stiff_coeff_.rows(); }
    std::size_t block_size() const { return stiffness_->nrows(); }
    std::size_t size() const { return blocks() * block_size(); }

    const DenseMatrix& stiff_coeff() const { return stiff_coeff_; }
    const DenseMatrix& mass_coeff() const { return mass_coeff_; }
    const SparseMatrix& stiffness() const { return *stiffness_; }
    const SparseMatrix& mass() const { return *mass_; }
    const SharedMatrix& stiffness_ptr() const { return stiffness_; }
    const SharedMatrix& mass_ptr() const { return mass_; }

    /// True when every off-diagonal coefficient is exactly zero.
    bool block_diagonal() const;

    void apply(std::span<const double> x, std::span<double> y) const;
    std::vector<double> apply(std::span<const double> x) const;

private:
    DenseMatrix stiff_coeff_;
    DenseMatrix mass_coeff_;
    SharedMatrix stiffness_;
    SharedMatrix mass_;
};

/// Standard coupled operator: block (j, j) = K_j S + E_jj M, block (j, i) = E_ji M.
BlockOperator assemble_standard(const NetworkParams& params, SharedMatrix stiffness, SharedMatrix mass);

/// Maximum total dimension accepted by materialize_dense.
inline constexpr std::size_t kMaxDenseDimension = 2048;

/// Explicit dense copy of the operator; throws SizeGuardError above
/// kMaxDenseDimension.
DenseMatrix materialize_dense(const BlockOperator& op);

/// View of block j of a stacked vector.
inline std::span<const double> block_of(std::span<const double> x, std::size_t j, std::size_t n) {
    return x.subspan(j * n, n);
}
inline std::span<double> block_of(std::span<double> x, std::size_t j, std::size_t n) {
    return x.subspan(j * n, n);
}

}  // namespace mpt
