#include "mpt/mpt_system.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "mpt/errors.hpp"

namespace mpt {

void NetworkParams::validate() const {
    if (j_count == 0) throw std::invalid_argument("NetworkParams: need at least one network");
    if (k.size() != j_count) {
        throw std::invalid_argument("NetworkParams: expected " + std::to_string(j_count) + " permeabilities, got " +
                                    std::to_string(k.size()));
    }
    if (xi.rows() != j_count || xi.cols() != j_count) {
        throw std::invalid_argument("NetworkParams: exchange matrix must be J x J");
    }
    for (std::size_t j = 0; j < j_count; ++j) {
        if (!(k[j] > 0.0) || !std::isfinite(k[j])) {
            throw std::invalid_argument("NetworkParams: K_" + std::to_string(j + 1) + " must be positive and finite");
        }
        if (xi(j, j) != 0.0) {
            throw std::invalid_argument("NetworkParams: exchange diagonal must be zero");
        }
        for (std::size_t i = 0; i < j_count; ++i) {
            if (!(xi(j, i) >= 0.0) || !std::isfinite(xi(j, i))) {
                throw std::invalid_argument("NetworkParams: exchange coefficients must be nonnegative and finite");
            }
            if (xi(j, i) != xi(i, j)) {
                throw std::invalid_argument("NetworkParams: exchange matrix must be symmetric");
            }
        }
    }
}

NetworkParams NetworkParams::uncoupled(std::vector<double> k) {
    NetworkParams p;
    p.j_count = k.size();
    p.xi = DenseMatrix(k.size(), k.size());
    p.k = std::move(k);
    p.validate();
    return p;
}

NetworkParams NetworkParams::two_network(double k1, double k2, double xi12) {
    NetworkParams p;
    p.j_count = 2;
    p.k = {k1, k2};
    p.xi = DenseMatrix{{0.0, xi12}, {xi12, 0.0}};
    p.validate();
    return p;
}

CouplingMatrices build_coupling(const NetworkParams& params) {
    params.validate();
    const std::size_t J = params.j_count;
    CouplingMatrices c;
    c.k_diag = DenseMatrix::diagonal(params.k);
    c.e = DenseMatrix(J, J);
    c.xi_lumped.assign(J, 0.0);
    for (std::size_t j = 0; j < J; ++j) {
        for (std::size_t i = 0; i < J; ++i) {
            if (i == j) continue;
            c.xi_lumped[j] += params.xi(j, i);
            c.e(j, i) = -params.xi(j, i);
        }
        c.e(j, j) = c.xi_lumped[j];
    }
    return c;
}

BlockOperator::BlockOperator(DenseMatrix stiff_coeff, DenseMatrix mass_coeff, SharedMatrix stiffness,
                             SharedMatrix mass)
    : stiff_coeff_(std::move(stiff_coeff)),
      mass_coeff_(std::move(mass_coeff)),
      stiffness_(std::move(stiffness)),
      mass_(std::move(mass)) {
    if (!stiffness_ || !mass_) throw std::invalid_argument("BlockOperator: null base matrix");
    if (!stiff_coeff_.square() || stiff_coeff_.rows() == 0 || stiff_coeff_.rows() != mass_coeff_.rows() ||
        stiff_coeff_.cols() != mass_coeff_.cols()) {
        throw std::invalid_argument("BlockOperator: coefficient matrices must be J x J");
    }
    if (stiffness_->nrows() != stiffness_->ncols() || mass_->nrows() != stiffness_->nrows() ||
        mass_->ncols() != stiffness_->ncols()) {
        throw std::invalid_argument("BlockOperator: stiffness and mass dimensions differ");
    }
}

bool BlockOperator::block_diagonal() const {
    for (std::size_t j = 0; j < blocks(); ++j)
        for (std::size_t i = 0; i < blocks(); ++i)
            if (i != j && (stiff_coeff_(j, i) != 0.0 || mass_coeff_(j, i) != 0.0)) return false;
    return true;
}

void BlockOperator::apply(std::span<const double> x, std::span<double> y) const {
    if (x.size() != size() || y.size() != size()) {
        throw std::invalid_argument("BlockOperator::apply: length mismatch");
    }
    const std::size_t J = blocks();
    const std::size_t n = block_size();
    // One S and one M product per network, then combine.
    std::vector<double> sx(J * n), mx(J * n);
    for (std::size_t i = 0; i < J; ++i) {
        stiffness_->multiply(block_of(x, i, n), block_of(std::span<double>(sx), i, n));
        mass_->multiply(block_of(x, i, n), block_of(std::span<double>(mx), i, n));
    }
    std::fill(y.begin(), y.end(), 0.0);
    for (std::size_t j = 0; j < J; ++j) {
        auto yj = block_of(y, j, n);
        for (std::size_t i = 0; i < J; ++i) {
            const double a = stiff_coeff_(j, i);
            const double b = mass_coeff_(j, i);
            if (a == 0.0 && b == 0.0) continue;
            for (std::size_t r = 0; r < n; ++r) yj[r] += a * sx[i * n + r] + b * mx[i * n + r];
        }
    }
}

std::vector<double> BlockOperator::apply(std::span<const double> x) const {
    std::vector<double> y(size());
    apply(x, y);
    return y;
}

BlockOperator assemble_standard(const NetworkParams& params, SharedMatrix stiffness, SharedMatrix mass) {
    const auto coupling = build_coupling(params);
    return BlockOperator(coupling.k_diag, coupling.e, std::move(stiffness), std::move(mass));
}

DenseMatrix materialize_dense(const BlockOperator& op) {
    if (op.size() > kMaxDenseDimension) {
        throw SizeGuardError("materialize_dense: dimension " + std::to_string(op.size()) + " exceeds " +
                             std::to_string(kMaxDenseDimension));
    }
    const std::size_t J = op.blocks();
    const std::size_t n = op.block_size();
    const DenseMatrix s = op.stiffness().to_dense();
    const DenseMatrix m = op.mass().to_dense();
    DenseMatrix out(op.size(), op.size());
    for (std::size_t j = 0; j < J; ++j)
        for (std::size_t i = 0; i < J; ++i) {
            const double a = op.stiff_coeff()(j, i);
            const double b = op.mass_coeff()(j, i);
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < n; ++c) out(j * n + r, i * n + c) = a * s(r, c) + b * m(r, c);
        }
    return out;
}

}  // namespace mpt
