#include "mpt/precond.hpp"

#include <stdexcept>
#include <string>

#include "mpt/errors.hpp"

namespace mpt {

BlockDiagPrecond::BlockDiagPrecond(std::vector<BlockWeights> weights, SharedMatrix stiffness, SharedMatrix mass)
    : weights_(std::move(weights)) {
    if (!stiffness || !mass) throw std::invalid_argument("BlockDiagPrecond: null base matrix");
    if (weights_.empty()) throw std::invalid_argument("BlockDiagPrecond: need at least one block");
    block_size_ = stiffness->nrows();
    matrices_.reserve(weights_.size());
    factors_.reserve(weights_.size());
    for (const auto& w : weights_) {
        matrices_.push_back(linear_combination(w.stiffness, *stiffness, w.mass, *mass));
        factors_.emplace_back(matrices_.back());
    }
}

void BlockDiagPrecond::apply(std::span<const double> r, std::span<double> z) const {
    if (r.size() != size() || z.size() != size()) {
        throw std::invalid_argument("BlockDiagPrecond::apply: length mismatch");
    }
    std::copy(r.begin(), r.end(), z.begin());
    for (std::size_t j = 0; j < blocks(); ++j) factors_[j].solve_in_place(block_of(z, j, block_size_));
}

std::vector<double> BlockDiagPrecond::apply(std::span<const double> r) const {
    std::vector<double> z(size());
    apply(r, z);
    return z;
}

std::vector<double> BlockDiagPrecond::multiply(std::span<const double> x) const {
    if (x.size() != size()) throw std::invalid_argument("BlockDiagPrecond::multiply: length mismatch");
    std::vector<double> y(size());
    for (std::size_t j = 0; j < blocks(); ++j) {
        matrices_[j].multiply(block_of(x, j, block_size_), block_of(std::span<double>(y), j, block_size_));
    }
    return y;
}

double BlockDiagPrecond::norm_squared(std::span<const double> x) const {
    const auto bx = multiply(x);
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += bx[i] * x[i];
    return s;
}

BlockDiagPrecond build_standard_precond(const NetworkParams& params, SharedMatrix stiffness, SharedMatrix mass) {
    const auto coupling = build_coupling(params);
    std::vector<BlockWeights> weights;
    for (std::size_t j = 0; j < params.j_count; ++j) weights.push_back({params.k[j], coupling.xi_lumped[j]});
    return BlockDiagPrecond(std::move(weights), std::move(stiffness), std::move(mass));
}

BlockDiagPrecond build_transformed_precond(const CongruenceTransform& ct, SharedMatrix stiffness,
                                           SharedMatrix mass) {
    if (ct.k_tilde.size() != ct.j_count() || ct.xi_tilde.size() != ct.j_count()) {
        throw std::invalid_argument("build_transformed_precond: malformed transform");
    }
    std::vector<BlockWeights> weights;
    for (std::size_t j = 0; j < ct.j_count(); ++j) weights.push_back({ct.k_tilde[j], ct.xi_tilde[j]});
    return BlockDiagPrecond(std::move(weights), std::move(stiffness), std::move(mass));
}

DenseMatrix materialize_dense(const BlockDiagPrecond& pre) {
    if (pre.size() > kMaxDenseDimension) {
        throw SizeGuardError("materialize_dense: dimension " + std::to_string(pre.size()) + " exceeds " +
                             std::to_string(kMaxDenseDimension));
    }
    const std::size_t n = pre.block_size();
    DenseMatrix out(pre.size(), pre.size());
    for (std::size_t j = 0; j < pre.blocks(); ++j) {
        const DenseMatrix b = pre.block_matrix(j).to_dense();
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) out(j * n + r, j * n + c) = b(r, c);
    }
    return out;
}

}  // namespace mpt
