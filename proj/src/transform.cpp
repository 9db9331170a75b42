#include "mpt/transform.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mpt/eigen.hpp"

namespace mpt {

namespace {

// out_j = sum_i m(i, j) x_i when `transposed`, else sum_i m(j, i) x_i.
std::vector<double> mix_networks(const DenseMatrix& m, std::span<const double> x, bool transposed) {
    const std::size_t J = m.rows();
    if (J == 0 || x.size() % J != 0) {
        throw std::invalid_argument("network mixing: vector length is not a multiple of J");
    }
    const std::size_t n = x.size() / J;
    std::vector<double> out(x.size(), 0.0);
    for (std::size_t j = 0; j < J; ++j) {
        for (std::size_t i = 0; i < J; ++i) {
            const double w = transposed ? m(i, j) : m(j, i);
            if (w == 0.0) continue;
            for (std::size_t r = 0; r < n; ++r) out[j * n + r] += w * x[i * n + r];
        }
    }
    return out;
}

}  // namespace

double CongruenceResiduals::relative_k() const {
    const double norm = k_tilde.frobenius_norm();
    return norm > 0.0 ? residual_k / norm : 0.0;
}

double CongruenceResiduals::relative_e() const {
    const double norm = e_tilde.frobenius_norm();
    return norm > 0.0 ? residual_e / norm : 0.0;
}

CongruenceTransform diagonalize_by_congruence(const NetworkParams& params) {
    const auto coupling = build_coupling(params);
    const std::size_t J = params.j_count;
    std::vector<double> inv_sqrt_k(J);
    for (std::size_t j = 0; j < J; ++j) inv_sqrt_k[j] = 1.0 / std::sqrt(params.k[j]);

    CongruenceTransform ct;
    bool coupled = false;
    for (std::size_t j = 0; j < J; ++j) coupled = coupled || coupling.xi_lumped[j] != 0.0;

    if (!coupled) {
        ct.t = DenseMatrix::diagonal(inv_sqrt_k);
        ct.xi_tilde.assign(J, 0.0);
    } else {
        DenseMatrix s(J, J);
        for (std::size_t j = 0; j < J; ++j)
            for (std::size_t i = 0; i < J; ++i) s(j, i) = inv_sqrt_k[j] * coupling.e(j, i) * inv_sqrt_k[i];
        auto eig = dense_sym_eig(s);
        ct.t = DenseMatrix(J, J);
        for (std::size_t j = 0; j < J; ++j)
            for (std::size_t i = 0; i < J; ++i) ct.t(j, i) = inv_sqrt_k[j] * eig.vectors(j, i);
        ct.xi_tilde = std::move(eig.values);
    }

    const auto res = verify_congruence(ct.t, params);
    ct.k_tilde = res.k_tilde.diag();
    // The diagonal of the computed T^T E T and Lambda agree to round-off; keep
    // the eigenvalues, clamped at zero since E is semidefinite.
    for (double& v : ct.xi_tilde) v = std::max(v, 0.0);
    ct.residual_k = res.residual_k;
    ct.residual_e = res.residual_e;
    return ct;
}

CongruenceResiduals verify_congruence(const DenseMatrix& t, const NetworkParams& params) {
    const auto coupling = build_coupling(params);
    if (t.rows() != params.j_count || t.cols() != params.j_count) {
        throw std::invalid_argument("verify_congruence: T must be J x J");
    }
    const DenseMatrix tt = t.transpose();
    CongruenceResiduals r{0.0, 0.0, tt * coupling.k_diag * t, tt * coupling.e * t};
    r.residual_k = r.k_tilde.off_diagonal_norm();
    r.residual_e = r.e_tilde.off_diagonal_norm();
    return r;
}

std::vector<double> transform_rhs(const CongruenceTransform& ct, std::span<const double> g) {
    return mix_networks(ct.t, g, true);
}

std::vector<double> recover_solution(const CongruenceTransform& ct, std::span<const double> p_tilde) {
    return mix_networks(ct.t, p_tilde, false);
}

BlockOperator assemble_transformed(const CongruenceTransform& ct, SharedMatrix stiffness, SharedMatrix mass) {
    if (ct.k_tilde.size() != ct.j_count() || ct.xi_tilde.size() != ct.j_count()) {
        throw std::invalid_argument("assemble_transformed: malformed transform");
    }
    return BlockOperator(DenseMatrix::diagonal(ct.k_tilde), DenseMatrix::diagonal(ct.xi_tilde),
                         std::move(stiffness), std::move(mass));
}

}  // namespace mpt
