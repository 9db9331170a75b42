#pragma once

#include <span>
#include <vector>

#include "mpt/dense.hpp"
#include "mpt/mpt_system.hpp"

namespace mpt {

/// Change of network variables p = T p~ under which both the permeability
/// matrix K and the exchange matrix E become diagonal by congruence.
struct CongruenceTransform {
    DenseMatrix t;
    std::vector<double> k_tilde;   // diag(T^T K T)
    std::vector<double> xi_tilde;  // diag(T^T E T)
    double residual_k = 0.0;       // ||offdiag(T^T K T)||_F
    double residual_e = 0.0;       // ||offdiag(T^T E T)||_F

    std::size_t j_count() const { return t.rows(); }
};

struct CongruenceResiduals {
    double residual_k;
    double residual_e;
    DenseMatrix k_tilde;  // full T^T K T
    DenseMatrix e_tilde;  // full T^T E T

    /// Off-diagonal norms relative to the Frobenius norm of the transformed
    /// matrix (0 when that matrix vanishes).
    double relative_k() const;
    double relative_e() const;
};

/// Canonical construction T = K^{-1/2} Q, where S = K^{-1/2} E K^{-1/2} = Q Lambda Q^T.
/// Gives T^T K T = I and T^T E T = Lambda with eigenvalues ascending.
CongruenceTransform diagonalize_by_congruence(const NetworkParams& params);

/// Off-diagonal residuals of T^T K T and T^T E T for an arbitrary T.
CongruenceResiduals verify_congruence(const DenseMatrix& t, const NetworkParams& params);

/// g~ = T^T g applied across the network index at every dof.
std::vector<double> transform_rhs(const CongruenceTransform& ct, std::span<const double> g);

/// p = T p~.
std::vector<double> recover_solution(const CongruenceTransform& ct, std::span<const double> p_tilde);

/// Decoupled operator: block j = k_tilde_j * S + xi_tilde_j * M.
BlockOperator assemble_transformed(const CongruenceTransform& ct, SharedMatrix stiffness, SharedMatrix mass);

}  // namespace mpt
