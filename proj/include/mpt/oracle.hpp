#pragma once

#include "mpt/dense.hpp"
#include "mpt/mpt_system.hpp"
#include "mpt/sparse.hpp"

namespace mpt {

/// Coercivity/continuity constants of the standard formulation against the
/// standard block preconditioner, in the B-norm.
struct TheoryBounds {
    double alpha;       // 1/2 min(1, min_j C K_j / xi_j), networks with xi_j = 0 skipped
    double beta;        // J + 1
    double c_omega;
    double cond_bound;  // beta / alpha
};

struct Spectrum {
    double lambda_min;
    double lambda_max;
    double cond;
};

/// Smallest eigenvalue of stiffness v = lambda mass v: the sharp discrete
/// Poincare constant. Dense; throws SizeGuardError above kMaxDenseDimension.
double discrete_poincare_constant(const SparseMatrix& stiffness, const SparseMatrix& mass);

/// Extreme eigenvalues of the pencil (a, b) and their ratio.
Spectrum exact_preconditioned_condition(const DenseMatrix& a, const DenseMatrix& b);

TheoryBounds theoretical_bounds(const NetworkParams& params, double c_omega);

}  // namespace mpt
