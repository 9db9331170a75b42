#include "mpt/oracle.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include "mpt/eigen.hpp"
#include "mpt/errors.hpp"

namespace mpt {

namespace {

void guard(std::size_t n, const char* who) {
    if (n > kMaxDenseDimension) {
        throw SizeGuardError(std::string(who) + ": dimension " + std::to_string(n) + " exceeds " +
                             std::to_string(kMaxDenseDimension));
    }
}

}  // namespace

double discrete_poincare_constant(const SparseMatrix& stiffness, const SparseMatrix& mass) {
    guard(stiffness.nrows(), "discrete_poincare_constant");
    return generalized_sym_eig(stiffness.to_dense(), mass.to_dense()).front();
}

Spectrum exact_preconditioned_condition(const DenseMatrix& a, const DenseMatrix& b) {
    guard(a.rows(), "exact_preconditioned_condition");
    const auto ev = generalized_sym_eig(a, b);
    return {ev.front(), ev.back(), ev.back() / ev.front()};
}

TheoryBounds theoretical_bounds(const NetworkParams& params, double c_omega) {
    params.validate();
    if (!(c_omega > 0.0)) throw std::invalid_argument("theoretical_bounds: c_omega must be positive");
    const auto coupling = build_coupling(params);
    double ratio = 1.0;
    for (std::size_t j = 0; j < params.j_count; ++j) {
        if (coupling.xi_lumped[j] > 0.0) ratio = std::min(ratio, c_omega * params.k[j] / coupling.xi_lumped[j]);
    }
    TheoryBounds b;
    b.alpha = 0.5 * ratio;
    b.beta = static_cast<double>(params.j_count + 1);
    b.c_omega = c_omega;
    b.cond_bound = b.beta / b.alpha;
    return b;
}

}  // namespace mpt
