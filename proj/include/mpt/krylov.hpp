#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "mpt/mpt_system.hpp"
#include "mpt/precond.hpp"

namespace mpt {

enum class StopCriterion {
    /// sqrt(r^T z) / sqrt(r0^T z0) <= tol (default)
    preconditioned_relative,
    /// ||r|| / ||r0|| <= tol
    residual_relative,
    /// sqrt(r^T z) <= tol
    preconditioned_absolute,
};

struct CgOptions {
    double tolerance = 1e-9;
    std::size_t max_iterations = 3000;
    StopCriterion criterion = StopCriterion::preconditioned_relative;
    /// Called with the initial guess (iteration 0) and after every update.
    std::function<void(std::size_t, std::span<const double>)> observer;
};

struct LanczosEstimate {
    double lambda_min;
    double lambda_max;
    double cond;
};

struct CGReport {
    std::size_t iterations = 0;
    bool converged = false;
    bool breakdown = false;
    double final_rel_residual = 0.0;
    std::vector<double> alphas;
    std::vector<double> betas;
    // NaN when no iteration was taken (initial guess already exact).
    double lambda_min_est = 0.0;
    double lambda_max_est = 0.0;
    double cond_est = 0.0;
    std::uint64_t seed = 0;
};

struct PcgResult {
    std::vector<double> solution;
    CGReport report;
};

/// Preconditioned conjugate gradients for op x = rhs starting from x0.
///
/// The alpha/beta coefficients of every iteration are recorded and turned
/// into extreme-eigenvalue estimates of B^{-1} A. A non-positive curvature
/// or r^T z < 0 stops the run with `breakdown` set; non-finite values throw
/// std::runtime_error.
PcgResult pcg(const BlockOperator& op, const BlockDiagPrecond& pre, std::span<const double> rhs,
              std::span<const double> x0, const CgOptions& options = {});

/// pcg with x0 = random_initial_guess(op.size(), seed); the seed is recorded
/// in the report.
PcgResult pcg_random_start(const BlockOperator& op, const BlockDiagPrecond& pre, std::span<const double> rhs,
                           std::uint64_t seed, const CgOptions& options = {});

/// Extreme eigenvalues of the Lanczos tridiagonal matrix implied by CG:
/// diagonal 1/alpha_k + beta_{k-1}/alpha_{k-1}, off-diagonal
/// sqrt(beta_k)/alpha_k. Uses alphas.size() rows; extra betas are ignored.
LanczosEstimate lanczos_estimate(std::span<const double> alphas, std::span<const double> betas);

/// Entries uniform in [0, 1): (mt19937_64 output >> 11) * 2^-53, with the
/// generator seeded by `seed`.
std::vector<double> random_initial_guess(std::size_t dim, std::uint64_t seed);

}  // namespace mpt
