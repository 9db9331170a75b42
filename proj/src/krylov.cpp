#include "mpt/krylov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include "mpt/eigen.hpp"

namespace mpt {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw std::runtime_error(std::string("pcg: non-finite ") + what);
}

}  // namespace

PcgResult pcg(const BlockOperator& op, const BlockDiagPrecond& pre, std::span<const double> rhs,
              std::span<const double> x0, const CgOptions& options) {
    const std::size_t n = op.size();
    if (pre.size() != n || rhs.size() != n || x0.size() != n) {
        throw std::invalid_argument("pcg: dimension mismatch");
    }
    PcgResult result;
    auto& x = result.solution;
    auto& rep = result.report;
    x.assign(x0.begin(), x0.end());

    std::vector<double> r = op.apply(x);
    for (std::size_t i = 0; i < n; ++i) r[i] = rhs[i] - r[i];
    std::vector<double> z = pre.apply(r);
    std::vector<double> q(n);
    double rho = dot(r, z);
    require_finite(rho, "initial residual");
    if (options.observer) options.observer(0, x);

    auto measure = [&](double rz) {
        switch (options.criterion) {
            case StopCriterion::residual_relative:
                return std::sqrt(dot(r, r));
            case StopCriterion::preconditioned_relative:
            case StopCriterion::preconditioned_absolute:
                break;
        }
        return std::sqrt(std::max(rz, 0.0));
    };
    const double initial = measure(rho);
    const double threshold =
        options.criterion == StopCriterion::preconditioned_absolute ? options.tolerance : options.tolerance * initial;
    const double scale = options.criterion == StopCriterion::preconditioned_absolute ? 1.0 : initial;

    rep.lambda_min_est = rep.lambda_max_est = rep.cond_est = std::numeric_limits<double>::quiet_NaN();
    if (rho < 0.0) {
        rep.breakdown = true;
        return result;
    }
    if (initial == 0.0 || initial <= threshold) {
        rep.converged = true;
        rep.final_rel_residual = scale > 0.0 ? initial / scale : 0.0;
        return result;
    }

    std::vector<double> p = z;
    double current = initial;
    while (rep.iterations < options.max_iterations) {
        op.apply(p, q);
        const double curvature = dot(p, q);
        require_finite(curvature, "curvature");
        if (!(curvature > 0.0)) {
            rep.breakdown = true;
            break;
        }
        const double alpha = rho / curvature;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] += alpha * p[i];
            r[i] -= alpha * q[i];
        }
        pre.apply(r, z);
        const double rho_next = dot(r, z);
        require_finite(rho_next, "residual");
        rep.alphas.push_back(alpha);
        rep.betas.push_back(rho_next / rho);
        ++rep.iterations;
        if (options.observer) options.observer(rep.iterations, x);

        if (rho_next < 0.0) {
            rep.breakdown = true;
            break;
        }
        current = measure(rho_next);
        if (current <= threshold) {
            rep.converged = true;
            break;
        }
        const double beta = rho_next / rho;
        for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
        rho = rho_next;
    }
    rep.final_rel_residual = current / scale;

    if (!rep.alphas.empty()) {
        const auto est = lanczos_estimate(rep.alphas, rep.betas);
        rep.lambda_min_est = est.lambda_min;
        rep.lambda_max_est = est.lambda_max;
        rep.cond_est = est.cond;
    }
    return result;
}

PcgResult pcg_random_start(const BlockOperator& op, const BlockDiagPrecond& pre, std::span<const double> rhs,
                           std::uint64_t seed, const CgOptions& options) {
    const auto x0 = random_initial_guess(op.size(), seed);
    auto result = pcg(op, pre, rhs, x0, options);
    result.report.seed = seed;
    return result;
}

LanczosEstimate lanczos_estimate(std::span<const double> alphas, std::span<const double> betas) {
    const std::size_t m = alphas.size();
    if (m == 0) throw std::invalid_argument("lanczos_estimate: no CG coefficients");
    if (betas.size() + 1 < m) throw std::invalid_argument("lanczos_estimate: need at least m-1 betas");
    std::vector<double> diag(m), off(m - 1);
    for (std::size_t k = 0; k < m; ++k) {
        diag[k] = 1.0 / alphas[k];
        if (k > 0) diag[k] += betas[k - 1] / alphas[k - 1];
        if (k + 1 < m) off[k] = std::sqrt(betas[k]) / alphas[k];
    }
    const auto [lo, hi] = tridiag_eig_extremes(diag, off);
    return {lo, hi, hi / lo};
}

std::vector<double> random_initial_guess(std::size_t dim, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::vector<double> x(dim);
    for (double& v : x) v = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    return x;
}

}  // namespace mpt
