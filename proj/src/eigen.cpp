#include "mpt/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace mpt {

namespace {

constexpr double kJacobiTolerance = 1e-14;
constexpr int kMaxSweeps = 100;

void validate_tridiagonal(std::span<const double> alpha, std::span<const double> beta) {
    if (alpha.empty()) throw std::invalid_argument("tridiagonal eigenproblem: empty diagonal");
    if (beta.size() + 1 != alpha.size()) {
        throw std::invalid_argument("tridiagonal eigenproblem: off-diagonal must have n-1 entries");
    }
}

// Number of eigenvalues strictly below x.
std::size_t sturm_count(std::span<const double> alpha, std::span<const double> beta, double x) {
    constexpr double tiny = std::numeric_limits<double>::min();
    std::size_t count = 0;
    double q = alpha[0] - x;
    for (std::size_t i = 0;; ++i) {
        if (q == 0.0) q = -tiny;
        if (q < 0.0) ++count;
        if (i + 1 == alpha.size()) break;
        q = alpha[i + 1] - x - beta[i] * beta[i] / q;
    }
    return count;
}

}  // namespace

SymmetricEigen dense_sym_eig(const DenseMatrix& s) {
    if (!s.square()) throw std::invalid_argument("dense_sym_eig: matrix is not square");
    if (!s.all_finite()) throw std::invalid_argument("dense_sym_eig: non-finite entries");
    const double norm = s.frobenius_norm();
    if (s.max_asymmetry() > 1e-12 * norm) {
        throw std::invalid_argument("dense_sym_eig: matrix is not symmetric");
    }
    const std::size_t n = s.rows();
    DenseMatrix a = s;
    DenseMatrix v = DenseMatrix::identity(n);
    // Work on the exactly symmetric part.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) a(i, j) = a(j, i) = 0.5 * (s(i, j) + s(j, i));

    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        if (a.off_diagonal_norm() <= kJacobiTolerance * norm) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                double t;
                if (std::abs(theta) > 1e150) {
                    t = 0.5 / theta;
                } else {
                    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                }
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - sn * akq;
                    a(k, q) = sn * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - sn * aqk;
                    a(q, k) = sn * apk + c * aqk;
                }
                a(p, q) = a(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - sn * vkq;
                    v(k, q) = sn * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

    SymmetricEigen out;
    out.values.resize(n);
    out.vectors = DenseMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t src = order[k];
        out.values[k] = a(src, src);
        std::size_t big = 0;
        for (std::size_t i = 1; i < n; ++i) {
            if (std::abs(v(i, src)) > std::abs(v(big, src))) big = i;
        }
        const double sign = v(big, src) < 0.0 ? -1.0 : 1.0;
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = sign * v(i, src);
    }
    return out;
}

DenseMatrix reduce_generalized(const DenseMatrix& a, const DenseCholesky& b_factor) {
    const std::size_t n = b_factor.size();
    if (a.rows() != n || a.cols() != n) {
        throw std::invalid_argument("reduce_generalized: dimension mismatch");
    }
    // W = L^{-1} a, column by column; then C = L^{-1} W^T.
    DenseMatrix w(n, n);
    std::vector<double> col(n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) col[i] = a(i, j);
        b_factor.forward(col);
        for (std::size_t i = 0; i < n; ++i) w(i, j) = col[i];
    }
    DenseMatrix c(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) col[i] = w(j, i);
        b_factor.forward(col);
        for (std::size_t i = 0; i < n; ++i) c(i, j) = col[i];
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) c(i, j) = c(j, i) = 0.5 * (c(i, j) + c(j, i));
    return c;
}

std::vector<double> generalized_sym_eig(const DenseMatrix& a, const DenseMatrix& b) {
    if (!a.square() || !b.square() || a.rows() != b.rows()) {
        throw std::invalid_argument("generalized_sym_eig: dimension mismatch");
    }
    const DenseCholesky factor(b);
    return dense_sym_eig(reduce_generalized(a, factor)).values;
}

double tridiag_eigenvalue(std::span<const double> alpha, std::span<const double> beta, std::size_t k) {
    validate_tridiagonal(alpha, beta);
    if (k >= alpha.size()) throw std::out_of_range("tridiag_eigenvalue: index out of range");
    if (alpha.size() == 1) return alpha[0];
    // Gershgorin interval.
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        const double r = (i > 0 ? std::abs(beta[i - 1]) : 0.0) + (i < beta.size() ? std::abs(beta[i]) : 0.0);
        lo = std::min(lo, alpha[i] - r);
        hi = std::max(hi, alpha[i] + r);
    }
    const double scale = std::max(std::abs(lo), std::abs(hi));
    lo -= 1e-15 * scale + std::numeric_limits<double>::min();
    hi += 1e-15 * scale + std::numeric_limits<double>::min();
    constexpr double eps = std::numeric_limits<double>::epsilon();
    for (int it = 0; it < 2000; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (hi - lo <= 2.0 * eps * std::max(std::abs(lo), std::abs(hi)) || hi - lo <= 1e-6 * eps * scale) {
            break;
        }
        if (sturm_count(alpha, beta, mid) > k) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::pair<double, double> tridiag_eig_extremes(std::span<const double> alpha,
                                               std::span<const double> beta) {
    validate_tridiagonal(alpha, beta);
    return {tridiag_eigenvalue(alpha, beta, 0), tridiag_eigenvalue(alpha, beta, alpha.size() - 1)};
}

}  // namespace mpt
