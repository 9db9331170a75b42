#include "mpt/sparse.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "mpt/errors.hpp"

namespace mpt {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

// Elimination tree of a symmetric matrix, read from the lower triangle of
// each CSR row (which is the upper triangle of the matching column).
std::vector<std::size_t> elimination_tree(const SparseMatrix& a) {
    const std::size_t n = a.nrows();
    const auto ap = a.row_offsets();
    const auto ai = a.col_indices();
    std::vector<std::size_t> parent(n, kNone);
    std::vector<std::size_t> ancestor(n, kNone);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t p = ap[k]; p < ap[k + 1]; ++p) {
            std::size_t i = ai[p];
            while (i != kNone && i < k) {
                const std::size_t next = ancestor[i];
                ancestor[i] = k;  // path compression
                if (next == kNone) parent[i] = k;
                i = next;
            }
        }
    }
    return parent;
}

// Nonzero pattern of row k of L, written to stack[top..n) in topological
// order. `mark` must hold values != k on entry for all nodes; nodes reached
// are stamped with k.
std::size_t row_pattern(const SparseMatrix& a, std::size_t k, std::span<const std::size_t> parent,
                        std::span<std::size_t> mark, std::span<std::size_t> stack) {
    const std::size_t n = a.nrows();
    const auto ap = a.row_offsets();
    const auto ai = a.col_indices();
    std::size_t top = n;
    mark[k] = k;
    for (std::size_t p = ap[k]; p < ap[k + 1]; ++p) {
        std::size_t i = ai[p];
        if (i > k) continue;
        std::size_t len = 0;
        for (; mark[i] != k; i = parent[i]) {
            stack[len++] = i;
            mark[i] = k;
        }
        while (len > 0) stack[--top] = stack[--len];
    }
    return top;
}

}  // namespace

SpdFactorization::SpdFactorization(const SparseMatrix& a) : n_(a.nrows()) {
    if (a.nrows() != a.ncols()) throw std::invalid_argument("SpdFactorization: matrix is not square");
    const std::size_t n = n_;
    const auto parent = elimination_tree(a);

    std::vector<std::size_t> mark(n, kNone);
    std::vector<std::size_t> stack(n);

    // Symbolic pass: column counts of L.
    std::vector<std::size_t> counts(n, 1);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t top = row_pattern(a, k, parent, mark, stack);
        for (std::size_t t = top; t < n; ++t) ++counts[stack[t]];
    }
    lp_.assign(n + 1, 0);
    for (std::size_t j = 0; j < n; ++j) lp_[j + 1] = lp_[j] + counts[j];
    li_.resize(lp_[n]);
    lx_.resize(lp_[n]);

    // Numeric pass, one row of L at a time.
    std::vector<std::size_t> next(lp_.begin(), lp_.end() - 1);
    std::vector<double> x(n, 0.0);
    std::fill(mark.begin(), mark.end(), kNone);
    const auto ap = a.row_offsets();
    const auto ai = a.col_indices();
    const auto ax = a.values();
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t top = row_pattern(a, k, parent, mark, stack);
        x[k] = 0.0;
        for (std::size_t p = ap[k]; p < ap[k + 1]; ++p) {
            if (ai[p] <= k) x[ai[p]] = ax[p];
        }
        double d = x[k];
        x[k] = 0.0;
        for (std::size_t t = top; t < n; ++t) {
            const std::size_t i = stack[t];
            const double lki = x[i] / lx_[lp_[i]];
            x[i] = 0.0;
            for (std::size_t p = lp_[i] + 1; p < next[i]; ++p) x[li_[p]] -= lx_[p] * lki;
            d -= lki * lki;
            li_[next[i]] = k;
            lx_[next[i]++] = lki;
        }
        if (!(d > 0.0)) {
            throw NotSpdError("SpdFactorization: non-positive pivot at row " + std::to_string(k), k);
        }
        li_[next[k]] = k;
        lx_[next[k]++] = std::sqrt(d);
    }
}

void SpdFactorization::solve_in_place(std::span<double> x) const {
    if (x.size() != n_) throw std::invalid_argument("SpdFactorization::solve: length mismatch");
    for (std::size_t j = 0; j < n_; ++j) {
        x[j] /= lx_[lp_[j]];
        const double xj = x[j];
        for (std::size_t p = lp_[j] + 1; p < lp_[j + 1]; ++p) x[li_[p]] -= lx_[p] * xj;
    }
    for (std::size_t j = n_; j-- > 0;) {
        double s = x[j];
        for (std::size_t p = lp_[j] + 1; p < lp_[j + 1]; ++p) s -= lx_[p] * x[li_[p]];
        x[j] = s / lx_[lp_[j]];
    }
}

std::vector<double> SpdFactorization::solve(std::span<const double> b) const {
    std::vector<double> x(b.begin(), b.end());
    solve_in_place(x);
    return x;
}

}  // namespace mpt
