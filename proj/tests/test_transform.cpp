#include <cmath>
#include <memory>
#include <numbers>
#include <random>

#include "doctest.h"
#include "mpt/eigen.hpp"
#include "mpt/fem.hpp"
#include "mpt/krylov.hpp"
#include "mpt/precond.hpp"
#include "mpt/transform.hpp"
#include "test_util.hpp"

using namespace mpt;
using namespace mpt::testing;

namespace {

struct Fixture {
    explicit Fixture(int n) : mesh(build_unit_square_mesh(n)), dofs(make_interior_dof_map(mesh)) {
        stiffness = std::make_shared<const SparseMatrix>(assemble_stiffness(mesh, dofs));
        mass = std::make_shared<const SparseMatrix>(assemble_mass(mesh, dofs));
    }
    StructuredMesh mesh;
    DofMap dofs;
    SharedMatrix stiffness;
    SharedMatrix mass;
};

NetworkParams random_params(std::size_t J, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> logk(-6.0, 6.0), logx(-6.0, 6.0), coin(0.0, 1.0);
    NetworkParams p;
    p.j_count = J;
    p.xi = DenseMatrix(J, J);
    for (std::size_t j = 0; j < J; ++j) p.k.push_back(std::pow(10.0, logk(rng)));
    for (std::size_t i = 0; i < J; ++i)
        for (std::size_t j = i + 1; j < J; ++j)
            p.xi(i, j) = p.xi(j, i) = coin(rng) < 0.2 ? 0.0 : std::pow(10.0, logx(rng));
    p.validate();
    return p;
}

// The explicit two-network eigenvector matrix: columns (1, 1) and
// (K2 (xi/K2 - xi (K1+K2)/(K1 K2)) / xi, 1).
DenseMatrix two_network_eigenvectors(double k1, double k2, double xi) {
    const double t01 = k2 * (xi / k2 - xi * (k1 + k2) / (k1 * k2)) / xi;
    return DenseMatrix{{1.0, t01}, {1.0, 1.0}};
}

// Householder reduction to tridiagonal form followed by Sturm bisection:
// an eigenvalue route that shares nothing with the Jacobi solver.
std::vector<double> householder_eigenvalues(DenseMatrix a) {
    const std::size_t n = a.rows();
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double alpha = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) alpha += a(i, k) * a(i, k);
        alpha = std::sqrt(alpha);
        if (alpha == 0.0) continue;
        if (a(k + 1, k) > 0.0) alpha = -alpha;
        std::vector<double> v(n, 0.0);
        v[k + 1] = a(k + 1, k) - alpha;
        for (std::size_t i = k + 2; i < n; ++i) v[i] = a(i, k);
        const double vv = dot(v, v);
        if (vv == 0.0) continue;
        DenseMatrix h = DenseMatrix::identity(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) h(i, j) -= 2.0 * v[i] * v[j] / vv;
        a = h * a * h;
    }
    std::vector<double> diag(n), off(n > 0 ? n - 1 : 0);
    for (std::size_t i = 0; i < n; ++i) diag[i] = a(i, i);
    for (std::size_t i = 0; i + 1 < n; ++i) off[i] = 0.5 * (a(i + 1, i) + a(i, i + 1));
    std::vector<double> out;
    for (std::size_t k = 0; k < n; ++k) out.push_back(tridiag_eigenvalue(diag, off, k));
    return out;
}

std::vector<double> spectrum_of_k_inverse_e(const NetworkParams& p) {
    const auto c = build_coupling(p);
    const std::size_t J = p.j_count;
    DenseMatrix s(J, J);
    for (std::size_t i = 0; i < J; ++i)
        for (std::size_t j = 0; j < J; ++j) s(i, j) = c.e(i, j) / std::sqrt(p.k[i] * p.k[j]);
    return householder_eigenvalues(s);
}

}  // namespace

TEST_CASE("uncoupled networks give T = K^{-1/2}") {
    const auto p = NetworkParams::uncoupled({4.0, 0.25, 9.0});
    const auto ct = diagonalize_by_congruence(p);
    CHECK(ct.xi_tilde == std::vector<double>{0.0, 0.0, 0.0});
    CHECK((ct.t - DenseMatrix::diagonal(std::vector<double>{0.5, 2.0, 1.0 / 3.0})).max_abs() < 1e-16);
    for (double k : ct.k_tilde) CHECK(k == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(ct.residual_k == 0.0);
    CHECK(ct.residual_e == 0.0);
}

TEST_CASE("two networks: xi_tilde = {0, xi (K1+K2)/(K1 K2)}") {
    for (double xi : {1e-3, 1.0, 1e4}) {
        const auto ct = diagonalize_by_congruence(NetworkParams::two_network(1, 1, xi));
        CHECK(std::abs(ct.xi_tilde[0]) <= 1e-14 * xi);
        CHECK(ct.xi_tilde[1] == doctest::Approx(2.0 * xi).epsilon(1e-13));
    }
    const auto ct = diagonalize_by_congruence(NetworkParams::two_network(2, 1, 4));
    CHECK(std::abs(ct.xi_tilde[0]) < 1e-13);
    CHECK(ct.xi_tilde[1] == doctest::Approx(6.0).epsilon(1e-13));
    const auto ev = dense_sym_eig(DenseMatrix{{4.0 / 2.0, -4.0 / std::sqrt(2.0)}, {-4.0 / std::sqrt(2.0), 4.0}});
    CHECK(ct.xi_tilde[1] == doctest::Approx(ev.values[1]).epsilon(1e-13));
}

TEST_CASE("explicit two-network eigenvector matrix passes verify_congruence") {
    const auto res = verify_congruence(two_network_eigenvectors(1, 1, 1), NetworkParams::two_network(1, 1, 1));
    CHECK(res.residual_k <= 1e-12);
    CHECK(res.residual_e <= 1e-12);
    CHECK(res.k_tilde(0, 0) == doctest::Approx(2.0));
    CHECK(res.k_tilde(1, 1) == doctest::Approx(2.0));
    CHECK(std::abs(res.e_tilde(0, 0)) < 1e-12);
    CHECK(res.e_tilde(1, 1) == doctest::Approx(4.0));

    for (auto [k1, k2, xi] : {std::tuple{2.0, 3.0, 5.0}, std::tuple{1e-3, 10.0, 1e4}}) {
        const auto r = verify_congruence(two_network_eigenvectors(k1, k2, xi), NetworkParams::two_network(k1, k2, xi));
        CHECK(r.relative_k() <= 1e-12);
        CHECK(r.relative_e() <= 1e-12);
        CHECK(r.k_tilde(0, 0) == doctest::Approx(k1 + k2).epsilon(1e-12));
        CHECK(r.k_tilde(1, 1) == doctest::Approx(k2 * (k1 + k2) / k1).epsilon(1e-12));
        CHECK(r.e_tilde(1, 1) ==
              doctest::Approx(xi * (k1 * k1 + k1 * k2 + k2 * (k1 + k2)) / (k1 * k1)).epsilon(1e-12));
    }
}

TEST_CASE("identity does not decouple") {
    const auto res = verify_congruence(DenseMatrix::identity(2), NetworkParams::two_network(1, 1, 3));
    CHECK(res.residual_k == 0.0);
    CHECK(res.residual_e == doctest::Approx(3.0 * std::sqrt(2.0)));
    CHECK_THROWS_AS(verify_congruence(DenseMatrix::identity(3), NetworkParams::two_network(1, 1, 3)),
                    std::invalid_argument);
}

TEST_CASE("canonical transform on random parameters") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t J = 1 + trial % 6;
        const auto p = random_params(J, rng);
        const auto ct = diagonalize_by_congruence(p);
        const auto res = verify_congruence(ct.t, p);
        CHECK(res.relative_k() <= 1e-12);
        CHECK(res.relative_e() <= 1e-12);
        for (double k : ct.k_tilde) CHECK(k == doctest::Approx(1.0).epsilon(1e-12));
        for (std::size_t j = 1; j < J; ++j) CHECK(ct.xi_tilde[j - 1] <= ct.xi_tilde[j]);
        for (double x : ct.xi_tilde) CHECK(x >= 0.0);

        const auto ref = spectrum_of_k_inverse_e(p);
        const double scale = std::max(ref.back(), 1e-300);
        for (std::size_t j = 0; j < J; ++j) CHECK(std::abs(ct.xi_tilde[j] - ref[j]) <= 1e-10 * scale);
        // Constants lie in the kernel of E, so one transformed exchange vanishes.
        if (J >= 2) CHECK(ct.xi_tilde[0] <= 1e-12 * scale);
        CHECK_FALSE(ct.t.diag().empty());
    }
}

TEST_CASE("invalid permeability is rejected") {
    NetworkParams p = NetworkParams::two_network(1, 1, 1);
    p.k[1] = -1.0;
    CHECK_THROWS_AS(diagonalize_by_congruence(p), std::invalid_argument);
}

TEST_CASE("transform_rhs and recover_solution") {
    std::mt19937_64 rng(9);
    const auto v = random_vector(7, rng);
    const auto ct = diagonalize_by_congruence(NetworkParams::two_network(1, 1, 1));
    std::vector<double> g(v);
    g.insert(g.end(), v.begin(), v.end());
    const auto gt = transform_rhs(ct, g);
    for (std::size_t r = 0; r < 7; ++r) {
        CHECK(gt[r] == doctest::Approx(std::numbers::sqrt2 * v[r]).epsilon(1e-14));
        CHECK(std::abs(gt[7 + r]) < 1e-15);
    }
    const std::vector<double> zero(14, 0.0);
    CHECK(transform_rhs(ct, zero) == zero);
    CHECK(recover_solution(ct, zero) == zero);

    CongruenceTransform id;
    id.t = DenseMatrix::identity(2);
    CHECK(rel_diff(transform_rhs(id, g), g) == 0.0);
    CHECK(rel_diff(recover_solution(id, g), g) == 0.0);

    CHECK_THROWS_AS(transform_rhs(ct, std::vector<double>(5)), std::invalid_argument);
}

TEST_CASE("assemble_transformed blocks and congruence equivalence") {
    std::mt19937_64 rng(10);
    Fixture fx(5);
    const std::size_t n = fx.dofs.size();

    const auto plain = assemble_transformed(diagonalize_by_congruence(NetworkParams::uncoupled({1, 1})),
                                            fx.stiffness, fx.mass);
    CHECK(plain.block_diagonal());
    CHECK((plain.stiff_coeff() - DenseMatrix::identity(2)).max_abs() < 1e-15);
    CHECK(plain.mass_coeff().max_abs() == 0.0);

    const auto coupled = assemble_transformed(diagonalize_by_congruence(NetworkParams::two_network(1, 1, 1)),
                                              fx.stiffness, fx.mass);
    CHECK(coupled.block_diagonal());
    CHECK(coupled.mass_coeff()(1, 1) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(std::abs(coupled.mass_coeff()(0, 0)) < 1e-15);

    for (std::size_t J : {2u, 3u, 4u}) {
        const auto p = random_params(J, rng);
        const auto ct = diagonalize_by_congruence(p);
        const auto at = assemble_transformed(ct, fx.stiffness, fx.mass);
        const auto a = assemble_standard(p, fx.stiffness, fx.mass);
        for (int trial = 0; trial < 5; ++trial) {
            const auto xt = random_vector(J * n, rng);
            const auto x = recover_solution(ct, xt);
            const double lhs = dot(xt, at.apply(xt));
            const double rhs = dot(x, a.apply(x));
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
        }
    }
}

TEST_CASE("standard and transformed solves agree") {
    std::mt19937_64 rng(12);
    Fixture fx(16);
    const std::size_t n = fx.dofs.size();
    CgOptions opts;
    opts.tolerance = 1e-14;
    opts.max_iterations = 5000;
    for (std::size_t J : {2u, 3u}) {
        std::uniform_real_distribution<double> logv(-2.0, 3.0);
        NetworkParams p;
        p.j_count = J;
        p.xi = DenseMatrix(J, J);
        for (std::size_t j = 0; j < J; ++j) p.k.push_back(std::pow(10.0, logv(rng) / 2));
        for (std::size_t i = 0; i < J; ++i)
            for (std::size_t j = i + 1; j < J; ++j) p.xi(i, j) = p.xi(j, i) = std::pow(10.0, logv(rng));
        const auto g = random_vector(J * n, rng);
        const std::vector<double> x0(J * n, 0.0);

        const auto a = assemble_standard(p, fx.stiffness, fx.mass);
        const auto b = build_standard_precond(p, fx.stiffness, fx.mass);
        const auto standard = pcg(a, b, g, x0, opts);

        const auto ct = diagonalize_by_congruence(p);
        const auto at = assemble_transformed(ct, fx.stiffness, fx.mass);
        const auto bt = build_transformed_precond(ct, fx.stiffness, fx.mass);
        const auto transformed = pcg(at, bt, transform_rhs(ct, g), x0, opts);
        const auto recovered = recover_solution(ct, transformed.solution);

        std::vector<double> diff(J * n);
        for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = recovered[i] - standard.solution[i];
        double num = 0.0, den = 0.0;
        for (std::size_t j = 0; j < J; ++j) {
            num += l2_inner(*fx.mass, block_of(std::span<const double>(diff), j, n), block_of(std::span<const double>(diff), j, n));
            den += l2_inner(*fx.mass, block_of(std::span<const double>(standard.solution), j, n),
                            block_of(std::span<const double>(standard.solution), j, n));
        }
        CHECK(std::sqrt(num / den) <= 1e-8);
    }
}
