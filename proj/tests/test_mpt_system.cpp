#include <cmath>
#include <memory>
#include <random>

#include "doctest.h"
#include "mpt/eigen.hpp"
#include "mpt/errors.hpp"
#include "mpt/fem.hpp"
#include "mpt/mpt_system.hpp"
#include "mpt/oracle.hpp"
#include "mpt/precond.hpp"
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

NetworkParams three_network(double k1, double k2, double k3, double x12, double x13, double x23) {
    NetworkParams p;
    p.j_count = 3;
    p.k = {k1, k2, k3};
    p.xi = DenseMatrix{{0, x12, x13}, {x12, 0, x23}, {x13, x23, 0}};
    p.validate();
    return p;
}

NetworkParams random_params(std::size_t J, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> logk(-3.0, 3.0), logx(-2.0, 4.0);
    NetworkParams p;
    p.j_count = J;
    p.xi = DenseMatrix(J, J);
    for (std::size_t j = 0; j < J; ++j) p.k.push_back(std::pow(10.0, logk(rng)));
    for (std::size_t i = 0; i < J; ++i)
        for (std::size_t j = i + 1; j < J; ++j) p.xi(i, j) = p.xi(j, i) = std::pow(10.0, logx(rng));
    p.validate();
    return p;
}

}  // namespace

TEST_CASE("NetworkParams validation") {
    CHECK_THROWS_AS(NetworkParams::two_network(0.0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(NetworkParams::two_network(1.0, 1.0, -1.0), std::invalid_argument);
    NetworkParams asym;
    asym.j_count = 2;
    asym.k = {1, 1};
    asym.xi = DenseMatrix{{0, 1}, {2, 0}};
    CHECK_THROWS_AS(build_coupling(asym), std::invalid_argument);
    NetworkParams diag = NetworkParams::uncoupled({1, 1});
    diag.xi(0, 0) = 1.0;
    CHECK_THROWS_AS(diag.validate(), std::invalid_argument);
}

TEST_CASE("build_coupling examples") {
    const auto c2 = build_coupling(NetworkParams::two_network(1, 1, 7.5));
    CHECK((c2.e - DenseMatrix{{7.5, -7.5}, {-7.5, 7.5}}).max_abs() == 0.0);
    CHECK(c2.xi_lumped == std::vector<double>{7.5, 7.5});

    const auto c1 = build_coupling(NetworkParams::uncoupled({3.0}));
    CHECK(c1.e.rows() == 1);
    CHECK(c1.e(0, 0) == 0.0);
    CHECK(c1.xi_lumped[0] == 0.0);

    const auto c3 = build_coupling(three_network(1, 1, 1, 1, 1, 1));
    CHECK((c3.e - DenseMatrix{{2, -1, -1}, {-1, 2, -1}, {-1, -1, 2}}).max_abs() == 0.0);
    const auto ev = dense_sym_eig(c3.e).values;
    CHECK(std::abs(ev[0]) < 1e-14);
    CHECK(ev[1] == doctest::Approx(3.0));
    CHECK(ev[2] == doctest::Approx(3.0));
}

TEST_CASE("coupling matrix invariants on random params") {
    std::mt19937_64 rng(1);
    for (std::size_t J : {1u, 2u, 3u, 5u}) {
        const auto c = build_coupling(random_params(J, rng));
        CHECK(c.e.max_asymmetry() == 0.0);
        for (std::size_t j = 0; j < J; ++j) {
            double row = 0.0;
            for (std::size_t i = 0; i < J; ++i) row += c.e(j, i);
            CHECK(std::abs(row) <= 1e-12 * c.e.max_abs());
            CHECK(c.xi_lumped[j] >= 0.0);
        }
        CHECK(dense_sym_eig(c.e).values.front() >= -1e-12 * c.e.frobenius_norm());
    }
}

TEST_CASE("assemble_standard special cases") {
    std::mt19937_64 rng(2);
    Fixture fx(4);
    const auto x1 = random_vector(fx.dofs.size(), rng);
    const auto one = assemble_standard(NetworkParams::uncoupled({1.0}), fx.stiffness, fx.mass);
    CHECK(rel_diff(one.apply(x1), fx.stiffness->multiply(x1)) < 1e-15);

    const auto two = assemble_standard(NetworkParams::uncoupled({1.0, 1.0}), fx.stiffness, fx.mass);
    CHECK(two.block_diagonal());
    const auto d = materialize_dense(two);
    const auto s = fx.stiffness->to_dense();
    const std::size_t n = fx.dofs.size();
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            CHECK(d(r, c) == s(r, c));
            CHECK(d(n + r, n + c) == s(r, c));
            CHECK(d(r, n + c) == 0.0);
        }
}

TEST_CASE("quadratic form expands into diffusion plus exchange") {
    std::mt19937_64 rng(3);
    Fixture fx(6);
    const std::size_t n = fx.dofs.size();
    const double xi = 1.0;
    const auto op = assemble_standard(NetworkParams::two_network(1, 1, xi), fx.stiffness, fx.mass);
    for (int trial = 0; trial < 10; ++trial) {
        const auto x = random_vector(2 * n, rng);
        const std::span<const double> p1(x.data(), n), p2(x.data() + n, n);
        std::vector<double> diff(n);
        for (std::size_t r = 0; r < n; ++r) diff[r] = p1[r] - p2[r];
        const double grad = l2_inner(*fx.stiffness, p1, p1) + l2_inner(*fx.stiffness, p2, p2);
        const double expected = grad + xi * l2_inner(*fx.mass, diff, diff);
        CHECK(dot(x, op.apply(x)) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("apply: zero, linearity and dense agreement") {
    std::mt19937_64 rng(4);
    Fixture fx(4);
    const auto op = assemble_standard(NetworkParams::two_network(1.0, 0.3, 12.0), fx.stiffness, fx.mass);
    const std::vector<double> zero(op.size(), 0.0);
    for (double v : op.apply(zero)) CHECK(v == 0.0);

    const auto x = random_vector(op.size(), rng);
    const auto y = random_vector(op.size(), rng);
    std::vector<double> combo(op.size());
    for (std::size_t i = 0; i < combo.size(); ++i) combo[i] = 2.0 * x[i] - 0.5 * y[i];
    const auto ax = op.apply(x), ay = op.apply(y);
    std::vector<double> expected(op.size());
    for (std::size_t i = 0; i < combo.size(); ++i) expected[i] = 2.0 * ax[i] - 0.5 * ay[i];
    CHECK(rel_diff(op.apply(combo), expected) < 1e-13);

    const auto dense = materialize_dense(op);
    CHECK(rel_diff(op.apply(x), dense.multiply(x)) < 1e-13);
    CHECK(dense.max_asymmetry() <= 1e-14 * dense.max_abs());

    CHECK_THROWS_AS(op.apply(std::vector<double>(3)), std::invalid_argument);
}

TEST_CASE("materialize_dense: zero coefficients and size guard") {
    Fixture fx(4);
    const BlockOperator zero(DenseMatrix(2, 2), DenseMatrix(2, 2), fx.stiffness, fx.mass);
    CHECK(materialize_dense(zero).max_abs() == 0.0);
    const BlockOperator id(DenseMatrix::identity(2), DenseMatrix(2, 2), fx.stiffness, fx.mass);
    CHECK(id.block_diagonal());

    Fixture big(40);  // 39^2 * 2 = 3042 > 2048
    const auto op = assemble_standard(NetworkParams::two_network(1, 1, 1), big.stiffness, big.mass);
    CHECK_THROWS_AS(materialize_dense(op), SizeGuardError);
}

TEST_CASE("exchange identity and operator symmetry on random data") {
    std::mt19937_64 rng(5);
    Fixture fx(5);
    const std::size_t n = fx.dofs.size();
    for (std::size_t J : {2u, 3u, 4u}) {
        const auto params = random_params(J, rng);
        const auto c = build_coupling(params);
        const BlockOperator exchange(DenseMatrix(J, J), c.e, fx.stiffness, fx.mass);
        const auto op = assemble_standard(params, fx.stiffness, fx.mass);
        for (int trial = 0; trial < 5; ++trial) {
            const auto x = random_vector(J * n, rng);
            const auto y = random_vector(J * n, rng);
            double half_sum = 0.0;
            for (std::size_t j = 0; j < J; ++j)
                for (std::size_t i = 0; i < J; ++i) {
                    std::vector<double> d(n);
                    for (std::size_t r = 0; r < n; ++r) d[r] = x[j * n + r] - x[i * n + r];
                    half_sum += 0.5 * params.xi(j, i) * l2_inner(*fx.mass, d, d);
                }
            const double form = dot(x, exchange.apply(x));
            CHECK(form == doctest::Approx(half_sum).epsilon(1e-12));
            CHECK(form >= 0.0);

            const double axy = dot(op.apply(x), y), xay = dot(x, op.apply(y));
            CHECK(std::abs(axy - xay) <= 1e-12 * std::max(std::abs(axy), 1.0));
        }
    }
}

TEST_CASE("sampled coercivity and continuity against the standard preconditioner") {
    std::mt19937_64 rng(6);
    Fixture fx(6);
    const double c_omega = discrete_poincare_constant(*fx.stiffness, *fx.mass);
    const std::size_t n = fx.dofs.size();
    for (std::size_t J : {2u, 3u}) {
        for (int rep = 0; rep < 3; ++rep) {
            const auto params = random_params(J, rng);
            const auto op = assemble_standard(params, fx.stiffness, fx.mass);
            const auto pre = build_standard_precond(params, fx.stiffness, fx.mass);
            const auto bounds = theoretical_bounds(params, c_omega);
            for (int trial = 0; trial < 10; ++trial) {
                const auto x = random_vector(J * n, rng);
                const auto y = random_vector(J * n, rng);
                CHECK(dot(op.apply(x), x) >= bounds.alpha * pre.norm_squared(x));
                CHECK(std::abs(dot(op.apply(x), y)) <=
                      bounds.beta * std::sqrt(pre.norm_squared(x) * pre.norm_squared(y)));
            }
        }
    }
}
