#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "mpt/mesh.hpp"

using namespace mpt;

TEST_CASE("smallest mesh") {
    const auto m = build_unit_square_mesh(1);
    CHECK(m.num_vertices() == 4);
    CHECK(m.num_cells() == 2);
    CHECK(m.num_boundary() == 4);
    CHECK(m.num_interior() == 0);
}

TEST_CASE("n = 8 counts") {
    const auto m = build_unit_square_mesh(8);
    CHECK(m.num_vertices() == 81);
    CHECK(m.num_cells() == 128);
    CHECK(m.num_boundary() == 32);
    CHECK(m.num_interior() == 49);
    CHECK(m.h == doctest::Approx(0.125));
}

TEST_CASE("n = 0 is rejected") {
    CHECK_THROWS_AS(build_unit_square_mesh(0), std::invalid_argument);
    CHECK_THROWS_AS(build_unit_square_mesh(-3), std::invalid_argument);
}

TEST_CASE("structural invariants for a range of n") {
    for (int n : {1, 2, 3, 5, 8, 16, 31}) {
        CAPTURE(n);
        const auto m = build_unit_square_mesh(n);
        const auto nn = static_cast<std::size_t>(n);
        CHECK(m.num_vertices() == (nn + 1) * (nn + 1));
        CHECK(m.num_cells() == 2 * nn * nn);
        CHECK(m.num_boundary() == 4 * nn);
        CHECK(m.num_interior() == (nn - 1) * (nn - 1));

        double total = 0.0;
        for (std::size_t c = 0; c < m.num_cells(); ++c) {
            const double a = m.signed_area(c);
            CHECK(a == doctest::Approx(m.h * m.h / 2).epsilon(1e-12));
            total += a;
        }
        CHECK(std::abs(total - 1.0) < 1e-12);

        std::vector<int> incidence(m.num_vertices(), 0);
        for (const auto& cell : m.cells)
            for (int v : cell) ++incidence[v];
        for (std::size_t v = 0; v < m.num_vertices(); ++v) {
            const auto [x, y] = m.vertices[v];
            CHECK(x >= 0.0);
            CHECK(x <= 1.0);
            CHECK(y >= 0.0);
            CHECK(y <= 1.0);
            const bool on_boundary = x == 0.0 || x == 1.0 || y == 0.0 || y == 1.0;
            CHECK(m.boundary_mask[v] == on_boundary);
            if (!on_boundary) CHECK(incidence[v] == 6);
        }
    }
}

TEST_CASE("vertex ordering is row-major") {
    const auto m = build_unit_square_mesh(3);
    CHECK(m.vertices[1][0] == doctest::Approx(1.0 / 3));
    CHECK(m.vertices[1][1] == 0.0);
    CHECK(m.vertices[4][0] == 0.0);
    CHECK(m.vertices[4][1] == doctest::Approx(1.0 / 3));
    CHECK(m.vertices.back()[0] == 1.0);
    CHECK(m.vertices.back()[1] == 1.0);
}
