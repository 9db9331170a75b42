#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace mpt {

/// Uniform triangulation of the unit square [0,1]^2.
///
/// Vertices are numbered row-major (x fastest); vertex (i, j) sits at
/// (i*h, j*h) with index j*(n+1)+i. Each of the n^2 grid squares is split
/// along its lower-left to upper-right diagonal into two counter-clockwise
/// triangles. The mesh is immutable once built.
struct StructuredMesh {
    int n = 0;
    double h = 0.0;
    std::vector<std::array<double, 2>> vertices;
    std::vector<std::array<int, 3>> cells;
    std::vector<bool> boundary_mask;

    std::size_t num_vertices() const { return vertices.size(); }
    std::size_t num_cells() const { return cells.size(); }
    std::size_t num_boundary() const;
    std::size_t num_interior() const { return num_vertices() - num_boundary(); }

    /// Signed area of a cell (positive for counter-clockwise orientation).
    double signed_area(std::size_t cell) const;
};

/// Throws std::invalid_argument for n < 1.
StructuredMesh build_unit_square_mesh(int n);

}  // namespace mpt
