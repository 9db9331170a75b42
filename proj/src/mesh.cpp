#include "mpt/mesh.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace mpt {

std::size_t StructuredMesh::num_boundary() const {
    return static_cast<std::size_t>(std::count(boundary_mask.begin(), boundary_mask.end(), true));
}

double StructuredMesh::signed_area(std::size_t cell) const {
    const auto& c = cells.at(cell);
    const auto& a = vertices[c[0]];
    const auto& b = vertices[c[1]];
    const auto& d = vertices[c[2]];
    return 0.5 * ((b[0] - a[0]) * (d[1] - a[1]) - (d[0] - a[0]) * (b[1] - a[1]));
}

StructuredMesh build_unit_square_mesh(int n) {
    if (n < 1) {
        throw std::invalid_argument("build_unit_square_mesh: n must be >= 1, got " + std::to_string(n));
    }
    StructuredMesh mesh;
    mesh.n = n;
    mesh.h = 1.0 / n;
    const int stride = n + 1;
    mesh.vertices.reserve(static_cast<std::size_t>(stride) * stride);
    mesh.boundary_mask.reserve(static_cast<std::size_t>(stride) * stride);
    for (int j = 0; j <= n; ++j) {
        for (int i = 0; i <= n; ++i) {
            // i/n rather than i*h so that the last row/column is exactly 1.
            mesh.vertices.push_back({static_cast<double>(i) / n, static_cast<double>(j) / n});
            mesh.boundary_mask.push_back(i == 0 || i == n || j == 0 || j == n);
        }
    }
    mesh.cells.reserve(2 * static_cast<std::size_t>(n) * n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const int v00 = j * stride + i;
            const int v10 = v00 + 1;
            const int v01 = v00 + stride;
            const int v11 = v01 + 1;
            mesh.cells.push_back({v00, v10, v11});
            mesh.cells.push_back({v00, v11, v01});
        }
    }
    return mesh;
}

}  // namespace mpt
