#include "mpt/fem.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace mpt {

namespace {

void check_dofs(const StructuredMesh& mesh, const DofMap& dofs) {
    if (dofs.vertex_to_dof.size() != mesh.num_vertices()) {
        throw std::invalid_argument("dof map does not match mesh");
    }
}

template <class ElementMatrix>
SparseMatrix assemble(const StructuredMesh& mesh, const DofMap& dofs, ElementMatrix&& element) {
    check_dofs(mesh, dofs);
    std::vector<Triplet> triplets;
    triplets.reserve(9 * mesh.num_cells());
    for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
        const auto& cell = mesh.cells[c];
        const std::array<std::array<double, 3>, 3> local = element(c);
        for (int a = 0; a < 3; ++a) {
            const auto da = dofs.vertex_to_dof[cell[a]];
            if (da < 0) continue;
            for (int b = 0; b < 3; ++b) {
                const auto db = dofs.vertex_to_dof[cell[b]];
                if (db < 0) continue;
                triplets.push_back({static_cast<std::size_t>(da), static_cast<std::size_t>(db), local[a][b]});
            }
        }
    }
    return SparseMatrix::from_triplets(dofs.size(), dofs.size(), std::move(triplets), true);
}

}  // namespace

DofMap make_interior_dof_map(const StructuredMesh& mesh) {
    DofMap dofs;
    dofs.vertex_to_dof.assign(mesh.num_vertices(), -1);
    for (std::size_t v = 0; v < mesh.num_vertices(); ++v) {
        if (mesh.boundary_mask[v]) continue;
        dofs.vertex_to_dof[v] = static_cast<std::ptrdiff_t>(dofs.dof_to_vertex.size());
        dofs.dof_to_vertex.push_back(v);
    }
    return dofs;
}

DofMap make_full_dof_map(const StructuredMesh& mesh) {
    DofMap dofs;
    dofs.vertex_to_dof.resize(mesh.num_vertices());
    dofs.dof_to_vertex.resize(mesh.num_vertices());
    for (std::size_t v = 0; v < mesh.num_vertices(); ++v) {
        dofs.vertex_to_dof[v] = static_cast<std::ptrdiff_t>(v);
        dofs.dof_to_vertex[v] = v;
    }
    return dofs;
}

SparseMatrix assemble_stiffness(const StructuredMesh& mesh, const DofMap& dofs) {
    return assemble(mesh, dofs, [&](std::size_t c) {
        const auto& cell = mesh.cells[c];
        const double area = mesh.signed_area(c);
        // grad(phi_a) = (y_b - y_c, x_c - x_b) / (2 area) for (a, b, c) cyclic.
        std::array<std::array<double, 2>, 3> grad{};
        for (int a = 0; a < 3; ++a) {
            const auto& pb = mesh.vertices[cell[(a + 1) % 3]];
            const auto& pc = mesh.vertices[cell[(a + 2) % 3]];
            grad[a] = {(pb[1] - pc[1]) / (2.0 * area), (pc[0] - pb[0]) / (2.0 * area)};
        }
        std::array<std::array<double, 3>, 3> k{};
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                k[a][b] = area * (grad[a][0] * grad[b][0] + grad[a][1] * grad[b][1]);
        return k;
    });
}

SparseMatrix assemble_mass(const StructuredMesh& mesh, const DofMap& dofs) {
    return assemble(mesh, dofs, [&](std::size_t c) {
        const double area = std::abs(mesh.signed_area(c));
        std::array<std::array<double, 3>, 3> m{};
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) m[a][b] = area / 12.0 * (a == b ? 2.0 : 1.0);
        return m;
    });
}

double l2_inner(const SparseMatrix& mass, std::span<const double> u, std::span<const double> v) {
    if (u.size() != mass.ncols() || v.size() != mass.nrows()) {
        throw std::invalid_argument("l2_inner: dimension mismatch");
    }
    const auto mv = mass.multiply(v);
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * mv[i];
    return s;
}

}  // namespace mpt
