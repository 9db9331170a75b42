#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mpt/mesh.hpp"
#include "mpt/sparse.hpp"

namespace mpt {

/// Maps mesh vertices to unknowns. Homogeneous Dirichlet conditions are
/// imposed by keeping only interior vertices.
struct DofMap {
    std::vector<std::size_t> dof_to_vertex;
    std::vector<std::ptrdiff_t> vertex_to_dof;  // -1 for eliminated vertices

    std::size_t size() const { return dof_to_vertex.size(); }
};

/// Interior vertices in row-major order.
DofMap make_interior_dof_map(const StructuredMesh& mesh);
/// Every vertex, no boundary elimination.
DofMap make_full_dof_map(const StructuredMesh& mesh);

/// P1 stiffness matrix, entry (i, j) = integral of grad(phi_i) . grad(phi_j).
SparseMatrix assemble_stiffness(const StructuredMesh& mesh, const DofMap& dofs);

/// Consistent P1 mass matrix, entry (i, j) = integral of phi_i phi_j.
SparseMatrix assemble_mass(const StructuredMesh& mesh, const DofMap& dofs);

/// u^T M v.
double l2_inner(const SparseMatrix& mass, std::span<const double> u, std::span<const double> v);

}  // namespace mpt
