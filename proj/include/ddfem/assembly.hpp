#ifndef DDFEM_ASSEMBLY_HPP
#define DDFEM_ASSEMBLY_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "ddfem/constitutive.hpp"
#include "ddfem/fespace.hpp"
#include "ddfem/mesh.hpp"

namespace ddfem {

using SparseMatrix = Eigen::SparseMatrix<double>;
using Vector = Eigen::VectorXd;
using BodyForce = std::function<Vec2(const Vec2&)>;

struct DirichletSpec {
    bool fix_x = false;
    bool fix_y = false;
    // boundary displacement data; zero when absent
    std::function<Vec2(const Vec2&)> value;
};

struct BoundaryConditions {
    std::map<BoundaryTag, DirichletSpec> dirichlet;
    std::map<BoundaryTag, Vec2> neumann; // constant traction per tag, Pa
    // extra single-DOF pins (rigid-mode fixes), as (dof, value)
    std::vector<std::pair<int, double>> point_constraints;
};

namespace detail {

// sigma : eps(phi) where phi = e_c * N_a; equals row c of sigma dotted
// with grad(N_a) since sigma is symmetric.
inline double contract_test(const Stress2& sigma, int component, const Vec2& grad) {
    if (component == 0) return sigma.xx * grad.x() + sigma.xy * grad.y();
    return sigma.xy * grad.x() + sigma.yy * grad.y();
}

} // namespace detail

// Tangent operator of the linearized problem at state u_n. Unsymmetric for
// beta != 0 because of the -beta*E[eps]*(div delta_u) term.
inline SparseMatrix assemble_tangent(const FESpace& space, const NodalField& u_n,
                                     const MaterialParams& params) {
    const Mesh& mesh = *space.mesh;
    const QuadratureRule quad = QuadratureRule::gauss(2);

    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(static_cast<size_t>(mesh.n_cells()) * 64);

    for (int cell = 0; cell < mesh.n_cells(); ++cell) {
        const auto dofs = space.cell_dofs(cell);
        Eigen::Matrix<double, 8, 8> ke = Eigen::Matrix<double, 8, 8>::Zero();
        for (size_t q = 0; q < quad.points.size(); ++q) {
            const CellGeometry geom = physical_gradients(mesh, cell, quad.points[q]);
            const double jxw = quad.weights[q] * geom.jacobian_det;
            const Strain2 eps_n = strain(field_gradient(u_n, cell, geom));
            const double d = density_factor(eps_n, params);
            if (!(d > kSingularGuard))
                throw SingularDensityFactor(
                    "density factor " + std::to_string(d) + " at cell " +
                    std::to_string(cell) + ", quadrature point " + std::to_string(q));

            for (int b = 0; b < 4; ++b) {
                for (int cj = 0; cj < 2; ++cj) {
                    Mat2 grad_phi = Mat2::Zero();
                    grad_phi.row(cj) = geom.gradients[b].transpose();
                    const Stress2 sigma = tangent_apply(eps_n, grad_phi, params);
                    for (int a = 0; a < 4; ++a)
                        for (int ci = 0; ci < 2; ++ci)
                            ke(2 * a + ci, 2 * b + cj) +=
                                jxw * detail::contract_test(sigma, ci, geom.gradients[a]);
                }
            }
        }
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j)
                triplets.emplace_back(dofs[i], dofs[j], ke(i, j));
    }

    SparseMatrix mat(space.n_dofs, space.n_dofs);
    mat.setFromTriplets(triplets.begin(), triplets.end());
    return mat;
}

// Consistent edge-load vector for a constant traction g on a tagged edge set.
inline Vector assemble_traction(const FESpace& space, BoundaryTag tag, const Vec2& g) {
    const Mesh& mesh = *space.mesh;
    const auto edges = boundary_edges(mesh, tag);
    if (edges.empty()) throw UnknownTag(std::string("no edges tagged ") + tag_name(tag));

    auto [pts, wts] = QuadratureRule::gauss_edge();
    Vector load = Vector::Zero(space.n_dofs);
    for (const auto& edge : edges) {
        auto [a, b] = edge_nodes(mesh, edge.cell, edge.local_edge);
        const double len = (mesh.nodes[b] - mesh.nodes[a]).norm();
        for (int q = 0; q < 2; ++q) {
            const double na = 0.5 * (1.0 - pts[q]);
            const double nb = 0.5 * (1.0 + pts[q]);
            const double jxw = wts[q] * 0.5 * len;
            for (int c = 0; c < 2; ++c) {
                load[space.dof(a, c)] += jxw * na * g[c];
                load[space.dof(b, c)] += jxw * nb * g[c];
            }
        }
    }
    return load;
}

// Right-hand side of the Newton step: -int T(u_n):eps(phi) + tractions
// (+ body force, used only by the manufactured-solution runs).
inline Vector assemble_residual(const FESpace& space, const NodalField& u_n,
                                const MaterialParams& params,
                                const BoundaryConditions& bcs,
                                const BodyForce& body_force = nullptr) {
    const Mesh& mesh = *space.mesh;
    const QuadratureRule quad = QuadratureRule::gauss(2);

    Vector res = Vector::Zero(space.n_dofs);
    for (int cell = 0; cell < mesh.n_cells(); ++cell) {
        const auto& nodes = mesh.cells[cell];
        for (size_t q = 0; q < quad.points.size(); ++q) {
            const CellGeometry geom = physical_gradients(mesh, cell, quad.points[q]);
            const double jxw = quad.weights[q] * geom.jacobian_det;
            const Strain2 eps_n = strain(field_gradient(u_n, cell, geom));
            const double d = density_factor(eps_n, params);
            if (!(d > kSingularGuard))
                throw SingularDensityFactor(
                    "density factor " + std::to_string(d) + " at cell " +
                    std::to_string(cell) + ", quadrature point " + std::to_string(q));
            const Stress2 t = elasticity_apply(eps_n, params) / d;

            Vec2 f = Vec2::Zero();
            if (body_force) f = body_force(cell_point(mesh, cell, quad.points[q]));
            const ShapeValues s = shape_eval(quad.points[q]);

            for (int a = 0; a < 4; ++a)
                for (int c = 0; c < 2; ++c)
                    res[space.dof(nodes[a], c)] +=
                        jxw * (-detail::contract_test(t, c, geom.gradients[a]) +
                               s.values[a] * f[c]);
        }
    }
    for (const auto& [tag, g] : bcs.neumann) res += assemble_traction(space, tag, g);
    return res;
}

// Expand tag-level Dirichlet data plus point pins into a sorted (dof, value)
// list. Duplicate entries collapse; the last specification wins.
inline std::vector<std::pair<int, double>> dirichlet_constraints(
    const FESpace& space, const BoundaryConditions& bcs) {
    const Mesh& mesh = *space.mesh;
    std::map<int, double> constraints;
    for (const auto& [tag, spec] : bcs.dirichlet) {
        for (const auto& edge : boundary_edges(mesh, tag)) {
            auto [a, b] = edge_nodes(mesh, edge.cell, edge.local_edge);
            for (int node : {a, b}) {
                const Vec2 value =
                    spec.value ? spec.value(mesh.nodes[node]) : Vec2::Zero();
                if (spec.fix_x) constraints[space.dof(node, 0)] = value.x();
                if (spec.fix_y) constraints[space.dof(node, 1)] = value.y();
            }
        }
    }
    for (const auto& [dof, value] : bcs.point_constraints) constraints[dof] = value;
    return {constraints.begin(), constraints.end()};
}

// Symmetric-style elimination: constrained rows become identity rows with
// the constraint value on the rhs; column contributions move to the rhs.
inline void apply_dirichlet(SparseMatrix& mat, Vector& rhs,
                            const std::vector<std::pair<int, double>>& constraints) {
    std::vector<char> constrained(mat.rows(), 0);
    Vector value = Vector::Zero(mat.rows());
    for (const auto& [dof, v] : constraints) {
        constrained[dof] = 1;
        value[dof] = v;
    }

    std::vector<Eigen::Triplet<double>> kept;
    kept.reserve(mat.nonZeros());
    for (int col = 0; col < mat.outerSize(); ++col) {
        for (SparseMatrix::InnerIterator it(mat, col); it; ++it) {
            const int row = static_cast<int>(it.row());
            if (constrained[row]) continue;
            if (constrained[col]) {
                rhs[row] -= it.value() * value[col];
                continue;
            }
            kept.emplace_back(row, col, it.value());
        }
    }
    for (const auto& [dof, v] : constraints) {
        kept.emplace_back(dof, dof, 1.0);
        rhs[dof] = v;
    }
    mat.setZero();
    mat.setFromTriplets(kept.begin(), kept.end());
}

} // namespace ddfem

#endif
