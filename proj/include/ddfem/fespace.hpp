#ifndef DDFEM_FESPACE_HPP
#define DDFEM_FESPACE_HPP

#include <array>
#include <cmath>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "ddfem/errors.hpp"
#include "ddfem/mesh.hpp"

namespace ddfem {

using Mat2 = Eigen::Matrix2d;

// Tensor-product Gauss rule on the reference cell [-1,1]^2.
struct QuadratureRule {
    std::vector<Vec2> points;
    std::vector<double> weights;

    static QuadratureRule gauss(int points_per_dir) {
        std::vector<double> x, w;
        switch (points_per_dir) {
            case 1: x = {0.0}; w = {2.0}; break;
            case 2: {
                const double g = 1.0 / std::sqrt(3.0);
                x = {-g, g};
                w = {1.0, 1.0};
                break;
            }
            case 3: {
                const double g = std::sqrt(3.0 / 5.0);
                x = {-g, 0.0, g};
                w = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
                break;
            }
            default:
                throw ValidationError("quadrature", "unsupported Gauss rule order");
        }
        QuadratureRule rule;
        for (int j = 0; j < points_per_dir; ++j)
            for (int i = 0; i < points_per_dir; ++i) {
                rule.points.emplace_back(x[i], x[j]);
                rule.weights.push_back(w[i] * w[j]);
            }
        return rule;
    }

    // 2-point rule on the reference edge [-1,1]
    static std::pair<std::array<double, 2>, std::array<double, 2>> gauss_edge() {
        const double g = 1.0 / std::sqrt(3.0);
        return {{-g, g}, {1.0, 1.0}};
    }
};

struct ShapeValues {
    std::array<double, 4> values;
    std::array<Vec2, 4> gradients; // w.r.t. reference coordinates
};

// Q1 basis on [-1,1]^2, node order matching the counterclockwise cell
// convention: (-1,-1), (1,-1), (1,1), (-1,1).
inline ShapeValues shape_eval(const Vec2& ref) {
    const double xi = ref.x(), eta = ref.y();
    ShapeValues s;
    s.values = {0.25 * (1 - xi) * (1 - eta), 0.25 * (1 + xi) * (1 - eta),
                0.25 * (1 + xi) * (1 + eta), 0.25 * (1 - xi) * (1 + eta)};
    s.gradients = {Vec2(-0.25 * (1 - eta), -0.25 * (1 - xi)),
                   Vec2(0.25 * (1 - eta), -0.25 * (1 + xi)),
                   Vec2(0.25 * (1 + eta), 0.25 * (1 + xi)),
                   Vec2(-0.25 * (1 + eta), 0.25 * (1 - xi))};
    return s;
}

struct CellGeometry {
    std::array<Vec2, 4> gradients; // physical gradients of the 4 shape functions
    double jacobian_det;
};

inline CellGeometry physical_gradients(const Mesh& mesh, int cell, const Vec2& ref) {
    const ShapeValues s = shape_eval(ref);
    Mat2 jac = Mat2::Zero();
    for (int a = 0; a < 4; ++a)
        jac += mesh.nodes[mesh.cells[cell][a]] * s.gradients[a].transpose();
    const double det = jac.determinant();
    if (det <= 1e-14)
        throw DegenerateCell("cell " + std::to_string(cell) +
                             " has non-positive Jacobian determinant");
    CellGeometry geom;
    geom.jacobian_det = det;
    const Mat2 inv_t = jac.inverse().transpose();
    for (int a = 0; a < 4; ++a) geom.gradients[a] = inv_t * s.gradients[a];
    return geom;
}

// Q1 vector-valued space. DOF numbering is node-major, component-minor.
struct FESpace {
    const Mesh* mesh = nullptr;
    int n_dofs = 0;

    int dof(int node, int component) const { return 2 * node + component; }

    std::array<int, 8> cell_dofs(int cell) const {
        std::array<int, 8> dofs;
        for (int a = 0; a < 4; ++a) {
            const int node = mesh->cells[cell][a];
            dofs[2 * a] = dof(node, 0);
            dofs[2 * a + 1] = dof(node, 1);
        }
        return dofs;
    }
};

inline FESpace build_q1_space(const Mesh& mesh) {
    FESpace space;
    space.mesh = &mesh;
    space.n_dofs = 2 * mesh.n_nodes();
    return space;
}

struct NodalField {
    const FESpace* space = nullptr;
    Eigen::VectorXd values; // size n_dofs, node-major component-minor

    Vec2 at_node(int node) const {
        return Vec2(values[2 * node], values[2 * node + 1]);
    }
};

inline NodalField zero_field(const FESpace& space) {
    return {&space, Eigen::VectorXd::Zero(space.n_dofs)};
}

inline NodalField interpolate(const FESpace& space,
                              const std::function<Vec2(const Vec2&)>& f) {
    NodalField field = zero_field(space);
    for (int node = 0; node < space.mesh->n_nodes(); ++node) {
        const Vec2 v = f(space.mesh->nodes[node]);
        field.values[2 * node] = v.x();
        field.values[2 * node + 1] = v.y();
    }
    return field;
}

// Displacement gradient of a nodal field at a reference point of a cell.
inline Mat2 field_gradient(const NodalField& u, int cell, const CellGeometry& geom) {
    const Mesh& mesh = *u.space->mesh;
    Mat2 grad = Mat2::Zero();
    for (int a = 0; a < 4; ++a)
        grad += u.at_node(mesh.cells[cell][a]) * geom.gradients[a].transpose();
    return grad;
}

inline Vec2 field_value(const NodalField& u, int cell, const Vec2& ref) {
    const Mesh& mesh = *u.space->mesh;
    const ShapeValues s = shape_eval(ref);
    Vec2 v = Vec2::Zero();
    for (int a = 0; a < 4; ++a) v += s.values[a] * u.at_node(mesh.cells[cell][a]);
    return v;
}

inline Vec2 cell_point(const Mesh& mesh, int cell, const Vec2& ref) {
    const ShapeValues s = shape_eval(ref);
    Vec2 p = Vec2::Zero();
    for (int a = 0; a < 4; ++a) p += s.values[a] * mesh.nodes[mesh.cells[cell][a]];
    return p;
}

} // namespace ddfem

#endif
