#ifndef DDFEM_EXAMPLES_HPP
#define DDFEM_EXAMPLES_HPP

#include <cmath>
#include <string>

#include "ddfem/assembly.hpp"

namespace ddfem {

// Canned crack/no-crack boundary value problems on the unit square.
//   1a: mode-I traction on top, roller bottom, no crack
//   1b: mode-II traction on top, hinged bottom, no crack
//   2:  mode-I with right-edge crack, roller bottom
//   3:  mode-II with right-edge crack, hinged bottom
//   4:  mixed-mode with right-edge crack, hinged bottom
struct ExampleProblem {
    std::string id;
    bool has_crack = false;
    Vec2 traction = Vec2::Zero(); // on the top boundary
    bool hinge_bottom = false;    // roller (u2 = 0) otherwise
    double line_y = 0.5;          // reference line
    double line_x_begin = 0.0;
    double line_x_end = 1.0;
};

inline ExampleProblem example_problem(const std::string& id, double f_u) {
    ExampleProblem ex;
    ex.id = id;
    if (id == "1a") {
        ex.traction = Vec2(0.0, f_u);
    } else if (id == "1b") {
        ex.traction = Vec2(f_u, 0.0);
        ex.hinge_bottom = true;
    } else if (id == "2") {
        ex.traction = Vec2(0.0, f_u);
        ex.has_crack = true;
        ex.line_x_end = 0.5;
    } else if (id == "3") {
        ex.traction = Vec2(f_u, 0.0);
        ex.hinge_bottom = true;
        ex.has_crack = true;
        ex.line_x_end = 0.5;
    } else if (id == "4") {
        ex.traction = Vec2(f_u, f_u);
        ex.hinge_bottom = true;
        ex.has_crack = true;
        ex.line_x_end = 0.5;
    } else {
        throw ValidationError("example", "unknown example id '" + id + "'");
    }
    return ex;
}

inline Mesh example_mesh(const ExampleProblem& ex, int refinements) {
    Mesh mesh = build_unit_square(refinements);
    if (ex.has_crack) mesh = insert_edge_crack(std::move(mesh));
    return mesh;
}

// A roller-only bottom leaves the x-translation rigid mode free; pin u1 at
// the bottom node nearest (0.5, 0) to keep the problem's left-right symmetry.
inline int symmetry_pin_node(const Mesh& mesh) {
    int best = -1;
    double best_dist = std::numeric_limits<double>::infinity();
    for (int node = 0; node < mesh.n_nodes(); ++node) {
        const Vec2& p = mesh.nodes[node];
        if (std::abs(p.y()) > 1e-12) continue;
        const double dist = std::abs(p.x() - 0.5);
        if (dist < best_dist) {
            best_dist = dist;
            best = node;
        }
    }
    return best;
}

inline BoundaryConditions example_bcs(const ExampleProblem& ex, const FESpace& space) {
    BoundaryConditions bcs;
    bcs.neumann[BoundaryTag::Top] = ex.traction;
    DirichletSpec bottom;
    bottom.fix_y = true;
    bottom.fix_x = ex.hinge_bottom;
    bcs.dirichlet[BoundaryTag::Bottom] = bottom;
    if (!ex.hinge_bottom) {
        const int pin = symmetry_pin_node(*space.mesh);
        bcs.point_constraints.emplace_back(space.dof(pin, 0), 0.0);
    }
    return bcs;
}

} // namespace ddfem

#endif
