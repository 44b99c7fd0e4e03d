#ifndef DDFEM_MESH_HPP
#define DDFEM_MESH_HPP

#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ddfem/errors.hpp"

namespace ddfem {

using Vec2 = Eigen::Vector2d;

enum class BoundaryTag { Bottom, Right, Top, Left, Crack };

inline const char* tag_name(BoundaryTag t) {
    switch (t) {
        case BoundaryTag::Bottom: return "Gamma1";
        case BoundaryTag::Right: return "Gamma2";
        case BoundaryTag::Top: return "Gamma3";
        case BoundaryTag::Left: return "Gamma4";
        case BoundaryTag::Crack: return "GammaC";
    }
    return "?";
}

// Horizontal slit with the tip at its left end.
struct CrackSpec {
    double y = 0.5;
    double x_begin = 0.5; // tip
    double x_end = 1.0;
};

// Structured quadrilateral mesh of the unit square. Cells are stored
// row-major: cell id = j*cells_per_side + i, nodes counterclockwise
// starting at the lower-left corner.
struct Mesh {
    int cells_per_side = 1;
    int refinement_level = 0;
    std::vector<Vec2> nodes;
    std::vector<std::array<int, 4>> cells;
    // (cell, local edge 0..3: bottom,right,top,left) -> tag
    std::map<std::pair<int, int>, BoundaryTag> boundary_faces;
    std::optional<CrackSpec> crack;
    // (node kept by cells below the slit, duplicate used by cells above)
    std::vector<std::pair<int, int>> crack_node_pairs;

    double h() const { return 1.0 / cells_per_side; }
    int n_nodes() const { return static_cast<int>(nodes.size()); }
    int n_cells() const { return static_cast<int>(cells.size()); }
};

struct BoundaryEdge {
    int cell;
    int local_edge;
    Vec2 normal;
};

// Local edge e connects cell nodes e and (e+1)%4.
inline std::pair<int, int> edge_nodes(const Mesh& mesh, int cell, int local_edge) {
    const auto& c = mesh.cells[cell];
    return {c[local_edge], c[(local_edge + 1) % 4]};
}

inline Mesh build_unit_square(int n_refinements) {
    if (n_refinements < 0 || n_refinements > 12)
        throw ValidationError("refinements", "refinement level must be in [0, 12]");
    Mesh mesh;
    mesh.refinement_level = n_refinements;
    const int n = 1 << n_refinements;
    mesh.cells_per_side = n;
    const double h = 1.0 / n;

    mesh.nodes.reserve((n + 1) * (n + 1));
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i)
            mesh.nodes.emplace_back(i * h, j * h);

    auto nid = [n](int i, int j) { return j * (n + 1) + i; };
    mesh.cells.reserve(n * n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            mesh.cells.push_back({nid(i, j), nid(i + 1, j), nid(i + 1, j + 1), nid(i, j + 1)});
            const int cell = j * n + i;
            if (j == 0) mesh.boundary_faces[{cell, 0}] = BoundaryTag::Bottom;
            if (i == n - 1) mesh.boundary_faces[{cell, 1}] = BoundaryTag::Right;
            if (j == n - 1) mesh.boundary_faces[{cell, 2}] = BoundaryTag::Top;
            if (i == 0) mesh.boundary_faces[{cell, 3}] = BoundaryTag::Left;
        }
    }
    return mesh;
}

namespace detail {

inline bool on_grid(double coord, double h) {
    const double k = coord / h;
    return std::abs(k - std::round(k)) < 1e-12;
}

} // namespace detail

// Splits the mesh along the horizontal segment: every node strictly inside
// it, plus its right endpoint when that endpoint sits on the outer boundary,
// gets an upper and a lower copy. The tip node (left endpoint) stays shared.
inline Mesh insert_edge_crack(Mesh mesh, const CrackSpec& spec = CrackSpec{}) {
    const double h = mesh.h();
    if (!detail::on_grid(spec.y, h) || !detail::on_grid(spec.x_begin, h) ||
        !detail::on_grid(spec.x_end, h) || spec.y <= 0.0 || spec.y >= 1.0)
        throw SegmentNotOnGrid("crack segment does not lie on mesh grid lines");
    if (mesh.crack)
        throw SegmentNotOnGrid("mesh already carries a crack");

    const double tol = 1e-12;
    auto on_segment_open = [&](const Vec2& p) {
        return std::abs(p.y() - spec.y) < tol && p.x() > spec.x_begin + tol &&
               p.x() < spec.x_end - tol;
    };
    const bool split_right_end = std::abs(spec.x_end - 1.0) < tol;

    // lower copy keeps the original id; upper cells get the duplicate
    std::map<int, int> upper_copy;
    for (int a = 0; a < mesh.n_nodes(); ++a) {
        const Vec2& p = mesh.nodes[a];
        const bool endpoint = split_right_end && std::abs(p.y() - spec.y) < tol &&
                              std::abs(p.x() - spec.x_end) < tol;
        if (on_segment_open(p) || endpoint) {
            upper_copy[a] = mesh.n_nodes() + static_cast<int>(upper_copy.size());
        }
    }
    for (const auto& [orig, dup] : upper_copy) {
        (void)dup;
        mesh.nodes.push_back(mesh.nodes[orig]);
    }

    for (int cell = 0; cell < mesh.n_cells(); ++cell) {
        Vec2 center = Vec2::Zero();
        for (int v : mesh.cells[cell]) center += mesh.nodes[v];
        center /= 4.0;
        if (center.y() <= spec.y) continue;
        for (int& v : mesh.cells[cell]) {
            auto it = upper_copy.find(v);
            if (it != upper_copy.end()) v = it->second;
        }
    }

    // tag cell edges that lie on the slit
    for (int cell = 0; cell < mesh.n_cells(); ++cell) {
        for (int e = 0; e < 4; ++e) {
            auto [a, b] = edge_nodes(mesh, cell, e);
            const Vec2& pa = mesh.nodes[a];
            const Vec2& pb = mesh.nodes[b];
            if (std::abs(pa.y() - spec.y) > tol || std::abs(pb.y() - spec.y) > tol) continue;
            const double xmin = std::min(pa.x(), pb.x());
            const double xmax = std::max(pa.x(), pb.x());
            if (xmin < spec.x_begin - tol || xmax > spec.x_end + tol) continue;
            mesh.boundary_faces[{cell, e}] = BoundaryTag::Crack;
        }
    }

    mesh.crack = spec;
    mesh.crack_node_pairs.assign(upper_copy.begin(), upper_copy.end());
    return mesh;
}

// Uniform quadrisection. The mesh is structured, so refining is equivalent
// to rebuilding one level finer and re-inserting the crack.
inline Mesh refine_global(const Mesh& mesh) {
    Mesh fine = build_unit_square(mesh.refinement_level + 1);
    if (mesh.crack) fine = insert_edge_crack(std::move(fine), *mesh.crack);
    return fine;
}

inline std::vector<BoundaryEdge> boundary_edges(const Mesh& mesh, BoundaryTag tag) {
    switch (tag) {
        case BoundaryTag::Bottom:
        case BoundaryTag::Right:
        case BoundaryTag::Top:
        case BoundaryTag::Left:
        case BoundaryTag::Crack:
            break;
        default:
            throw UnknownTag("unknown boundary tag");
    }
    std::vector<BoundaryEdge> edges;
    for (const auto& [key, t] : mesh.boundary_faces) {
        if (t != tag) continue;
        auto [a, b] = edge_nodes(mesh, key.first, key.second);
        const Vec2 d = mesh.nodes[b] - mesh.nodes[a];
        // cells are counterclockwise, so the outward normal is the edge
        // tangent rotated clockwise
        Vec2 normal(d.y(), -d.x());
        normal.normalize();
        edges.push_back({key.first, key.second, normal});
    }
    return edges;
}

} // namespace ddfem

#endif
