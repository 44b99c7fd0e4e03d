#ifndef DDFEM_VTK_HPP
#define DDFEM_VTK_HPP

#include <cstdio>
#include <fstream>
#include <map>
#include <string>

#include "ddfem/fespace.hpp"
#include "ddfem/postproc.hpp"

namespace ddfem {

namespace detail {

inline std::string fmt_g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace detail

// Legacy ASCII VTK unstructured grid (cell type 9 = quad), with the
// displacement as point vectors and each cell field as a scalar array.
// Output bytes are deterministic for fixed inputs.
inline void write_vtk(const Mesh& mesh, const NodalField* displacement,
                      const std::map<std::string, CellField>& cell_fields,
                      const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");

    out << "# vtk DataFile Version 3.0\n";
    out << "ddfem output\n";
    out << "ASCII\n";
    out << "DATASET UNSTRUCTURED_GRID\n";

    out << "POINTS " << mesh.n_nodes() << " double\n";
    for (const Vec2& p : mesh.nodes)
        out << detail::fmt_g17(p.x()) << ' ' << detail::fmt_g17(p.y()) << " 0\n";

    out << "CELLS " << mesh.n_cells() << ' ' << 5 * mesh.n_cells() << '\n';
    for (const auto& cell : mesh.cells)
        out << "4 " << cell[0] << ' ' << cell[1] << ' ' << cell[2] << ' ' << cell[3]
            << '\n';

    out << "CELL_TYPES " << mesh.n_cells() << '\n';
    for (int c = 0; c < mesh.n_cells(); ++c) out << "9\n";

    if (displacement) {
        out << "POINT_DATA " << mesh.n_nodes() << '\n';
        out << "VECTORS displacement double\n";
        for (int node = 0; node < mesh.n_nodes(); ++node) {
            const Vec2 u = displacement->at_node(node);
            out << detail::fmt_g17(u.x()) << ' ' << detail::fmt_g17(u.y()) << " 0\n";
        }
    }

    if (!cell_fields.empty()) {
        out << "CELL_DATA " << mesh.n_cells() << '\n';
        for (const auto& [name, field] : cell_fields) {
            out << "SCALARS " << name << " double 1\n";
            out << "LOOKUP_TABLE default\n";
            for (double v : field.values) out << detail::fmt_g17(v) << '\n';
        }
    }
    if (!out) throw IoError("write failed for '" + path + "'");
}

inline void write_profile_csv(const LineProfile& profile, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << "x_over_L,value\n";
    for (size_t k = 0; k < profile.values.size(); ++k)
        out << detail::fmt_g17(profile.x_over_length[k]) << ','
            << detail::fmt_g17(profile.values[k]) << '\n';
    if (!out) throw IoError("write failed for '" + path + "'");
}

} // namespace ddfem

#endif
