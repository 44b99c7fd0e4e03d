#ifndef DDFEM_POSTPROC_HPP
#define DDFEM_POSTPROC_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "ddfem/constitutive.hpp"
#include "ddfem/fespace.hpp"

namespace ddfem {

enum class Quantity {
    StressXX,
    StressYY,
    StressXY,
    StrainXX,
    StrainYY,
    StrainXY,
    EnergyDensity,
    BulkModulus,
    VolumetricStrain,
    DensityRatio,
};

inline const char* quantity_name(Quantity q) {
    switch (q) {
        case Quantity::StressXX: return "T11";
        case Quantity::StressYY: return "T22";
        case Quantity::StressXY: return "T21";
        case Quantity::StrainXX: return "eps11";
        case Quantity::StrainYY: return "eps22";
        case Quantity::StrainXY: return "eps21";
        case Quantity::EnergyDensity: return "SED";
        case Quantity::BulkModulus: return "K_dr";
        case Quantity::VolumetricStrain: return "tr_eps";
        case Quantity::DensityRatio: return "density_ratio";
    }
    return "?";
}

struct CellField {
    std::vector<double> values; // one scalar per cell
};

struct LineProfile {
    std::vector<double> x_over_length; // strictly increasing, in [0,1]
    std::vector<double> values;
    double length = 1.0; // m
};

namespace detail {

inline double pointwise_quantity(const Strain2& eps, const MaterialParams& p, Quantity q) {
    switch (q) {
        case Quantity::StrainXX: return eps.xx;
        case Quantity::StrainYY: return eps.yy;
        case Quantity::StrainXY: return eps.xy;
        case Quantity::VolumetricStrain: return eps.trace();
        case Quantity::EnergyDensity: return strain_energy_density(eps, p);
        case Quantity::BulkModulus: return bulk_modulus(eps, p);
        case Quantity::DensityRatio: return density_ratio(eps);
        default: break;
    }
    const Stress2 t = cauchy_stress(eps, p);
    switch (q) {
        case Quantity::StressXX: return t.xx;
        case Quantity::StressYY: return t.yy;
        case Quantity::StressXY: return t.xy;
        default: break;
    }
    return 0.0;
}

} // namespace detail

// Element value of a derived quantity.
//
// The strain is averaged over the 2x2 Gauss points; stress, bulk modulus,
// volumetric strain, and density ratio are evaluated at that element strain,
// so the pointwise identities between them (e.g. K_dr (1 + beta tr eps) =
// const) carry over exactly to the element values. The energy density is the
// element's stored energy divided by its volume, i.e. the quadrature average
// of the pointwise density.
inline CellField cell_average(const FESpace& space, const NodalField& u,
                              const MaterialParams& params, Quantity quantity) {
    const Mesh& mesh = *space.mesh;
    const QuadratureRule quad = QuadratureRule::gauss(2);
    CellField field;
    field.values.resize(mesh.n_cells());
    const bool energy = (quantity == Quantity::EnergyDensity);
    for (int cell = 0; cell < mesh.n_cells(); ++cell) {
        double sum = 0.0;
        Strain2 eps_sum{};
        double measure = 0.0;
        for (size_t q = 0; q < quad.points.size(); ++q) {
            const CellGeometry geom = physical_gradients(mesh, cell, quad.points[q]);
            const double jxw = quad.weights[q] * geom.jacobian_det;
            const Strain2 eps = strain(field_gradient(u, cell, geom));
            if (energy)
                sum += jxw * strain_energy_density(eps, params);
            else
                eps_sum = eps_sum + eps * jxw;
            measure += jxw;
        }
        field.values[cell] =
            energy ? sum / measure
                   : detail::pointwise_quantity(eps_sum / measure, params, quantity);
    }
    return field;
}

// Sample a cell field along the grid line y = const, averaging the element
// rows immediately above and below the line.
inline LineProfile line_profile(const Mesh& mesh, const CellField& field, double y,
                                double x_begin, double x_end) {
    const int n = mesh.cells_per_side;
    const double h = mesh.h();
    if (!detail::on_grid(y, h))
        throw SegmentNotOnGrid("profile line not on a mesh grid line");
    const int row = static_cast<int>(std::llround(y / h));
    if (row <= 0 || row >= n)
        throw SegmentNotOnGrid("profile line must be interior to the domain");

    LineProfile profile;
    profile.length = x_end - x_begin;
    const double tol = 1e-12;
    for (int i = 0; i < n; ++i) {
        const double xc = (i + 0.5) * h;
        if (xc < x_begin - tol || xc > x_end + tol) continue;
        const int below = (row - 1) * n + i;
        const int above = row * n + i;
        profile.x_over_length.push_back((xc - x_begin) / profile.length);
        profile.values.push_back(0.5 * (field.values[below] + field.values[above]));
    }
    return profile;
}

// K(r) = sqrt(2*pi*r) * T(r), r measured from the crack tip at the segment's
// right end. The input stress profile must live on the reference line.
inline LineProfile sif_profile(const LineProfile& stress_profile, double tip_x,
                               double line_x_begin) {
    LineProfile sif;
    sif.length = stress_profile.length;
    sif.x_over_length = stress_profile.x_over_length;
    sif.values.resize(stress_profile.values.size());
    for (size_t k = 0; k < stress_profile.values.size(); ++k) {
        const double x = line_x_begin + stress_profile.x_over_length[k] * stress_profile.length;
        const double r = tip_x - x;
        sif.values[k] = std::sqrt(2.0 * M_PI * std::max(r, 0.0)) * stress_profile.values[k];
    }
    return sif;
}

inline std::pair<double, double> field_extrema(const CellField& field) {
    const auto [min_it, max_it] =
        std::minmax_element(field.values.begin(), field.values.end());
    return {*max_it, *min_it};
}

// Nodal displacement component on a grid line; duplicated crack-node pairs
// contribute the mean of their two copies.
inline LineProfile displacement_profile(const FESpace& space, const NodalField& u,
                                        double y, double x_begin, double x_end,
                                        int component) {
    const Mesh& mesh = *space.mesh;
    const double tol = 1e-12;
    std::vector<int> upper_of(mesh.n_nodes(), -1);
    std::vector<char> is_upper(mesh.n_nodes(), 0);
    for (const auto& [lower, upper] : mesh.crack_node_pairs) {
        upper_of[lower] = upper;
        is_upper[upper] = 1;
    }

    std::vector<std::pair<double, double>> samples;
    for (int node = 0; node < mesh.n_nodes(); ++node) {
        const Vec2& p = mesh.nodes[node];
        if (std::abs(p.y() - y) > tol || p.x() < x_begin - tol || p.x() > x_end + tol)
            continue;
        if (is_upper[node]) continue; // counted with its lower partner
        double value = u.values[space.dof(node, component)];
        if (upper_of[node] >= 0)
            value = 0.5 * (value + u.values[space.dof(upper_of[node], component)]);
        samples.emplace_back(p.x(), value);
    }
    if (samples.empty()) throw SegmentNotOnGrid("no mesh nodes on the profile line");
    std::sort(samples.begin(), samples.end());

    LineProfile profile;
    profile.length = x_end - x_begin;
    for (const auto& [x, value] : samples) {
        profile.x_over_length.push_back((x - x_begin) / profile.length);
        profile.values.push_back(value);
    }
    return profile;
}

} // namespace ddfem

#endif
