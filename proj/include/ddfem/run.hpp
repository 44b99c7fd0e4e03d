#ifndef DDFEM_RUN_HPP
#define DDFEM_RUN_HPP

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ddfem/config.hpp"
#include "ddfem/examples.hpp"
#include "ddfem/postproc.hpp"
#include "ddfem/solver.hpp"
#include "ddfem/vtk.hpp"

namespace ddfem {

struct RunResult {
    double beta;
    SolveReport report;
    std::filesystem::path directory;
};

namespace detail {

inline std::string beta_dir_name(double beta) {
    std::ostringstream ss;
    ss << "beta_" << beta;
    return ss.str();
}

} // namespace detail

inline const std::vector<Quantity>& output_quantities() {
    static const std::vector<Quantity> quantities = {
        Quantity::StressXX,   Quantity::StressYY,        Quantity::StressXY,
        Quantity::StrainXX,   Quantity::StrainYY,        Quantity::StrainXY,
        Quantity::EnergyDensity, Quantity::BulkModulus,
        Quantity::VolumetricStrain, Quantity::DensityRatio};
    return quantities;
}

// One converged solve per beta; writes VTK fields, reference-line CSV
// profiles, an extrema table, and the Newton iteration log per beta into
// its own subdirectory. Partial outputs of a failed run are removed.
inline std::vector<RunResult> run_example(const RunConfig& config) {
    config.validate();
    const ExampleProblem ex = example_problem(config.example, config.traction);
    const Mesh mesh = example_mesh(ex, config.refinements);
    const FESpace space = build_q1_space(mesh);
    const BoundaryConditions bcs = example_bcs(ex, space);

    std::filesystem::create_directories(config.output_dir);
    std::vector<RunResult> results;
    for (double beta : config.betas) {
        const std::filesystem::path dir =
            std::filesystem::path(config.output_dir) / detail::beta_dir_name(beta);
        std::filesystem::create_directories(dir);
        try {
            const MaterialParams params =
                MaterialParams::make(config.youngs, config.poisson, beta);
            std::ofstream log(dir / "newton.log");
            const SolveReport report =
                newton_solve(space, params, bcs, config.solver, nullptr, &log);
            if (!report.converged)
                throw SingularMatrix("Newton did not converge for beta = " +
                                     std::to_string(beta));
            const NodalField& u = report.solution;

            std::map<std::string, CellField> fields;
            for (Quantity q : output_quantities())
                fields[quantity_name(q)] = cell_average(space, u, params, q);
            write_vtk(mesh, &u, fields, (dir / "solution.vtk").string());

            const CellField& t22 = fields[quantity_name(Quantity::StressYY)];
            const CellField& t21 = fields[quantity_name(Quantity::StressXY)];
            const auto profile_of = [&](const CellField& f) {
                return line_profile(mesh, f, ex.line_y, ex.line_x_begin, ex.line_x_end);
            };
            if (ex.has_crack) {
                const double tip_x = mesh.crack->x_begin;
                write_profile_csv(sif_profile(profile_of(t22), tip_x, ex.line_x_begin),
                                  (dir / "K_I.csv").string());
                write_profile_csv(sif_profile(profile_of(t21), tip_x, ex.line_x_begin),
                                  (dir / "K_II.csv").string());
            } else {
                for (int c : {0, 1}) {
                    const LineProfile p = displacement_profile(
                        space, u, ex.line_y, ex.line_x_begin, ex.line_x_end, c);
                    write_profile_csv(p,
                                      (dir / (c == 0 ? "disp_x.csv" : "disp_y.csv")).string());
                }
            }
            write_profile_csv(profile_of(fields[quantity_name(Quantity::BulkModulus)]),
                              (dir / "K_dr.csv").string());
            write_profile_csv(
                profile_of(fields[quantity_name(Quantity::VolumetricStrain)]),
                (dir / "tr_eps.csv").string());

            std::ofstream extrema(dir / "extrema.csv");
            if (!extrema) throw IoError("cannot write extrema.csv");
            extrema << "quantity,max,min\n";
            for (Quantity q : output_quantities()) {
                const auto [max, min] = field_extrema(fields[quantity_name(q)]);
                extrema << quantity_name(q) << ',' << detail::fmt_g17(max) << ','
                        << detail::fmt_g17(min) << '\n';
            }
            results.push_back({beta, report, dir});
        } catch (...) {
            std::filesystem::remove_all(dir);
            throw;
        }
    }
    return results;
}

} // namespace ddfem

#endif
