#ifndef DDFEM_SOLVER_HPP
#define DDFEM_SOLVER_HPP

#include <cmath>
#include <functional>
#include <ostream>
#include <vector>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "ddfem/assembly.hpp"

namespace ddfem {

struct SolverConfig {
    double newton_tol = 1e-8; // absolute residual norm, load units
    int max_newton = 50;
    double alpha_bar = 1.0;
    double line_search_factor = 0.5;
    int max_line_search = 10;
};

struct SolveReport {
    bool converged = false;
    int iterations = 0;
    std::vector<double> residual_history; // length iterations + 1
    std::vector<double> alpha_history;
    NodalField solution;
};

// Sparse LU with column pivoting; handles the unsymmetric beta != 0 tangent.
inline Vector solve_linear_system(const SparseMatrix& mat, const Vector& rhs) {
    Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
    lu.analyzePattern(mat);
    lu.factorize(mat);
    if (lu.info() != Eigen::Success)
        throw SingularMatrix("sparse LU factorization failed (singular system?)");
    Vector x = lu.solve(rhs);
    if (lu.info() != Eigen::Success) throw SingularMatrix("sparse LU solve failed");
    return x;
}

// Norm of the assembled residual with constrained entries zeroed. This is
// both the convergence measure and the line-search merit function.
inline double residual_norm(const FESpace& space, const NodalField& u,
                            const MaterialParams& params, const BoundaryConditions& bcs,
                            const BodyForce& body_force = nullptr) {
    Vector res = assemble_residual(space, u, params, bcs, body_force);
    for (const auto& [dof, value] : dirichlet_constraints(space, bcs)) {
        (void)value;
        res[dof] = 0.0;
    }
    return res.norm();
}

// Backtracking: try alpha = alpha_bar, alpha_bar/2, ... and accept the first
// trial that decreases the merit; if none does, return the best trial.
// A trial that lands outside the admissible constitutive range counts as
// infinite merit.
inline double line_search(const std::function<double(double)>& merit_at_alpha,
                          double current_merit, const SolverConfig& config) {
    double alpha = config.alpha_bar;
    double best_alpha = alpha;
    double best_merit = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial <= config.max_line_search; ++trial) {
        double merit;
        try {
            merit = merit_at_alpha(alpha);
        } catch (const SingularDensityFactor&) {
            alpha *= config.line_search_factor;
            continue;
        }
        if (merit < current_merit) return alpha;
        if (merit < best_merit) {
            best_merit = merit;
            best_alpha = alpha;
        }
        alpha *= config.line_search_factor;
    }
    return best_alpha;
}

// Solution of the beta = 0 problem with the full Dirichlet data; the
// starting point for the Newton iteration.
inline NodalField initial_guess(const FESpace& space, const MaterialParams& params,
                                const BoundaryConditions& bcs,
                                const BodyForce& body_force = nullptr) {
    const MaterialParams linear{params.youngs, params.poisson, 0.0};
    NodalField u = zero_field(space);
    SparseMatrix mat = assemble_tangent(space, u, linear);
    Vector rhs = assemble_residual(space, u, linear, bcs, body_force);
    apply_dirichlet(mat, rhs, dirichlet_constraints(space, bcs));
    u.values = solve_linear_system(mat, rhs);
    return u;
}

inline SolveReport newton_solve(const FESpace& space, const MaterialParams& params,
                                const BoundaryConditions& bcs, const SolverConfig& config,
                                const BodyForce& body_force = nullptr,
                                std::ostream* log = nullptr) {
    SolveReport report;
    report.solution = initial_guess(space, params, bcs, body_force);

    // Newton updates carry homogeneous Dirichlet data
    const auto update_constraints = [&] {
        auto constraints = dirichlet_constraints(space, bcs);
        for (auto& [dof, value] : constraints) {
            (void)dof;
            value = 0.0;
        }
        return constraints;
    }();

    // Strong crack-tip strains with beta < 0 can push the linear guess
    // outside the admissible range (1 + beta tr eps <= 0). Damp the guess
    // toward the Dirichlet lift until the residual is evaluable; the lift
    // satisfies the boundary data, so every damped guess does too.
    double merit;
    {
        const Vector guess = report.solution.values;
        Vector lift = Vector::Zero(space.n_dofs);
        for (const auto& [dof, value] : dirichlet_constraints(space, bcs))
            lift[dof] = value;
        double scale = 1.0;
        for (int attempt = 0;; ++attempt) {
            try {
                merit = residual_norm(space, report.solution, params, bcs, body_force);
                break;
            } catch (const SingularDensityFactor&) {
                if (attempt >= 60) throw;
                scale *= 0.5;
                report.solution.values = lift + scale * (guess - lift);
            }
        }
    }
    report.residual_history.push_back(merit);
    if (log) *log << "iter 0 residual " << merit << '\n';

    while (true) {
        if (report.iterations > 0 && merit <= config.newton_tol) {
            report.converged = true;
            break;
        }
        if (report.iterations >= config.max_newton) break;

        SparseMatrix mat = assemble_tangent(space, report.solution, params);
        Vector rhs = assemble_residual(space, report.solution, params, bcs, body_force);
        apply_dirichlet(mat, rhs, update_constraints);
        const Vector delta = solve_linear_system(mat, rhs);

        NodalField trial = report.solution;
        const double alpha = line_search(
            [&](double a) {
                trial.values = report.solution.values + a * delta;
                return residual_norm(space, trial, params, bcs, body_force);
            },
            merit, config);

        report.solution.values += alpha * delta;
        merit = residual_norm(space, report.solution, params, bcs, body_force);
        ++report.iterations;
        report.alpha_history.push_back(alpha);
        report.residual_history.push_back(merit);
        if (log)
            *log << "iter " << report.iterations << " residual " << merit
                 << " alpha " << alpha << '\n';
    }
    return report;
}

} // namespace ddfem

#endif
