#ifndef DDFEM_CONSTITUTIVE_HPP
#define DDFEM_CONSTITUTIVE_HPP

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "ddfem/errors.hpp"

namespace ddfem {

// Guard on the density factor 1 + beta*tr(eps): below this the constitutive
// model has left its admissible range and we fail instead of clamping.
inline constexpr double kSingularGuard = 1e-8;

struct MaterialParams {
    double youngs;  // E, Pa
    double poisson; // nu
    double beta;    // dimensionless nonlinearity parameter

    // c1 = E/(1+nu) = 2*mu, c2 = nu*E/((1+nu)(1-2nu)) = lambda
    double c1() const { return youngs / (1.0 + poisson); }
    double c2() const {
        return poisson * youngs / ((1.0 + poisson) * (1.0 - 2.0 * poisson));
    }

    static MaterialParams make(double youngs, double poisson, double beta) {
        if (!(youngs > 0.0))
            throw ValidationError("E", "Young's modulus must be positive");
        if (!(poisson > -1.0 && poisson < 0.5))
            throw ValidationError("nu", "Poisson ratio must lie in (-1, 0.5)");
        return {youngs, poisson, beta};
    }
};

// Symmetric 2x2 tensor; used for both strain and stress.
struct SymTensor2 {
    double xx = 0.0;
    double yy = 0.0;
    double xy = 0.0;

    double trace() const { return xx + yy; }

    double contract(const SymTensor2& o) const {
        return xx * o.xx + yy * o.yy + 2.0 * xy * o.xy;
    }

    Eigen::Matrix2d matrix() const {
        Eigen::Matrix2d m;
        m << xx, xy, xy, yy;
        return m;
    }

    static SymTensor2 from_matrix(const Eigen::Matrix2d& m) {
        return {m(0, 0), m(1, 1), 0.5 * (m(0, 1) + m(1, 0))};
    }

    SymTensor2 operator+(const SymTensor2& o) const { return {xx + o.xx, yy + o.yy, xy + o.xy}; }
    SymTensor2 operator-(const SymTensor2& o) const { return {xx - o.xx, yy - o.yy, xy - o.xy}; }
    SymTensor2 operator*(double s) const { return {xx * s, yy * s, xy * s}; }
    SymTensor2 operator/(double s) const { return {xx / s, yy / s, xy / s}; }

    double norm() const { return std::sqrt(contract(*this)); }
};

using Strain2 = SymTensor2;
using Stress2 = SymTensor2;

inline Strain2 strain(const Eigen::Matrix2d& grad_u) {
    return Strain2::from_matrix(grad_u);
}

// E[eps] = c1*eps + c2*tr(eps)*I
inline Stress2 elasticity_apply(const Strain2& eps, const MaterialParams& p) {
    const double tr = eps.trace();
    return {p.c1() * eps.xx + p.c2() * tr, p.c1() * eps.yy + p.c2() * tr,
            p.c1() * eps.xy};
}

inline double density_factor(const Strain2& eps, const MaterialParams& p) {
    return 1.0 + p.beta * eps.trace();
}

inline void check_density_factor(double factor, const std::string& where) {
    if (!(factor > kSingularGuard))
        throw SingularDensityFactor("density factor 1 + beta*tr(eps) = " +
                                    std::to_string(factor) + " at " + where);
}

// T = E[eps] / (1 + beta*tr(eps))
inline Stress2 cauchy_stress(const Strain2& eps, const MaterialParams& p) {
    const double d = density_factor(eps, p);
    check_density_factor(d, "cauchy_stress");
    return elasticity_apply(eps, p) / d;
}

// Exact algebraic inverse of cauchy_stress.
inline Strain2 invert_stress(const Stress2& t, const MaterialParams& p) {
    const double k = p.c1() + 2.0 * p.c2();
    const double denom = k - p.beta * t.trace();
    if (std::abs(denom) <= kSingularGuard * k)
        throw SingularInversion("stress inversion singular: (c1+2c2) - beta*tr(T) ~ 0");
    const double tr_eps = t.trace() / denom;
    const double d = 1.0 + p.beta * tr_eps;
    const double shift = p.c2() * t.trace() / (p.c1() * k);
    return Strain2{t.xx / p.c1() - shift, t.yy / p.c1() - shift, t.xy / p.c1()} * d;
}

// Frechet derivative of the stress operator at eps_n applied to a
// displacement-gradient increment.
inline Stress2 tangent_apply(const Strain2& eps_n, const Eigen::Matrix2d& grad_delta,
                             const MaterialParams& p) {
    const double d = density_factor(eps_n, p);
    check_density_factor(d, "tangent_apply");
    const Strain2 eps_delta = strain(grad_delta);
    const double div = grad_delta.trace();
    const Stress2 first = elasticity_apply(eps_delta, p) / d;
    const Stress2 second = elasticity_apply(eps_n, p) * (p.beta * div / (d * d));
    return first - second;
}

// SED = (1/2) T : eps
inline double strain_energy_density(const Strain2& eps, const MaterialParams& p) {
    return 0.5 * cauchy_stress(eps, p).contract(eps);
}

// K_dr = (c2 + c1/3) / (1 + beta*tr(eps))
inline double bulk_modulus(const Strain2& eps, const MaterialParams& p) {
    const double d = density_factor(eps, p);
    check_density_factor(d, "bulk_modulus");
    return (p.c2() + p.c1() / 3.0) / d;
}

// density-dependent Lame coefficients (lambda, mu)
inline std::pair<double, double> lame_nonlinear(const Strain2& eps,
                                                const MaterialParams& p) {
    const double d = density_factor(eps, p);
    check_density_factor(d, "lame_nonlinear");
    return {p.c2() / d, 0.5 * p.c1() / d};
}

// rho/rho0 = 1 / (1 + tr(eps))
inline double density_ratio(const Strain2& eps) {
    const double d = 1.0 + eps.trace();
    if (!(d > 0.0))
        throw NonphysicalCompaction("1 + tr(eps) = " + std::to_string(d) + " <= 0");
    return 1.0 / d;
}

} // namespace ddfem

#endif
