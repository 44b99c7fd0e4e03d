#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ddfem/constitutive.hpp"

using namespace ddfem;

namespace {

Strain2 random_strain(std::mt19937& rng, double scale) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    return {scale * unit(rng), scale * unit(rng), scale * unit(rng)};
}

SymTensor2 rotate(const SymTensor2& t, double angle) {
    Eigen::Matrix2d q;
    q << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
    return SymTensor2::from_matrix(q * t.matrix() * q.transpose());
}

} // namespace

TEST_CASE("material parameter validation and Lame identities") {
    CHECK_THROWS_AS(MaterialParams::make(-1.0, 0.3, 0.0), ValidationError);
    CHECK_THROWS_AS(MaterialParams::make(100.0, 0.5, 0.0), ValidationError);

    const MaterialParams p = MaterialParams::make(100.0, 0.1, 0.0);
    CHECK(p.c1() == Catch::Approx(100.0 / 1.1)); // 90.909...
    CHECK(p.c2() == Catch::Approx(0.1 * 100.0 / (1.1 * 0.8))); // 11.3636...
}

TEST_CASE("strain is the symmetric displacement-gradient part") {
    CHECK(strain(Eigen::Matrix2d::Zero()).norm() == 0.0);

    Eigen::Matrix2d g;
    g << 0, 1, 0, 0;
    const Strain2 e = strain(g);
    CHECK(e.xy == 0.5);
    CHECK(e.xx == 0.0);
    CHECK(e.yy == 0.0);

    g << 2.0, 0, 0, -3.0;
    const Strain2 d = strain(g);
    CHECK(d.xx == 2.0);
    CHECK(d.yy == -3.0);
    CHECK(d.xy == 0.0);
}

TEST_CASE("elasticity operator") {
    const MaterialParams p = MaterialParams::make(100.0, 0.1, 0.0);
    CHECK(elasticity_apply(Strain2{}, p).norm() == 0.0);

    const Stress2 iso = elasticity_apply(Strain2{1, 1, 0}, p);
    CHECK(iso.xx == Catch::Approx(p.c1() + 2 * p.c2()));
    CHECK(iso.yy == Catch::Approx(p.c1() + 2 * p.c2()));
    CHECK(iso.xy == 0.0);

    const Stress2 shear = elasticity_apply(Strain2{0, 0, 0.3}, p);
    CHECK(shear.xy == Catch::Approx(p.c1() * 0.3));
    CHECK(shear.xx == 0.0);
    CHECK(shear.yy == 0.0);
}

TEST_CASE("cauchy stress density scaling") {
    const MaterialParams p = MaterialParams::make(100e6, 0.15, 200.0);
    CHECK(cauchy_stress(Strain2{}, p).norm() == 0.0);

    const MaterialParams linear = MaterialParams::make(100e6, 0.15, 0.0);
    const Strain2 eps{3e-4, -1e-4, 2e-4};
    const Stress2 a = cauchy_stress(eps, linear);
    const Stress2 b = elasticity_apply(eps, linear);
    CHECK((a - b).norm() == 0.0);

    // tr(eps) = 8.05e-5, beta = 200 -> denominator 1.0161
    const Strain2 uniaxial{-1.7249e-5, 9.7749e-5, 0.0};
    const double tr = uniaxial.trace();
    const Stress2 t = cauchy_stress(uniaxial, p);
    const Stress2 scaled = elasticity_apply(uniaxial, p) / (1.0 + 200.0 * tr);
    CHECK((t - scaled).norm() == 0.0);
    CHECK(1.0 + 200.0 * tr == Catch::Approx(1.0161).epsilon(1e-3));

    const Strain2 singular{-0.5 / 200.0 * 2, 0.0, 0.0}; // 1 + beta*tr = 0
    CHECK_THROWS_AS(cauchy_stress(singular, p), SingularDensityFactor);
}

TEST_CASE("stress inversion matches plane-strain algebra") {
    const MaterialParams p = MaterialParams::make(100e6, 0.15, 0.0);
    CHECK(invert_stress(Stress2{}, p).norm() == 0.0);

    // uniaxial T = diag(0, 0.01 MPa)
    const Stress2 t{0.0, 1e4, 0.0};
    const Strain2 eps = invert_stress(t, p);
    const double k = p.c1() + 2 * p.c2();
    CHECK(eps.trace() == Catch::Approx(t.trace() / k)); // 8.05e-5
    CHECK(eps.xx == Catch::Approx(-1.7249e-5).epsilon(1e-4));
    CHECK(eps.yy == Catch::Approx(9.775e-5).epsilon(1e-4));
    CHECK(eps.trace() == Catch::Approx(8.05e-5).epsilon(1e-4));
}

TEST_CASE("inversion roundtrip is exact for admissible states") {
    std::mt19937 rng(11);
    const MaterialParams p = MaterialParams::make(100.0, 0.15, 50.0);
    for (int trial = 0; trial < 200; ++trial) {
        const Strain2 eps = random_strain(rng, 0.5 / (50.0 * 2.0));
        const Stress2 t = cauchy_stress(eps, p);
        const Strain2 back = invert_stress(t, p);
        CHECK((back - eps).norm() <= 1e-12 * (1.0 + eps.norm()));
        const Stress2 t2 = cauchy_stress(back, p);
        CHECK((t2 - t).norm() <= 1e-12 * (1.0 + t.norm()));
    }
}

TEST_CASE("tangent operator limits") {
    const MaterialParams p = MaterialParams::make(100.0, 0.2, 200.0);
    Eigen::Matrix2d g;
    g << 0.3, -0.1, 0.7, 0.2;

    // linearization at the zero state equals the linear stiffness
    const Stress2 at_zero = tangent_apply(Strain2{}, g, p);
    const Stress2 linear = elasticity_apply(strain(g), p);
    CHECK((at_zero - linear).norm() == Catch::Approx(0.0).margin(1e-12));

    // beta = 0 gives the linear stiffness at any state
    const MaterialParams p0 = MaterialParams::make(100.0, 0.2, 0.0);
    const Stress2 at_state = tangent_apply(Strain2{0.1, -0.2, 0.05}, g, p0);
    CHECK((at_state - elasticity_apply(strain(g), p0)).norm() ==
          Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("tangent matches central differences of the stress") {
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const MaterialParams p = MaterialParams::make(100.0, 0.15, 200.0);
    for (int trial = 0; trial < 20; ++trial) {
        const Strain2 eps = random_strain(rng, 0.5 / (200.0 * 2.0));
        Eigen::Matrix2d dir;
        dir << unit(rng), unit(rng), unit(rng), unit(rng);
        const Strain2 eps_dir = strain(dir);
        const Stress2 tangent = tangent_apply(eps, dir, p);

        double previous = -1.0;
        for (double h : {1e-3, 1e-4, 1e-5}) {
            const Stress2 fd = (cauchy_stress(eps + eps_dir * h, p) -
                                cauchy_stress(eps - eps_dir * h, p)) /
                               (2.0 * h);
            const double dev = (fd - tangent).norm();
            if (previous >= 0.0 && dev > 0.0) {
                const double order = std::log10(previous / dev);
                CHECK(order >= 1.9); // one decade in h per loop turn
            }
            previous = dev;
        }
    }
}

TEST_CASE("strain energy density") {
    const MaterialParams p = MaterialParams::make(100.0, 0.1, 0.0);
    CHECK(strain_energy_density(Strain2{}, p) == 0.0);

    const double s = 0.2;
    CHECK(strain_energy_density(Strain2{0, 0, s}, p) == Catch::Approx(p.c1() * s * s));

    std::mt19937 rng(17);
    const MaterialParams pb = MaterialParams::make(100.0, 0.1, 30.0);
    for (int trial = 0; trial < 100; ++trial) {
        const Strain2 eps = random_strain(rng, 0.5 / (30.0 * 2.0));
        CHECK(strain_energy_density(eps, pb) >= 0.0);
    }
}

TEST_CASE("bulk modulus") {
    const MaterialParams p = MaterialParams::make(100e6, 0.15, 200.0);
    const double k0 = p.c2() + p.c1() / 3.0;
    CHECK(bulk_modulus(Strain2{}, p) == Catch::Approx(k0));

    const MaterialParams p0 = MaterialParams::make(100e6, 0.15, 0.0);
    CHECK(bulk_modulus(Strain2{5e-4, -2e-4, 1e-4}, p0) == Catch::Approx(k0));

    const Strain2 eps{1e-4, 0.0, 0.0}; // tr = 1e-4, denominator 1.02
    CHECK(bulk_modulus(eps, p) == Catch::Approx(k0 / 1.02));
}

TEST_CASE("nonlinear Lame coefficients") {
    const MaterialParams p = MaterialParams::make(100.0, 0.2, 4.0);
    const auto [lambda0, mu0] = lame_nonlinear(Strain2{}, p);
    CHECK(lambda0 == Catch::Approx(p.c2()));
    CHECK(mu0 == Catch::Approx(p.c1() / 2));

    const Strain2 eps{0.125, 0.125, 0.0}; // beta*tr = 1
    const auto [lambda, mu] = lame_nonlinear(eps, p);
    CHECK(lambda == Catch::Approx(p.c2() / 2));
    CHECK(mu == Catch::Approx(p.c1() / 4));
}

TEST_CASE("density ratio from mass balance") {
    CHECK(density_ratio(Strain2{}) == 1.0);
    CHECK(density_ratio(Strain2{0.5, 0.5, 0.0}) == Catch::Approx(0.5));
    CHECK_THROWS_AS(density_ratio(Strain2{-0.5, -0.5, 0.0}), NonphysicalCompaction);
}

TEST_CASE("all outputs are isotropic") {
    std::mt19937 rng(19);
    std::uniform_real_distribution<double> angle(0.0, 2 * M_PI);
    const MaterialParams p = MaterialParams::make(100.0, 0.15, 80.0);
    for (int trial = 0; trial < 50; ++trial) {
        const Strain2 eps = random_strain(rng, 0.5 / (80.0 * 2.0));
        const double a = angle(rng);
        const Strain2 eps_rot = rotate(eps, a);
        const Stress2 t_rot_direct = cauchy_stress(eps_rot, p);
        const Stress2 t_rot_expected = rotate(cauchy_stress(eps, p), a);
        CHECK((t_rot_direct - t_rot_expected).norm() <= 1e-12 * (1 + t_rot_expected.norm()));
        CHECK(strain_energy_density(eps_rot, p) ==
              Catch::Approx(strain_energy_density(eps, p)).margin(1e-12));
        CHECK(bulk_modulus(eps_rot, p) == Catch::Approx(bulk_modulus(eps, p)).margin(1e-9));
        CHECK(density_ratio(eps_rot) == Catch::Approx(density_ratio(eps)).margin(1e-12));
    }
}
