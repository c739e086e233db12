#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "pipeflow/core.hpp"

using namespace pipeflow;
using testing_support::Rng;

TEST_CASE("sound speed") {
    CHECK(std::abs(sound_speed(5.0e-10, 1000.0) - 1414.2136) <= 1e-3);
    CHECK(std::abs(sound_speed(5.0e-10, 1000.0) - 1414.2136) <= 1e-3);
    CHECK(sound_speed(1.0, 1.0) == 1.0);
    CHECK(sound_speed(4.0, 0.25) == 1.0);
    CHECK_THROWS_AS(sound_speed(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(sound_speed(1.0, -1.0), std::domain_error);
}

TEST_CASE("sound speed squared times beta rho0 is one") {
    Rng rng(11);
    for (int k = 0; k < 1000; ++k) {
        const double beta = rng.log_uniform(1e-12, 1e2);
        const double rho0 = rng.log_uniform(1e-3, 1e5);
        const double c = sound_speed(beta, rho0);
        CHECK(std::abs(c * c * beta * rho0 - 1.0) <= 1e-12);
    }
}

TEST_CASE("effective wave speed of the concrete penstock") {
    const double c = sound_speed(5.0e-10, 1000.0);
    const double delta = 2.0 * std::sqrt(2.0 / kPi);
    CHECK(delta == doctest::Approx(1.59577).epsilon(1e-5));
    const double a = effective_wave_speed(c, delta, 0.2, 23.0e9, 5.0e-10);
    CHECK(std::abs(a - 1086.6) <= 0.1);
}

TEST_CASE("effective wave speed limits") {
    CHECK(effective_wave_speed(1000.0, 1e-12, 0.2, 23e9, 5e-10) == doctest::Approx(1000.0));
    // beta e E = delta
    CHECK(effective_wave_speed(1000.0, 2.0, 1.0, 4.0, 0.5) ==
          doctest::Approx(1000.0 / std::sqrt(2.0)));
    CHECK_THROWS_AS(effective_wave_speed(1000.0, 0.0, 0.2, 23e9, 5e-10), std::domain_error);
    CHECK_THROWS_AS(effective_wave_speed(1000.0, 1.0, 0.2, -1.0, 5e-10), std::domain_error);

    Rng rng(12);
    for (int k = 0; k < 500; ++k) {
        const double c = rng.log_uniform(1, 1e4);
        CHECK(effective_wave_speed(c, rng.log_uniform(1e-3, 10), rng.log_uniform(1e-3, 1),
                                   rng.log_uniform(1e6, 1e12), rng.log_uniform(1e-12, 1e-6)) <= c);
    }
}

TEST_CASE("piezometric head") {
    CHECK(piezometric_head(2.0, 2.0, 10.0, 1.5, 1000.0, 9.81) == doctest::Approx(11.5));
    const double c = 1000.0, g = 9.81;
    CHECK(piezometric_head(1.0 + g / (c * c), 1.0, 0.0, 0.0, c, g) == doctest::Approx(1.0));
    // z + delta + c^2 (A/S - 1) / g evaluated by hand: 251.59577 + 472.27776 / 9.81
    const double expected = 250.0 + 1.59577 + 1086.6 * 1086.6 * 0.0004 / 9.81;
    CHECK(std::abs(expected - 299.7381) <= 1e-3);
    CHECK(piezometric_head(2.0 * 1.0004, 2.0, 250.0, 1.59577, 1086.6, 9.81) ==
          doctest::Approx(expected).epsilon(1e-12));
    CHECK_THROWS_AS(piezometric_head(0.0, 2.0, 0.0, 0.0, c, g), std::domain_error);
    CHECK_THROWS_AS(piezometric_head(1.0, 0.0, 0.0, 0.0, c, g), std::domain_error);
}

TEST_CASE("piezometric head is increasing in A and inverted exactly") {
    Rng rng(13);
    for (int k = 0; k < 500; ++k) {
        const double S = rng.uniform(0.1, 5.0);
        const double a1 = rng.uniform(0.5, 1.5) * S;
        const double a2 = a1 * (1.0 + rng.uniform(1e-9, 0.1));
        const double z = rng.uniform(-100, 300);
        CHECK(piezometric_head(a2, S, z, 1.0, 1086.6, 9.81) >
              piezometric_head(a1, S, z, 1.0, 1086.6, 9.81));
        const double h = piezometric_head(a1, S, z, 1.0, 1086.6, 9.81);
        CHECK(area_from_piezometric_head(h, S, z, 1.0, 1086.6, 9.81) ==
              doctest::Approx(a1).epsilon(1e-12));
    }
    CHECK_THROWS_AS(area_from_piezometric_head(-1e9, 2.0, 0.0, 0.0, 1000.0, 9.81),
                    std::domain_error);
}

TEST_CASE("total head") {
    CHECK(total_head(1.0, 0.0, 0.0, 1000.0, 9.81) == 0.0);
    CHECK(std::abs(total_head(2.0, 3.0, 10.0, 100.0, 9.81) - 7034.07) <= 0.01);
    CHECK(total_head(2.0, 3.0, 10.0, 100.0, 9.81) ==
          doctest::Approx(4.5 + 98.1 + 10000.0 * std::log(2.0)));
    CHECK_THROWS_AS(total_head(0.0, 0.0, 0.0, 1.0, 1.0), std::domain_error);

    // Still-water states on the same level set of g z + c^2 ln A.
    const double c = 1086.6, g = 9.81;
    const double a1 = 2.0, z1 = 250.0, z2 = 75.0;
    const double a2 = a1 * std::exp(-g * (z2 - z1) / (c * c));
    CHECK(total_head(a1, 0, z1, c, g) == doctest::Approx(total_head(a2, 0, z2, c, g)).epsilon(1e-14));

    Rng rng(14);
    for (int k = 0; k < 200; ++k) {
        const double A = rng.uniform(0.5, 3), B = rng.uniform(0.5, 3);
        const double za = rng.uniform(0, 300), zb = rng.uniform(0, 300);
        const double diff = total_head(A, 0, za, c, g) - total_head(B, 0, zb, c, g);
        const double expected = g * (za - zb) + c * c * (std::log(A) - std::log(B));
        CHECK(std::abs(diff - expected) <= 1e-9 * c * c);
    }
}

TEST_CASE("entropy density") {
    CHECK(entropy_cell(1.0, 0.0, 0.0, 10.0, 9.81) == 0.0);
    CHECK(entropy_cell(1.0, 2.0, 0.0, 10.0, 9.81) == doctest::Approx(2.0));
    CHECK(std::abs(entropy_cell(2.0, 3.0, 5.0, 10.0, 9.81) - 238.979) <= 0.01);
    CHECK_THROWS_AS(entropy_cell(-1.0, 0.0, 0.0, 1.0, 1.0), std::domain_error);
}

TEST_CASE("entropy at rest is convex in A") {
    const double c = 1086.6;
    const double h = 1e-3;
    for (double A = 0.05; A < 10.0; A += 0.05) {
        const double d2 = entropy_cell(A + h, 0, 0, c, 9.81) - 2.0 * entropy_cell(A, 0, 0, c, 9.81) +
                          entropy_cell(A - h, 0, 0, c, 9.81);
        CHECK(d2 >= 0.0);
    }
}

TEST_CASE("Strickler friction slope") {
    const auto geo = PipeGeometry::circular(2000.0, 2.0, 0.2, 23e9, Altitude{});
    CHECK(std::abs(geo.perimeter_Pm - 5.01325) <= 1e-5);
    const FrictionParams on{true, 80.0};
    const double K = strickler_coefficient(geo, on);
    CHECK(std::abs(K - 5.32035e-4) <= 1e-8);
    CHECK(std::abs(friction_slope(5.0, geo, on) - 1.33009e-2) <= 1e-6);
    CHECK(friction_slope(0.0, geo, on) == 0.0);
    CHECK(friction_slope(5.0, geo, FrictionParams{}) == 0.0);

    Rng rng(15);
    for (int k = 0; k < 200; ++k) {
        const double u = rng.uniform(-20, 20);
        CHECK(friction_slope(u, geo, on) == -friction_slope(-u, geo, on));
    }
    CHECK_THROWS_AS((FrictionParams{true, 0.0}.validate()), std::domain_error);
}

TEST_CASE("circular geometry") {
    const auto geo = PipeGeometry::circular(10.0, 3.0, 0.1, 1e9, Altitude{});
    CHECK(geo.section_S == doctest::Approx(kPi * geo.diameter_delta * geo.diameter_delta / 4.0));
    CHECK(geo.perimeter_Pm == doctest::Approx(kPi * geo.diameter_delta));
    CHECK_THROWS(PipeGeometry::circular(-1.0, 3.0, 0.1, 1e9, Altitude{}));
}

TEST_CASE("altitude profiles") {
    Altitude slope;
    slope.upstream_m = 250.0;
    slope.slope_deg = 5.0;
    CHECK(slope.at(0.0) == 250.0);
    CHECK(slope.at(2000.0) == doctest::Approx(250.0 - 2000.0 * std::sin(5.0 * kPi / 180.0)));

    Altitude table;
    table.table_x = {0.0, 100.0, 300.0};
    table.table_z = {10.0, 0.0, 20.0};
    CHECK(table.at(-5.0) == 10.0);
    CHECK(table.at(50.0) == doctest::Approx(5.0));
    CHECK(table.at(200.0) == doctest::Approx(10.0));
    CHECK(table.at(500.0) == 20.0);

    Altitude bad = table;
    bad.table_x = {0.0, 0.0, 1.0};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("mesh construction") {
    Altitude slope;
    slope.upstream_m = 250.0;
    slope.slope_deg = 5.0;
    const Mesh m = Mesh::uniform(2000.0, 1000, slope);
    CHECK(m.size() == 1000);
    CHECK(m.min_width() == doctest::Approx(2.0));
    CHECK(m.centers.front() == doctest::Approx(1.0));
    for (std::size_t i = 0; i < m.size(); ++i) CHECK(m.z_cells[i] == slope.at(m.centers[i]));

    CHECK_THROWS(Mesh::uniform(2000.0, 0, slope));
    CHECK_THROWS(Mesh::from_cells({0.0, 0.0}, {1.0, 1.0}, {0.0, 0.0}));
    CHECK_THROWS(Mesh::from_cells({0.0, 1.0}, {1.0, 0.0}, {0.0, 0.0}));
    CHECK_THROWS(Mesh::from_cells({0.0, 1.0}, {1.0, 1.0}, {0.0}));
}

TEST_CASE("state validation and totals") {
    State s(3, 2.0, 1.0);
    CHECK_NOTHROW(s.validate());
    CHECK(s.velocity(0) == 0.5);
    s.area_A[1] = 0.0;
    CHECK_THROWS_AS(s.validate(), std::domain_error);

    const Mesh m = Mesh::uniform(3.0, 3, Altitude{});
    const State t(3, 2.0, 1.0);
    CHECK(total_mass(t, m) == doctest::Approx(6.0));
    CHECK(total_momentum(t, m) == doctest::Approx(3.0));
    CHECK(total_entropy(t, m, 10.0, 9.81) ==
          doctest::Approx(3.0 * entropy_cell(2.0, 1.0, 0.0, 10.0, 9.81)));
}

TEST_CASE("physical constants") {
    const auto k = PhysicalConstants::make(9.81, 5e-10, 1000.0);
    CHECK(k.c == doctest::Approx(1414.2136));
    CHECK(PhysicalConstants::make(9.81, 5e-10, 1000.0, 1086.6).c == 1086.6);
    CHECK_THROWS(PhysicalConstants::make(0.0, 5e-10, 1000.0));
    CHECK_THROWS(PhysicalConstants::make(9.81, 5e-10, 1000.0, -1.0));
}
