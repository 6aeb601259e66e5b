#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <json.hpp>

#include "tsepcal/device.hpp"

using namespace tsepcal;

TEST_CASE("r_on matches the milliohm linearization") {
    DeviceParams dev;
    CHECK(r_on(dev, 25.0) == doctest::Approx(0.0795565).epsilon(1e-12));
    CHECK(r_on(dev, 0.0) == doctest::Approx(0.064004).epsilon(1e-12));
    CHECK(r_on(dev, 100.0) == doctest::Approx(0.125814).epsilon(1e-12));
}

TEST_CASE("r_on is affine: midpoint identity to machine precision") {
    DeviceParams dev;
    for (double a : {-40.0, 3.0, 77.5, 141.0}) {
        const double b = a + 31.25;
        CHECK(r_on(dev, a) + r_on(dev, b) ==
              doctest::Approx(2.0 * r_on(dev, 0.5 * (a + b))).epsilon(1e-14));
    }
}

TEST_CASE("r_on rejects temperatures outside the modeled range") {
    DeviceParams dev;
    CHECK_THROWS_AS(r_on(dev, -41.0), std::out_of_range);
    CHECK_THROWS_AS(r_on(dev, 201.0), std::out_of_range);
}

TEST_CASE("psi_b vanishes where n_i reaches N_A") {
    DeviceParams dev;
    // Choose the prefactor so that n_i(400 K) = N_A exactly.
    const double t_k = 400.0;
    dev.n_i_prefactor =
        dev.n_a / (t_k * std::sqrt(t_k) * std::exp(-dev.e_g / (2.0 * kBoltzmannOverQ * t_k)));
    CHECK(psi_b(dev, t_k - kCelsiusToKelvin) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("psi_b at 25 C matches the high-precision closed-form value") {
    DeviceParams dev;
    // Evaluated with 30-digit arithmetic from the shipped constants.
    CHECK(psi_b(dev, 25.0) == doctest::Approx(1.599974722863743).epsilon(1e-12));
    CHECK(psi_b(dev, 150.0) == doctest::Approx(1.5682357236457409).epsilon(1e-12));
}

TEST_CASE("psi_b decreases with temperature") {
    DeviceParams dev;
    CHECK(psi_b(dev, 150.0) < psi_b(dev, 25.0));
    double prev = psi_b(dev, -40.0);
    for (double t = -39.0; t <= 200.0; t += 1.0) {
        const double cur = psi_b(dev, t);
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("n_i increases with temperature") {
    DeviceParams dev;
    double prev = n_i(dev, 233.15);
    for (double t_k = 234.15; t_k <= 473.15; t_k += 1.0) {
        const double cur = n_i(dev, t_k);
        CHECK(cur > prev);
        prev = cur;
    }
}

TEST_CASE("v_th_true lands in the datasheet-class window at 25 C") {
    DeviceParams dev;
    CHECK(std::fabs(v_th_true(dev, 25.0) - 2.7) < 0.3);
}

TEST_CASE("v_th_true strictly decreases over a 1 C sweep") {
    DeviceParams dev;
    double prev = v_th_true(dev, -40.0);
    for (double t = -39.0; t <= 175.0; t += 1.0) {
        const double cur = v_th_true(dev, t);
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("v_th_true degenerate reduction: no lumped terms leaves 2 psi_b") {
    DeviceParams dev;
    dev.c_ox_sqrt_term = 1e-300;  // fields must stay positive
    dev.phi_ms_term = 0.0;
    CHECK(v_th_true(dev, 50.0) == doctest::Approx(2.0 * psi_b(dev, 50.0)).epsilon(1e-12));
}

TEST_CASE("v_th_true slope is negative everywhere (finite differences)") {
    DeviceParams dev;
    for (double t = -39.0; t <= 199.0; t += 1.0)
        CHECK(v_th_true(dev, t + 0.5) - v_th_true(dev, t - 0.5) < 0.0);
}

TEST_CASE("v_th_true reports a model-domain error when the body goes intrinsic") {
    DeviceParams dev;
    dev.n_i_prefactor = 1e40;  // n_i >> N_A at any modeled temperature
    CHECK_THROWS_AS(v_th_true(dev, 25.0), std::domain_error);
}

TEST_CASE("validate names the offending field") {
    DeviceParams dev;
    dev.l_s = 0.0;
    CHECK_THROWS_WITH_AS(validate(dev), doctest::Contains("l_s"), std::invalid_argument);
    dev = DeviceParams{};
    dev.delta_cap = -1.0;
    CHECK_THROWS_AS(validate(dev), std::invalid_argument);
    CHECK_NOTHROW(validate(DeviceParams{}));
}

TEST_CASE("device JSON round-trips exactly") {
    DeviceParams dev;
    dev.r_g = 123.5;
    dev.k_trans = 0.0375;
    nlohmann::json j = dev;
    const auto back = j.get<DeviceParams>();
    CHECK(back.r_g == dev.r_g);
    CHECK(back.k_trans == dev.k_trans);
    CHECK(back.phi_ms_term == dev.phi_ms_term);
    CHECK(back.n_i_prefactor == dev.n_i_prefactor);
    CHECK(back.l_load == dev.l_load);
}
