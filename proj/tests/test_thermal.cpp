#include <doctest.h>

#include <cmath>

#include "tsepcal/dpt.hpp"
#include "tsepcal/rng.hpp"
#include "tsepcal/thermal.hpp"

using namespace tsepcal;

TEST_CASE("first_pulse_loss: hand values and the zero case") {
    DeviceParams dev;
    CHECK(first_pulse_loss(6.0, 25.0, dev) == doctest::Approx(0.954678).epsilon(1e-12));
    CHECK(first_pulse_loss(0.0, 25.0, dev) == 0.0);
}

TEST_CASE("first_pulse_loss equals the ramp quadrature within 0.1%") {
    DeviceParams dev;
    RandomStream rs(0x10055);
    for (int trial = 0; trial < 20; ++trial) {
        const double i_peak = 0.5 + 11.5 * rs.next_unit();
        const double t_j = -30.0 + 220.0 * rs.next_unit();
        // (1/t3) * integral of i(t)^2 R dt over the linear ramp i = i_peak*t/t3.
        const std::size_t n = 10000;
        double acc = 0.0;
        for (std::size_t k = 0; k <= n; ++k) {
            const double f = static_cast<double>(k) / static_cast<double>(n);
            const double i = i_peak * f;
            const double w = (k == 0 || k == n) ? 0.5 : 1.0;
            acc += w * i * i;
        }
        const double quad = acc / static_cast<double>(n) * r_on(dev, t_j);
        const double closed = first_pulse_loss(i_peak, t_j, dev);
        CHECK(std::fabs(closed - quad) <= 1e-3 * quad);
    }
}

TEST_CASE("delta_t_jp one-shot values") {
    DeviceParams dev;
    CHECK(delta_t_jp(6.0, 25.0, dev) == doctest::Approx(0.91649088).epsilon(1e-9));
    CHECK(delta_t_jp(0.0, 77.0, dev) == 0.0);
    // (1/3) * 64 * r_on(150 C) * 0.96
    CHECK(delta_t_jp(8.0, 150.0, dev) == doctest::Approx(3.2096).epsilon(1e-3));
}

TEST_CASE("delta_t_jp fixed point dominates one-shot and converges") {
    DeviceParams dev;
    for (double i : {2.0, 6.0, 8.0}) {
        for (double t : {25.0, 85.0, 150.0}) {
            const double one = delta_t_jp(i, t, dev, TcMode::one_shot);
            const double fp = delta_t_jp(i, t, dev, TcMode::fixed_point);
            CHECK(fp >= one);
            // self-consistency of the fixed point
            const double again = first_pulse_loss(i, t + fp, dev) * dev.r_th_jp;
            CHECK(std::fabs(again - fp) < 1e-5);
        }
    }
}

TEST_CASE("delta_t_jp increases in both current and plate temperature") {
    DeviceParams dev;
    for (int i = 0; i < 20; ++i) {
        for (int j = 0; j < 20; ++j) {
            const double cur = 0.5 + 0.5 * i;
            const double tp = 20.0 + 6.0 * j;
            CHECK(delta_t_jp(cur + 0.5, tp, dev) > delta_t_jp(cur, tp, dev));
            CHECK(delta_t_jp(cur, tp + 6.0, dev) > delta_t_jp(cur, tp, dev));
        }
    }
}

TEST_CASE("compensate adds the offset and is the identity at zero current") {
    DeviceParams dev;
    CHECK(compensate(25.0, 6.0, dev) == doctest::Approx(25.91649088).epsilon(1e-9));
    CHECK(compensate(77.0, 0.0, dev) == 77.0);
    CHECK(compensate(40.0, 5.0, dev, TcMode::fixed_point) >= compensate(40.0, 5.0, dev));
}

TEST_CASE("foster network: zero power holds ambient") {
    FosterNetwork net({{0.4, 0.8}, {0.56, 60.0}}, 25.0);
    for (int k = 0; k < 1000; ++k) CHECK(net.step(0.0, 0.1) == 25.0);
}

TEST_CASE("foster network: steady state is ambient plus P times total R") {
    FosterNetwork net({{0.4, 0.8}, {0.56, 60.0}}, 25.0);
    const double p = 40.0;
    const double horizon = 10.0 * net.max_tau();
    double t_j = net.ambient();
    for (double t = 0.0; t < horizon; t += 0.05) t_j = net.step(p, 0.05);
    const double expected = 25.0 + p * net.total_r();
    CHECK(std::fabs(t_j - expected) <= 1e-3 * expected);
}

TEST_CASE("foster network: single stage matches the closed form") {
    const double r = 0.7, tau = 2.0, p = 30.0;
    FosterNetwork net({{r, tau}}, 25.0);
    const double dt = tau / 100.0;
    double worst = 0.0;
    double t = 0.0;
    for (int k = 1; k <= 600; ++k) {
        const double stepped = net.step(p, dt);
        t += dt;
        const double analytic = 25.0 + r * p * (1.0 - std::exp(-t / tau));
        worst = std::max(worst, std::fabs(stepped - analytic));
    }
    CHECK(worst < 1e-3 * r * p);
}

TEST_CASE("foster network: zero-input/zero-state superposition is exact") {
    const std::vector<FosterStage> stages{{0.4, 0.8}, {0.56, 60.0}};
    const double dt = 0.25, p = 17.0;
    FosterNetwork warm({stages}, 0.0);
    for (int k = 0; k < 37; ++k) warm.step(9.0, dt);  // some nonzero state s

    FosterNetwork full({stages}, 0.0);
    full.set_state(warm.state());
    const double combined = full.step(p, dt);

    FosterNetwork zero_input({stages}, 0.0);
    zero_input.set_state(warm.state());
    const double decayed = zero_input.step(0.0, dt);

    FosterNetwork zero_state({stages}, 0.0);
    const double driven = zero_state.step(p, dt);

    CHECK(combined == doctest::Approx(decayed + driven).epsilon(1e-14));
}

TEST_CASE("foster network validation") {
    CHECK_THROWS_AS(FosterNetwork({}, 25.0), std::invalid_argument);
    CHECK_THROWS_AS(FosterNetwork({{0.0, 1.0}}, 25.0), std::invalid_argument);
    FosterNetwork net({{0.4, 0.8}}, 25.0);
    CHECK_THROWS_AS(net.step(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("converter_loss: zero current, conduction value, monotone trends") {
    DeviceParams dev;
    const ConverterParams cv;
    CHECK(converter_loss(300.0, 0.0, cv.f_sw, cv.duty, 25.0, dev, cv.k_sw) == 0.0);
    const double p = converter_loss(300.0, 6.0, 1e5, 0.5, 25.0, dev, cv.k_sw);
    const double conduction = 0.5 * 36.0 * 0.0795565;
    CHECK(p == doctest::Approx(conduction + cv.k_sw * 300.0 * 6.0 * 1e5).epsilon(1e-12));
    CHECK(conduction == doctest::Approx(1.4320170).epsilon(1e-9));
    for (double vb = 150.0; vb < 400.0; vb += 50.0)
        CHECK(converter_loss(vb + 50.0, 6.0, 1e5, 0.5, 25.0, dev, cv.k_sw) >
              converter_loss(vb, 6.0, 1e5, 0.5, 25.0, dev, cv.k_sw));
    for (double i = 1.0; i < 9.0; i += 1.0)
        CHECK(converter_loss(300.0, i + 1.0, 1e5, 0.5, 25.0, dev, cv.k_sw) >
              converter_loss(300.0, i, 1e5, 0.5, 25.0, dev, cv.k_sw));
    CHECK_THROWS_AS(converter_loss(300.0, 6.0, 1e5, 1.5, 25.0, dev, cv.k_sw),
                    std::invalid_argument);
}

TEST_CASE("first-pulse loss is invariant to bus voltage at fixed peak current") {
    // Different voltages change the pulse width needed to reach the target,
    // not the average conduction loss over the ramp.
    DeviceParams dev;
    const double loss_ref = first_pulse_loss(6.0, 60.0, dev);
    double width_prev = first_pulse_width(200.0, 6.0, dev.l_load);
    for (double vb : {250.0, 300.0, 350.0, 400.0}) {
        const double width = first_pulse_width(vb, 6.0, dev.l_load);
        CHECK(width < width_prev);
        CHECK(first_pulse_loss(6.0, 60.0, dev) == loss_ref);
        width_prev = width;
    }
}

TEST_CASE("thermal plant JSON round-trips") {
    ThermalPlant plant;
    plant.converter.k_sw = 4.2e-7;
    plant.stages = {{0.3, 1.5}, {0.6, 42.0}};
    nlohmann::json j = plant;
    const auto back = j.get<ThermalPlant>();
    CHECK(back.converter.k_sw == plant.converter.k_sw);
    CHECK(back.stages.size() == 2);
    CHECK(back.stages[1].tau == 42.0);
}
