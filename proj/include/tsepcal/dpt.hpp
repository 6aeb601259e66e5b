#pragma once

// =============================================================================
// Dual-pulse-test bench
// =============================================================================
// First-pulse bookkeeping (pulse width, average conduction loss) and the
// second-pulse turn-on transient from which the threshold voltage is captured.
//
// The transient integrates three coupled pieces on a fixed 50 ps grid:
//   gate      dv_gs/dt = (V_gg_on - v_gs) / (R_g (C_gs + C_gd))
//   channel   i_ch = k_trans (1 + lambda v_bus) max(v_gs - V_TH, 0)^2
//   loop      i_ds = i_ch + C_gd dv_gd/dt + C_ds dv_ds/dt,
//             v_ds = V_bus - (L_D + L_S) di_ds/dt
// The loop pair is stepped semi-implicitly: the inductive di_ds/dt uses the
// previous step's v_ds, then the node equation advances v_ds with the fresh
// current. Initial conditions sit on the pre-threshold particular solution of
// the gate drive so the trace starts without a spurious startup transient.
//
// V_TH capture: first instant where v_ls = L_S di_ds/dt reaches delta_cap,
// with linear interpolation between the bracketing samples.
// =============================================================================

#include <cstdint>
#include <optional>
#include <vector>

#include "tsepcal/device.hpp"

namespace tsepcal {

struct OperatingPoint {
    double t_plate = 25.0;      ///< degC, heating-plate setpoint
    double v_bus = 300.0;       ///< V
    double i_load_target = 4.0; ///< A
};

struct NoiseSpec {
    double sigma_ln = 0.28;              ///< log-space std
    double mu_ln = -5.288;               ///< log-space mean (scale ~ 5.1 mV)
    std::uint64_t seed_base = 0x7453c001;
};

struct SimConfig {
    double dt = 50e-12;            ///< s, fixed integration step
    double i_rated = 36.0;         ///< A, device class rating (instability guard at 10x)
    std::size_t max_steps = 8'000'000;
};

struct TransientTrace {
    std::vector<double> time;  ///< s, fixed step, starts at 0
    std::vector<double> v_gs;  ///< V
    std::vector<double> i_ds;  ///< A
    std::vector<double> v_ds;  ///< V
    std::vector<double> v_ls;  ///< V, L_S * backward difference of i_ds
    std::optional<double> t_th;           ///< s, capture instant
    std::optional<double> v_th_measured;  ///< V, captured threshold

    [[nodiscard]] std::size_t size() const { return time.size(); }
};

/// First-pulse width t1 - t0 that makes i_L reach i_load_target, s.
double first_pulse_width(double v_bus_v, double i_load_target_a, double l_load_h);

/// Second-pulse turn-on transient at the given actual junction temperature.
TransientTrace simulate_turn_on(const OperatingPoint& op, double t_j_actual_c,
                                const DeviceParams& dev, const SimConfig& cfg = {});

/// Scans the trace for the capture instant and records (t_th, v_th_measured).
/// Throws std::runtime_error if v_ls never reaches delta_cap.
double capture_v_th(TransientTrace& trace, const DeviceParams& dev);

/// Hidden-error draw for one (condition, repeat) cell: a zero-mean shifted
/// log-Gaussian, identical for identical (op, rep, seed_base).
double measurement_noise(const NoiseSpec& noise, const OperatingPoint& op, std::uint64_t rep);

/// One complete virtual measurement: simulate, capture, add the error draw.
double measure_v_th(const OperatingPoint& op, double t_j_actual_c, const DeviceParams& dev,
                    const NoiseSpec& noise, std::uint64_t rep, const SimConfig& cfg = {});

}  // namespace tsepcal
