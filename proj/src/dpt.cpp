#include "tsepcal/dpt.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "tsepcal/rng.hpp"

namespace tsepcal {

namespace {

void check_op(const OperatingPoint& op) {
    if (!(op.v_bus > 0.0)) throw std::invalid_argument("operating point: v_bus must be > 0");
    if (op.i_load_target < 0.0) throw std::invalid_argument("operating point: i_load_target must be >= 0");
    check_tj_range(op.t_plate);
}

[[noreturn]] void throw_instability(const OperatingPoint& op, const DeviceParams& dev,
                                    const SimConfig& cfg, double i, double t) {
    std::ostringstream os;
    os << "turn-on simulation unstable: |i_ds| = " << i << " A at t = " << t
       << " s exceeds 10 x rated (" << cfg.i_rated << " A); parameter set: k_trans = "
       << dev.k_trans << ", lambda_ch = " << dev.lambda_ch << ", L_D = " << dev.l_d
       << ", L_S = " << dev.l_s << ", C_gd = " << dev.c_gd << ", C_ds = " << dev.c_ds
       << ", v_bus = " << op.v_bus << ", dt = " << cfg.dt;
    throw std::runtime_error(os.str());
}

}  // namespace

double first_pulse_width(double v_bus_v, double i_load_target_a, double l_load_h) {
    if (!(v_bus_v > 0.0)) throw std::invalid_argument("first_pulse_width: v_bus must be > 0");
    if (i_load_target_a < 0.0) throw std::invalid_argument("first_pulse_width: negative current");
    if (!(l_load_h > 0.0)) throw std::invalid_argument("first_pulse_width: l_load must be > 0");
    return i_load_target_a * l_load_h / v_bus_v;
}

TransientTrace simulate_turn_on(const OperatingPoint& op, double t_j_actual_c,
                                const DeviceParams& dev, const SimConfig& cfg) {
    validate(dev);
    check_op(op);
    if (!(cfg.dt > 0.0)) throw std::invalid_argument("sim: dt must be > 0");

    const double v_th = v_th_true(dev, t_j_actual_c);
    const double tau_g = dev.r_g * (dev.c_gs + dev.c_gd);
    const double l_loop = dev.l_d + dev.l_s;
    const double c_node = dev.c_gd + dev.c_ds;
    const double k_eff = dev.k_trans * (1.0 + dev.lambda_ch * op.v_bus);
    const double gate_decay = std::exp(-cfg.dt / tau_g);
    const double gate_half_decay = std::exp(-0.5 * cfg.dt / tau_g);
    const double v_gs_end = 0.95 * dev.v_gg_on;
    // With no load target the current bound never fires and the gate criterion
    // ends the trace.
    const double i_end = op.i_load_target > 0.0 ? 2.0 * op.i_load_target
                                                : std::numeric_limits<double>::infinity();
    const double i_limit = 10.0 * cfg.i_rated;

    // Staggered grid: v_gs and v_ds live on integer steps t_k, i_ds on half
    // steps t_{k+1/2}, so the stored backward difference of i_ds is the slew
    // centred on t_k. Sample k therefore holds i_ds(t_{k+1/2}).
    //
    // Initial state sits on the pre-threshold particular solution of the gate
    // drive (slew g0 e^{-t/tau}), so the trace starts transient-free.
    const double g0 = (dev.v_gg_on - dev.v_gg_off) / tau_g;
    const double i_amp = -dev.c_gd * g0 / (1.0 + l_loop * c_node / (tau_g * tau_g));
    const double i_init = i_amp * gate_half_decay;  // i at t = +dt/2
    const double v_ds_init = op.v_bus + i_amp * l_loop / tau_g;

    TransientTrace tr;
    tr.time.push_back(0.0);
    tr.v_gs.push_back(dev.v_gg_off);
    tr.i_ds.push_back(i_init);
    tr.v_ds.push_back(v_ds_init);
    tr.v_ls.push_back(0.0);

    double v_gs = dev.v_gg_off;
    double i_ds = i_init;
    double v_ds = v_ds_init;

    for (std::size_t k = 1; k <= cfg.max_steps; ++k) {
        // Midpoint (t_{k-1/2}) gate values, exact for the RC drive.
        const double v_gs_mid = dev.v_gg_on + (v_gs - dev.v_gg_on) * gate_half_decay;
        const double dvgs_mid = (dev.v_gg_on - v_gs_mid) / tau_g;
        const double vov = v_gs_mid - v_th;
        const double i_ch = vov > 0.0 ? k_eff * vov * vov : 0.0;

        // Node equation over [t_{k-1}, t_k] with midpoint current values.
        const double v_ds_next = v_ds + cfg.dt * (i_ds - i_ch + dev.c_gd * dvgs_mid) / c_node;
        // Inductive update over [t_{k-1/2}, t_{k+1/2}] with the lagged v_ds.
        const double i_next = i_ds + cfg.dt * (op.v_bus - v_ds_next) / l_loop;
        const double v_gs_next = dev.v_gg_on + (v_gs - dev.v_gg_on) * gate_decay;

        const double t = static_cast<double>(k) * cfg.dt;
        tr.time.push_back(t);
        tr.v_gs.push_back(v_gs_next);
        tr.i_ds.push_back(i_next);
        tr.v_ds.push_back(v_ds_next);
        tr.v_ls.push_back(dev.l_s * (i_next - i_ds) / cfg.dt);

        if (!std::isfinite(i_next) || std::fabs(i_next) > i_limit)
            throw_instability(op, dev, cfg, i_next, t);

        v_gs = v_gs_next;
        i_ds = i_next;
        v_ds = v_ds_next;

        if (v_gs >= v_gs_end || i_ds >= i_end) return tr;
    }
    throw std::runtime_error("turn-on simulation exceeded max_steps without reaching an end condition");
}

double capture_v_th(TransientTrace& trace, const DeviceParams& dev) {
    if (trace.size() == 0) throw std::invalid_argument("capture_v_th: empty trace");
    for (std::size_t k = 1; k < trace.size(); ++k) {
        if (trace.v_ls[k] >= dev.delta_cap) {
            const double dv = trace.v_ls[k] - trace.v_ls[k - 1];
            const double frac = dv > 0.0 ? (dev.delta_cap - trace.v_ls[k - 1]) / dv : 1.0;
            const double t_th = trace.time[k - 1] + frac * (trace.time[k] - trace.time[k - 1]);
            const double v = trace.v_gs[k - 1] + frac * (trace.v_gs[k] - trace.v_gs[k - 1]);
            trace.t_th = t_th;
            trace.v_th_measured = v;
            return v;
        }
    }
    throw std::runtime_error("capture_v_th: v_ls never crossed delta_cap = " +
                             std::to_string(dev.delta_cap) + " V (no turn-on detected)");
}

double measurement_noise(const NoiseSpec& noise, const OperatingPoint& op, std::uint64_t rep) {
    if (noise.sigma_ln < 0.0) throw std::invalid_argument("noise: sigma_ln must be >= 0");
    std::uint64_t key = noise.seed_base;
    key = hash_double(key, op.t_plate);
    key = hash_double(key, op.v_bus);
    key = hash_double(key, op.i_load_target);
    key = mix64(key, rep);
    RandomStream stream(key);
    const double z = stream.next_normal();
    return std::exp(noise.mu_ln + noise.sigma_ln * z) -
           std::exp(noise.mu_ln + 0.5 * noise.sigma_ln * noise.sigma_ln);
}

double measure_v_th(const OperatingPoint& op, double t_j_actual_c, const DeviceParams& dev,
                    const NoiseSpec& noise, std::uint64_t rep, const SimConfig& cfg) {
    TransientTrace tr = simulate_turn_on(op, t_j_actual_c, dev, cfg);
    const double v = capture_v_th(tr, dev);
    return v + measurement_noise(noise, op, rep);
}

}  // namespace tsepcal
