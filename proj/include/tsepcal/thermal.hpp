#pragma once

// =============================================================================
// Temperature compensation and thermal plant
// =============================================================================
// Two unrelated responsibilities share a header because both are small:
//  - the compensation of the junction-to-plate temperature offset caused by
//    the first-pulse load current (the correction applied to plate-temperature
//    labels before calibration), and
//  - a Foster RC network plus a converter loss model, which together drive the
//    synthetic DC-DC warm-up trajectories used for evaluation.
// =============================================================================

#include <cmath>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "tsepcal/device.hpp"

namespace tsepcal {

enum class TcMode {
    one_shot,    ///< R_ON evaluated at the plate temperature (single evaluation)
    fixed_point  ///< iterate until the compensated temperature is self-consistent
};

/// First-pulse average conduction loss over the ramp, W: (1/3) i^2 R_ON(T_j).
inline double first_pulse_loss(double i_peak_a, double t_j_c, const DeviceParams& dev) {
    if (i_peak_a < 0.0) throw std::invalid_argument("first_pulse_loss: negative current");
    return i_peak_a * i_peak_a * r_on(dev, t_j_c) / 3.0;
}

/// Junction-to-plate temperature rise caused by the first-pulse current, degC.
inline double delta_t_jp(double i_load_a, double t_plate_c, const DeviceParams& dev,
                         TcMode mode = TcMode::one_shot) {
    if (i_load_a < 0.0) throw std::invalid_argument("delta_t_jp: negative current");
    if (mode == TcMode::one_shot) {
        return first_pulse_loss(i_load_a, t_plate_c, dev) * dev.r_th_jp;
    }
    // Fixed point of T = t_plate + (1/3) i^2 r_on(T) r_th_jp. The map is affine
    // in T with contraction factor (1/3) i^2 slope r_th_jp; diverging inputs
    // are rejected instead of iterated.
    const double gain = i_load_a * i_load_a / 3.0 * dev.r_on_slope * 1e-3 * dev.r_th_jp;
    if (gain >= 1.0) throw std::runtime_error("delta_t_jp: fixed point diverges at this current");
    double dt = 0.0;
    for (int it = 0; it < 200; ++it) {
        const double next = first_pulse_loss(i_load_a, t_plate_c + dt, dev) * dev.r_th_jp;
        if (std::fabs(next - dt) < 1e-6) return next;
        dt = next;
    }
    return dt;
}

/// Real chip temperature during the second-pulse measurement, degC.
inline double compensate(double t_plate_c, double i_load_a, const DeviceParams& dev,
                         TcMode mode = TcMode::one_shot) {
    return t_plate_c + delta_t_jp(i_load_a, t_plate_c, dev, mode);
}

// =============================================================================
// Foster network
// =============================================================================

struct FosterStage {
    double r;    ///< degC/W
    double tau;  ///< s
};

/// Junction-to-ambient Foster chain with its per-stage temperature state.
class FosterNetwork {
public:
    FosterNetwork(std::vector<FosterStage> stages, double t_ambient_c)
        : stages_(std::move(stages)), t_ambient_(t_ambient_c) {
        if (stages_.empty()) throw std::invalid_argument("foster: at least one stage required");
        for (const auto& s : stages_)
            if (!(s.r > 0.0) || !(s.tau > 0.0))
                throw std::invalid_argument("foster: stage r and tau must be > 0");
        reset();
    }

    void reset() { state_.assign(stages_.size(), 0.0); }

    /// Advance by dt under constant power, exact per-stage exponential update.
    /// Returns the junction temperature after the step.
    double step(double p_loss_w, double dt_s) {
        if (!(dt_s > 0.0)) throw std::invalid_argument("foster: dt must be > 0");
        double sum = 0.0;
        for (std::size_t i = 0; i < stages_.size(); ++i) {
            const double a = std::exp(-dt_s / stages_[i].tau);
            state_[i] = state_[i] * a + stages_[i].r * p_loss_w * (1.0 - a);
            sum += state_[i];
        }
        return t_ambient_ + sum;
    }

    [[nodiscard]] double junction_temperature() const {
        double sum = 0.0;
        for (double t : state_) sum += t;
        return t_ambient_ + sum;
    }

    [[nodiscard]] double total_r() const {
        double r = 0.0;
        for (const auto& s : stages_) r += s.r;
        return r;
    }

    [[nodiscard]] double max_tau() const {
        double m = 0.0;
        for (const auto& s : stages_) m = std::max(m, s.tau);
        return m;
    }

    [[nodiscard]] double ambient() const { return t_ambient_; }
    [[nodiscard]] const std::vector<FosterStage>& stages() const { return stages_; }
    [[nodiscard]] const std::vector<double>& state() const { return state_; }
    void set_state(std::vector<double> s) {
        if (s.size() != stages_.size()) throw std::invalid_argument("foster: state size mismatch");
        state_ = std::move(s);
    }

private:
    std::vector<FosterStage> stages_;
    double t_ambient_;
    std::vector<double> state_;
};

// =============================================================================
// Converter loss
// =============================================================================

struct ConverterParams {
    double k_sw = 3.5e-7;  ///< J/(V*A), switching energy coefficient
    double f_sw = 1e5;     ///< Hz
    double duty = 0.5;
};

/// Average device loss in a hard-switched DC-DC leg:
/// conduction duty*i^2*R_ON(T_j) plus switching k_sw*v_bus*i*f_sw.
inline double converter_loss(double v_bus_v, double i_load_a, double f_sw_hz, double duty,
                             double t_j_c, const DeviceParams& dev, double k_sw) {
    if (!(duty >= 0.0 && duty <= 1.0)) throw std::invalid_argument("converter_loss: duty outside [0,1]");
    return duty * i_load_a * i_load_a * r_on(dev, t_j_c) + k_sw * v_bus_v * i_load_a * f_sw_hz;
}

// --- JSON for the thermal plant ----------------------------------------------

struct ThermalPlant {
    std::vector<FosterStage> stages{{0.4, 0.8}, {0.56, 60.0}};
    double t_ambient = 25.0;
    ConverterParams converter{};
};

inline void to_json(nlohmann::json& j, const ThermalPlant& p) {
    nlohmann::json st = nlohmann::json::array();
    for (const auto& s : p.stages) st.push_back({{"r_c_per_w", s.r}, {"tau_s", s.tau}});
    j = nlohmann::json{{"foster_stages", st},
                       {"t_ambient_c", p.t_ambient},
                       {"k_sw_j_per_va", p.converter.k_sw},
                       {"f_sw_hz", p.converter.f_sw},
                       {"duty", p.converter.duty}};
}

inline void from_json(const nlohmann::json& j, ThermalPlant& p) {
    p.stages.clear();
    for (const auto& s : j.at("foster_stages"))
        p.stages.push_back({s.at("r_c_per_w").get<double>(), s.at("tau_s").get<double>()});
    j.at("t_ambient_c").get_to(p.t_ambient);
    j.at("k_sw_j_per_va").get_to(p.converter.k_sw);
    j.at("f_sw_hz").get_to(p.converter.f_sw);
    j.at("duty").get_to(p.converter.duty);
}

}  // namespace tsepcal
