#pragma once

// =============================================================================
// Virtual SiC MOSFET device description
// =============================================================================
// Electro-thermal parameter set of the device under test plus the closed-form
// laws built on it:
//  - on-resistance, linear in junction temperature (milliohm fit),
//  - Fermi potential and intrinsic carrier density of the body region,
//  - true threshold voltage V_TH(T_j), strictly decreasing over the modeled
//    range for the shipped defaults.
// The semiconductor constants that vendors do not publish (work-function and
// charge terms, oxide capacitance, state densities) are lumped into three
// fitted constants: phi_ms_term, c_ox_sqrt_term and n_i_prefactor.
// =============================================================================

#include <cmath>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace tsepcal {

/// Boltzmann constant over elementary charge, V/K.
inline constexpr double kBoltzmannOverQ = 1.380649e-23 / 1.602176634e-19;

inline constexpr double kCelsiusToKelvin = 273.15;

/// Modeled junction-temperature range, degC.
inline constexpr double kTjMin = -40.0;
inline constexpr double kTjMax = 200.0;

struct DeviceParams {
    // On-resistance linearization, milliohm units: r_on = slope*Tj + intercept.
    double r_on_slope = 0.6181;      ///< mOhm/degC
    double r_on_intercept = 64.004;  ///< mOhm

    double r_th_jp = 0.96;  ///< degC/W, junction-to-plate thermal resistance

    // Power-loop strays and interelectrode capacitances.
    double l_d = 5e-9;    ///< H, drain stray inductance
    double l_s = 5e-9;    ///< H, source stray inductance
    double c_gd = 2e-12;  ///< F
    double c_gs = 950e-12;  ///< F
    double c_ds = 20e-12;   ///< F

    // Gate drive.
    double r_g = 600.0;      ///< Ohm
    double v_gg_on = 20.0;   ///< V
    double v_gg_off = -5.0;  ///< V

    // Channel.
    double k_trans = 0.02;    ///< A/V^2, lumped W*mu*C_OX/(2*L_CH)
    double lambda_ch = 0.05;  ///< 1/V, channel modulation factor

    // Threshold-voltage physics, lumped fitted constants.
    double phi_ms_term = -77.658915;  ///< V
    double n_a = 1e17;                ///< cm^-3, body doping
    double n_i_prefactor = 6.25e13;   ///< cm^-3 K^-1.5
    double e_g = 3.26;                ///< eV, 4H-SiC bandgap
    double c_ox_sqrt_term = 61.0;     ///< V^0.5, lumped sqrt(4 q eps N_A)/C_OX

    double delta_cap = 5e-3;  ///< V, capture threshold on V_LS
    double l_load = 1e-3;     ///< H, half-bridge load inductance
};

/// Throws std::invalid_argument naming the first violated field.
inline void validate(const DeviceParams& dev) {
    auto require_pos = [](double v, const char* name) {
        if (!(v > 0.0)) throw std::invalid_argument(std::string("device: ") + name + " must be > 0");
    };
    require_pos(dev.l_d, "l_d");
    require_pos(dev.l_s, "l_s");
    require_pos(dev.c_gd, "c_gd");
    require_pos(dev.c_gs, "c_gs");
    require_pos(dev.c_ds, "c_ds");
    require_pos(dev.r_g, "r_g");
    require_pos(dev.k_trans, "k_trans");
    require_pos(dev.delta_cap, "delta_cap");
    require_pos(dev.l_load, "l_load");
    require_pos(dev.r_th_jp, "r_th_jp");
    require_pos(dev.n_a, "n_a");
    require_pos(dev.n_i_prefactor, "n_i_prefactor");
    require_pos(dev.e_g, "e_g");
    if (!(dev.v_gg_on > dev.v_gg_off))
        throw std::invalid_argument("device: v_gg_on must exceed v_gg_off");
    // r_on must stay positive over the modeled range.
    const double r_lo = dev.r_on_slope * kTjMin + dev.r_on_intercept;
    const double r_hi = dev.r_on_slope * kTjMax + dev.r_on_intercept;
    if (!(r_lo > 0.0) || !(r_hi > 0.0))
        throw std::invalid_argument("device: r_on not positive over modeled range");
}

inline void check_tj_range(double t_j_c) {
    if (!(t_j_c >= kTjMin && t_j_c <= kTjMax))
        throw std::out_of_range("T_j " + std::to_string(t_j_c) + " degC outside modeled range [-40, 200]");
}

/// On-resistance in Ohm at junction temperature t_j_c (degC).
inline double r_on(const DeviceParams& dev, double t_j_c) {
    check_tj_range(t_j_c);
    return (dev.r_on_slope * t_j_c + dev.r_on_intercept) * 1e-3;
}

/// Intrinsic carrier density, cm^-3, at absolute temperature t_k.
inline double n_i(const DeviceParams& dev, double t_k) {
    return dev.n_i_prefactor * t_k * std::sqrt(t_k) *
           std::exp(-dev.e_g / (2.0 * kBoltzmannOverQ * t_k));
}

/// Fermi potential psi_B in V at junction temperature t_j_c (degC).
/// Positive while the body stays extrinsic (n_i < N_A).
inline double psi_b(const DeviceParams& dev, double t_j_c) {
    const double t_k = t_j_c + kCelsiusToKelvin;
    if (!(t_k > 0.0)) throw std::domain_error("psi_b: temperature below absolute zero");
    return kBoltzmannOverQ * t_k * std::log(dev.n_a / n_i(dev, t_k));
}

/// True (instrument-free) threshold voltage at junction temperature t_j_c.
inline double v_th_true(const DeviceParams& dev, double t_j_c) {
    check_tj_range(t_j_c);
    const double psi = psi_b(dev, t_j_c);
    if (!(psi > 0.0)) throw std::domain_error("v_th_true: psi_b not positive (intrinsic body)");
    return dev.phi_ms_term + 2.0 * psi + dev.c_ox_sqrt_term * std::sqrt(psi);
}

// --- JSON serialization ------------------------------------------------------

inline void to_json(nlohmann::json& j, const DeviceParams& d) {
    j = nlohmann::json{{"r_on_slope_mohm_per_c", d.r_on_slope},
                       {"r_on_intercept_mohm", d.r_on_intercept},
                       {"r_th_jp_c_per_w", d.r_th_jp},
                       {"l_d_h", d.l_d},
                       {"l_s_h", d.l_s},
                       {"c_gd_f", d.c_gd},
                       {"c_gs_f", d.c_gs},
                       {"c_ds_f", d.c_ds},
                       {"r_g_ohm", d.r_g},
                       {"v_gg_on_v", d.v_gg_on},
                       {"v_gg_off_v", d.v_gg_off},
                       {"k_trans_a_per_v2", d.k_trans},
                       {"lambda_ch_per_v", d.lambda_ch},
                       {"phi_ms_term_v", d.phi_ms_term},
                       {"n_a_cm3", d.n_a},
                       {"n_i_prefactor_cm3_k15", d.n_i_prefactor},
                       {"e_g_ev", d.e_g},
                       {"c_ox_sqrt_term_v05", d.c_ox_sqrt_term},
                       {"delta_cap_v", d.delta_cap},
                       {"l_load_h", d.l_load}};
}

inline void from_json(const nlohmann::json& j, DeviceParams& d) {
    j.at("r_on_slope_mohm_per_c").get_to(d.r_on_slope);
    j.at("r_on_intercept_mohm").get_to(d.r_on_intercept);
    j.at("r_th_jp_c_per_w").get_to(d.r_th_jp);
    j.at("l_d_h").get_to(d.l_d);
    j.at("l_s_h").get_to(d.l_s);
    j.at("c_gd_f").get_to(d.c_gd);
    j.at("c_gs_f").get_to(d.c_gs);
    j.at("c_ds_f").get_to(d.c_ds);
    j.at("r_g_ohm").get_to(d.r_g);
    j.at("v_gg_on_v").get_to(d.v_gg_on);
    j.at("v_gg_off_v").get_to(d.v_gg_off);
    j.at("k_trans_a_per_v2").get_to(d.k_trans);
    j.at("lambda_ch_per_v").get_to(d.lambda_ch);
    j.at("phi_ms_term_v").get_to(d.phi_ms_term);
    j.at("n_a_cm3").get_to(d.n_a);
    j.at("n_i_prefactor_cm3_k15").get_to(d.n_i_prefactor);
    j.at("e_g_ev").get_to(d.e_g);
    j.at("c_ox_sqrt_term_v05").get_to(d.c_ox_sqrt_term);
    j.at("delta_cap_v").get_to(d.delta_cap);
    j.at("l_load_h").get_to(d.l_load);
}

}  // namespace tsepcal
