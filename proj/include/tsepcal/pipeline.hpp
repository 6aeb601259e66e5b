#pragma once

// =============================================================================
// Calibration pipeline
// =============================================================================
// End-to-end orchestration of both calibration workflows over the virtual
// test bench:
//  - generate_dataset: grid x repeats of virtual dual-pulse measurements,
//    with the synthetic truth always self-heated by the load current,
//  - calibrate_conventional: single-repeat, uncompensated-label, fixed-bus
//    OLS baseline,
//  - calibrate_proposed: all repeats, compensated labels, (V_TH, V_bus) MLP,
//  - evaluate: simulated DC-DC cold-boot warm-ups with both models sampling
//    V_TH every 10 s against the true trajectory,
//  - tc_ablation: label-compensation on/off pair of linear models.
// =============================================================================

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "tsepcal/device.hpp"
#include "tsepcal/dpt.hpp"
#include "tsepcal/regress.hpp"
#include "tsepcal/stats.hpp"
#include "tsepcal/thermal.hpp"

namespace tsepcal {

struct GridSpec {
    std::vector<double> plate_temps = {25, 45, 65, 85, 105, 125, 145};  ///< degC
    std::vector<double> bus_voltages = {200, 250, 300, 350};            ///< V
    std::vector<double> load_currents = {4};                            ///< A
    std::size_t repeats = 50;
    std::uint64_t seed = 1;

    [[nodiscard]] std::size_t cells() const {
        return plate_temps.size() * bus_voltages.size() * load_currents.size();
    }
    [[nodiscard]] std::size_t rows() const { return cells() * repeats; }
};

struct MeasurementRecord {
    double t_plate;        ///< degC
    double v_bus;          ///< V
    double i_load;         ///< A
    std::uint64_t rep;
    double v_th_measured;  ///< V
    double t_label;        ///< degC: plate temp or compensated temp
};

struct CalibrationDataset {
    std::vector<MeasurementRecord> records;
    GridSpec grid;
    bool compensated = true;  ///< label policy used for t_label

    [[nodiscard]] std::string to_csv() const;
    static CalibrationDataset from_csv(const std::string& content);
};

/// Runs the full grid; the actual chip temperature is always
/// compensate(t_plate, i_load) while the label follows the policy flag.
CalibrationDataset generate_dataset(const GridSpec& grid, const DeviceParams& dev,
                                    const NoiseSpec& noise, bool compensation_on,
                                    const SimConfig& cfg = {});

/// Per-condition distribution fit of one dataset (28 entries on the default grid).
struct ConditionFit {
    double t_plate, v_bus, i_load;
    DistFit gaussian;
    DistFit log_gaussian;
    DistFamily selected;
};
std::vector<ConditionFit> fit_conditions(const CalibrationDataset& ds);

/// Baseline: first repeat only, plate-temperature labels, single bus voltage.
/// Throws std::invalid_argument when the dataset mixes bus voltages.
LinearModel calibrate_conventional(const CalibrationDataset& ds);

/// Proposed: every repeat kept, compensated labels, MLP on (V_TH, V_bus).
/// Requires at least two bus voltages and two plate temperatures.
std::pair<MlpModel, TrainReport> calibrate_proposed(const CalibrationDataset& ds,
                                                    const TrainConfig& cfg);

// --- evaluation ----------------------------------------------------------------

struct EvalCase {
    double v_bus;   ///< V
    double i_load;  ///< A
};

struct EvalSettings {
    double duration = 300.0;          ///< s, cold-boot warm-up length
    double thermal_step = 0.01;       ///< s, electro-thermal loop step
    double capture_interval = 10.0;   ///< s, V_TH sampling period
    std::uint64_t noise_rep_base = 1u << 20;  ///< rep index offset for application draws
};

struct TrajectoryPoint {
    double t;       ///< s
    double t_true;  ///< degC
    double t_conv;  ///< degC, conventional model prediction
    double t_prop;  ///< degC, proposed model prediction
};

struct CaseReport {
    EvalCase op;
    double mae_conventional = 0.0;
    double mae_proposed = 0.0;
    double reduction = 0.0;  ///< (mae_conv - mae_prop) / mae_conv
    double steady_state_t = 0.0;
    double end_slope = 0.0;  ///< degC/s at the end of the run
    std::vector<TrajectoryPoint> trajectory;
};

struct EvaluationReport {
    std::vector<CaseReport> cases;
    std::uint64_t seed = 0;
};

/// Cold-boot warm-up per case: Foster network driven by the converter loss of
/// the instantaneous junction temperature; every capture_interval seconds one
/// virtual measurement feeds both models.
EvaluationReport evaluate(const LinearModel& conventional, const MlpModel& proposed,
                          const std::vector<EvalCase>& cases, const DeviceParams& dev,
                          const ThermalPlant& plant, const NoiseSpec& noise,
                          const EvalSettings& settings = {}, const SimConfig& cfg = {});

/// One warm-up trajectory without any model (true temperatures only).
std::vector<std::pair<double, double>> warmup_trajectory(const EvalCase& op,
                                                         const DeviceParams& dev,
                                                         const ThermalPlant& plant,
                                                         const EvalSettings& settings = {});

// --- temperature-compensation ablation ------------------------------------------

struct TcAblationResult {
    double reduction_6a = 0.0;  ///< fractional MAE reduction from compensation alone
    double reduction_8a = 0.0;
    double mae_with_tc_6a = 0.0, mae_without_tc_6a = 0.0;
    double mae_with_tc_8a = 0.0, mae_without_tc_8a = 0.0;
};

/// Calibrates linear models with and without label compensation at the case
/// current (fixed bus voltage) and evaluates both on that case's warm-up.
TcAblationResult tc_ablation(const DeviceParams& dev, const ThermalPlant& plant,
                             const NoiseSpec& noise, double v_bus, std::uint64_t seed,
                             const EvalSettings& settings = {}, const SimConfig& cfg = {},
                             double i_low = 6.0, double i_high = 8.0);

// --- serialization ----------------------------------------------------------------

void to_json(nlohmann::json& j, const CaseReport& c);
void to_json(nlohmann::json& j, const EvaluationReport& r);
std::string trajectory_csv(const CaseReport& c);
std::string trace_csv(const TransientTrace& tr);

}  // namespace tsepcal
