#include "tsepcal/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "tsepcal/io.hpp"
#include "tsepcal/rng.hpp"

namespace tsepcal {

// =============================================================================
// Dataset generation
// =============================================================================

CalibrationDataset generate_dataset(const GridSpec& grid, const DeviceParams& dev,
                                    const NoiseSpec& noise, bool compensation_on,
                                    const SimConfig& cfg) {
    if (grid.plate_temps.empty() || grid.bus_voltages.empty() || grid.load_currents.empty())
        throw std::invalid_argument("generate_dataset: empty grid axis");
    if (grid.repeats < 1) throw std::invalid_argument("generate_dataset: repeats must be >= 1");

    NoiseSpec seeded = noise;
    seeded.seed_base = mix64(noise.seed_base, grid.seed);

    CalibrationDataset ds;
    ds.grid = grid;
    ds.compensated = compensation_on;
    ds.records.reserve(grid.rows());

    for (double t_plate : grid.plate_temps) {
        for (double v_bus : grid.bus_voltages) {
            for (double i_load : grid.load_currents) {
                const OperatingPoint op{t_plate, v_bus, i_load};
                // The virtual chip always self-heats during the second pulse,
                // whatever the label policy says.
                const double t_actual = compensate(t_plate, i_load, dev);
                const double label = compensation_on ? t_actual : t_plate;

                // The noiseless capture is shared by every repeat of the cell.
                TransientTrace tr = simulate_turn_on(op, t_actual, dev, cfg);
                const double captured = capture_v_th(tr, dev);

                for (std::uint64_t rep = 0; rep < grid.repeats; ++rep) {
                    MeasurementRecord rec;
                    rec.t_plate = t_plate;
                    rec.v_bus = v_bus;
                    rec.i_load = i_load;
                    rec.rep = rep;
                    rec.v_th_measured = captured + measurement_noise(seeded, op, rep);
                    rec.t_label = label;
                    ds.records.push_back(rec);
                }
            }
        }
    }
    return ds;
}

std::string CalibrationDataset::to_csv() const {
    std::ostringstream os;
    os << "t_plate_C,v_bus_V,i_load_A,rep,v_th_V,t_label_C\n";
    for (const auto& r : records) {
        os << format_double(r.t_plate) << ',' << format_double(r.v_bus) << ','
           << format_double(r.i_load) << ',' << r.rep << ',' << format_double(r.v_th_measured)
           << ',' << format_double(r.t_label) << '\n';
    }
    return os.str();
}

CalibrationDataset CalibrationDataset::from_csv(const std::string& content) {
    std::istringstream is(content);
    std::string line;
    if (!std::getline(is, line) || line != "t_plate_C,v_bus_V,i_load_A,rep,v_th_V,t_label_C")
        throw std::invalid_argument("dataset csv: unexpected header");
    CalibrationDataset ds;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tok;
        MeasurementRecord r;
        auto next = [&](const char* what) {
            if (!std::getline(ls, tok, ',')) throw std::invalid_argument(std::string("dataset csv: missing ") + what);
            return std::stod(tok);
        };
        r.t_plate = next("t_plate");
        r.v_bus = next("v_bus");
        r.i_load = next("i_load");
        r.rep = static_cast<std::uint64_t>(next("rep"));
        r.v_th_measured = next("v_th");
        r.t_label = next("t_label");
        ds.records.push_back(r);
    }
    return ds;
}

// =============================================================================
// Per-condition fits
// =============================================================================

namespace {

using ConditionKey = std::tuple<double, double, double>;

std::map<ConditionKey, std::vector<double>> group_by_condition(const CalibrationDataset& ds) {
    std::map<ConditionKey, std::vector<double>> groups;
    for (const auto& r : ds.records)
        groups[{r.t_plate, r.v_bus, r.i_load}].push_back(r.v_th_measured);
    return groups;
}

}  // namespace

std::vector<ConditionFit> fit_conditions(const CalibrationDataset& ds) {
    std::vector<ConditionFit> fits;
    for (const auto& [key, values] : group_by_condition(ds)) {
        ConditionFit f;
        std::tie(f.t_plate, f.v_bus, f.i_load) = key;
        f.gaussian = fit_gaussian(values);
        f.log_gaussian = fit_log_gaussian(values);
        f.selected = compare_families(values);
        fits.push_back(std::move(f));
    }
    return fits;
}

// =============================================================================
// Calibration
// =============================================================================

LinearModel calibrate_conventional(const CalibrationDataset& ds) {
    if (ds.records.empty()) throw std::invalid_argument("calibrate_conventional: empty dataset");
    const double v_bus = ds.records.front().v_bus;
    for (const auto& r : ds.records)
        if (r.v_bus != v_bus)
            throw std::invalid_argument(
                "calibrate_conventional: dataset mixes bus voltages; the baseline is defined at a "
                "single v_bus");
    std::vector<double> x, y;
    double t_first = ds.records.front().t_plate;
    bool multi_temp = false;
    for (const auto& r : ds.records) {
        if (r.t_plate != t_first) multi_temp = true;
        if (r.rep != 0) continue;  // single-shot protocol
        x.push_back(r.v_th_measured);
        y.push_back(r.t_plate);  // uncompensated label
    }
    if (!multi_temp)
        throw std::invalid_argument(
            "calibrate_conventional: a single plate temperature cannot define the line");
    return fit_linear(x, y);
}

std::pair<MlpModel, TrainReport> calibrate_proposed(const CalibrationDataset& ds,
                                                    const TrainConfig& cfg) {
    auto groups = group_by_condition(ds);
    std::vector<double> vbus_seen, temps_seen;
    for (const auto& [key, values] : groups) {
        (void)values;
        const auto [t, v, i] = key;
        (void)i;
        if (std::find(vbus_seen.begin(), vbus_seen.end(), v) == vbus_seen.end())
            vbus_seen.push_back(v);
        if (std::find(temps_seen.begin(), temps_seen.end(), t) == temps_seen.end())
            temps_seen.push_back(t);
    }
    if (vbus_seen.size() < 2)
        throw std::invalid_argument(
            "calibrate_proposed: need at least two bus voltages (coupled parameter is "
            "unidentifiable from one)");
    if (temps_seen.size() < 2)
        throw std::invalid_argument("calibrate_proposed: need at least two plate temperatures");

    // Per-condition repeat policy: every repeat row enters training unchanged.
    RegressionData data;
    data.dim = 2;
    std::map<ConditionKey, double> labels;
    for (const auto& r : ds.records) labels[{r.t_plate, r.v_bus, r.i_load}] = r.t_label;
    for (const auto& [key, values] : groups) {
        const auto [t, v, i] = key;
        (void)t;
        (void)i;
        const auto rows = repeat_policy(values, compare_families(values)).rows;
        for (double vth : rows) {
            data.x.push_back(vth);
            data.x.push_back(v);
            data.y.push_back(labels[key]);
        }
    }
    return train_mlp(data, cfg);
}

// =============================================================================
// Evaluation
// =============================================================================

namespace {

struct CaseRun {
    double mae_a = 0.0, mae_b = 0.0;
    double t_ss = 0.0, end_slope = 0.0;
    std::vector<TrajectoryPoint> trajectory;
};

/// Shared warm-up loop: predictor_a and predictor_b map one measured V_TH to a
/// temperature estimate.
CaseRun run_case(const EvalCase& c, const DeviceParams& dev, const ThermalPlant& plant,
                 const NoiseSpec& noise, const EvalSettings& s, const SimConfig& cfg,
                 const std::function<double(double)>& predictor_a,
                 const std::function<double(double)>& predictor_b) {
    try {
        FosterNetwork net(plant.stages, plant.t_ambient);
        const auto n_steps = static_cast<std::size_t>(std::llround(s.duration / s.thermal_step));
        const auto capture_every =
            static_cast<std::size_t>(std::llround(s.capture_interval / s.thermal_step));
        if (capture_every == 0 || n_steps == 0)
            throw std::invalid_argument("evaluate: capture interval shorter than thermal step");

        CaseRun run;
        double t_j = net.ambient();
        double t_one_sec_before_end = t_j;
        const std::size_t steps_per_sec =
            std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(1.0 / s.thermal_step)));
        double err_a = 0.0, err_b = 0.0;
        std::size_t samples = 0;

        for (std::size_t k = 1; k <= n_steps; ++k) {
            const double p = converter_loss(c.v_bus, c.i_load, plant.converter.f_sw,
                                            plant.converter.duty, t_j, dev, plant.converter.k_sw);
            t_j = net.step(p, s.thermal_step);
            if (k == n_steps - steps_per_sec) t_one_sec_before_end = t_j;

            if (k % capture_every == 0) {
                const OperatingPoint op{plant.t_ambient, c.v_bus, c.i_load};
                const double v =
                    measure_v_th(op, t_j, dev, noise, s.noise_rep_base + samples, cfg);
                const double pa = predictor_a(v);
                const double pb = predictor_b(v);
                err_a += std::fabs(pa - t_j);
                err_b += std::fabs(pb - t_j);
                run.trajectory.push_back(
                    {static_cast<double>(k) * s.thermal_step, t_j, pa, pb});
                ++samples;
            }
        }
        if (samples == 0) throw std::invalid_argument("evaluate: no capture samples in duration");
        run.mae_a = err_a / static_cast<double>(samples);
        run.mae_b = err_b / static_cast<double>(samples);
        run.t_ss = t_j;
        run.end_slope = (t_j - t_one_sec_before_end) / 1.0;
        return run;
    } catch (const std::exception& e) {
        std::ostringstream os;
        os << "case (v_bus = " << c.v_bus << " V, i_load = " << c.i_load
           << " A) failed: " << e.what();
        throw std::runtime_error(os.str());
    }
}

}  // namespace

EvaluationReport evaluate(const LinearModel& conventional, const MlpModel& proposed,
                          const std::vector<EvalCase>& cases, const DeviceParams& dev,
                          const ThermalPlant& plant, const NoiseSpec& noise,
                          const EvalSettings& settings, const SimConfig& cfg) {
    EvaluationReport rep;
    rep.seed = noise.seed_base;
    for (const auto& c : cases) {
        const CaseRun run = run_case(
            c, dev, plant, noise, settings, cfg,
            [&](double v) { return predict(conventional, v); },
            [&](double v) {
                const double feats[2] = {v, c.v_bus};
                return predict(proposed, std::span<const double>(feats, 2));
            });
        CaseReport cr;
        cr.op = c;
        cr.mae_conventional = run.mae_a;
        cr.mae_proposed = run.mae_b;
        cr.reduction = run.mae_a > 0.0 ? (run.mae_a - run.mae_b) / run.mae_a : 0.0;
        cr.steady_state_t = run.t_ss;
        cr.end_slope = run.end_slope;
        cr.trajectory = run.trajectory;
        rep.cases.push_back(std::move(cr));
    }
    return rep;
}

std::vector<std::pair<double, double>> warmup_trajectory(const EvalCase& op,
                                                         const DeviceParams& dev,
                                                         const ThermalPlant& plant,
                                                         const EvalSettings& settings) {
    FosterNetwork net(plant.stages, plant.t_ambient);
    const auto n_steps =
        static_cast<std::size_t>(std::llround(settings.duration / settings.thermal_step));
    std::vector<std::pair<double, double>> out;
    double t_j = net.ambient();
    out.emplace_back(0.0, t_j);
    const std::size_t record_every = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(0.1 / settings.thermal_step)));
    for (std::size_t k = 1; k <= n_steps; ++k) {
        const double p = converter_loss(op.v_bus, op.i_load, plant.converter.f_sw,
                                        plant.converter.duty, t_j, dev, plant.converter.k_sw);
        t_j = net.step(p, settings.thermal_step);
        if (k % record_every == 0) out.emplace_back(static_cast<double>(k) * settings.thermal_step, t_j);
    }
    return out;
}

// =============================================================================
// Temperature-compensation ablation
// =============================================================================

TcAblationResult tc_ablation(const DeviceParams& dev, const ThermalPlant& plant,
                             const NoiseSpec& noise, double v_bus, std::uint64_t seed,
                             const EvalSettings& settings, const SimConfig& cfg, double i_low,
                             double i_high) {
    TcAblationResult result;
    for (int leg = 0; leg < 2; ++leg) {
        const double i_case = leg == 0 ? i_low : i_high;
        GridSpec grid;
        grid.bus_voltages = {v_bus};
        grid.load_currents = {i_case};
        grid.seed = seed;
        const CalibrationDataset ds = generate_dataset(grid, dev, noise, /*compensation_on=*/true, cfg);

        // Same measurements, two label columns: compensated and plate.
        std::vector<double> x, y_tc, y_raw;
        for (const auto& r : ds.records) {
            x.push_back(r.v_th_measured);
            y_tc.push_back(r.t_label);
            y_raw.push_back(r.t_plate);
        }
        const LinearModel with_tc = fit_linear(x, y_tc);
        const LinearModel without_tc = fit_linear(x, y_raw);

        const CaseRun run = run_case(
            {v_bus, i_case}, dev, plant, noise, settings, cfg,
            [&](double v) { return predict(without_tc, v); },
            [&](double v) { return predict(with_tc, v); });
        const double reduction = run.mae_a > 0.0 ? (run.mae_a - run.mae_b) / run.mae_a : 0.0;
        if (leg == 0) {
            result.reduction_6a = reduction;
            result.mae_without_tc_6a = run.mae_a;
            result.mae_with_tc_6a = run.mae_b;
        } else {
            result.reduction_8a = reduction;
            result.mae_without_tc_8a = run.mae_a;
            result.mae_with_tc_8a = run.mae_b;
        }
    }
    return result;
}

// =============================================================================
// Serialization
// =============================================================================

void to_json(nlohmann::json& j, const CaseReport& c) {
    j = nlohmann::json{{"v_bus_v", c.op.v_bus},
                       {"i_load_a", c.op.i_load},
                       {"mae_conventional_c", c.mae_conventional},
                       {"mae_proposed_c", c.mae_proposed},
                       {"reduction", c.reduction},
                       {"steady_state_t_c", c.steady_state_t},
                       {"end_slope_c_per_s", c.end_slope}};
}

void to_json(nlohmann::json& j, const EvaluationReport& r) {
    j = nlohmann::json{{"seed", r.seed}, {"cases", r.cases}};
}

std::string trajectory_csv(const CaseReport& c) {
    std::ostringstream os;
    os << "t_s,t_true_C,t_conv_C,t_prop_C\n";
    for (const auto& p : c.trajectory)
        os << format_double(p.t) << ',' << format_double(p.t_true) << ','
           << format_double(p.t_conv) << ',' << format_double(p.t_prop) << '\n';
    return os.str();
}

std::string trace_csv(const TransientTrace& tr) {
    std::ostringstream os;
    os << "t_s,v_gs_V,i_ds_A,v_ds_V,v_ls_V\n";
    for (std::size_t k = 0; k < tr.size(); ++k)
        os << format_double(tr.time[k]) << ',' << format_double(tr.v_gs[k]) << ','
           << format_double(tr.i_ds[k]) << ',' << format_double(tr.v_ds[k]) << ','
           << format_double(tr.v_ls[k]) << '\n';
    return os.str();
}

}  // namespace tsepcal
