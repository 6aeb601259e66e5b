// tsepcal — command-line front end for the virtual TSEP calibration bench.
//
// Subcommands: simulate | calibrate | fit-dist | train | predict | evaluate | report
// Exit codes: 0 success, 2 usage/config error, 3 runtime error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "tsepcal/device.hpp"
#include "tsepcal/dpt.hpp"
#include "tsepcal/io.hpp"
#include "tsepcal/rng.hpp"
#include "tsepcal/pipeline.hpp"
#include "tsepcal/regress.hpp"
#include "tsepcal/stats.hpp"
#include "tsepcal/thermal.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace tsepcal;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunContext {
    DeviceParams device;
    ThermalPlant plant;
    NoiseSpec noise;
    std::string device_path;  // empty = built-in defaults
};

RunContext load_context(const std::string& device_file) {
    RunContext ctx;
    if (device_file.empty()) return ctx;
    if (!fs::exists(device_file))
        throw ConfigError("device file not found: " + device_file);
    json j;
    try {
        j = json::parse(read_file(device_file));
    } catch (const std::exception& e) {
        throw ConfigError("device file " + device_file + " is not valid JSON: " + e.what());
    }
    try {
        ctx.device = j.at("device").get<DeviceParams>();
        if (j.contains("thermal")) ctx.plant = j.at("thermal").get<ThermalPlant>();
        if (j.contains("noise")) {
            const auto& n = j.at("noise");
            n.at("sigma_ln").get_to(ctx.noise.sigma_ln);
            n.at("mu_ln").get_to(ctx.noise.mu_ln);
            if (n.contains("seed_base")) n.at("seed_base").get_to(ctx.noise.seed_base);
        }
    } catch (const json::exception& e) {
        throw ConfigError("device file " + device_file + ": " + e.what());
    }
    validate(ctx.device);
    ctx.device_path = device_file;
    return ctx;
}

std::string default_out_dir() {
    if (const char* env = std::getenv("TSEPCAL_OUT")) return env;
    return "out";
}

json config_echo(const RunContext& ctx, const GridSpec& grid, bool tc_on, bool coupled) {
    json j;
    j["device"] = ctx.device;
    j["thermal"] = ctx.plant;
    j["noise"] = {{"sigma_ln", ctx.noise.sigma_ln},
                  {"mu_ln", ctx.noise.mu_ln},
                  {"seed_base", ctx.noise.seed_base}};
    j["grid"] = {{"plate_temps", grid.plate_temps},
                 {"bus_voltages", grid.bus_voltages},
                 {"load_currents", grid.load_currents},
                 {"repeats", grid.repeats},
                 {"seed", grid.seed}};
    j["tc"] = tc_on;
    j["coupled"] = coupled;
    j["device_file"] = ctx.device_path.empty() ? "<builtin>" : ctx.device_path;
    return j;
}

/// Deferred artifact writer: nothing lands on disk until every stage succeeded.
class ArtifactSet {
public:
    explicit ArtifactSet(fs::path dir) : dir_(std::move(dir)) {}

    void add(const std::string& name, std::string content) {
        files_.emplace_back(name, std::move(content));
    }

    [[nodiscard]] std::string hash_of(const std::string& name) const {
        for (const auto& [n, c] : files_)
            if (n == name) return fnv1a_hex(c);
        throw std::logic_error("no artifact named " + name);
    }

    void commit() const {
        for (const auto& [name, content] : files_) atomic_write(dir_ / name, content);
    }

    [[nodiscard]] const fs::path& dir() const { return dir_; }

private:
    fs::path dir_;
    std::vector<std::pair<std::string, std::string>> files_;
};

std::string case_label(std::size_t idx) {
    static const char* roman[] = {"I", "II", "III", "IV", "V", "VI", "VII", "VIII"};
    return idx < 8 ? roman[idx] : std::to_string(idx + 1);
}

std::vector<EvalCase> parse_cases(const std::string& spec) {
    std::vector<EvalCase> cases;
    std::istringstream is(spec);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        const auto colon = tok.find(':');
        if (colon == std::string::npos)
            throw ConfigError("bad --cases entry '" + tok + "' (expected vbus:iload)");
        try {
            cases.push_back({std::stod(tok.substr(0, colon)), std::stod(tok.substr(colon + 1))});
        } catch (const std::exception&) {
            throw ConfigError("bad --cases entry '" + tok + "' (expected numbers vbus:iload)");
        }
    }
    if (cases.empty()) throw ConfigError("--cases is empty");
    return cases;
}

std::string fits_json(const std::vector<ConditionFit>& fits) {
    json arr = json::array();
    for (const auto& f : fits) {
        json e;
        e["t_plate_c"] = f.t_plate;
        e["v_bus_v"] = f.v_bus;
        e["i_load_a"] = f.i_load;
        e["gaussian"] = f.gaussian;
        e["log_gaussian"] = f.log_gaussian;
        e["selected"] = to_string(f.selected);
        arr.push_back(std::move(e));
    }
    return arr.dump(2) + "\n";
}

std::string histogram_csv(const std::vector<HistogramRow>& rows) {
    std::ostringstream os;
    os << "bin_left,bin_right,count,fitted_pdf\n";
    for (const auto& r : rows)
        os << format_double(r.bin_left) << ',' << format_double(r.bin_right) << ',' << r.count
           << ',' << format_double(r.fitted_pdf) << '\n';
    return os.str();
}

std::string learning_curve_csv(const TrainReport& rep) {
    std::ostringstream os;
    os << "epoch,train_mse,val_mse\n";
    for (std::size_t e = 0; e < rep.train_curve.size(); ++e)
        os << (e + 1) << ',' << format_double(rep.train_curve[e]) << ','
           << format_double(rep.val_curve[e]) << '\n';
    return os.str();
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

int cmd_simulate(const std::string& device_file, const std::vector<double>& vbus_list,
                 const std::vector<double>& tplate_list, double i_load, const std::string& out) {
    const RunContext ctx = load_context(device_file);
    ArtifactSet artifacts{fs::path(out)};
    std::ostringstream summary;
    summary << "v_bus_V,t_plate_C,v_th_V,t_th_s\n";
    for (double tp : tplate_list) {
        for (double vb : vbus_list) {
            const OperatingPoint op{tp, vb, i_load};
            TransientTrace tr = simulate_turn_on(op, tp, ctx.device);
            const double v = capture_v_th(tr, ctx.device);
            std::ostringstream name;
            name << "trace_" << vb << "V_" << tp << "C.csv";
            artifacts.add(name.str(), trace_csv(tr));
            summary << format_double(vb) << ',' << format_double(tp) << ',' << format_double(v)
                    << ',' << format_double(*tr.t_th) << '\n';
            std::cout << "v_bus = " << vb << " V, t_plate = " << tp
                      << " C: captured V_TH = " << v << " V at t_th = " << *tr.t_th << " s\n";
        }
    }
    artifacts.add("capture_summary.csv", summary.str());
    artifacts.commit();
    std::cout << "traces written to " << artifacts.dir().string() << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// calibrate
// ---------------------------------------------------------------------------

int cmd_calibrate(const std::string& device_file, GridSpec grid, bool no_tc, bool no_coupled,
                  double conv_vbus, const std::string& out) {
    const RunContext ctx = load_context(device_file);
    ArtifactSet artifacts{fs::path(out)};

    const CalibrationDataset ds = generate_dataset(grid, ctx.device, ctx.noise, !no_tc);
    artifacts.add("dataset.csv", ds.to_csv());

    const auto fits = fit_conditions(ds);
    artifacts.add("fits.json", fits_json(fits));
    for (const auto& f : fits) {
        std::vector<double> values;
        for (const auto& r : ds.records)
            if (r.t_plate == f.t_plate && r.v_bus == f.v_bus && r.i_load == f.i_load)
                values.push_back(r.v_th_measured);
        const DistFit& chosen =
            f.selected == DistFamily::gaussian ? f.gaussian : f.log_gaussian;
        std::ostringstream name;
        name << "hist/cond_" << f.t_plate << "C_" << f.v_bus << "V_" << f.i_load << "A.csv";
        artifacts.add(name.str(), histogram_csv(histogram_with_fit(values, chosen, 12)));
    }

    json manifest;
    manifest["tool"] = "tsepcal calibrate";
    manifest["seed"] = grid.seed;
    manifest["config"] = config_echo(ctx, grid, !no_tc, !no_coupled);
    manifest["dataset"] = {{"file", "dataset.csv"}, {"rows", ds.records.size()}};
    manifest["fit_reports"] = {{"file", "fits.json"}, {"conditions", fits.size()}};

    // Conventional baseline: single-voltage, first-repeat slice.
    double conv_v = conv_vbus;
    if (conv_v == 0.0) {
        const auto& vb = grid.bus_voltages;
        conv_v = std::find(vb.begin(), vb.end(), 300.0) != vb.end() ? 300.0 : vb.front();
    }
    CalibrationDataset conv_slice;
    conv_slice.grid = grid;
    conv_slice.compensated = false;
    for (const auto& r : ds.records)
        if (r.v_bus == conv_v) conv_slice.records.push_back(r);
    if (conv_slice.records.empty())
        throw ConfigError("conventional slice voltage " + std::to_string(conv_v) +
                          " V not present in the grid");
    const LinearModel conventional = calibrate_conventional(conv_slice);
    artifacts.add("conventional.json", json(conventional).dump(2) + "\n");
    manifest["models"]["conventional.json"] = {{"v_bus_v", conv_v}};

    // Proposed model needs the coupled parameter to be identifiable.
    if (grid.bus_voltages.size() >= 2) {
        TrainConfig tc;
        tc.seed = grid.seed;
        CalibrationDataset train_ds = ds;
        if (no_coupled) {
            // Ablation: drop the coupled input by training on V_TH alone.
            RegressionData data;
            data.dim = 1;
            for (const auto& r : ds.records) {
                data.x.push_back(r.v_th_measured);
                data.y.push_back(r.t_label);
            }
            auto [model, rep] = train_mlp(data, tc);
            artifacts.add("proposed.json", json(model).dump(2) + "\n");
            artifacts.add("learning_curve.csv", learning_curve_csv(rep));
            manifest["models"]["proposed.json"] = {{"inputs", "v_th"},
                                                   {"test_mse_c2", rep.test_mse},
                                                   {"epochs", rep.epochs_run}};
        } else {
            auto [model, rep] = calibrate_proposed(train_ds, tc);
            artifacts.add("proposed.json", json(model).dump(2) + "\n");
            artifacts.add("learning_curve.csv", learning_curve_csv(rep));
            manifest["models"]["proposed.json"] = {{"inputs", "v_th,v_bus"},
                                                   {"test_mse_c2", rep.test_mse},
                                                   {"epochs", rep.epochs_run}};
        }
    } else {
        manifest["models"]["proposed.json"] =
            "skipped: single bus voltage (coupled parameter unidentifiable)";
        std::cout << "note: single bus voltage grid, proposed model skipped\n";
    }

    manifest["hashes"] = {{"dataset.csv", artifacts.hash_of("dataset.csv")},
                          {"fits.json", artifacts.hash_of("fits.json")},
                          {"conventional.json", artifacts.hash_of("conventional.json")}};
    if (grid.bus_voltages.size() >= 2)
        manifest["hashes"]["proposed.json"] = artifacts.hash_of("proposed.json");
    artifacts.add("manifest.json", manifest.dump(2) + "\n");
    artifacts.commit();
    std::cout << "calibration artifacts written to " << artifacts.dir().string() << " ("
              << ds.records.size() << " rows, " << fits.size() << " condition fits)\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// fit-dist
// ---------------------------------------------------------------------------

int cmd_fit_dist(const std::string& dataset_file, const std::string& out) {
    if (!fs::exists(dataset_file)) throw ConfigError("dataset file not found: " + dataset_file);
    const CalibrationDataset ds = CalibrationDataset::from_csv(read_file(dataset_file));
    const auto fits = fit_conditions(ds);
    ArtifactSet artifacts{fs::path(out)};
    artifacts.add("fits.json", fits_json(fits));
    artifacts.commit();
    std::size_t lg = 0;
    for (const auto& f : fits)
        if (f.selected == DistFamily::log_gaussian) ++lg;
    std::cout << fits.size() << " conditions fitted, log_gaussian selected in " << lg << " ("
              << (fits.empty() ? 0.0 : 100.0 * static_cast<double>(lg) / static_cast<double>(fits.size()))
              << "%)\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// train / predict
// ---------------------------------------------------------------------------

int cmd_train(const std::string& dataset_file, const std::string& model_kind, std::uint64_t seed,
              bool no_coupled, const std::string& out) {
    if (!fs::exists(dataset_file)) throw ConfigError("dataset file not found: " + dataset_file);
    const CalibrationDataset ds = CalibrationDataset::from_csv(read_file(dataset_file));
    ArtifactSet artifacts{fs::path(out)};
    if (model_kind == "linear") {
        std::vector<double> x, y;
        for (const auto& r : ds.records) {
            x.push_back(r.v_th_measured);
            y.push_back(r.t_label);
        }
        const LinearModel m = fit_linear(x, y);
        artifacts.add("linear.json", json(m).dump(2) + "\n");
        artifacts.commit();
        std::cout << "linear model: slope " << m.slope << " C/V, intercept " << m.intercept
                  << " C, rmse " << m.training_rmse << " C\n";
        return kExitOk;
    }
    if (model_kind != "mlp") throw ConfigError("--model must be linear or mlp");
    TrainConfig tc;
    tc.seed = seed;
    RegressionData data;
    data.dim = no_coupled ? 1 : 2;
    for (const auto& r : ds.records) {
        data.x.push_back(r.v_th_measured);
        if (!no_coupled) data.x.push_back(r.v_bus);
        data.y.push_back(r.t_label);
    }
    auto [model, rep] = train_mlp(data, tc);
    artifacts.add("mlp.json", json(model).dump(2) + "\n");
    artifacts.add("learning_curve.csv", learning_curve_csv(rep));
    artifacts.commit();
    std::cout << "mlp trained: " << rep.epochs_run << " epochs, train/val/test MSE = "
              << rep.train_mse << " / " << rep.val_mse << " / " << rep.test_mse << " C^2\n";
    return kExitOk;
}

int cmd_predict(const std::string& model_file, double vth, std::optional<double> vbus) {
    if (!fs::exists(model_file)) throw ConfigError("model file not found: " + model_file);
    const json j = json::parse(read_file(model_file));
    const std::string type = j.at("type").get<std::string>();
    double t;
    if (type == "linear") {
        t = predict(j.get<LinearModel>(), vth);
    } else if (type == "mlp") {
        const MlpModel m = j.get<MlpModel>();
        std::vector<double> feats{vth};
        if (m.input_dim == 2) {
            if (!vbus) throw ConfigError("this mlp model needs --vbus");
            feats.push_back(*vbus);
        }
        t = predict(m, feats);
    } else {
        throw ConfigError("unknown model type: " + type);
    }
    std::cout << t << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// evaluate
// ---------------------------------------------------------------------------

int cmd_evaluate(const std::string& device_file, const std::string& conv_file,
                 const std::string& prop_file, const std::string& cases_spec, std::uint64_t seed,
                 const std::string& out) {
    const RunContext ctx = load_context(device_file);
    if (!fs::exists(conv_file)) throw ConfigError("model file not found: " + conv_file);
    if (!fs::exists(prop_file)) throw ConfigError("model file not found: " + prop_file);
    const LinearModel conventional = json::parse(read_file(conv_file)).get<LinearModel>();
    const MlpModel proposed = json::parse(read_file(prop_file)).get<MlpModel>();

    std::vector<EvalCase> cases = {{300, 4}, {300, 6}, {200, 4}, {200, 6}};
    if (!cases_spec.empty()) cases = parse_cases(cases_spec);

    NoiseSpec noise = ctx.noise;
    noise.seed_base = mix64(noise.seed_base, seed);

    const EvaluationReport rep = evaluate(conventional, proposed, cases, ctx.device, ctx.plant, noise);

    ArtifactSet artifacts{fs::path(out)};
    json jr = rep;
    jr["seed"] = seed;
    artifacts.add("evaluation.json", jr.dump(2) + "\n");
    for (std::size_t i = 0; i < rep.cases.size(); ++i) {
        std::ostringstream name;
        name << "trajectory_case_" << rep.cases[i].op.v_bus << "V_" << rep.cases[i].op.i_load
             << "A.csv";
        artifacts.add(name.str(), trajectory_csv(rep.cases[i]));
    }
    artifacts.commit();

    std::cout << "case   v_bus   i_load   MAE_conv   MAE_prop   reduction\n";
    for (std::size_t i = 0; i < rep.cases.size(); ++i) {
        const auto& c = rep.cases[i];
        std::cout << std::left << std::setw(7) << case_label(i) << std::setw(8) << c.op.v_bus
                  << std::setw(9) << c.op.i_load << std::setw(11) << std::setprecision(4)
                  << c.mae_conventional << std::setw(11) << c.mae_proposed
                  << std::setprecision(4) << 100.0 * c.reduction << "%\n";
    }
    std::cout << "report written to " << (artifacts.dir() / "evaluation.json").string() << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// report
// ---------------------------------------------------------------------------

int cmd_report(const std::vector<std::string>& manifest_files) {
    for (const auto& path : manifest_files) {
        if (!fs::exists(path)) throw ConfigError("manifest not found: " + path);
        const json j = json::parse(read_file(path));
        std::cout << "== " << path << " ==\n";
        if (j.contains("tool")) std::cout << "tool:       " << j["tool"].get<std::string>() << "\n";
        if (j.contains("seed")) std::cout << "seed:       " << j["seed"] << "\n";
        if (j.contains("dataset"))
            std::cout << "dataset:    " << j["dataset"]["rows"] << " rows ("
                      << j["dataset"]["file"].get<std::string>() << ")\n";
        if (j.contains("fit_reports"))
            std::cout << "fits:       " << j["fit_reports"]["conditions"] << " conditions\n";
        if (j.contains("models"))
            for (const auto& [name, info] : j["models"].items())
                std::cout << "model:      " << name << " " << info.dump() << "\n";
        if (j.contains("hashes"))
            for (const auto& [name, h] : j["hashes"].items())
                std::cout << "hash:       " << name << " = " << h.get<std::string>() << "\n";
        if (j.contains("cases"))
            for (const auto& c : j["cases"])
                std::cout << "case:       " << c["v_bus_v"] << " V / " << c["i_load_a"]
                          << " A  MAE " << c["mae_conventional_c"] << " -> "
                          << c["mae_proposed_c"] << " C, reduction "
                          << 100.0 * c["reduction"].get<double>() << "%\n";
        std::cout << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tsepcal — virtual dual-pulse TSEP calibration bench"};
    app.require_subcommand(1);

    std::string device_file;
    app.add_option("--device", device_file, "device/thermal/noise JSON file (default: built-in)");

    std::string out_dir = default_out_dir();
    app.add_option("--out", out_dir, "output directory (default $TSEPCAL_OUT or ./out)");

    std::uint64_t seed = 1;
    app.add_option("--seed", seed, "global seed");

    // simulate
    auto* sim = app.add_subcommand("simulate", "run turn-on transients and capture V_TH");
    std::vector<double> sim_vbus{300};
    std::vector<double> sim_tplate{25};
    double sim_iload = 4.0;
    sim->add_option("--vbus", sim_vbus, "bus voltages, V")->delimiter(',');
    sim->add_option("--tplate", sim_tplate, "plate temperatures, C")->delimiter(',');
    sim->add_option("--iload", sim_iload, "load current target, A");

    // calibrate
    auto* cal = app.add_subcommand("calibrate", "generate dataset, fit distributions, train models");
    GridSpec grid;
    bool no_tc = false, no_coupled = false;
    double conv_vbus = 0.0, single_vbus = 0.0;
    std::size_t repeats = 50;
    cal->add_option("--tplate", grid.plate_temps, "plate temperatures, C")->delimiter(',');
    cal->add_option("--vbus", grid.bus_voltages, "bus voltages, V")->delimiter(',');
    cal->add_option("--iload", grid.load_currents, "load currents, A")->delimiter(',');
    cal->add_option("--repeats", repeats, "repeats per condition (k)");
    cal->add_flag("--no-tc", no_tc, "label with plate temperature (no compensation)");
    cal->add_flag("--no-coupled", no_coupled, "train the network on V_TH only");
    cal->add_option("--conv-vbus", conv_vbus, "bus voltage of the conventional slice");
    cal->add_option("--single-vbus", single_vbus, "shorthand for --vbus <v>");

    // fit-dist
    auto* fit = app.add_subcommand("fit-dist", "fit per-condition distributions of a dataset CSV");
    std::string fit_dataset;
    fit->add_option("--dataset", fit_dataset, "dataset CSV")->required();

    // train
    auto* train = app.add_subcommand("train", "train a model from a dataset CSV");
    std::string train_dataset, train_model = "mlp";
    bool train_no_coupled = false;
    train->add_option("--dataset", train_dataset, "dataset CSV")->required();
    train->add_option("--model", train_model, "linear | mlp");
    train->add_flag("--no-coupled", train_no_coupled, "train the network on V_TH only");

    // predict
    auto* pred = app.add_subcommand("predict", "predict T_j from features with a model file");
    std::string pred_model;
    double pred_vth = 0.0;
    double pred_vbus_value = 0.0;
    pred->add_option("--model", pred_model, "model JSON")->required();
    pred->add_option("--vth", pred_vth, "measured V_TH, V")->required();
    auto* pred_vbus_opt = pred->add_option("--vbus", pred_vbus_value, "bus voltage, V");

    // evaluate
    auto* eval = app.add_subcommand("evaluate", "run warm-up cases against both models");
    std::string eval_conv = "out/conventional.json", eval_prop = "out/proposed.json",
                eval_cases;
    eval->add_option("--conventional", eval_conv, "conventional model JSON");
    eval->add_option("--proposed", eval_prop, "proposed model JSON");
    eval->add_option("--cases", eval_cases, "cases as vbus:iload[,vbus:iload...]");

    // report
    auto* repc = app.add_subcommand("report", "summarize manifests");
    std::vector<std::string> report_files;
    repc->add_option("manifests", report_files, "manifest/evaluation JSON files")
        ->expected(-1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (sim->parsed()) return cmd_simulate(device_file, sim_vbus, sim_tplate, sim_iload, out_dir);
        if (cal->parsed()) {
            grid.repeats = repeats;
            grid.seed = seed;
            if (single_vbus != 0.0) grid.bus_voltages = {single_vbus};
            return cmd_calibrate(device_file, grid, no_tc, no_coupled, conv_vbus, out_dir);
        }
        if (fit->parsed()) return cmd_fit_dist(fit_dataset, out_dir);
        if (train->parsed())
            return cmd_train(train_dataset, train_model, seed, train_no_coupled, out_dir);
        if (pred->parsed()) {
            std::optional<double> vb;
            if (pred_vbus_opt->count() > 0) vb = pred_vbus_value;
            return cmd_predict(pred_model, pred_vth, vb);
        }
        if (eval->parsed())
            return cmd_evaluate(device_file, eval_conv, eval_prop, eval_cases, seed, out_dir);
        if (repc->parsed()) {
            if (report_files.empty()) report_files = {out_dir + "/manifest.json"};
            return cmd_report(report_files);
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitConfig;
}
