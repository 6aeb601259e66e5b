#pragma once

// =============================================================================
// Predictive models
// =============================================================================
// The two model families mapping measured features to junction temperature:
//  - LinearModel: ordinary least squares T = slope * V_TH + intercept, the
//    single-input baseline,
//  - MlpModel: one ReLU hidden layer (default 26 units) on standardized
//    (V_TH, V_bus), trained full-batch with backtracking step control and an
//    evidence-style re-estimation of the L2 penalty.
// Training is bit-deterministic for a fixed (data order, seed).
// =============================================================================

#include <cstdint>
#include <span>
#include <vector>

#include <json.hpp>

namespace tsepcal {

// --- linear baseline ----------------------------------------------------------

struct LinearModel {
    double slope = 0.0;      ///< degC/V
    double intercept = 0.0;  ///< degC
    double training_rmse = 0.0;
};

/// Exact normal-equation OLS of y on x. Throws if all x coincide.
LinearModel fit_linear(std::span<const double> x, std::span<const double> y);

double predict(const LinearModel& m, double v_th);

// --- MLP ----------------------------------------------------------------------

/// Row-major feature matrix plus targets.
struct RegressionData {
    std::vector<double> x;  ///< rows * dim, row-major
    std::vector<double> y;  ///< rows
    std::size_t dim = 2;

    [[nodiscard]] std::size_t rows() const { return dim == 0 ? 0 : x.size() / dim; }
};

struct MlpModel {
    std::size_t input_dim = 2;
    std::size_t hidden = 26;
    // Flat parameter vector: [W1 (hidden x input, row-major), b1, W2, b2].
    std::vector<double> theta;
    std::vector<double> x_mean, x_std;  ///< per-feature standardization
    double y_mean = 0.0, y_std = 1.0;
    double reg_lambda = 0.0;
    std::uint64_t seed = 0;

    [[nodiscard]] std::size_t param_count() const {
        return hidden * (input_dim + 1) + hidden + 1;
    }
};

struct TrainConfig {
    std::size_t hidden = 26;
    std::size_t max_epochs = 1000;
    double val_fraction = 0.15;
    double test_fraction = 0.15;
    double plateau_tol = 1e-4;        ///< degC^2, minimum val improvement
    std::size_t plateau_epochs = 50;
    double lambda_init = 1e-3;
    std::size_t lambda_interval = 50; ///< epochs between evidence updates
    bool adapt_lambda = true;
    double learning_rate = 0.5;
    double lr_growth = 1.2;   ///< step growth after an accepted epoch
    double init_scale = 0.02; ///< small init biases training toward low-complexity fits
    double lr_max = 2.0;
    std::uint64_t seed = 1;
};

struct TrainReport {
    std::size_t epochs_run = 0;
    double train_mse = 0.0, val_mse = 0.0, test_mse = 0.0;  ///< degC^2
    std::vector<double> train_curve, val_curve;             ///< per epoch, degC^2
};

/// Full-batch training with a seeded 70/15/15 split. Throws on non-finite loss.
std::pair<MlpModel, TrainReport> train_mlp(const RegressionData& data, const TrainConfig& cfg);

double predict(const MlpModel& m, std::span<const double> features);

struct CvReport {
    std::vector<double> fold_mse;  ///< degC^2 on each held-out fold
    double mean = 0.0;
    double stddev = 0.0;
};

/// Deterministic seeded k-fold cross validation (fold sizes differ by <= 1).
CvReport cross_validate(const RegressionData& data, std::size_t folds, const TrainConfig& cfg);

/// Loss (standardized space, including the L2 term) and its analytic gradient,
/// exposed for verification.
double mlp_loss(const MlpModel& m, const RegressionData& batch, double lambda);
std::vector<double> mlp_gradient(const MlpModel& m, const RegressionData& batch, double lambda);

/// Max relative error between analytic and central-difference gradients over
/// all parameters, skipping coordinates whose perturbation sits within 10*h of
/// a ReLU kink on any batch row.
double gradient_check(const MlpModel& m, const RegressionData& batch, double lambda,
                      double h = 1e-5);

// --- serialization --------------------------------------------------------------

void to_json(nlohmann::json& j, const LinearModel& m);
void from_json(const nlohmann::json& j, LinearModel& m);
void to_json(nlohmann::json& j, const MlpModel& m);
void from_json(const nlohmann::json& j, MlpModel& m);

}  // namespace tsepcal
