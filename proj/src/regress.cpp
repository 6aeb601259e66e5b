#include "tsepcal/regress.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "tsepcal/rng.hpp"

namespace tsepcal {

// =============================================================================
// Linear baseline
// =============================================================================

LinearModel fit_linear(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("fit_linear: size mismatch");
    if (x.size() < 2) throw std::invalid_argument("fit_linear: need at least 2 points");
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 0.0)) throw std::invalid_argument("fit_linear: degenerate input (all x equal)");
    LinearModel m;
    m.slope = sxy / sxx;
    m.intercept = my - m.slope * mx;
    double sse = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double e = y[i] - (m.slope * x[i] + m.intercept);
        sse += e * e;
    }
    m.training_rmse = std::sqrt(sse / n);
    return m;
}

double predict(const LinearModel& m, double v_th) { return m.slope * v_th + m.intercept; }

// =============================================================================
// MLP internals
// =============================================================================

namespace {

struct Layout {
    std::size_t hidden, input;
    [[nodiscard]] std::size_t w1(std::size_t j, std::size_t i) const { return j * input + i; }
    [[nodiscard]] std::size_t b1(std::size_t j) const { return hidden * input + j; }
    [[nodiscard]] std::size_t w2(std::size_t j) const { return hidden * (input + 1) + j; }
    [[nodiscard]] std::size_t b2() const { return hidden * (input + 2); }
};

/// Forward pass in standardized space; z (pre-activations) optional out.
double forward_std(const MlpModel& m, const double* xs, std::vector<double>* z_out) {
    const Layout L{m.hidden, m.input_dim};
    double y = m.theta[L.b2()];
    for (std::size_t j = 0; j < m.hidden; ++j) {
        double z = m.theta[L.b1(j)];
        for (std::size_t i = 0; i < m.input_dim; ++i) z += m.theta[L.w1(j, i)] * xs[i];
        if (z_out) (*z_out)[j] = z;
        if (z > 0.0) y += m.theta[L.w2(j)] * z;
    }
    return y;
}

struct BatchStd {
    std::vector<double> x;  // standardized features, row-major
    std::vector<double> y;  // standardized targets
    std::size_t rows = 0, dim = 0;
};

BatchStd standardize(const MlpModel& m, const RegressionData& data) {
    if (data.dim != m.input_dim) throw std::invalid_argument("mlp: feature count mismatch");
    BatchStd b;
    b.rows = data.rows();
    b.dim = data.dim;
    b.x.resize(b.rows * b.dim);
    b.y.resize(b.rows);
    for (std::size_t r = 0; r < b.rows; ++r) {
        for (std::size_t i = 0; i < b.dim; ++i)
            b.x[r * b.dim + i] = (data.x[r * b.dim + i] - m.x_mean[i]) / m.x_std[i];
        b.y[r] = (data.y[r] - m.y_mean) / m.y_std;
    }
    return b;
}

double loss_std(const MlpModel& m, const BatchStd& b, double lambda) {
    double sse = 0.0;
    for (std::size_t r = 0; r < b.rows; ++r) {
        const double e = forward_std(m, &b.x[r * b.dim], nullptr) - b.y[r];
        sse += e * e;
    }
    double w2sum = 0.0;
    for (double t : m.theta) w2sum += t * t;
    return sse / static_cast<double>(b.rows) + lambda * w2sum;
}

void gradient_std(const MlpModel& m, const BatchStd& b, double lambda, std::vector<double>& g) {
    const Layout L{m.hidden, m.input_dim};
    g.assign(m.theta.size(), 0.0);
    std::vector<double> z(m.hidden);
    const double inv_n = 1.0 / static_cast<double>(b.rows);
    for (std::size_t r = 0; r < b.rows; ++r) {
        const double* xs = &b.x[r * b.dim];
        const double e = forward_std(m, xs, &z) - b.y[r];
        const double dy = 2.0 * e * inv_n;
        g[L.b2()] += dy;
        for (std::size_t j = 0; j < m.hidden; ++j) {
            if (z[j] <= 0.0) continue;
            g[L.w2(j)] += dy * z[j];
            const double dz = dy * m.theta[L.w2(j)];
            g[L.b1(j)] += dz;
            for (std::size_t i = 0; i < b.dim; ++i) g[L.w1(j, i)] += dz * xs[i];
        }
    }
    for (std::size_t i = 0; i < m.theta.size(); ++i) g[i] += 2.0 * lambda * m.theta[i];
}

/// Diagonal of the Gauss-Newton approximation of the data-term Hessian.
void gn_diagonal(const MlpModel& m, const BatchStd& b, std::vector<double>& d) {
    const Layout L{m.hidden, m.input_dim};
    d.assign(m.theta.size(), 0.0);
    std::vector<double> z(m.hidden);
    const double inv_n = 1.0 / static_cast<double>(b.rows);
    for (std::size_t r = 0; r < b.rows; ++r) {
        const double* xs = &b.x[r * b.dim];
        forward_std(m, xs, &z);
        d[L.b2()] += 2.0 * inv_n;
        for (std::size_t j = 0; j < m.hidden; ++j) {
            if (z[j] <= 0.0) continue;
            d[L.w2(j)] += 2.0 * inv_n * z[j] * z[j];
            const double w = m.theta[L.w2(j)];
            d[L.b1(j)] += 2.0 * inv_n * w * w;
            for (std::size_t i = 0; i < b.dim; ++i)
                d[L.w1(j, i)] += 2.0 * inv_n * w * w * xs[i] * xs[i];
        }
    }
}

double mse_std(const MlpModel& m, const BatchStd& b) {
    if (b.rows == 0) return 0.0;
    double sse = 0.0;
    for (std::size_t r = 0; r < b.rows; ++r) {
        const double e = forward_std(m, &b.x[r * b.dim], nullptr) - b.y[r];
        sse += e * e;
    }
    return sse / static_cast<double>(b.rows);
}

BatchStd subset(const BatchStd& b, std::span<const std::size_t> idx) {
    BatchStd s;
    s.rows = idx.size();
    s.dim = b.dim;
    s.x.resize(s.rows * s.dim);
    s.y.resize(s.rows);
    for (std::size_t r = 0; r < idx.size(); ++r) {
        std::copy_n(&b.x[idx[r] * b.dim], b.dim, &s.x[r * s.dim]);
        s.y[r] = b.y[idx[r]];
    }
    return s;
}

std::vector<std::size_t> seeded_permutation(std::size_t n, std::uint64_t seed) {
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), std::size_t{0});
    RandomStream rs(mix64(seed, 0xfa1df01dULL));
    for (std::size_t i = n; i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rs.next_u64() % i);
        std::swap(p[i - 1], p[j]);
    }
    return p;
}

/// One backtracking full-batch step; returns the accepted loss.
double gd_step(MlpModel& m, const BatchStd& train, double lambda, double& lr,
               const std::vector<double>& grad, double current_loss, double lr_growth,
               double lr_max) {
    std::vector<double> saved = m.theta;
    for (int tries = 0; tries < 60; ++tries) {
        for (std::size_t i = 0; i < m.theta.size(); ++i) m.theta[i] = saved[i] - lr * grad[i];
        const double l = loss_std(m, train, lambda);
        if (std::isfinite(l) && l <= current_loss) {
            lr = std::min(lr * lr_growth, lr_max);
            return l;
        }
        lr *= 0.5;
    }
    m.theta = saved;  // no descent direction at any tried step; keep weights
    return current_loss;
}

}  // namespace

// =============================================================================
// Training
// =============================================================================

std::pair<MlpModel, TrainReport> train_mlp(const RegressionData& data, const TrainConfig& cfg) {
    const std::size_t n = data.rows();
    if (n < 100) throw std::invalid_argument("train_mlp: need at least 100 rows");
    if (data.dim == 0) throw std::invalid_argument("train_mlp: zero feature dimension");

    // Seeded split: 70/15/15 after permutation.
    const auto perm = seeded_permutation(n, cfg.seed);
    const auto n_val = static_cast<std::size_t>(std::floor(cfg.val_fraction * static_cast<double>(n)));
    const auto n_test = static_cast<std::size_t>(std::floor(cfg.test_fraction * static_cast<double>(n)));
    const std::size_t n_train = n - n_val - n_test;
    std::vector<std::size_t> idx_train(perm.begin(), perm.begin() + static_cast<long>(n_train));
    std::vector<std::size_t> idx_val(perm.begin() + static_cast<long>(n_train),
                                     perm.begin() + static_cast<long>(n_train + n_val));
    std::vector<std::size_t> idx_test(perm.begin() + static_cast<long>(n_train + n_val), perm.end());

    MlpModel m;
    m.input_dim = data.dim;
    m.hidden = cfg.hidden;
    m.seed = cfg.seed;

    // Standardization constants from the training split.
    m.x_mean.assign(data.dim, 0.0);
    m.x_std.assign(data.dim, 0.0);
    for (std::size_t r : idx_train)
        for (std::size_t i = 0; i < data.dim; ++i) m.x_mean[i] += data.x[r * data.dim + i];
    for (double& v : m.x_mean) v /= static_cast<double>(n_train);
    for (std::size_t r : idx_train)
        for (std::size_t i = 0; i < data.dim; ++i) {
            const double d = data.x[r * data.dim + i] - m.x_mean[i];
            m.x_std[i] += d * d;
        }
    for (double& v : m.x_std) {
        v = std::sqrt(v / static_cast<double>(n_train));
        if (!(v > 0.0)) v = 1.0;  // constant feature: pass through unscaled
    }
    double ysum = 0.0;
    for (std::size_t r : idx_train) ysum += data.y[r];
    m.y_mean = ysum / static_cast<double>(n_train);
    double yss = 0.0;
    for (std::size_t r : idx_train) yss += (data.y[r] - m.y_mean) * (data.y[r] - m.y_mean);
    m.y_std = std::sqrt(yss / static_cast<double>(n_train));
    if (!(m.y_std > 0.0)) m.y_std = 1.0;

    // Glorot-uniform init from the seeded stream.
    m.theta.assign(m.param_count(), 0.0);
    {
        RandomStream rs(mix64(cfg.seed, 0x1717ULL));
        const Layout L{m.hidden, m.input_dim};
        const double r1 = cfg.init_scale * std::sqrt(6.0 / static_cast<double>(m.input_dim + m.hidden));
        const double r2 = cfg.init_scale * std::sqrt(6.0 / static_cast<double>(m.hidden + 1));
        for (std::size_t j = 0; j < m.hidden; ++j)
            for (std::size_t i = 0; i < m.input_dim; ++i)
                m.theta[L.w1(j, i)] = (2.0 * rs.next_unit() - 1.0) * r1;
        for (std::size_t j = 0; j < m.hidden; ++j)
            m.theta[L.b1(j)] = (2.0 * rs.next_unit() - 1.0) * 0.1 * cfg.init_scale;
        for (std::size_t j = 0; j < m.hidden; ++j)
            m.theta[L.w2(j)] = (2.0 * rs.next_unit() - 1.0) * r2;
        m.theta[L.b2()] = 0.0;
    }

    const BatchStd all = standardize(m, data);
    const BatchStd train = subset(all, idx_train);
    const BatchStd val = subset(all, idx_val);
    const BatchStd test = subset(all, idx_test);

    const double y_var = m.y_std * m.y_std;
    double lambda = cfg.lambda_init;
    double lr = cfg.learning_rate;
    double current_loss = loss_std(m, train, lambda);

    TrainReport rep;
    double best_val = std::numeric_limits<double>::infinity();
    std::vector<double> best_theta = m.theta;
    std::size_t epochs_since_improvement = 0;
    std::vector<double> grad, gn, step_dir;

    for (std::size_t epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
        gradient_std(m, train, lambda, grad);
        // Per-coordinate step scaling by the Gauss-Newton curvature diagonal;
        // backtracking below still guards every step against loss increase.
        gn_diagonal(m, train, gn);
        double d_max = 0.0;
        for (double d : gn) d_max = std::max(d_max, d);
        const double damping = 1e-6 * d_max + 2.0 * lambda + 1e-12;
        step_dir.resize(grad.size());
        for (std::size_t i = 0; i < grad.size(); ++i) step_dir[i] = grad[i] / (gn[i] + damping);
        current_loss =
            gd_step(m, train, lambda, lr, step_dir, current_loss, cfg.lr_growth, cfg.lr_max);
        if (!std::isfinite(current_loss))
            throw std::runtime_error("train_mlp: non-finite loss at epoch " + std::to_string(epoch));

        const double tr_mse = mse_std(m, train) * y_var;
        const double va_mse = (val.rows != 0 ? mse_std(m, val) : tr_mse) * (val.rows != 0 ? y_var : 1.0);
        rep.train_curve.push_back(tr_mse);
        rep.val_curve.push_back(val.rows != 0 ? va_mse : tr_mse);
        rep.epochs_run = epoch;

        const double monitored = val.rows != 0 ? va_mse : tr_mse;
        if (monitored < best_val - cfg.plateau_tol) {
            best_val = monitored;
            best_theta = m.theta;
            epochs_since_improvement = 0;
        } else {
            if (monitored < best_val) {
                best_val = monitored;
                best_theta = m.theta;
            }
            if (++epochs_since_improvement >= cfg.plateau_epochs) break;
        }

        // Evidence-style re-estimation of the decay constant. gamma counts the
        // well-determined parameters; the update is expressed for the MSE-form
        // loss, i.e. lambda = gamma * MSE / ((n - gamma) * sum w^2).
        if (cfg.adapt_lambda && epoch % cfg.lambda_interval == 0) {
            gn_diagonal(m, train, gn);
            double trace_proxy = 0.0;
            for (double d : gn) trace_proxy += 1.0 / (d + 2.0 * lambda);
            const double gamma = static_cast<double>(m.theta.size()) - 2.0 * lambda * trace_proxy;
            double w2sum = 0.0;
            for (double t : m.theta) w2sum += t * t;
            const double n_tr = static_cast<double>(train.rows);
            const double mse_now = mse_std(m, train);
            const double denom = (n_tr - gamma) * w2sum;
            double next = denom > 0.0 ? gamma * mse_now / denom : -1.0;
            if (!(next > 0.0) || !std::isfinite(next)) {
                // Fall back to a validation grid probe from the current weights.
                const double grid[] = {1e-4, 1e-3, 1e-2, 1e-1};
                double best_probe = std::numeric_limits<double>::infinity();
                std::vector<double> snapshot = m.theta;
                for (double lg : grid) {
                    m.theta = snapshot;
                    double probe_lr = lr, probe_loss = loss_std(m, train, lg);
                    for (int e2 = 0; e2 < 25; ++e2) {
                        gradient_std(m, train, lg, grad);
                        probe_loss = gd_step(m, train, lg, probe_lr, grad, probe_loss, cfg.lr_growth, cfg.lr_max);
                    }
                    const double v = val.rows != 0 ? mse_std(m, val) : mse_std(m, train);
                    if (v < best_probe) {
                        best_probe = v;
                        next = lg;
                    }
                }
                m.theta = snapshot;
            }
            lambda = next;
            current_loss = loss_std(m, train, lambda);
        }
    }

    m.theta = best_theta;
    m.reg_lambda = lambda;
    rep.train_mse = mse_std(m, train) * y_var;
    rep.val_mse = val.rows != 0 ? mse_std(m, val) * y_var : rep.train_mse;
    rep.test_mse = test.rows != 0 ? mse_std(m, test) * y_var : rep.train_mse;
    return {std::move(m), std::move(rep)};
}

double predict(const MlpModel& m, std::span<const double> features) {
    if (features.size() != m.input_dim) throw std::invalid_argument("mlp predict: feature count mismatch");
    std::vector<double> xs(m.input_dim);
    for (std::size_t i = 0; i < m.input_dim; ++i) xs[i] = (features[i] - m.x_mean[i]) / m.x_std[i];
    return m.y_mean + m.y_std * forward_std(m, xs.data(), nullptr);
}

CvReport cross_validate(const RegressionData& data, std::size_t folds, const TrainConfig& cfg) {
    const std::size_t n = data.rows();
    if (folds < 2 || n < folds) throw std::invalid_argument("cross_validate: need rows >= folds >= 2");
    const auto perm = seeded_permutation(n, mix64(cfg.seed, 0xcfULL));
    CvReport rep;
    for (std::size_t f = 0; f < folds; ++f) {
        RegressionData tr, te;
        tr.dim = te.dim = data.dim;
        for (std::size_t r = 0; r < n; ++r) {
            RegressionData& dst = (perm[r] % folds == f) ? te : tr;
            dst.x.insert(dst.x.end(), &data.x[r * data.dim], &data.x[r * data.dim] + data.dim);
            dst.y.push_back(data.y[r]);
        }
        TrainConfig fold_cfg = cfg;
        fold_cfg.seed = mix64(cfg.seed, f + 1);
        auto [model, train_rep] = train_mlp(tr, fold_cfg);
        double sse = 0.0;
        for (std::size_t r = 0; r < te.rows(); ++r) {
            const double e = predict(model, std::span(&te.x[r * te.dim], te.dim)) - te.y[r];
            sse += e * e;
        }
        rep.fold_mse.push_back(sse / static_cast<double>(te.rows()));
    }
    rep.mean = std::accumulate(rep.fold_mse.begin(), rep.fold_mse.end(), 0.0) /
               static_cast<double>(folds);
    double ss = 0.0;
    for (double v : rep.fold_mse) ss += (v - rep.mean) * (v - rep.mean);
    rep.stddev = std::sqrt(ss / static_cast<double>(folds));
    return rep;
}

// =============================================================================
// Verification hooks
// =============================================================================

double mlp_loss(const MlpModel& m, const RegressionData& batch, double lambda) {
    return loss_std(m, standardize(m, batch), lambda);
}

std::vector<double> mlp_gradient(const MlpModel& m, const RegressionData& batch, double lambda) {
    std::vector<double> g;
    gradient_std(m, standardize(m, batch), lambda, g);
    return g;
}

double gradient_check(const MlpModel& m, const RegressionData& batch, double lambda, double h) {
    if (batch.rows() > 32) throw std::invalid_argument("gradient_check: batch too large (max 32)");
    const BatchStd b = standardize(m, batch);
    const Layout L{m.hidden, m.input_dim};
    std::vector<double> g;
    gradient_std(m, b, lambda, g);

    // Pre-activations per row, for kink proximity tests.
    std::vector<std::vector<double>> z(b.rows, std::vector<double>(m.hidden));
    for (std::size_t r = 0; r < b.rows; ++r) forward_std(m, &b.x[r * b.dim], &z[r]);

    // A coordinate is skipped when nudging it by +-h could flip a ReLU unit on
    // some row. Only first-layer parameters move pre-activations.
    auto near_kink = [&](std::size_t p) {
        if (p >= L.w2(0)) return false;
        const bool is_weight = p < L.b1(0);
        const std::size_t j = is_weight ? p / m.input_dim : p - L.b1(0);
        const std::size_t i = is_weight ? p % m.input_dim : 0;
        for (std::size_t r = 0; r < b.rows; ++r) {
            const double sens = is_weight ? std::max(1.0, std::fabs(b.x[r * b.dim + i])) : 1.0;
            if (std::fabs(z[r][j]) < 10.0 * h * sens) return true;
        }
        return false;
    };

    MlpModel probe = m;
    double worst = 0.0;
    for (std::size_t p = 0; p < m.theta.size(); ++p) {
        if (near_kink(p)) continue;
        probe.theta = m.theta;
        probe.theta[p] = m.theta[p] + h;
        const double lp = loss_std(probe, b, lambda);
        probe.theta[p] = m.theta[p] - h;
        const double lm = loss_std(probe, b, lambda);
        const double fd = (lp - lm) / (2.0 * h);
        const double denom = std::max({std::fabs(g[p]), std::fabs(fd), 1e-8});
        worst = std::max(worst, std::fabs(fd - g[p]) / denom);
    }
    return worst;
}

// =============================================================================
// Serialization
// =============================================================================

void to_json(nlohmann::json& j, const LinearModel& m) {
    j = nlohmann::json{{"type", "linear"},
                       {"slope_c_per_v", m.slope},
                       {"intercept_c", m.intercept},
                       {"training_rmse_c", m.training_rmse}};
}

void from_json(const nlohmann::json& j, LinearModel& m) {
    if (j.at("type").get<std::string>() != "linear")
        throw std::invalid_argument("model file is not a linear model");
    j.at("slope_c_per_v").get_to(m.slope);
    j.at("intercept_c").get_to(m.intercept);
    j.at("training_rmse_c").get_to(m.training_rmse);
}

void to_json(nlohmann::json& j, const MlpModel& m) {
    j = nlohmann::json{{"type", "mlp"},
                       {"input_dim", m.input_dim},
                       {"hidden", m.hidden},
                       {"theta", m.theta},
                       {"x_mean", m.x_mean},
                       {"x_std", m.x_std},
                       {"y_mean", m.y_mean},
                       {"y_std", m.y_std},
                       {"reg_lambda", m.reg_lambda},
                       {"seed", m.seed}};
}

void from_json(const nlohmann::json& j, MlpModel& m) {
    if (j.at("type").get<std::string>() != "mlp")
        throw std::invalid_argument("model file is not an mlp model");
    j.at("input_dim").get_to(m.input_dim);
    j.at("hidden").get_to(m.hidden);
    j.at("theta").get_to(m.theta);
    j.at("x_mean").get_to(m.x_mean);
    j.at("x_std").get_to(m.x_std);
    j.at("y_mean").get_to(m.y_mean);
    j.at("y_std").get_to(m.y_std);
    j.at("reg_lambda").get_to(m.reg_lambda);
    j.at("seed").get_to(m.seed);
    if (m.theta.size() != m.param_count())
        throw std::invalid_argument("mlp model file: parameter vector size mismatch");
}

}  // namespace tsepcal
