#include "tsepcal/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace tsepcal {

namespace {

constexpr double kTwoPi = 6.283185307179586477;

void check_samples(std::span<const double> s) {
    if (s.size() < 2) throw std::invalid_argument("distribution fit: need at least 2 samples");
    for (double v : s)
        if (!std::isfinite(v)) throw std::invalid_argument("distribution fit: non-finite sample");
}

struct Moments {
    double mean, var;  // population variance
};

Moments moments(std::span<const double> s) {
    const double n = static_cast<double>(s.size());
    const double mean = std::accumulate(s.begin(), s.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : s) ss += (v - mean) * (v - mean);
    return {mean, ss / n};
}

/// One-sample KS statistic of `sorted` against the CDF evaluated per sample.
template <typename Cdf>
double ks_stat(const std::vector<double>& sorted, Cdf cdf) {
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf(sorted[i]);
        d = std::max(d, std::fabs((static_cast<double>(i) + 1.0) / n - f));
        d = std::max(d, std::fabs(static_cast<double>(i) / n - f));
    }
    return d;
}

}  // namespace

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

DistFit fit_gaussian(std::span<const double> samples) {
    check_samples(samples);
    const auto [mean, var] = moments(samples);
    if (!(var > 0.0)) throw std::invalid_argument("fit_gaussian: degenerate sample (zero variance)");
    const double sigma = std::sqrt(var);
    const double n = static_cast<double>(samples.size());
    DistFit fit;
    fit.family = DistFamily::gaussian;
    fit.location = mean;
    fit.scale = sigma;
    // At the MLE the quadratic sum equals n, so the likelihood collapses.
    fit.log_likelihood = -0.5 * n * (1.0 + std::log(kTwoPi * var));
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    fit.ks_statistic = ks_stat(sorted, [&](double x) { return normal_cdf((x - mean) / sigma); });
    fit.n = samples.size();
    return fit;
}

DistFit fit_log_gaussian(std::span<const double> samples) {
    check_samples(samples);
    std::vector<double> logs(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!(samples[i] > 0.0))
            throw std::invalid_argument("fit_log_gaussian: nonpositive sample");
        logs[i] = std::log(samples[i]);
    }
    const auto [mu, var] = moments(logs);
    if (!(var > 0.0)) throw std::invalid_argument("fit_log_gaussian: degenerate sample (zero variance)");
    const double sigma = std::sqrt(var);
    const double n = static_cast<double>(samples.size());
    const double sum_logs = std::accumulate(logs.begin(), logs.end(), 0.0);
    DistFit fit;
    fit.family = DistFamily::log_gaussian;
    fit.location = mu;
    fit.scale = sigma;
    // Gaussian likelihood of the logs plus the change-of-variable term.
    fit.log_likelihood = -0.5 * n * (1.0 + std::log(kTwoPi * var)) - sum_logs;
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    fit.ks_statistic =
        ks_stat(sorted, [&](double x) { return normal_cdf((std::log(x) - mu) / sigma); });
    fit.n = samples.size();
    return fit;
}

DistFamily compare_families(std::span<const double> samples) {
    const DistFit g = fit_gaussian(samples);
    const DistFit lg = fit_log_gaussian(samples);
    const double diff = lg.log_likelihood - g.log_likelihood;
    if (diff > 1e-9) return DistFamily::log_gaussian;
    return DistFamily::gaussian;  // ties break to the simpler model
}

RepeatPolicyResult repeat_policy(std::span<const double> samples, DistFamily family) {
    RepeatPolicyResult r;
    r.rows.assign(samples.begin(), samples.end());
    if (family == DistFamily::gaussian) {
        const auto [mean, var] = moments(samples);
        (void)var;
        r.point_estimate = mean;
    } else {
        const DistFit fit = fit_log_gaussian(samples);
        r.point_estimate = std::exp(fit.location + 0.5 * fit.scale * fit.scale);
    }
    return r;
}

void to_json(nlohmann::json& j, const DistFit& f) {
    j = nlohmann::json{{"family", to_string(f.family)}, {"location", f.location},
                       {"scale", f.scale},              {"log_likelihood", f.log_likelihood},
                       {"ks_statistic", f.ks_statistic}, {"n", f.n}};
}

std::vector<HistogramRow> histogram_with_fit(std::span<const double> samples, const DistFit& fit,
                                             std::size_t bins) {
    if (bins == 0 || samples.empty()) return {};
    const auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
    double lo = *lo_it, hi = *hi_it;
    if (!(hi > lo)) hi = lo + 1e-12;
    const double w = (hi - lo) / static_cast<double>(bins);
    std::vector<HistogramRow> rows(bins);
    for (std::size_t b = 0; b < bins; ++b)
        rows[b] = {lo + w * static_cast<double>(b), lo + w * static_cast<double>(b + 1), 0, 0.0};
    for (double v : samples) {
        auto b = static_cast<std::size_t>((v - lo) / w);
        if (b >= bins) b = bins - 1;
        ++rows[b].count;
    }
    for (auto& r : rows) {
        const double x = 0.5 * (r.bin_left + r.bin_right);
        if (fit.family == DistFamily::gaussian) {
            const double z = (x - fit.location) / fit.scale;
            r.fitted_pdf = std::exp(-0.5 * z * z) / (fit.scale * std::sqrt(kTwoPi));
        } else {
            if (x > 0.0) {
                const double z = (std::log(x) - fit.location) / fit.scale;
                r.fitted_pdf = std::exp(-0.5 * z * z) / (x * fit.scale * std::sqrt(kTwoPi));
            }
        }
    }
    return rows;
}

}  // namespace tsepcal
