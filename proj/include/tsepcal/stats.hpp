#pragma once

// =============================================================================
// Repeated-measurement error models
// =============================================================================
// Gaussian and log-Gaussian maximum-likelihood fits for per-condition batches
// of repeated V_TH measurements, likelihood-based family selection, and the
// repeat-handling policy used when assembling training data.
// =============================================================================

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace tsepcal {

enum class DistFamily { gaussian, log_gaussian };

inline const char* to_string(DistFamily f) {
    return f == DistFamily::gaussian ? "gaussian" : "log_gaussian";
}

struct DistFit {
    DistFamily family = DistFamily::gaussian;
    double location = 0.0;  ///< mu (value space) or mu_ln (log space)
    double scale = 0.0;     ///< sigma, population (1/n) MLE
    double log_likelihood = 0.0;
    double ks_statistic = 0.0;  ///< one-sample KS against the fitted CDF, value space
    std::size_t n = 0;
};

/// Gaussian MLE (population variance). Throws on n < 2 or zero variance.
DistFit fit_gaussian(std::span<const double> samples);

/// Log-Gaussian MLE: gaussian MLE on logs, likelihood and KS in value space.
/// Requires strictly positive samples.
DistFit fit_log_gaussian(std::span<const double> samples);

/// Family with the higher log-likelihood; ties within 1e-9 go to gaussian.
DistFamily compare_families(std::span<const double> samples);

struct RepeatPolicyResult {
    std::vector<double> rows;     ///< all k repeats, order preserved
    double point_estimate = 0.0;  ///< diagnostic only: distribution mean of the fit
};

/// Training policy for one condition's k repeats: keep every row. The point
/// estimate (mean for gaussian, exp(mu + sigma^2/2) for log-gaussian) is a
/// diagnostic, not a replacement for the rows.
RepeatPolicyResult repeat_policy(std::span<const double> samples, DistFamily family);

/// Standard normal CDF.
double normal_cdf(double z);

// --- reporting ---------------------------------------------------------------

void to_json(nlohmann::json& j, const DistFit& f);

struct HistogramRow {
    double bin_left, bin_right;
    std::size_t count;
    double fitted_pdf;  ///< fit density at the bin center
};

/// Equal-width histogram with the fitted density, for distribution plots.
std::vector<HistogramRow> histogram_with_fit(std::span<const double> samples, const DistFit& fit,
                                             std::size_t bins);

}  // namespace tsepcal
