#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cauchycorr/distributions.hpp"
#include "cauchycorr/histogram.hpp"
#include "cauchycorr/montecarlo.hpp"

namespace cauchycorr::mc {

using Cdf = std::function<double(double)>;

struct KsResult {
    double statistic = 0.0;
    std::size_t sample_size = 0;
};

/// Exact one-sample Kolmogorov-Smirnov distance,
/// max_i max(i/N - F(x_(i)), F(x_(i)) - (i-1)/N). Needs N >= 10.
KsResult ks_test(std::span<const double> sample, const Cdf& model_cdf);

struct Chi2Result {
    double statistic = 0.0;
    int dof = 0;
    std::size_t cells = 0;
    /// Under- plus overflow, observed and expected. Reported only; the
    /// statistic covers the in-range bins.
    double outside_observed = 0.0;
    double outside_expected = 0.0;
};

/// Pearson chi-square of the in-range bins against total * model bin
/// probability. The in-range total is not constrained, so dof = cells.
/// Bins with zero expected count are dropped.
Chi2Result chi2_test(const Histogram& hist, const Cdf& model_cdf);

/// Reference law for a statistic, when one exists: AsymptoticRc with
/// a = correction_a(n) for ScaledRc, LimitW for SumSqOverN2.
std::optional<dist::DistributionModel> reference_model(const SimulationConfig& cfg);

struct GofReport {
    KsResult ks;
    Chi2Result chi2;
    std::string model;
    std::vector<double> model_params;
    SimulationConfig config;
};

/// Scores a finished run against reference_model(cfg). Throws
/// std::invalid_argument when the statistic has no reference law.
GofReport score_run(const SimulationConfig& cfg, const SimulationResult& run);

}  // namespace cauchycorr::mc
