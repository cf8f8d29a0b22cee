#include "cauchycorr/gof.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cauchycorr::mc {

KsResult ks_test(std::span<const double> sample, const Cdf& model_cdf) {
    if (sample.size() < 10) throw std::invalid_argument("ks_test: need at least 10 values");
    std::vector<double> sorted(sample.begin(), sample.end());
    std::sort(sorted.begin(), sorted.end());
    const auto n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = model_cdf(sorted[i]);
        const double above = static_cast<double>(i + 1) / n - f;
        const double below = f - static_cast<double>(i) / n;
        d = std::max({d, above, below});
    }
    return {std::clamp(d, 0.0, 1.0), sorted.size()};
}

Chi2Result chi2_test(const Histogram& hist, const Cdf& model_cdf) {
    const Binning& b = hist.binning();
    const auto total = static_cast<double>(hist.total());
    if (total <= 0.0) throw std::invalid_argument("chi2_test: empty histogram");
    Chi2Result r;
    auto add_cell = [&](double observed, double probability) {
        const double expected = total * probability;
        if (!(expected > 0.0)) return;
        const double diff = observed - expected;
        r.statistic += diff * diff / expected;
        ++r.cells;
    };
    const std::size_t nbins = b.bin_count();
    std::vector<double> cdf_at(nbins + 1);
    for (std::size_t i = 0; i <= nbins; ++i) cdf_at[i] = model_cdf(b.edge(i));
    for (std::size_t i = 0; i < nbins; ++i) {
        add_cell(static_cast<double>(hist.counts()[i]), cdf_at[i + 1] - cdf_at[i]);
    }
    r.outside_observed = static_cast<double>(hist.underflow() + hist.overflow());
    r.outside_expected = total * (cdf_at[0] + (1.0 - cdf_at[nbins]));
    if (r.cells < 1) throw std::invalid_argument("chi2_test: no usable bins");
    r.dof = static_cast<int>(r.cells);
    return r;
}

std::optional<dist::DistributionModel> reference_model(const SimulationConfig& cfg) {
    switch (cfg.statistic) {
        case Statistic::ScaledRc:
            if (cfg.n < 4) return std::nullopt;
            return dist::DistributionModel::asymptotic_rc_for_n(cfg.n);
        case Statistic::SumSqOverN2: return dist::DistributionModel(dist::ModelId::LimitW);
        case Statistic::SingleProductTriple: return std::nullopt;
    }
    return std::nullopt;
}

GofReport score_run(const SimulationConfig& cfg, const SimulationResult& run) {
    const auto model = reference_model(cfg);
    if (!model) {
        throw std::invalid_argument("no reference model for statistic " +
                                    std::string(to_string(cfg.statistic)) + " at n = " +
                                    std::to_string(cfg.n));
    }
    const Cdf cdf = [&m = *model](double x) { return m.cdf(x); };
    GofReport report;
    const std::vector<double> values = run.raw.load();
    report.ks = ks_test(values, cdf);
    report.chi2 = chi2_test(run.histogram, cdf);
    report.model = std::string(model->name());
    report.model_params = model->params();
    report.config = cfg;
    return report;
}

}  // namespace cauchycorr::mc
