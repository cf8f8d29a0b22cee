// Verification suite: each check measures one quantity, compares it with a
// fixed threshold and records how long it took.

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "cauchycorr/montecarlo.hpp"

namespace cauchycorr::verify {

struct CheckResult {
    std::string id;
    std::string title;
    double measured = 0.0;
    double threshold = 0.0;
    /// How measured is compared with threshold: "<=" or "<".
    std::string relation = "<=";
    bool value_ok = false;
    double seconds = 0.0;
    /// Runtime budget; 0 means none.
    double max_seconds = 0.0;
    nlohmann::json details = nlohmann::json::object();

    bool passed() const noexcept {
        return value_ok && (max_seconds <= 0.0 || seconds < max_seconds);
    }
};

enum class Level { Fast, Full };

struct Options {
    Level level = Level::Fast;
    std::uint64_t seed = mc::kDefaultSeed;
    unsigned workers = 0;
};

/// Max over z of |(2/pi) int exp(-z sin 2t) dt - (I0 - L0)(z)|.
CheckResult struve_identity();

/// Integral of a density over its breakpoints, compared with `expected`
/// at tolerance 1e-8.
CheckResult normalization_of(const std::string& name, const std::function<double(double)>& pdf,
                             std::span<const double> breakpoints, double expected);

/// All six densities, plus the half-normal with prefactor 1/pi, which has
/// to come out at 1/2.
CheckResult normalization();

/// Cosine inversion of the ProductS and AsymptoticRc (a = 1) CFs against
/// the closed-form densities.
CheckResult inversion_round_trips();

/// |cauchysq_cf(t/n^2)^n - w_cf(t)| decreasing in n and small at n = 1e4.
CheckResult stable_limit();

/// Spread (max/min) of deviation * ln n for the product-CF limit.
CheckResult product_cf_rate();

/// r^2 rc_pdf(r, 1) at r = 1e4 relative to 2/pi^2.
CheckResult tail_law();

/// KS of sum X^2 / n^2 (n = 30, 2e4 replications) against w_cdf.
CheckResult w_limit_monte_carlo(const Options& opt);

/// KS and chi-square/dof of n r_c / ln n (n = 400, 1e5 replications)
/// against AsymptoticRc with a = correction_a(400). Two results.
std::vector<CheckResult> main_result_monte_carlo(const Options& opt);

/// Pairwise Spearman correlations of |T|, U1, U2 at n = 400, 1e4 replications.
CheckResult independence(const Options& opt);

/// Histogram CSV bytes of the main-result run with 1 worker and with
/// opt.workers (or 4) workers, run twice each.
CheckResult determinism(const Options& opt);

/// The SimulationConfig behind main_result_monte_carlo and determinism.
mc::SimulationConfig main_result_config(std::uint64_t seed);

std::vector<CheckResult> run_all(const Options& opt);

nlohmann::json to_json(const CheckResult& r);
std::string describe(const CheckResult& r);

}  // namespace cauchycorr::verify
