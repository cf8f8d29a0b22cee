#include <catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "cauchycorr/distributions.hpp"
#include "cauchycorr/gof.hpp"

using namespace cauchycorr;
using Catch::Approx;

namespace {

// Inverse of the standard Cauchy CDF.
double cauchy_quantile(double p) { return std::tan(std::numbers::pi * (p - 0.5)); }

}  // namespace

TEST_CASE("KS at exact model quantiles is 1/(2N)", "[gof][ks]") {
    for (std::size_t n : {10u, 100u, 1000u}) {
        std::vector<double> xs;
        for (std::size_t i = 1; i <= n; ++i) xs.push_back(cauchy_quantile((i - 0.5) / n));
        const auto r = mc::ks_test(xs, dist::cauchy_cdf);
        CHECK(r.sample_size == n);
        CHECK(r.statistic == Approx(0.5 / n).epsilon(1e-9));
    }
}

TEST_CASE("KS against the sample's own empirical CDF is at most 1/N", "[gof][ks]") {
    std::vector<double> xs;
    for (int i = 0; i < 50; ++i) xs.push_back(std::sin(i * 1.7) * 3);
    std::vector<double> sorted = xs;
    std::sort(sorted.begin(), sorted.end());
    auto ecdf = [&](double x) {
        return static_cast<double>(std::upper_bound(sorted.begin(), sorted.end(), x) - sorted.begin()) /
               sorted.size();
    };
    CHECK(mc::ks_test(xs, ecdf).statistic <= 1.0 / 50 + 1e-15);
}

TEST_CASE("KS detects a wrong model and needs 10 values", "[gof][ks]") {
    std::vector<double> xs;
    for (int i = 1; i <= 200; ++i) xs.push_back(cauchy_quantile((i - 0.5) / 200) + 2.0);
    const double d = mc::ks_test(xs, dist::cauchy_cdf).statistic;
    CHECK(d > 0.3);
    CHECK(d <= 1.0);
    CHECK_THROWS_AS(mc::ks_test(std::vector<double>(9, 0.0), dist::cauchy_cdf), std::invalid_argument);
}

TEST_CASE("chi-square of a histogram that matches its model exactly", "[gof][chi2]") {
    // Counts proportional to model bin probabilities (up to rounding) give a tiny statistic.
    const mc::Binning b{-2.0, 2.0, 0.5};
    std::vector<std::uint64_t> counts;
    const double total = 1e6;
    for (std::size_t i = 0; i < b.bin_count(); ++i) {
        counts.push_back(static_cast<std::uint64_t>(
            std::llround(total * (dist::cauchy_cdf(b.edge(i + 1)) - dist::cauchy_cdf(b.edge(i))))));
    }
    const auto under = static_cast<std::uint64_t>(std::llround(total * dist::cauchy_cdf(-2.0)));
    const auto over = static_cast<std::uint64_t>(std::llround(total * (1 - dist::cauchy_cdf(2.0))));
    const auto h = mc::Histogram::from_counts(b, counts, under, over);
    const auto r = mc::chi2_test(h, dist::cauchy_cdf);
    CHECK(r.cells == b.bin_count());
    CHECK(r.dof == static_cast<int>(b.bin_count()));
    CHECK(r.outside_observed == static_cast<double>(under + over));
    CHECK(r.outside_expected == Approx(total * 2 * dist::cauchy_cdf(-2.0)));
    CHECK(r.statistic < 1e-3);
}

TEST_CASE("chi-square by hand", "[gof][chi2]") {
    // Two bins on [-1, 1) under the Cauchy law, each with probability 1/4;
    // the outside cell (probability 1/2) is reported but not scored.
    const mc::Binning b{-1.0, 1.0, 1.0};
    const auto h = mc::Histogram::from_counts(b, {30, 20}, 10, 40);
    const auto r = mc::chi2_test(h, dist::cauchy_cdf);
    CHECK(r.statistic == Approx((5.0 * 5 + 5.0 * 5) / 25).epsilon(1e-12));
    CHECK(r.dof == 2);
    CHECK(r.cells == 2);
    CHECK(r.outside_observed == 50.0);
    CHECK(r.outside_expected == Approx(50.0).epsilon(1e-12));
    CHECK_THROWS_AS(mc::chi2_test(mc::Histogram(b), dist::cauchy_cdf), std::invalid_argument);
}

TEST_CASE("reference models and scoring", "[gof]") {
    mc::SimulationConfig cfg;
    cfg.n = 400;
    const auto m = mc::reference_model(cfg);
    REQUIRE(m);
    CHECK(m->id() == dist::ModelId::AsymptoticRc);
    CHECK(m->params().at(0) == Approx(dist::correction_a(400).a));
    cfg.statistic = mc::Statistic::SumSqOverN2;
    CHECK(mc::reference_model(cfg)->id() == dist::ModelId::LimitW);
    cfg.statistic = mc::Statistic::SingleProductTriple;
    CHECK_FALSE(mc::reference_model(cfg));

    mc::SimulationConfig w;
    w.n = 30;
    w.replications = 3000;
    w.statistic = mc::Statistic::SumSqOverN2;
    const auto run = mc::run_simulation(w);
    const auto rep = mc::score_run(w, run);
    CHECK(rep.model == "LimitW");
    CHECK(rep.ks.sample_size == 3000);
    CHECK(rep.ks.statistic >= 0.0);
    CHECK(rep.ks.statistic < 0.05);
    CHECK(rep.chi2.dof >= 1);
    CHECK(rep.config.n == 30);

    mc::SimulationConfig triple = w;
    triple.statistic = mc::Statistic::SingleProductTriple;
    CHECK_THROWS_AS(mc::score_run(triple, mc::run_simulation(triple)), std::invalid_argument);
}

TEST_CASE("convergence in n is slow: KS at n = 100 is worse than at n = 400", "[gof][slow]") {
    auto ks_at = [](long long n) {
        mc::SimulationConfig cfg;
        cfg.n = n;
        cfg.replications = 20000;
        cfg.master_seed = 4242;
        return mc::score_run(cfg, mc::run_simulation(cfg)).ks.statistic;
    };
    const double k100 = ks_at(100);
    const double k400 = ks_at(400);
    INFO("KS(100) = " << k100 << ", KS(400) = " << k400);
    CHECK(k100 > k400);
}
