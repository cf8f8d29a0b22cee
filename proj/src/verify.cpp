#include "cauchycorr/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

#include "cauchycorr/cfnum.hpp"
#include "cauchycorr/distributions.hpp"
#include "cauchycorr/gof.hpp"
#include "cauchycorr/io.hpp"
#include "cauchycorr/specfun.hpp"

namespace cauchycorr::verify {

namespace {

using Clock = std::chrono::steady_clock;
using nlohmann::json;
constexpr double kPi = std::numbers::pi;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

CheckResult make(std::string id, std::string title, double threshold, std::string relation,
                 double max_seconds) {
    CheckResult r;
    r.id = std::move(id);
    r.title = std::move(title);
    r.threshold = threshold;
    r.relation = std::move(relation);
    r.max_seconds = max_seconds;
    return r;
}

void settle(CheckResult& r, double measured, Clock::time_point start) {
    r.measured = measured;
    r.value_ok = r.relation == "<" ? measured < r.threshold : measured <= r.threshold;
    r.seconds = seconds_since(start);
}

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(4);
    s << v;
    return s.str();
}

unsigned parallel_workers(const Options& opt) { return opt.workers == 0 ? 4u : opt.workers; }

std::string histogram_csv(const mc::SimulationConfig& cfg, unsigned workers) {
    mc::RunOptions ro;
    ro.workers = workers;
    const auto run = mc::run_simulation(cfg, ro);
    std::ostringstream out;
    io::write_histogram_csv(out, run.histogram);
    return out.str();
}

}  // namespace

CheckResult struve_identity() {
    auto r = make("struve_identity", "angular integral vs I0 - L0", 1e-10, "<=", 1.0);
    const auto start = Clock::now();
    double worst = 0.0;
    json per_z = json::array();
    for (double z : {0.0, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 25.0, 50.0}) {
        const double quad = cfnum::theta_exponential_integral(z).value;
        const double err = std::abs(quad - specfun::i0_minus_l0(z));
        worst = std::max(worst, err);
        per_z.push_back({{"z", z}, {"abs_error", err}});
    }
    r.details["points"] = per_z;
    settle(r, worst, start);
    return r;
}

CheckResult normalization_of(const std::string& name, const std::function<double(double)>& pdf,
                             std::span<const double> breakpoints, double expected) {
    auto r = make("normalization:" + name, "integral of " + name + " pdf", 1e-8, "<=", 0.0);
    const auto start = Clock::now();
    cfnum::QuadratureSpec spec;
    spec.abs_tol = 1e-12;
    spec.rel_tol = 1e-12;
    double integral = 0.0;
    try {
        integral = cfnum::integrate(pdf, breakpoints, spec).value;
    } catch (const cfnum::QuadratureError& e) {
        integral = e.best().value;
        r.details["quadrature_warning"] = e.what();
    }
    r.details["integral"] = integral;
    r.details["expected"] = expected;
    settle(r, std::abs(integral - expected), start);
    return r;
}

CheckResult normalization() {
    auto r = make("normalization", "pdf integrals (six models + half-normal with 1/pi prefactor)", 1e-8,
                  "<=", 5.0);
    const auto start = Clock::now();
    double worst = 0.0;
    json parts = json::object();
    using dist::ModelId;
    for (ModelId id : {ModelId::CauchyStd, ModelId::CauchySquared, ModelId::LimitW,
                       ModelId::HalfNormalU, ModelId::ProductS, ModelId::AsymptoticRc}) {
        const dist::DistributionModel m =
            id == ModelId::AsymptoticRc ? dist::DistributionModel::asymptotic_rc_for_n(400)
                                        : dist::DistributionModel(id);
        const auto bp = m.breakpoints();
        const auto c = normalization_of(std::string(m.name()),
                                        [&m](double x) { return m.pdf(x).value_or(0.0); }, bp, 1.0);
        parts[std::string(m.name())] = c.details["integral"];
        worst = std::max(worst, c.measured);
    }
    // The variant with prefactor 1/pi must integrate to exactly one half.
    const double half_line[] = {0.0, INFINITY};
    const auto inv_pi_variant = normalization_of(
        "half_normal_inv_pi", [](double u) { return std::exp(-u * u / kPi) / kPi; }, half_line,
        0.5);
    parts["half_normal_inv_pi"] = inv_pi_variant.details["integral"];
    worst = std::max(worst, inv_pi_variant.measured);
    r.details["integrals"] = parts;
    settle(r, worst, start);
    return r;
}

CheckResult inversion_round_trips() {
    auto r = make("inversion", "cosine inversion of CFs vs closed-form pdfs", 1e-6, "<=", 30.0);
    const auto start = Clock::now();
    double worst = 0.0;
    json pts = json::array();
    for (double s : {0.25, 0.5, 2.0, 5.0}) {
        const double inv = cfnum::invert_symmetric_cf(dist::s_cf, s).value;
        const double err = std::abs(inv - dist::s_pdf(s).value());
        worst = std::max(worst, err);
        pts.push_back({{"model", "ProductS"}, {"x", s}, {"abs_error", err}});
    }
    for (double x : {0.5, 1.0, 2.0, 4.0}) {
        const double inv =
            cfnum::invert_symmetric_cf([](double t) { return dist::rc_cf(t, 1.0); }, x).value;
        const double err = std::abs(inv - dist::rc_pdf(x, 1.0).value());
        worst = std::max(worst, err);
        pts.push_back({{"model", "AsymptoticRc"}, {"x", x}, {"abs_error", err}});
    }
    r.details["points"] = pts;
    settle(r, worst, start);
    return r;
}

CheckResult stable_limit() {
    auto r = make("stable_limit", "n-fold squared-Cauchy CF vs W limit", 1e-3, "<=", 0.0);
    const auto start = Clock::now();
    bool monotone = true;
    double worst_final = 0.0;
    json pts = json::array();
    for (double t : {0.5, 1.0, 2.0}) {
        double prev = INFINITY;
        for (long long n : {100LL, 1000LL, 10000LL}) {
            const double gap = dist::stable_limit_gap(t, n);
            monotone = monotone && gap < prev;
            prev = gap;
            pts.push_back({{"t", t}, {"n", n}, {"gap", gap}});
        }
        worst_final = std::max(worst_final, prev);
    }
    r.details["points"] = pts;
    r.details["monotone"] = monotone;
    // A non-monotone sequence fails regardless of the final gap.
    settle(r, monotone ? worst_final : INFINITY, start);
    return r;
}

CheckResult product_cf_rate() {
    auto r = make("product_cf_rate", "spread of deviation * ln n, n = 1e2..1e5", 3.0, "<=", 0.0);
    const auto start = Clock::now();
    double lo = INFINITY, hi = 0.0;
    json pts = json::array();
    for (long long n : {100LL, 1000LL, 10000LL, 100000LL}) {
        const double scaled =
            cfnum::product_cf_limit_deviation(1.0, n, kPi / 4) * std::log(static_cast<double>(n));
        lo = std::min(lo, scaled);
        hi = std::max(hi, scaled);
        pts.push_back({{"n", n}, {"deviation_times_ln_n", scaled}});
    }
    r.details["points"] = pts;
    settle(r, lo > 0.0 ? hi / lo : INFINITY, start);
    return r;
}

CheckResult tail_law() {
    auto r = make("tail_law", "r^2 rc_pdf(r) at r = 1e4 relative to 2/pi^2", 0.01, "<=", 0.0);
    const auto start = Clock::now();
    const double x = 1e4;
    const double ratio = x * x * dist::rc_pdf(x, 1.0).value() / (2.0 / (kPi * kPi));
    r.details["ratio"] = ratio;
    settle(r, std::abs(ratio - 1.0), start);
    return r;
}

CheckResult w_limit_monte_carlo(const Options& opt) {
    auto r = make("mc_w_limit", "KS of sum X^2/n^2 (n = 30) vs W", 0.03, "<=", 20.0);
    const auto start = Clock::now();
    mc::SimulationConfig cfg;
    cfg.n = 30;
    cfg.replications = 20000;
    cfg.master_seed = opt.seed;
    cfg.statistic = mc::Statistic::SumSqOverN2;
    mc::RunOptions ro;
    ro.workers = opt.workers;
    const auto run = mc::run_simulation(cfg, ro);
    const auto report = mc::score_run(cfg, run);
    r.details = io::to_json(report);
    settle(r, report.ks.statistic, start);
    return r;
}

mc::SimulationConfig main_result_config(std::uint64_t seed) {
    mc::SimulationConfig cfg;
    cfg.n = 400;
    cfg.replications = 100000;
    cfg.master_seed = seed;
    cfg.statistic = mc::Statistic::ScaledRc;
    cfg.binning = mc::Binning{-4.0, 4.0, 0.25};
    return cfg;
}

std::vector<CheckResult> main_result_monte_carlo(const Options& opt) {
    auto ks = make("mc_main_ks", "KS of n r_c / ln n (n = 400) vs AsymptoticRc", 0.02, "<=", 180.0);
    auto chi2 = make("mc_main_chi2", "chi-square/dof of the n = 400 histogram", 2.0, "<", 180.0);
    const auto start = Clock::now();
    const auto cfg = main_result_config(opt.seed);
    mc::RunOptions ro;
    ro.workers = opt.workers;
    const auto run = mc::run_simulation(cfg, ro);
    const auto report = mc::score_run(cfg, run);
    ks.details = io::to_json(report);
    chi2.details = ks.details;
    settle(ks, report.ks.statistic, start);
    settle(chi2, report.chi2.statistic / report.chi2.dof, start);
    return {ks, chi2};
}

CheckResult independence(const Options& opt) {
    auto r = make("independence", "max |Spearman| among |T|, U1, U2 (n = 400)", 0.05, "<=", 0.0);
    const auto start = Clock::now();
    mc::SimulationConfig cfg;
    cfg.n = 400;
    cfg.replications = 10000;
    cfg.master_seed = opt.seed;
    mc::RunOptions ro;
    ro.workers = opt.workers;
    const auto rep = mc::independence_diagnostic(cfg, ro);
    r.details = io::to_json(rep);
    settle(r,
           std::max({std::abs(rep.rho_abs_t_u1), std::abs(rep.rho_abs_t_u2),
                     std::abs(rep.rho_u1_u2)}),
           start);
    return r;
}

CheckResult determinism(const Options& opt) {
    auto r = make("determinism", "histogram CSV bytes across repeats and worker counts", 0.0,
                  "<=", 0.0);
    const auto start = Clock::now();
    const auto cfg = main_result_config(opt.seed);
    const unsigned many = std::max(2u, parallel_workers(opt));
    const std::string reference = histogram_csv(cfg, 1);
    const std::vector<std::pair<std::string, unsigned>> runs{
        {"workers=1 (repeat)", 1u}, {"workers=" + std::to_string(many), many},
        {"workers=" + std::to_string(many) + " (repeat)", many}};
    int mismatches = 0;
    json per = json::array();
    for (const auto& [label, w] : runs) {
        const bool same = histogram_csv(cfg, w) == reference;
        if (!same) ++mismatches;
        per.push_back({{"run", label}, {"identical", same}});
    }
    r.details["runs"] = per;
    r.details["csv_bytes"] = reference.size();
    settle(r, mismatches, start);
    return r;
}

std::vector<CheckResult> run_all(const Options& opt) {
    std::vector<CheckResult> out{struve_identity(), normalization(), inversion_round_trips(),
                                 stable_limit(),    product_cf_rate(), tail_law()};
    if (opt.level == Level::Full) {
        out.push_back(w_limit_monte_carlo(opt));
        for (auto& c : main_result_monte_carlo(opt)) out.push_back(std::move(c));
        out.push_back(independence(opt));
        out.push_back(determinism(opt));
    }
    return out;
}

json to_json(const CheckResult& r) {
    return {{"id", r.id},
            {"title", r.title},
            {"measured", r.measured},
            {"threshold", r.threshold},
            {"relation", r.relation},
            {"value_ok", r.value_ok},
            {"seconds", r.seconds},
            {"max_seconds", r.max_seconds},
            {"passed", r.passed()},
            {"details", r.details}};
}

std::string describe(const CheckResult& r) {
    std::ostringstream s;
    s << (r.passed() ? "PASS " : "FAIL ") << r.id << ": " << r.title << " | measured "
      << fmt(r.measured) << ' ' << r.relation << ' ' << fmt(r.threshold) << " | "
      << fmt(r.seconds) << " s";
    if (r.max_seconds > 0.0) s << " (budget " << fmt(r.max_seconds) << " s)";
    if (r.value_ok && !r.passed()) s << " [over time budget]";
    return s.str();
}

}  // namespace cauchycorr::verify
