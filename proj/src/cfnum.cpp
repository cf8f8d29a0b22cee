#include "cauchycorr/cfnum.hpp"

#include <algorithm>
#include <array>
#include <cfloat>
#include <cmath>
#include <numbers>
#include <queue>
#include <string>

namespace cauchycorr::cfnum {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = DBL_EPSILON;

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077482977189766, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
    double a = 0.0;
    double b = 0.0;
    double value = 0.0;
    double error = 0.0;
    bool refinable = true;
};

struct ByError {
    bool operator()(const Panel& l, const Panel& r) const { return l.error < r.error; }
};

Panel gauss_kronrod21(const Integrand& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double resg = 0.0;
    double resk = kWgk[10] * fc;
    double resabs = std::abs(resk);
    std::array<double, 10> f1{};
    std::array<double, 10> f2{};
    for (int j = 0; j < 10; ++j) {
        const double dx = half * kXgk[j];
        f1[j] = f(center - dx);
        f2[j] = f(center + dx);
        const double sum = f1[j] + f2[j];
        resk += kWgk[j] * sum;
        resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
        if (j % 2 == 1) resg += kWg[j / 2] * sum;
    }
    const double reskh = 0.5 * resk;
    double resasc = kWgk[10] * std::abs(fc - reskh);
    for (int j = 0; j < 10; ++j) {
        resasc += kWgk[j] * (std::abs(f1[j] - reskh) + std::abs(f2[j] - reskh));
    }
    const double h = std::abs(half);
    resabs *= h;
    resasc *= h;
    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    const double roundoff = 50.0 * kEps * resabs;
    if (resabs > DBL_MIN / (50.0 * kEps)) err = std::max(roundoff, err);

    Panel p;
    p.a = a;
    p.b = b;
    p.value = resk * half;
    p.error = err;
    if (!std::isfinite(p.value) || !std::isfinite(p.error)) {
        throw QuadratureError("integrate: non-finite integrand value on [" + std::to_string(a) +
                                  ", " + std::to_string(b) + "]",
                              QuadratureResult{});
    }
    const double mid = center;
    p.refinable = (mid > a && mid < b) && err > roundoff;
    return p;
}

bool within_tolerance(double err, double value, const QuadratureSpec& spec) {
    return err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(value));
}

// Global adaptive subdivision on a finite interval.
QuadratureResult adapt(const Integrand& f, double a, double b, const QuadratureSpec& spec) {
    std::priority_queue<Panel, std::vector<Panel>, ByError> open;
    double total = 0.0;
    double total_err = 0.0;
    // Panels that cannot be split further.
    double settled_value = 0.0;
    double settled_err = 0.0;

    Panel first = gauss_kronrod21(f, a, b);
    total = first.value;
    total_err = first.error;
    if (first.refinable) {
        open.push(first);
    } else {
        settled_value += first.value;
        settled_err += first.error;
    }
    int panels = 1;

    while (!within_tolerance(total_err, total, spec)) {
        if (open.empty()) {
            throw QuadratureError("integrate: roundoff prevents reaching the requested tolerance",
                                  {total, total_err, panels});
        }
        if (panels >= spec.max_subdivisions) {
            throw QuadratureError("integrate: no convergence after " +
                                      std::to_string(spec.max_subdivisions) + " subdivisions",
                                  {total, total_err, panels});
        }
        const Panel worst = open.top();
        open.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const Panel left = gauss_kronrod21(f, worst.a, mid);
        const Panel right = gauss_kronrod21(f, mid, worst.b);
        ++panels;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        for (const Panel& p : {left, right}) {
            if (p.refinable) {
                open.push(p);
            } else {
                settled_value += p.value;
                settled_err += p.error;
            }
        }
        // The running sums drift after many updates; rebuild them now and then.
        if (panels % 64 == 0) {
            auto copy = open;
            total = settled_value;
            total_err = settled_err;
            while (!copy.empty()) {
                total += copy.top().value;
                total_err += copy.top().error;
                copy.pop();
            }
        }
    }
    return {total, total_err, panels};
}

}  // namespace

void QuadratureSpec::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
        throw std::invalid_argument("QuadratureSpec: tolerances must be positive");
    }
    if (max_subdivisions < 1) {
        throw std::invalid_argument("QuadratureSpec: max_subdivisions must be >= 1");
    }
    if (oscillatory_period_hint && !(*oscillatory_period_hint > 0.0)) {
        throw std::invalid_argument("QuadratureSpec: oscillatory_period_hint must be positive");
    }
}

QuadratureResult integrate(const Integrand& f, double lo, double hi, const QuadratureSpec& spec) {
    spec.validate();
    if (std::isnan(lo) || std::isnan(hi)) {
        throw std::invalid_argument("integrate: NaN limit");
    }
    if (lo == hi) return {};
    if (lo > hi) {
        QuadratureResult r = integrate(f, hi, lo, spec);
        r.value = -r.value;
        return r;
    }
    const bool lo_inf = std::isinf(lo);
    const bool hi_inf = std::isinf(hi);
    if (!lo_inf && !hi_inf) return adapt(f, lo, hi, spec);

    Integrand mapped;
    if (lo_inf && hi_inf) {
        mapped = [&f](double u) {
            const double x = (1.0 - u) / u;
            return (f(x) + f(-x)) / (u * u);
        };
    } else if (hi_inf) {
        mapped = [&f, lo](double u) { return f(lo + (1.0 - u) / u) / (u * u); };
    } else {
        mapped = [&f, hi](double u) { return f(hi - (1.0 - u) / u) / (u * u); };
    }
    return adapt(mapped, 0.0, 1.0, spec);
}

QuadratureResult integrate(const Integrand& f, std::span<const double> breakpoints,
                           const QuadratureSpec& spec) {
    if (breakpoints.size() < 2) {
        throw std::invalid_argument("integrate: need at least two breakpoints");
    }
    for (std::size_t i = 1; i < breakpoints.size(); ++i) {
        if (!(breakpoints[i] > breakpoints[i - 1])) {
            throw std::invalid_argument("integrate: breakpoints must be strictly increasing");
        }
    }
    const auto pieces = static_cast<double>(breakpoints.size() - 1);
    QuadratureSpec piece_spec = spec;
    piece_spec.abs_tol = spec.abs_tol / pieces;
    QuadratureResult total;
    for (std::size_t i = 1; i < breakpoints.size(); ++i) {
        try {
            const QuadratureResult r = integrate(f, breakpoints[i - 1], breakpoints[i], piece_spec);
            total.value += r.value;
            total.error_estimate += r.error_estimate;
            total.subdivisions += r.subdivisions;
        } catch (const QuadratureError& e) {
            QuadratureResult best = total;
            best.value += e.best().value;
            best.error_estimate += e.best().error_estimate;
            best.subdivisions += e.best().subdivisions;
            throw QuadratureError(e.what(), best);
        }
    }
    return total;
}

double EpsilonExtrapolator::add(double partial_sum) {
    constexpr double kSmall = DBL_MIN * 10.0;
    constexpr double kBig = DBL_MAX;
    table_.push_back(partial_sum);
    const std::size_t n = table_.size() - 1;
    double temp2 = 0.0;
    for (std::size_t j = n; j > 0; --j) {
        const double temp1 = temp2;
        temp2 = table_[j - 1];
        const double diff = table_[j] - temp2;
        table_[j - 1] = std::abs(diff) <= kSmall ? kBig : temp1 + 1.0 / diff;
    }
    ++count_;
    double value = (count_ & 1U) ? table_[0] : table_[1];
    if (std::abs(value) > 0.01 * kBig) value = last_;
    error_ = count_ > 1 ? std::abs(value - last_) : std::abs(value);
    last_ = value;
    return value;
}

InversionResult invert_symmetric_cf(const Integrand& cf, double x, const QuadratureSpec& spec) {
    spec.validate();
    constexpr double kInvPi = 1.0 / kPi;
    if (x == 0.0) {
        const QuadratureResult r = integrate(cf, 0.0, HUGE_VAL, spec);
        return {r.value * kInvPi, r.error_estimate * kInvPi, 1};
    }
    const double ax = std::abs(x);
    const double spacing = spec.oscillatory_period_hint.value_or(kPi / ax);
    const Integrand g = [&cf, ax](double t) { return std::cos(t * ax) * cf(t); };

    QuadratureSpec seg_spec = spec;
    seg_spec.abs_tol = 0.01 * spec.abs_tol;
    seg_spec.rel_tol = 0.01 * spec.rel_tol;

    constexpr int kMinSegments = 6;
    const int max_segments = std::max(kMinSegments + 1, spec.max_subdivisions);
    EpsilonExtrapolator extrapolator;
    double partial = 0.0;
    double lo = 0.0;
    double hi = 0.5 * spacing;
    int settled = 0;
    double previous = 0.0;
    for (int k = 0; k < max_segments; ++k) {
        const QuadratureResult seg = integrate(g, lo, hi, seg_spec);
        partial += seg.value;
        const double estimate = extrapolator.add(partial);
        const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(estimate));
        const double change = std::abs(estimate - previous);
        previous = estimate;
        // Either the tail is already negligible or the extrapolated limit
        // has stopped moving for three consecutive segments.
        if (k >= kMinSegments) {
            if (std::abs(seg.value) < 0.1 * tol) {
                return {partial * kInvPi, std::abs(seg.value) * kInvPi, k + 1};
            }
            settled = change <= tol ? settled + 1 : 0;
            if (settled >= 3) {
                return {estimate * kInvPi, change * kInvPi, k + 1};
            }
        }
        lo = hi;
        hi += spacing;
    }
    throw QuadratureError("invert_symmetric_cf: extrapolation did not settle",
                          {previous * kInvPi, extrapolator.error_estimate() * kInvPi,
                           max_segments});
}

double theta_integrand_cf_minus_one(double t, double theta) {
    const double p = std::abs(t) * std::sin(2.0 * theta);
    if (!(p > 0.0)) return 0.0;
    const double h = 0.5 * kPi * p;
    return (p * std::log(h) - h * h) / (1.0 + h * h);
}

double theta_integrand_cf(double t, double theta) {
    return 1.0 + theta_integrand_cf_minus_one(t, theta);
}

double product_cf_limit_deviation(double t, long long n, double theta) {
    if (n < 8) throw std::domain_error("product_cf_limit_deviation: n must be >= 8");
    if (t == 0.0) throw std::domain_error("product_cf_limit_deviation: t must be nonzero");
    const auto nd = static_cast<double>(n);
    const double scaled_t = t / (nd * std::log(nd));
    const double powered = std::exp(nd * std::log1p(theta_integrand_cf_minus_one(scaled_t, theta)));
    return std::abs(powered - std::exp(-std::abs(t) * std::sin(2.0 * theta)));
}

QuadratureResult theta_exponential_integral(double z, const QuadratureSpec& spec) {
    // Symmetric about pi/4; for large z the mass sits within ~1/z of the
    // endpoint, so cut where z sin 2theta = 1, 8, 32.
    const Integrand f = [z](double th) { return std::exp(-z * std::sin(2.0 * th)); };
    std::vector<double> pts{0.0};
    for (double k : {1.0, 8.0, 32.0}) {
        if (k < 0.5 * z) pts.push_back(0.5 * std::asin(k / z));
    }
    pts.push_back(0.25 * kPi);
    QuadratureResult r = integrate(f, pts, spec);
    r.value *= 4.0 / kPi;
    r.error_estimate *= 4.0 / kPi;
    return r;
}

}  // namespace cauchycorr::cfnum
