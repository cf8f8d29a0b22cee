#include "cauchycorr/distributions.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "cauchycorr/cfnum.hpp"
#include "cauchycorr/specfun.hpp"

namespace cauchycorr::dist {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPi2 = kPi * kPi;
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_a(double a) {
    if (!(a > 0.0 && a <= 1.0)) {
        throw std::domain_error("AsymptoticRc: correction factor a must lie in (0, 1], got " +
                                std::to_string(a));
    }
}

// sqrt(-i t), principal branch: sqrt|t| e^{-i pi/4 sign t}.
Complex principal_root_minus_it(double t) {
    const double m = std::sqrt(0.5 * std::abs(t));
    return {m, t > 0.0 ? -m : m};
}

// log(1 + w) for small complex w without losing the real part.
Complex log1p_complex(Complex w) {
    const double re = 0.5 * std::log1p(2.0 * w.real() + std::norm(w));
    const double im = std::atan2(w.imag(), 1.0 + w.real());
    return {re, im};
}

// Numerator of the AsymptoticRc density, 2 ln(a + q) - ln rho^2 with
// q = sqrt(a^2 + rho^2), arranged to avoid cancellation at both ends.
// log_rho is ln(rho), supplied by callers that already hold it exactly.
double rc_numerator(double rho, double log_rho, double a, double q) {
    if (rho < a) return 2.0 * (std::log(a + q) - log_rho);
    // a + q - rho = a + a^2 / (q + rho)
    return 2.0 * std::log1p((a + a * a / (q + rho)) / rho);
}

// Density of the a = 1 member at rho > 0; rc_pdf(r, a) = g(r/a)/a.
double rc_unit_density(double rho, double log_rho) {
    const double q = std::hypot(1.0, rho);
    return rc_numerator(rho, log_rho, 1.0, q) / (kPi2 * q);
}

// int_0^x of the a = 1 density, x > 0.
double rc_unit_half_mass(double x) {
    cfnum::QuadratureSpec spec;
    spec.abs_tol = 1e-13;
    spec.rel_tol = 1e-12;
    if (x <= 1.0) {
        // rho = e^{-v} removes the logarithmic endpoint singularity.
        const cfnum::Integrand h = [](double v) {
            const double rho = std::exp(-v);
            if (rho == 0.0) return 0.0;
            return rc_unit_density(rho, -v) * rho;
        };
        return cfnum::integrate(h, -std::log(x), kInf, spec).value;
    }
    const cfnum::Integrand g = [](double rho) { return rc_unit_density(rho, std::log(rho)); };
    return 0.5 - cfnum::integrate(g, x, kInf, spec).value;
}

}  // namespace

double Density::value() const {
    if (singular_) throw std::domain_error("Density: singular point");
    return value_;
}

CorrectionA correction_a(long long n) {
    if (n <= 3) {
        throw std::domain_error("correction_a: correction factor nonpositive or undefined for n = " +
                                std::to_string(n));
    }
    return {n, 1.0 - std::log(kPi) / std::log(static_cast<double>(n))};
}

double cauchy_pdf(double x) { return 1.0 / (kPi * (1.0 + x * x)); }

double cauchy_cdf(double x) { return 0.5 + std::atan(x) / kPi; }

double cauchy_cf(double t) { return std::exp(-std::abs(t)); }

double cauchysq_pdf(double z) {
    if (!(z > 0.0)) return 0.0;
    return 1.0 / (kPi * std::sqrt(z) * (z + 1.0));
}

double cauchysq_cdf(double z) {
    if (!(z > 0.0)) return 0.0;
    return 2.0 / kPi * std::atan(std::sqrt(z));
}

Complex cauchysq_cf(double t) {
    if (t == 0.0) return {1.0, 0.0};
    const Complex root = principal_root_minus_it(t);
    return std::exp(Complex(0.0, -t)) * (1.0 - specfun::erf(root));
}

double w_pdf(double w) {
    if (!(w > 0.0)) return 0.0;
    return std::exp(-1.0 / (kPi * w)) / (kPi * w * std::sqrt(w));
}

double w_cdf(double w) {
    if (!(w > 0.0)) return 0.0;
    return std::erfc(1.0 / std::sqrt(kPi * w));
}

Complex w_cf(double t) {
    if (t == 0.0) return {1.0, 0.0};
    return std::exp(-2.0 * principal_root_minus_it(t) / std::sqrt(kPi));
}

double u_pdf(double u) {
    if (!(u > 0.0)) return 0.0;
    return 2.0 / kPi * std::exp(-u * u / kPi);
}

double u_cdf(double u) {
    if (!(u > 0.0)) return 0.0;
    return std::erf(u / std::sqrt(kPi));
}

Complex u_cf(double t) {
    // e^{-x^2} erfc(-ix) at x = sqrt(pi) t / 2: the Faddeeva function on the
    // real axis. Beyond |x| = 5 the imaginary part (a scaled Dawson
    // integral) follows its asymptotic series.
    const double x = std::sqrt(kPi) * t / 2.0;
    const double gauss = std::exp(-x * x);
    if (std::abs(x) <= 5.0) {
        return {gauss, gauss * specfun::erf(Complex(0.0, x)).imag()};
    }
    const double inv2x2 = 1.0 / (2.0 * x * x);
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 60; ++k) {
        const double next = term * (2.0 * k - 1.0) * inv2x2;
        if (next >= term) break;
        term = next;
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return {gauss, sum / (std::sqrt(kPi) * x)};
}

Density s_pdf(double s) {
    if (s == 0.0) return Density::singular();
    // ln(s^2) / (s^2 - 1) with d = s^2 - 1 formed as (s - 1)(s + 1).
    const double d = (s - 1.0) * (s + 1.0);
    double ratio = 0.0;
    if (std::abs(d) < 1e-6) {
        ratio = 1.0 - d / 2.0 + d * d / 3.0 - d * d * d / 4.0;
    } else {
        ratio = 2.0 * std::log(std::abs(s)) / d;
    }
    return Density::regular(ratio / kPi2);
}

double s_cf(double t) {
    if (t == 0.0) return 1.0;
    const double at = std::abs(t);
    const double c = std::cos(at);
    return 2.0 / kPi * (std::sin(at) * specfun::cos_integral(at) - c * specfun::sin_integral(at)) +
           c;
}

Density rc_pdf(double r, double a) {
    require_a(a);
    if (r == 0.0) return Density::singular();
    const double rho = std::abs(r);
    const double q = std::hypot(a, rho);
    return Density::regular(rc_numerator(rho, std::log(rho), a, q) / (kPi2 * q));
}

double rc_cf(double t, double a) {
    require_a(a);
    return specfun::i0_minus_l0(a * std::abs(t));
}

double rc_cdf(double r, double a) {
    require_a(a);
    if (r == 0.0) return 0.5;
    if (std::isinf(r)) return r > 0.0 ? 1.0 : 0.0;
    const double half_mass = rc_unit_half_mass(std::abs(r) / a);
    return r > 0.0 ? 0.5 + half_mass : 0.5 - half_mass;
}

double stable_limit_gap(double t, long long n) {
    if (n < 1) throw std::domain_error("stable_limit_gap: n must be positive");
    const auto nd = static_cast<double>(n);
    const double scaled = t / (nd * nd);
    const Complex log_cf =
        Complex(0.0, -scaled) + log1p_complex(-specfun::erf(principal_root_minus_it(scaled)));
    return std::abs(std::exp(nd * log_cf) - w_cf(t));
}

std::string_view to_string(ModelId id) {
    switch (id) {
        case ModelId::CauchyStd: return "CauchyStd";
        case ModelId::CauchySquared: return "CauchySquared";
        case ModelId::LimitW: return "LimitW";
        case ModelId::HalfNormalU: return "HalfNormalU";
        case ModelId::ProductS: return "ProductS";
        case ModelId::AsymptoticRc: return "AsymptoticRc";
    }
    return "?";
}

ModelId parse_model_id(std::string_view name) {
    auto lower = [](std::string_view s) {
        std::string out(s);
        std::transform(out.begin(), out.end(), out.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        return out;
    };
    const std::string key = lower(name);
    for (ModelId id : {ModelId::CauchyStd, ModelId::CauchySquared, ModelId::LimitW,
                       ModelId::HalfNormalU, ModelId::ProductS, ModelId::AsymptoticRc}) {
        if (lower(to_string(id)) == key) return id;
    }
    throw std::invalid_argument("unknown model '" + std::string(name) + "'");
}

DistributionModel::DistributionModel(ModelId id)
    : DistributionModel(id, id == ModelId::AsymptoticRc ? std::vector<double>{1.0}
                                                        : std::vector<double>{}) {}

DistributionModel::DistributionModel(ModelId id, std::vector<double> params)
    : id_(id), params_(std::move(params)) {
    if (id_ == ModelId::AsymptoticRc) require_a(params_.at(0));
}

DistributionModel DistributionModel::asymptotic_rc(double a) {
    return DistributionModel(ModelId::AsymptoticRc, {a});
}

DistributionModel DistributionModel::asymptotic_rc_for_n(long long n) {
    return asymptotic_rc(correction_a(n).a);
}

Density DistributionModel::pdf(double x) const {
    switch (id_) {
        case ModelId::CauchyStd: return Density::regular(cauchy_pdf(x));
        case ModelId::CauchySquared: return Density::regular(cauchysq_pdf(x));
        case ModelId::LimitW: return Density::regular(w_pdf(x));
        case ModelId::HalfNormalU: return Density::regular(u_pdf(x));
        case ModelId::ProductS: return s_pdf(x);
        case ModelId::AsymptoticRc: return rc_pdf(x, params_[0]);
    }
    throw std::logic_error("unreachable");
}

double DistributionModel::cdf(double x) const {
    switch (id_) {
        case ModelId::CauchyStd: return cauchy_cdf(x);
        case ModelId::CauchySquared: return cauchysq_cdf(x);
        case ModelId::LimitW: return w_cdf(x);
        case ModelId::HalfNormalU: return u_cdf(x);
        case ModelId::ProductS: break;
        case ModelId::AsymptoticRc: return rc_cdf(x, params_[0]);
    }
    throw std::logic_error("cdf not available for " + std::string(name()));
}

Complex DistributionModel::cf(double t) const {
    switch (id_) {
        case ModelId::CauchyStd: return cauchy_cf(t);
        case ModelId::CauchySquared: return cauchysq_cf(t);
        case ModelId::LimitW: return w_cf(t);
        case ModelId::HalfNormalU: return u_cf(t);
        case ModelId::ProductS: return s_cf(t);
        case ModelId::AsymptoticRc: return rc_cf(t, params_[0]);
    }
    throw std::logic_error("unreachable");
}

bool DistributionModel::symmetric() const noexcept {
    return id_ == ModelId::CauchyStd || id_ == ModelId::ProductS || id_ == ModelId::AsymptoticRc;
}

std::vector<double> DistributionModel::breakpoints() const {
    switch (id_) {
        case ModelId::CauchyStd: return {-kInf, 0.0, kInf};
        case ModelId::CauchySquared:
        case ModelId::LimitW:
        case ModelId::HalfNormalU: return {0.0, 1.0, kInf};
        case ModelId::ProductS: return {-kInf, -1.0, 0.0, 1.0, kInf};
        case ModelId::AsymptoticRc: return {-kInf, 0.0, kInf};
    }
    return {};
}

}  // namespace cauchycorr::dist
