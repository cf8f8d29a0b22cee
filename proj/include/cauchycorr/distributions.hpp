// Closed-form densities, distribution functions and characteristic
// functions for the chain of laws behind the centralized correlation
// coefficient of Cauchy samples:
//
//   CauchyStd      X, Y ~ Cauchy(0, 1)
//   CauchySquared  Z = X^2
//   LimitW         W = lim sum X_i^2 / n^2
//   HalfNormalU    U = 1 / sqrt(W)
//   ProductS       S = X Y
//   AsymptoticRc   limit law of n r_c / ln n, with correction factor a

#pragma once

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cauchycorr::dist {

using Complex = std::complex<double>;

/// Result of a density evaluation. Non-removable singular points (s = 0 for
/// ProductS, r = 0 for AsymptoticRc) are reported as such instead of +inf.
class Density {
public:
    static Density regular(double value) { return Density(value, false); }
    static Density singular() { return Density(0.0, true); }

    bool is_singular() const noexcept { return singular_; }
    /// Throws std::domain_error at a singular point.
    double value() const;
    /// value() or the fallback at a singular point.
    double value_or(double fallback) const noexcept { return singular_ ? fallback : value_; }

private:
    Density(double v, bool s) : value_(v), singular_(s) {}
    double value_;
    bool singular_;
};

/// a = 1 - ln(pi) / ln(n), the partial recovery of the O(1/ln n) error.
struct CorrectionA {
    long long n = 0;
    double a = 1.0;
};

/// Throws std::domain_error for n <= 3 (a would be nonpositive or undefined).
CorrectionA correction_a(long long n);

double cauchy_pdf(double x);
double cauchy_cdf(double x);
double cauchy_cf(double t);

double cauchysq_pdf(double z);
double cauchysq_cdf(double z);
/// e^{-it} [1 - erf(sqrt(-it))] with the principal root.
Complex cauchysq_cf(double t);

double w_pdf(double w);
double w_cdf(double w);
/// exp(-2 sqrt(-it/pi)) with the principal root.
Complex w_cf(double t);

/// (2/pi) exp(-u^2/pi) on u > 0.
double u_pdf(double u);
double u_cdf(double u);
/// CF of the half-normal law above.
Complex u_cf(double t);

Density s_pdf(double s);
double s_cf(double t);

/// Throws std::domain_error unless 0 < a <= 1.
Density rc_pdf(double r, double a);
double rc_cf(double t, double a);
/// Distribution function of the AsymptoticRc law; rc_cdf(0, a) = 1/2.
double rc_cdf(double r, double a);

/// |cauchysq_cf(t/n^2)^n - w_cf(t)|: distance of the n-fold convolution of
/// the squared-Cauchy CF, rescaled by n^2, from its stable limit.
double stable_limit_gap(double t, long long n);

enum class ModelId { CauchyStd, CauchySquared, LimitW, HalfNormalU, ProductS, AsymptoticRc };

std::string_view to_string(ModelId id);
/// Case-insensitive; throws std::invalid_argument for unknown names.
ModelId parse_model_id(std::string_view name);

/// One of the six laws behind a uniform interface. Immutable.
class DistributionModel {
public:
    explicit DistributionModel(ModelId id);
    /// AsymptoticRc with an explicit correction factor a in (0, 1].
    static DistributionModel asymptotic_rc(double a);
    /// AsymptoticRc with a = correction_a(n).
    static DistributionModel asymptotic_rc_for_n(long long n);

    ModelId id() const noexcept { return id_; }
    std::string_view name() const noexcept { return to_string(id_); }
    const std::vector<double>& params() const noexcept { return params_; }

    Density pdf(double x) const;
    bool has_cdf() const noexcept { return id_ != ModelId::ProductS; }
    /// Throws std::logic_error when !has_cdf().
    double cdf(double x) const;
    Complex cf(double t) const;
    bool symmetric() const noexcept;

    /// Support endpoints together with the interior points where the pdf
    /// is singular or not smooth; suitable as quadrature breakpoints.
    std::vector<double> breakpoints() const;

private:
    DistributionModel(ModelId id, std::vector<double> params);
    ModelId id_;
    std::vector<double> params_;
};

}  // namespace cauchycorr::dist
