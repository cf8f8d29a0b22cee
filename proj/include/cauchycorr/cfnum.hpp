// Numerical integration for the CF/PDF cross-checks: adaptive Gauss-Kronrod
// quadrature over finite and infinite ranges, cosine inversion of even real
// characteristic functions, and the angular integrand of the product CF
// together with its large-n limit check.

#pragma once

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cauchycorr::cfnum {

struct QuadratureSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_subdivisions = 2000;
    /// Half-period of the oscillation, when the caller knows it. Used by
    /// the inversion routine to override its default segmentation.
    std::optional<double> oscillatory_period_hint;

    /// Throws std::invalid_argument when tolerances are not positive or
    /// max_subdivisions < 1.
    void validate() const;
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int subdivisions = 0;
};

/// Raised when the requested tolerance cannot be met. Carries the best
/// estimate obtained before giving up.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, QuadratureResult best)
        : std::runtime_error(what), best_(best) {}
    const QuadratureResult& best() const noexcept { return best_; }

private:
    QuadratureResult best_;
};

using Integrand = std::function<double(double)>;

/// Adaptive 21-point Gauss-Kronrod quadrature of f over [lo, hi].
///
/// Either endpoint may be infinite; half-infinite ranges are mapped with
/// x = lo + (1 - u)/u and the doubly infinite range is folded onto
/// [0, inf). The integrand is never evaluated at an endpoint, so
/// integrable endpoint singularities are allowed. lo > hi yields the
/// negated integral.
QuadratureResult integrate(const Integrand& f, double lo, double hi,
                           const QuadratureSpec& spec = {});

/// Integrates over [breakpoints.front(), breakpoints.back()], splitting at
/// every interior breakpoint (singular points, kinks). Breakpoints must be
/// strictly increasing; the outer ones may be infinite.
QuadratureResult integrate(const Integrand& f, std::span<const double> breakpoints,
                           const QuadratureSpec& spec = {});

struct InversionResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int segments_used = 0;
};

/// Density of a symmetric law from its real, even CF:
/// f(x) = (1/pi) int_0^inf cos(t x) cf(t) dt.
///
/// For x != 0 the range is cut at the zeros of cos(t x) and the resulting
/// alternating series of half-period integrals is accelerated with Wynn's
/// epsilon algorithm. x = 0 falls back to plain improper quadrature.
InversionResult invert_symmetric_cf(const Integrand& cf, double x,
                                    const QuadratureSpec& spec = {});

/// Wynn epsilon extrapolation of a sequence of partial sums.
class EpsilonExtrapolator {
public:
    /// Adds the next partial sum and returns the current extrapolated limit.
    double add(double partial_sum);
    /// Difference between the last two extrapolated limits.
    double error_estimate() const noexcept { return error_; }
    std::size_t size() const noexcept { return count_; }

private:
    std::vector<double> table_;
    std::size_t count_ = 0;
    double last_ = 0.0;
    double error_ = 0.0;
};

/// Inner integrand of the angular representation of the CF of
/// X_i Y_i U_1 U_2:
///   [1 + |t| s ln(pi |t| s / 2)] / [1 + (pi t s / 2)^2],  s = sin(2 theta).
/// Tends to 1 as t -> 0 or as theta approaches either end of (0, pi/2).
double theta_integrand_cf(double t, double theta);

/// theta_integrand_cf(t, theta) - 1, computed without cancellation.
double theta_integrand_cf_minus_one(double t, double theta);

/// |theta_integrand_cf(t / (n ln n), theta)^n - exp(-|t| sin 2 theta)|: how far
/// the n-fold product CF is from its limit. Shrinks like 1/ln n.
/// Requires n >= 8 and t != 0.
double product_cf_limit_deviation(double t, long long n, double theta);

/// (2/pi) int_0^{pi/2} exp(-z sin 2 theta) d theta by adaptive quadrature.
QuadratureResult theta_exponential_integral(double z, const QuadratureSpec& spec = {});

}  // namespace cauchycorr::cfnum
