#include "cauchycorr/specfun.hpp"

#include <cfloat>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace cauchycorr::specfun {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = DBL_EPSILON;

#if defined(__SIZEOF_FLOAT128__)
using Wide = __float128;
#else
using Wide = long double;
#endif

double saturate(double v) {
    if (std::isinf(v)) return std::copysign(DBL_MAX, v);
    return v;
}

void require_nonnegative(double x, const char* what) {
    if (!(x >= 0.0)) {
        throw std::domain_error(std::string(what) + ": argument must be >= 0, got " +
                                std::to_string(x));
    }
}

Complex erf_maclaurin(Complex z) {
    // erf(z) = 2/sqrt(pi) * sum_k (-1)^k z^(2k+1) / (k! (2k+1))
    const Complex minus_z2 = -z * z;
    Complex power = z;  // z * (-z^2)^k / k!
    Complex sum = z;
    for (int k = 1; k < 200; ++k) {
        power *= minus_z2 / static_cast<double>(k);
        const Complex term = power / static_cast<double>(2 * k + 1);
        sum += term;
        if (std::abs(term) <= 0.25 * kEps * std::abs(sum)) break;
    }
    return sum * (2.0 / std::sqrt(kPi));
}

// Abramowitz & Stegun 7.1.29, valid for x >= 0. The exponentials of the
// k-sum are combined before evaluation and scaled by exp(y^2 - x^2) so
// that nothing overflows before the final multiplication.
Complex erf_as_series(double x, double y) {
    const double x2 = x * x;
    const double two_xy = 2.0 * x * y;
    const double c2xy = std::cos(two_xy);
    const double s2xy = std::sin(two_xy);

    double re = std::erf(x);
    double im = 0.0;
    if (x == 0.0) {
        im += y / kPi;
    } else {
        const double ex2 = std::exp(-x2);
        const double sxy = std::sin(x * y);
        re += ex2 * sxy * sxy / (kPi * x);
        im += ex2 * s2xy / (2.0 * kPi * x);
    }

    const double shift = std::max(0.0, y * y - x2);
    const double ay = std::abs(y);
    const int kmax = static_cast<int>(std::ceil(2.0 * ay + 14.0));
    double sum_re = 0.0;
    double sum_im = 0.0;
    for (int k = 1; k <= kmax; ++k) {
        const double kd = k;
        const double base = -x2 - 0.25 * kd * kd - shift;
        const double ep = std::exp(base + kd * y);
        const double em = std::exp(base - kd * y);
        const double e0 = std::exp(base);
        const double ch = 0.5 * (ep + em);
        const double sh = 0.5 * (ep - em);
        const double denom = kd * kd + 4.0 * x2;
        sum_re += (2.0 * x * e0 - 2.0 * x * ch * c2xy + kd * sh * s2xy) / denom;
        sum_im += (2.0 * x * ch * s2xy + kd * sh * c2xy) / denom;
    }
    auto scaled = [shift](double c) {
        if (c == 0.0) return 0.0;
        return c * std::exp(shift);
    };
    re += (2.0 / kPi) * scaled(sum_re);
    im += (2.0 / kPi) * scaled(sum_im);
    return {saturate(re), saturate(im)};
}

// Lentz evaluation of the continued fraction for E1(ix); NR "cisi" layout.
void sici_continued_fraction(double x, double& si, double& ci) {
    constexpr double kTiny = 1e-300;
    Complex b(1.0, x);
    Complex c(1.0 / kTiny, 0.0);
    Complex d = 1.0 / b;
    Complex h = d;
    for (int i = 2; i < 10000; ++i) {
        const double a = -static_cast<double>(i - 1) * static_cast<double>(i - 1);
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        const Complex del = c * d;
        h *= del;
        if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < kEps) break;
    }
    h *= Complex(std::cos(x), -std::sin(x));
    ci = -h.real();
    si = 0.5 * kPi + h.imag();
}

}  // namespace

Complex erf(Complex z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw std::domain_error("erf: non-finite argument");
    }
    if (z.real() < 0.0) return -erf(-z);
    if (std::abs(z) <= kErfSeriesRadius) return erf_maclaurin(z);
    return erf_as_series(z.real(), z.imag());
}

double sin_integral(double x) {
    if (x < 0.0) return -sin_integral(-x);
    if (x == 0.0) return 0.0;
    if (x <= kSiCiSwitch) {
        const double x2 = x * x;
        double power = x;  // (-1)^k x^(2k+1) / (2k+1)!
        double sum = x;
        for (int k = 1; k < 100; ++k) {
            power *= -x2 / static_cast<double>((2 * k) * (2 * k + 1));
            const double term = power / static_cast<double>(2 * k + 1);
            sum += term;
            if (std::abs(term) < 0.25 * kEps * std::abs(sum)) break;
        }
        return sum;
    }
    double si = 0.0;
    double ci = 0.0;
    sici_continued_fraction(x, si, ci);
    return si;
}

double cos_integral(double x) {
    if (!(x > 0.0)) {
        throw std::domain_error("cos_integral: argument must be > 0, got " + std::to_string(x));
    }
    if (x <= kSiCiSwitch) {
        const double x2 = x * x;
        double power = 1.0;  // (-1)^k x^(2k) / (2k)!
        double sum = 0.0;
        for (int k = 1; k < 100; ++k) {
            power *= -x2 / static_cast<double>((2 * k - 1) * (2 * k));
            const double term = power / static_cast<double>(2 * k);
            sum += term;
            if (std::abs(term) < 0.25 * kEps * std::abs(sum)) break;
        }
        return std::numbers::egamma + std::log(x) + sum;
    }
    double si = 0.0;
    double ci = 0.0;
    sici_continued_fraction(x, si, ci);
    return ci;
}

double bessel_i0(double x) {
    require_nonnegative(x, "bessel_i0");
    const double q = 0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 5000; ++k) {
        term *= q / (static_cast<double>(k) * k);
        sum += term;
        if (term < 0.5 * kEps * sum || std::isinf(sum)) break;
    }
    return saturate(sum);
}

double struve_l0(double x) {
    require_nonnegative(x, "struve_l0");
    if (x == 0.0) return 0.0;
    const double q = 0.25 * x * x;
    double term = 2.0 * x / kPi;  // (x/2) / Gamma(3/2)^2
    double sum = term;
    for (int k = 1; k < 5000; ++k) {
        const double g = k + 0.5;
        term *= q / (g * g);
        sum += term;
        if (term < 0.5 * kEps * sum || std::isinf(sum)) break;
    }
    return saturate(sum);
}

double i0_minus_l0(double x) {
    require_nonnegative(x, "i0_minus_l0");
    if (x <= kI0MinusL0Switch) {
        // sum_m (-1)^m (x/2)^m / Gamma(m/2 + 1)^2, even and odd m advanced
        // together; the alternating cancellation costs about e^x, which the
        // extended mantissa absorbs up to the switch point.
        // pi to ~32 digits as the sum of two doubles.
        const Wide pi = Wide(3.141592653589793) + Wide(1.2246467991473532e-16);
        const Wide half = Wide(x) / 2;
        const Wide q = half * half;
        Wide even = 1;                       // (x/2)^(2k) / (k!)^2
        Wide odd = Wide(2) * Wide(x) / pi;  // (x/2)^(2k+1) / Gamma(k+3/2)^2
        Wide sum = even - odd;
        const Wide tiny = Wide(1e-30);
        for (int k = 1; k < 1000; ++k) {
            const Wide kk = k;
            const Wide g = kk + Wide(0.5);
            even *= q / (kk * kk);
            odd *= q / (g * g);
            sum += even - odd;
            if (kk > half && even < tiny * sum && odd < tiny * sum) break;
        }
        return static_cast<double>(sum);
    }
    // (1/pi^2) sum_k Gamma(k+1/2)^2 (2/x)^(2k+1), stopped at the smallest term.
    double term = 2.0 / (kPi * x);
    double sum = term;
    for (int k = 1; k < 1000; ++k) {
        const double ratio = (2.0 * k - 1.0) / x;
        const double next = term * ratio * ratio;
        if (next >= term) break;
        term = next;
        sum += term;
        if (term < 0.25 * kEps * sum) break;
    }
    return sum;
}

}  // namespace cauchycorr::specfun
