#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>

#include "cauchycorr/cfnum.hpp"
#include "cauchycorr/distributions.hpp"

using namespace cauchycorr;
using Catch::Approx;
using dist::Complex;
using dist::ModelId;
constexpr double kPi = std::numbers::pi;

namespace {

double integral(const std::function<double(double)>& f, std::vector<double> bp) {
    cfnum::QuadratureSpec spec;
    spec.abs_tol = 1e-13;
    spec.rel_tol = 1e-13;
    return cfnum::integrate(f, bp, spec).value;
}

}  // namespace

TEST_CASE("standard Cauchy", "[dist]") {
    CHECK(dist::cauchy_pdf(0.0) == Approx(1.0 / kPi).epsilon(1e-15));
    CHECK(dist::cauchy_pdf(1.0) == Approx(1.0 / (2 * kPi)).epsilon(1e-15));
    CHECK(dist::cauchy_cf(0.0) == 1.0);
    CHECK(dist::cauchy_cf(-2.0) == Approx(std::exp(-2.0)));
    CHECK(dist::cauchy_cdf(0.0) == 0.5);
    CHECK(dist::cauchy_cdf(1.0) == Approx(0.75).epsilon(1e-15));
}

TEST_CASE("squared Cauchy", "[dist]") {
    CHECK(dist::cauchysq_cdf(1.0) == Approx(0.5).epsilon(1e-15));
    CHECK(dist::cauchysq_pdf(1.0) == Approx(1.0 / (2 * kPi)).epsilon(1e-15));
    CHECK(dist::cauchysq_pdf(-1.0) == 0.0);
    CHECK(dist::cauchysq_pdf(0.0) == 0.0);
    CHECK(dist::cauchysq_cdf(-3.0) == 0.0);
    CHECK(dist::cauchysq_cf(0.0) == Complex(1.0, 0.0));

    // CF against direct oscillatory quadrature of int e^{itz} f(z) dz, cut at
    // the zeros of cos(tz) / sin(tz) and summed with epsilon acceleration.
    const double t = 0.3;
    auto oscillatory = [t](auto trig, double first_zero) {
        cfnum::EpsilonExtrapolator eps;
        // First piece in v = sqrt(z) to remove the endpoint singularity.
        double partial = integral([&](double v) { return 2.0 / (kPi * (v * v + 1)) * trig(t * v * v); },
                                  {0.0, std::sqrt(first_zero)});
        double limit = eps.add(partial);
        for (int k = 0; k < 60; ++k) {
            const double a = first_zero + k * kPi / t, b = a + kPi / t;
            partial += integral([&](double z) { return dist::cauchysq_pdf(z) * trig(t * z); }, {a, b});
            limit = eps.add(partial);
        }
        return limit;
    };
    const double cos_part = oscillatory([](double x) { return std::cos(x); }, kPi / (2 * t));
    const double sin_part = oscillatory([](double x) { return std::sin(x); }, kPi / t);
    const Complex cf = dist::cauchysq_cf(t);
    CHECK(std::abs(cf.real() - cos_part) <= 1e-8);
    CHECK(std::abs(cf.imag() - sin_part) <= 1e-8);
    CHECK(cf.real() == Approx(0.615253924677980646).epsilon(1e-13));
    CHECK(cf.imag() == Approx(0.217578610327615472).epsilon(1e-13));

    for (double tt = -40.0; tt <= 40.0; tt += 0.37) {
        const Complex c = dist::cauchysq_cf(tt);
        CHECK(std::abs(c) <= 1.0 + 1e-15);
        CHECK(std::abs(c - std::conj(dist::cauchysq_cf(-tt))) < 1e-15);
    }
    // CDF/PDF coherence.
    for (double z : {0.01, 0.5, 1.0, 10.0, 1000.0}) {
        const double q = integral(dist::cauchysq_pdf, {0.0, z});
        CHECK(std::abs(q - dist::cauchysq_cdf(z)) <= 1e-10);
    }
}

TEST_CASE("limit law W", "[dist]") {
    CHECK(dist::w_cf(0.0) == Complex(1.0, 0.0));
    CHECK(std::abs(dist::w_cf(kPi / 2)) == Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(std::abs(dist::w_cf(-kPi / 2)) == Approx(std::exp(-1.0)).epsilon(1e-14));
    // The principal root keeps |cf| <= 1 on both half-lines.
    for (double t : {-100.0, -3.0, -0.1, 0.1, 3.0, 100.0}) CHECK(std::abs(dist::w_cf(t)) <= 1.0);
    for (double w : {0.1, 1.0, 10.0}) {
        const double q = integral(dist::w_pdf, {0.0, w});
        INFO("w = " << w);
        CHECK(std::abs(q - dist::w_cdf(w)) <= 1e-10);
    }
    CHECK(dist::w_pdf(0.0) == 0.0);
    CHECK(dist::w_pdf(-1.0) == 0.0);
    CHECK(dist::w_cdf(-1.0) == 0.0);
}

TEST_CASE("half-normal U with the corrected normalization", "[dist]") {
    CHECK(dist::u_pdf(-1.0) == 0.0);
    CHECK(std::abs(integral(dist::u_pdf, {0.0, INFINITY}) - 1.0) <= 1e-10);
    // U = 1/sqrt(W): f_U(u) = f_W(1/u^2) * 2/u^3.
    for (double u : {0.5, 1.0, 2.0}) {
        const double via_w = dist::w_pdf(1.0 / (u * u)) * 2.0 / (u * u * u);
        CHECK(dist::u_pdf(u) == Approx(via_w).epsilon(1e-12));
    }
    // The variant with prefactor 1/pi integrates to one half.
    const double inv_pi_variant = integral([](double u) { return std::exp(-u * u / kPi) / kPi; }, {0.0, INFINITY});
    CHECK(std::abs(inv_pi_variant - 0.5) <= 1e-10);
    CHECK(dist::u_cdf(0.0) == 0.0);
    CHECK(std::abs(dist::u_cdf(3.0) - integral(dist::u_pdf, {0.0, 3.0})) <= 1e-12);
    CHECK(dist::u_cf(0.0) == Complex(1.0, 0.0));
    for (double t : {0.5, 2.0, 9.0}) {
        const double re = integral([t](double u) { return dist::u_pdf(u) * std::cos(t * u); }, {0.0, 6.0, 20.0});
        const double im = integral([t](double u) { return dist::u_pdf(u) * std::sin(t * u); }, {0.0, 6.0, 20.0});
        INFO("t = " << t);
        CHECK(std::abs(dist::u_cf(t).real() - re) < 1e-11);
        CHECK(std::abs(dist::u_cf(t).imag() - im) < 1e-11);
    }
}

TEST_CASE("product S", "[dist]") {
    CHECK(dist::s_pdf(1.0).value() == Approx(1.0 / (kPi * kPi)).epsilon(1e-15));
    CHECK(dist::s_pdf(-1.0).value() == Approx(1.0 / (kPi * kPi)).epsilon(1e-15));
    CHECK(dist::s_pdf(0.0).is_singular());
    CHECK_THROWS_AS(dist::s_pdf(0.0).value(), std::domain_error);
    CHECK(dist::s_cf(0.0) == 1.0);
    // Removable singularity: the series branch and the direct formula meet.
    for (double eps : {1e-3, 1e-5, 1e-7, 1e-9, 1e-12}) {
        const double s = 1.0 + eps;
        const double direct = std::log(s * s) / (kPi * kPi * (s * s - 1));
        CHECK(dist::s_pdf(s).value() == Approx(direct).epsilon(1e-6));
        CHECK(std::isfinite(dist::s_pdf(1.0 - eps).value()));
    }
    for (double s : {0.5, 2.0, 5.0}) {
        const auto inv = cfnum::invert_symmetric_cf(dist::s_cf, s);
        INFO("s = " << s);
        CHECK(std::abs(inv.value - dist::s_pdf(s).value()) <= 1e-6);
        CHECK(dist::s_pdf(-s).value() == dist::s_pdf(s).value());
    }
    for (double t : {0.3, 2.0, 17.0}) CHECK(dist::s_cf(-t) == dist::s_cf(t));
}

TEST_CASE("correction factor a", "[dist]") {
    CHECK(dist::correction_a(400).a == Approx(0.808939888261218293).epsilon(1e-14));
    CHECK(dist::correction_a(400).n == 400);
    CHECK(dist::correction_a(4).a > 0.0);
    CHECK(dist::correction_a(4).a == Approx(1 - std::log(kPi) / std::log(4.0)));
    CHECK(std::abs(dist::correction_a(1000000000LL).a - 1.0) < 0.06);
    CHECK_THROWS_AS(dist::correction_a(3), std::domain_error);
    CHECK_THROWS_AS(dist::correction_a(0), std::domain_error);
    double prev = 0.0;
    for (long long n : {4LL, 10LL, 100LL, 10000LL, 1000000LL}) {
        CHECK(dist::correction_a(n).a > prev);
        prev = dist::correction_a(n).a;
    }
}

TEST_CASE("asymptotic law of the scaled correlation", "[dist]") {
    CHECK(dist::rc_cf(0.0, 0.8) == 1.0);
    const double expected = 2 * std::log(1 + std::sqrt(2.0)) / (kPi * kPi * std::sqrt(2.0));
    CHECK(dist::rc_pdf(1.0, 1.0).value() == Approx(expected).epsilon(1e-15));
    CHECK(dist::rc_pdf(1.0, 1.0).value() == Approx(0.126291838013576707).epsilon(1e-14));
    CHECK(dist::rc_pdf(0.0, 0.7).is_singular());
    CHECK_THROWS_AS(dist::rc_pdf(1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(dist::rc_pdf(1.0, 1.5), std::domain_error);
    CHECK_THROWS_AS(dist::rc_cf(1.0, -0.1), std::domain_error);
    CHECK_THROWS_AS(dist::rc_cdf(1.0, 2.0), std::domain_error);

    // Tail law r^2 f(r) -> 2a/pi^2, converging between 1e4 and 1e5.
    const double t4 = 1e8 * dist::rc_pdf(1e4, 1.0).value() / (2 / (kPi * kPi));
    const double t5 = 1e10 * dist::rc_pdf(1e5, 1.0).value() / (2 / (kPi * kPi));
    CHECK(std::abs(t4 - 1) < 0.01);
    CHECK(std::abs(t5 - 1) < std::abs(t4 - 1));
    const double a = 0.6;
    CHECK(1e10 * dist::rc_pdf(1e5, a).value() == Approx(2 * a / (kPi * kPi)).epsilon(1e-3));

    for (double r : {1e-8, 0.3, 1.0, 7.0, 1e6}) {
        CHECK(dist::rc_pdf(-r, 0.8).value() == dist::rc_pdf(r, 0.8).value());
        CHECK(dist::rc_cdf(r, 0.8) + dist::rc_cdf(-r, 0.8) == Approx(1.0).epsilon(1e-12));
    }
    CHECK(dist::rc_cdf(0.0, 0.8) == 0.5);
    // CDF against quadrature of the pdf from the singular point.
    for (double r : {0.2, 1.0, 3.0}) {
        const double q = integral([](double x) { return dist::rc_pdf(x, 0.8).value_or(0.0); }, {0.0, r});
        CHECK(std::abs(dist::rc_cdf(r, 0.8) - 0.5 - q) <= 1e-9);
    }
    CHECK(dist::rc_cdf(1e12, 1.0) == Approx(1.0).epsilon(1e-9));
    for (double r : {0.5, 2.0, 4.0}) {
        const auto inv = cfnum::invert_symmetric_cf([](double t) { return dist::rc_cf(t, 1.0); }, r);
        CHECK(std::abs(inv.value - dist::rc_pdf(r, 1.0).value()) <= 1e-6);
    }
}

TEST_CASE("n-fold squared-Cauchy CF approaches the W limit", "[dist]") {
    for (double t : {0.5, 1.0, 2.0}) {
        double prev = INFINITY;
        for (long long n : {100LL, 1000LL, 10000LL}) {
            const double gap = dist::stable_limit_gap(t, n);
            CHECK(gap < prev);
            prev = gap;
        }
        CHECK(prev <= 1e-3);
    }
}

TEST_CASE("DistributionModel interface", "[dist][model]") {
    CHECK(dist::parse_model_id("productS") == ModelId::ProductS);
    CHECK(dist::parse_model_id("ASYMPTOTICRC") == ModelId::AsymptoticRc);
    CHECK_THROWS_AS(dist::parse_model_id("Gaussian"), std::invalid_argument);
    CHECK(dist::to_string(ModelId::LimitW) == "LimitW");

    const dist::DistributionModel s(ModelId::ProductS);
    CHECK_FALSE(s.has_cdf());
    CHECK_THROWS_AS(s.cdf(1.0), std::logic_error);
    CHECK(s.pdf(1.0).value() == Approx(1 / (kPi * kPi)));
    CHECK(s.params().empty());

    const auto rc = dist::DistributionModel::asymptotic_rc_for_n(400);
    REQUIRE(rc.params().size() == 1);
    CHECK(rc.params()[0] == Approx(0.808939888261218293));
    CHECK_THROWS_AS(dist::DistributionModel::asymptotic_rc(0.0), std::domain_error);
    CHECK_THROWS_AS(dist::DistributionModel::asymptotic_rc_for_n(2), std::domain_error);

    for (ModelId id : {ModelId::CauchyStd, ModelId::CauchySquared, ModelId::LimitW,
                       ModelId::HalfNormalU, ModelId::ProductS, ModelId::AsymptoticRc}) {
        const dist::DistributionModel m =
            id == ModelId::AsymptoticRc ? rc : dist::DistributionModel(id);
        INFO(m.name());
        CHECK(m.cf(0.0) == Complex(1.0, 0.0));
        for (double t : {-10.0, -1.0, 0.2, 3.0, 50.0}) {
            CHECK(std::abs(m.cf(t)) <= 1.0 + 1e-15);
            if (m.symmetric()) CHECK(m.cf(t).imag() == 0.0);
        }
        for (double x : {-5.0, -0.5, 0.25, 2.0, 40.0}) CHECK(m.pdf(x).value_or(0.0) >= 0.0);
        const auto bp = m.breakpoints();
        const double total = integral([&m](double x) { return m.pdf(x).value_or(0.0); }, bp);
        CHECK(std::abs(total - 1.0) <= 1e-8);
        if (m.has_cdf()) {
            CHECK(m.cdf(-1e300) == Approx(0.0).margin(1e-12));
            CHECK(m.cdf(1e300) == Approx(1.0).margin(1e-12));
        }
    }
}
