#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "levyx/quadrature.hpp"
#include "levyx/specfun.hpp"

using namespace levyx;

TEST_CASE("gamma family classical values") {
    CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(pi)).epsilon(1e-13));
    CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-13));
    CHECK(digamma(1.0) == doctest::Approx(-euler_gamma).epsilon(1e-12));
    CHECK(beta_fn(2, 3) == doctest::Approx(1.0 / 12).epsilon(1e-13));
    // negative arguments through reflection
    CHECK(gamma_fn(-0.5) == doctest::Approx(-2.0 * std::sqrt(pi)).epsilon(1e-12));
    CHECK(rgamma(-1.0) == 0.0);
    CHECK(rgamma(0.0) == 0.0);
}

TEST_CASE("gamma recurrence on a grid") {
    for (double x = 0.1; x <= 10.0; x += 0.37) {
        double lhs = gamma_fn(x + 1.0);
        double rhs = x * gamma_fn(x);
        CHECK(std::fabs(lhs - rhs) <= 1e-13 * std::fabs(rhs));
    }
}

TEST_CASE("complex log gamma matches real axis and conjugation") {
    std::complex<double> z(3.7, 0.0);
    CHECK(std::abs(log_gamma(z) - log_gamma(3.7)) < 1e-13);
    std::complex<double> w(1.5, 75.0);
    auto a = log_gamma(w), b = std::conj(log_gamma(std::conj(w)));
    CHECK(std::abs(a - b) < 1e-10 * std::abs(a));
    // reflection region with large imaginary part stays finite
    std::complex<double> v(-40.0, 120.0);
    CHECK(std::isfinite(std::real(log_gamma(v))));
}

TEST_CASE("pochhammer zeros and poles") {
    // (u)_a = Gamma(u+a)/Gamma(u): zero at nonpositive-integer u
    CHECK(pochhammer(0.0, 1.5) == 0.0);
    CHECK(pochhammer(-1.0, 1.5) == 0.0);
    CHECK(pochhammer(1.0, 1.5) == doctest::Approx(gamma_fn(2.5)).epsilon(1e-13));
    CHECK(pochhammer(0.5, 1.5) ==
          doctest::Approx(gamma_fn(2.0) / gamma_fn(0.5)).epsilon(1e-13));
    CHECK_THROWS_AS(pochhammer(-2.5, 0.5), std::domain_error);  // pole upstairs
    // derivative at the induced zero: d/dx (x)_a at x=-1 is -Gamma(a-1)
    CHECK(pochhammer_deriv(-1.0, 1.5) ==
          doctest::Approx(-gamma_fn(0.5)).epsilon(1e-12));
    CHECK(pochhammer_deriv(0.0, 1.5) ==
          doctest::Approx(gamma_fn(1.5)).epsilon(1e-12));
}

TEST_CASE("incomplete gamma") {
    CHECK(inc_gamma_upper(1.0, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-13));
    CHECK(inc_gamma_upper(2.5, 0.0) == doctest::Approx(gamma_fn(2.5)).epsilon(1e-13));
    // quadrature oracle for Gamma(0.5, 1)
    auto tail = integrate_to_inf(
        [](double t) { return std::pow(t, -0.5) * std::exp(-t); }, 1.0, 1e-13);
    CHECK(inc_gamma_upper(0.5, 1.0) == doctest::Approx(tail.value).epsilon(1e-11));
    // complement identity
    for (double a : {0.3, 1.0, 2.7, 6.0})
        for (double x : {0.1, 1.0, 4.0, 9.0})
            CHECK(inc_gamma_lower(a, x) + inc_gamma_upper(a, x) ==
                  doctest::Approx(gamma_fn(a)).epsilon(1e-12));
}

TEST_CASE("mittag-leffler classical identities") {
    CHECK(mittag_leffler(1, 1, 1.0).value == doctest::Approx(std::exp(1.0)).epsilon(1e-14));
    CHECK(mittag_leffler(2, 1, 4.0).value ==
          doctest::Approx(std::cosh(2.0)).epsilon(1e-14));
    CHECK(mittag_leffler(2, 2, 4.0).value ==
          doctest::Approx(std::sinh(2.0) / 2.0).epsilon(1e-14));
    SeriesValue s = mittag_leffler(1.5, 1.5, 2.0);
    CHECK(s.trunc_error >= 0);
    CHECK(s.terms > 3);
}

TEST_CASE("series truncation error dominates the next term") {
    SeriesValue s = mittag_leffler(1.5, 1.5, 3.0);
    // recompute the first omitted term
    double next = std::fabs(std::pow(3.0, s.terms) * rgamma(1.5 * s.terms + 1.5));
    CHECK(s.trunc_error >= next);
}

TEST_CASE("incomplete mittag-leffler") {
    // kappa = 0: single regularized term
    CHECK(inc_mittag_leffler(1.5, 0.5, 2.0, 0.0).value ==
          doctest::Approx(gamma_p(0.5, 2.0)).epsilon(1e-13));
    // x -> infinity: each regularized term tends to 1, so the sum tends to
    // the geometric limit 1/(1-kappa)
    double lim = inc_mittag_leffler(1.5, 1.5, 200.0, 0.3).value;
    CHECK(lim == doctest::Approx(1.0 / 0.7).epsilon(1e-12));
    // lower + upper = complete, termwise in kappa
    double lo = inc_mittag_leffler(1.5, 1.5, 2.0, 0.3, true).value;
    double hi = inc_mittag_leffler(1.5, 1.5, 2.0, 0.3, false).value;
    double tot = 1.0 / (1.0 - 0.3);  // sum of kappa^n
    CHECK(lo + hi == doctest::Approx(tot).epsilon(1e-12));
}

TEST_CASE("q-pochhammer") {
    CHECK(q_pochhammer(0.3, 0.5, 0) == 1.0);
    CHECK(q_pochhammer(0.3, 0.5, 2) ==
          doctest::Approx((1 - 0.3) * (1 - 0.15)).epsilon(1e-15));
    // classical digits of (1/2; 1/2)_inf
    CHECK(q_pochhammer_inf(0.5, 0.5) ==
          doctest::Approx(0.2887880950866024).epsilon(1e-12));
    CHECK_THROWS_AS(q_pochhammer(0.3, 1.1, 4), std::domain_error);
}

TEST_CASE("wright 2f2 series") {
    // delta = 0 collapses to Gamma(alpha) E_{alpha,alpha}
    double alpha = 1.5;
    for (double x : {0.5, 1.0, 2.0}) {
        double w = wright_2f2(alpha, 0.0, x).value;
        double ml = gamma_fn(alpha) * mittag_leffler(alpha, alpha, x).value;
        CHECK(w == doctest::Approx(ml).epsilon(1e-12));
    }
    // x = 0: the n = 0 term
    double alpha2 = 1.5, delta = 0.5;
    double c0 = gamma_fn(alpha2) * gamma_fn(1 / alpha2 + 1 - delta) /
                gamma_fn(1 / alpha2 + 1);
    double lead = c0 * gamma_fn(1 / alpha2 + 1) /
                  (gamma_fn(1 / alpha2 + 1 - delta) * gamma_fn(alpha2));
    CHECK(wright_2f2(alpha2, delta, 0.0).value ==
          doctest::Approx(lead).epsilon(1e-13));
}

TEST_CASE("quadrature basics") {
    auto q = integrate([](double x) { return std::sin(x); }, 0.0, pi, 1e-12);
    CHECK(q.value == doctest::Approx(2.0).epsilon(1e-12));
    auto qi = integrate_to_inf([](double x) { return std::exp(-x); }, 0.0, 1e-12);
    CHECK(qi.value == doctest::Approx(1.0).epsilon(1e-11));
    // power singularity x^{-1/2} on (0,1)
    auto qs = integrate_power_left([](double x) { return 1.0 / std::sqrt(x); },
                                   0.0, 1.0, -0.5, 1e-12);
    CHECK(qs.value == doctest::Approx(2.0).epsilon(1e-10));
}
