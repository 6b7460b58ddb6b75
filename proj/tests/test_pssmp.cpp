#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "levyx/pssmp.hpp"

using namespace levyx;

namespace {
// Example family with theta = 1/alpha < 1: psi(u) = (alpha(u - 1/alpha))_alpha
LaplaceExponent entrance_family(double alpha) {
    return LaplaceExponent::pochhammer_general(alpha, alpha, 1.0 / alpha);
}
}  // namespace

TEST_CASE("entrance moments") {
    // Brownian(2,1): psi = u^2 + u: E[J^2] = psi(1) psi(2)/Gamma(3) = 6
    auto bm = LaplaceExponent::brownian(2, 1, 0);
    EntranceLaw law = entrance_moments(bm, 3);
    CHECK(law.regime == EntranceRegime::BertoinYor);
    CHECK(law[1] == doctest::Approx(bm(1.0)).epsilon(1e-14));
    CHECK(law[2] == doctest::Approx(6.0).epsilon(1e-13));
    // recurrent-extension regime with theta < 1
    double alpha = 1.5;
    auto ex = entrance_family(alpha);
    EntranceLaw lex = entrance_moments(ex, 2);
    CHECK(lex.regime == EntranceRegime::RecurrentExtension);
    CHECK(lex.theta == doctest::Approx(1.0 / alpha).epsilon(1e-9));
    // n = 1: (alpha - 1)_alpha = Gamma(2 alpha - 1)/Gamma(alpha - 1)
    double ref = gamma_fn(2 * alpha - 1) / gamma_fn(alpha - 1);
    CHECK(lex[1] == doctest::Approx(ref).epsilon(1e-12));
    // theta >= 1 rejected
    CHECK_THROWS_AS(entrance_moments(LaplaceExponent::lamperti_stable_sn(1.5), 2),
                    std::domain_error);
    // wrong regime rejected (killed with drift up has theta > ... psi(0) < 0
    // is fine; a positive-drift unkilled exponent with psi(0)=0 is BY regime)
    CHECK(entrance_moments(LaplaceExponent::stable(1.5), 2).regime ==
          EntranceRegime::BertoinYor);
}

TEST_CASE("entrance factorization against the moment formula") {
    // criterion families: Brownian(2,-0.5) and the pochhammer entrance family
    for (auto psi : {LaplaceExponent::brownian(2, -0.5, 0), entrance_family(1.5)}) {
        EntranceLaw law = entrance_moments(psi, 6);
        DistributionFactor fac = entrance_factorization(psi);
        for (int n = 1; n <= 6; ++n)
            CHECK(fac.mellin(double(n)) == doctest::Approx(law[n]).epsilon(1e-10));
    }
    // Brownian(2,-0.5): E[J] = psi(1) = 0.5
    CHECK(entrance_factorization(LaplaceExponent::brownian(2, -0.5, 0)).mellin(1.0) ==
          doctest::Approx(0.5).epsilon(1e-10));
    CHECK_THROWS_AS(entrance_factorization(LaplaceExponent::brownian(2, 1, 0)),
                    std::domain_error);
}

TEST_CASE("intertwining case 1") {
    double alpha = 1.5;
    auto psi = entrance_family(alpha);
    double theta = cramer_root(psi);
    for (double delta : {0.3, 0.5, 1.0}) {
        IntertwiningFactor iw = intertwining_factor(psi, delta, 1, 6);
        CHECK(iw.parameter_band_flagged == (delta >= theta));
        EntranceLaw jt = entrance_moments(iw.transformed, 6);
        EntranceLaw jp = entrance_moments(iw.partner, 6);
        for (int n = 1; n <= 6; ++n) {
            double lhs = jt[n];
            double rhs = iw.beta.mellin(double(n)) * jp[n];
            CHECK(std::fabs(lhs - rhs) <= 1e-10 * std::max(1.0, std::fabs(rhs)));
        }
        // beta-mean ratio at n=1: (1+theta-delta)/(1+theta)
        CHECK(iw.moment_ratio[1] ==
              doctest::Approx((1 + theta - delta) / (1 + theta)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(intertwining_factor(psi, theta + 1.1, 1, 3), std::domain_error);
    CHECK_THROWS_AS(intertwining_factor(LaplaceExponent::brownian(2, 1, 0), 0.5, 1, 3),
                    std::domain_error);
}

TEST_CASE("intertwining case 2") {
    for (auto psi : {LaplaceExponent::brownian(2, -0.5, 0), entrance_family(1.5)}) {
        IntertwiningFactor iw = intertwining_factor(psi, 0.0, 2, 6);
        EntranceLaw jpsi = entrance_moments(psi, 6);
        EntranceLaw jpart = entrance_moments(iw.partner, 6);
        for (int n = 1; n <= 6; ++n) {
            double rhs = iw.beta.mellin(double(n)) * jpart[n];
            CHECK(std::fabs(jpsi[n] - rhs) <= 1e-10 * std::max(1.0, rhs));
        }
    }
}

TEST_CASE("intertwining case 3") {
    // psi(u) = u^alpha with psi'(0+) = 0
    double alpha = 1.5;
    auto psi = LaplaceExponent::stable(alpha);
    double delta = 0.5;
    IntertwiningFactor iw = intertwining_factor(psi, delta, 3, 6);
    EntranceLaw jt = entrance_moments(iw.transformed, 6);
    EntranceLaw jp = entrance_moments(psi, 6);
    for (int n = 1; n <= 6; ++n) {
        double rhs = iw.beta.mellin(double(n)) * jp[n];
        CHECK(std::fabs(jt[n] - rhs) <= 1e-10 * std::max(1.0, rhs));
    }
    // the n=1 ratio: Gamma(1.5)/Gamma(0.5) = 0.5 at delta = 0.5
    CHECK(jt[1] / jp[1] == doctest::Approx(0.5).epsilon(1e-12));
    // delta -> 0: Beta(1,0) degenerate, ratio -> 1
    IntertwiningFactor iw0 = intertwining_factor(psi, 1e-13, 3, 2);
    CHECK(iw0.moment_ratio[1] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK_THROWS_AS(intertwining_factor(psi, 1.2, 3, 2), std::domain_error);
    CHECK_THROWS_AS(intertwining_factor(LaplaceExponent::brownian(2, 1, 0), 0.5, 3, 2),
                    std::domain_error);
}

TEST_CASE("mellin profiles") {
    double alpha = 1.5;
    auto mp = mellin_pochhammer_entrance(alpha);
    CHECK(std::abs(mp(0.0) - 1.0) < 1e-12);
    CHECK(std::abs(mp(1.0)) > 0);
    auto ms = mellin_stable_entrance(alpha);
    CHECK(std::abs(ms(0.0) - 1.0) < 1e-12);
    // |Gamma^{alpha-1}(1+is)| is log-concave decaying but never zero
    MellinProfile prof = mellin_profile(ms, uniform_grid(-50, 50, 0.05));
    CHECK(prof.min_modulus > 0);
    CHECK(prof.s.size() == prof.value.size());
    // scan report marks decayed-but-nonzero points below the threshold
    MellinProfile prof2 = mellin_profile(mp, uniform_grid(-50, 50, 0.5), 1e-8);
    CHECK(prof2.min_modulus > 0);
    // exponent-level dispatch: shifted telescoping family vs the direct form
    auto shifted_fam = LaplaceExponent::pochhammer_general(alpha, alpha, 0.0);
    auto m_auto = entrance_mellin(shifted_fam);
    for (double s : {0.0, 0.7, 3.0})
        CHECK(std::abs(m_auto(s) - mp(s)) <= 1e-12 * std::abs(mp(s)));
    // unshifted entrance family: the continuation reproduces the ladder at
    // integer arguments
    auto fam = entrance_family(alpha);
    CHECK(std::abs(entrance_mellin(fam)(0.0) - 1.0) < 1e-12);
    EntranceLaw law = entrance_moments(fam, 4);
    for (int n = 1; n <= 4; ++n) {
        std::complex<double> v =
            std::exp(log_gamma(std::complex<double>(alpha * (n + 1.0) - 1.0, 0)) -
                     log_gamma(alpha - 1.0) -
                     log_gamma(std::complex<double>(n + 1.0, 0)));
        CHECK(std::abs(v.real() - law[n]) <= 1e-11 * law[n]);
    }
    CHECK_THROWS_AS(entrance_mellin(LaplaceExponent::brownian(1, 1, 0)),
                    std::domain_error);
}

TEST_CASE("intertwining runs the nonvanishing scan where possible") {
    auto fam = entrance_family(1.5);
    IntertwiningFactor iw1 = intertwining_factor(fam, 0.5, 1, 3);
    CHECK(iw1.mellin_checked);
    CHECK(iw1.mellin_min_modulus > 0);
    IntertwiningFactor iw2 = intertwining_factor(fam, 0.0, 2, 3);
    CHECK(iw2.mellin_checked);
    auto st = LaplaceExponent::stable(1.5);
    IntertwiningFactor iw3 = intertwining_factor(st, 0.5, 3, 3);
    CHECK(iw3.mellin_checked);
    // no closed Mellin: hypothesis stays unchecked but the factor is built
    auto bm = LaplaceExponent::brownian(2, -0.5, 0);
    IntertwiningFactor iw4 = intertwining_factor(bm, 0.0, 2, 3);
    CHECK_FALSE(iw4.mellin_checked);
}

TEST_CASE("eigenfunction series") {
    double alpha = 1.5;
    auto psi_theta = LaplaceExponent::pochhammer_general(alpha, alpha, 0.0);
    PowerSeries s = eigen_series(psi_theta, 40);
    CHECK(s.a[0] == 1.0);
    // a_n = Gamma(alpha)/Gamma(alpha(n+1))
    for (int n = 1; n <= 40; n += 7) {
        double ref = std::exp(log_gamma(alpha) - log_gamma(alpha * (n + 1.0)));
        CHECK(s.a[n] == doctest::Approx(ref).epsilon(1e-11));
    }
    // a_n psi(n) = a_{n-1} exactly
    for (int n = 1; n <= 40; ++n)
        CHECK(std::fabs(s.a[n] * psi_theta(double(n)) - s.a[n - 1]) <=
              1e-14 * std::fabs(s.a[n - 1]));
    // I(x) = Gamma(alpha) E_{alpha,alpha}(x)
    for (double x : {0.5, 1.0, 2.0}) {
        double lhs = s.eval(x).value;
        double rhs = gamma_fn(alpha) * mittag_leffler(alpha, alpha, x).value;
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
    // psi(u) = u^alpha: a_n = Gamma(n+1)^{-alpha}
    auto st = LaplaceExponent::stable(alpha);
    PowerSeries ss = eigen_series(st, 10);
    for (int n = 1; n <= 10; ++n)
        CHECK(ss.a[n] ==
              doctest::Approx(std::exp(-alpha * log_gamma(n + 1.0))).epsilon(1e-12));
    // zero of psi at an integer is rejected
    CHECK_THROWS_AS(eigen_series(LaplaceExponent::pochhammer_sn(1.5), 5),
                    std::domain_error);
}

TEST_CASE("series evaluation reports truncation") {
    auto st = LaplaceExponent::stable(1.5);
    PowerSeries s = eigen_series(st, 60);
    auto ev = s.eval(2.0);
    CHECK(ev.terms < 60);
    CHECK(ev.trunc_error < 1e-14 * std::fabs(ev.value));
}

TEST_CASE("ek action on series coefficients") {
    double alpha = 1.5;
    auto psi = entrance_family(alpha);
    double theta = cramer_root(psi);  // 2/3
    double delta = 0.5;
    auto psi_theta = shifted(psi, theta);
    auto tpsi = t_transform(psi, delta, theta);
    PowerSeries s_theta = eigen_series(psi_theta, 30);
    PowerSeries s_t = eigen_series(tpsi, 30);
    // n = 0 coefficient is preserved by the kernel
    PowerSeries img = ek_on_series(s_t, theta - delta, delta);
    CHECK(img.a[0] == doctest::Approx(1.0).epsilon(1e-14));
    // the kernel associated to the factorization Beta maps the transformed
    // eigenfunction series to the shifted one, coefficientwise
    for (int n = 0; n <= 30; ++n)
        CHECK(img.a[n] == doctest::Approx(s_theta.a[n]).epsilon(1e-10));
    // multiplicativity: (a,d1) then (a+d1,d2) equals (a, d1+d2)
    PowerSeries one = ek_on_series(s_theta, 0.4, 0.3);
    PowerSeries two = ek_on_series(one, 0.7, 0.9);
    PowerSeries direct = ek_on_series(s_theta, 0.4, 1.2);
    for (int n = 0; n <= 30; ++n)
        CHECK(two.a[n] == doctest::Approx(direct.a[n]).epsilon(1e-12));
}

TEST_CASE("randomized ek composition on series") {
    std::mt19937_64 rng(777);
    auto unif = [&](double a, double b) {
        return a + (b - a) * std::generate_canonical<double, 53>(rng);
    };
    PowerSeries s = eigen_series(LaplaceExponent::stable(1.5), 20);
    for (int it = 0; it < 40; ++it) {
        double a = unif(-0.9, 2.0), d1 = unif(0.05, 1.5), d2 = unif(0.05, 1.5);
        PowerSeries two = ek_on_series(ek_on_series(s, a, d1), a + d1, d2);
        PowerSeries direct = ek_on_series(s, a, d1 + d2);
        for (int n = 0; n <= 20; ++n)
            CHECK(std::fabs(two.a[n] - direct.a[n]) <=
                  1e-12 * std::fabs(direct.a[n]));
    }
}

TEST_CASE("ek action across all three intertwining cases") {
    double alpha = 1.5;
    // case 1
    {
        auto psi = entrance_family(alpha);
        double theta = cramer_root(psi), delta = 0.5;
        PowerSeries st = eigen_series(t_transform(psi, delta, theta), 25);
        PowerSeries sp = eigen_series(shifted(psi, theta), 25);
        PowerSeries img = ek_on_series(st, theta - delta, delta);
        for (int n = 0; n <= 25; ++n)
            CHECK(img.a[n] == doctest::Approx(sp.a[n]).epsilon(1e-10));
    }
    // case 3: kernel Beta(1-delta, delta), i.e. EK index (-delta, delta)
    {
        auto psi = LaplaceExponent::stable(alpha);
        double delta = 0.5;
        PowerSeries st = eigen_series(t_transform(psi, delta, 0.0), 25);
        PowerSeries sp = eigen_series(psi, 25);
        PowerSeries img = ek_on_series(st, -delta, delta);
        for (int n = 0; n <= 25; ++n)
            CHECK(img.a[n] == doctest::Approx(sp.a[n]).epsilon(1e-10));
    }
    // case 2: kernel Beta(1-theta, theta), EK index (-theta, theta), mapping
    // the eigenfunction of psi to that of the partner u psi(u)/(u-theta)
    {
        auto psi = entrance_family(alpha);
        double theta = cramer_root(psi);
        IntertwiningFactor iw = intertwining_factor(psi, 0.0, 2, 25);
        PowerSeries spsi = eigen_series(psi, 25);
        PowerSeries spart = eigen_series(iw.partner, 25);
        PowerSeries img = ek_on_series(spsi, -theta, theta);
        for (int n = 0; n <= 25; ++n)
            CHECK(img.a[n] == doctest::Approx(spart.a[n]).epsilon(1e-9));
    }
}

TEST_CASE("wright series equals the transformed eigenfunction") {
    double alpha = 1.5, delta = 0.5;
    auto psi = entrance_family(alpha);
    double theta = cramer_root(psi);
    PowerSeries s_t = eigen_series(t_transform(psi, delta, theta), 60);
    for (double x : {0.5, 1.0, 2.0}) {
        double series = s_t.eval(x).value;
        double wright = wright_2f2(alpha, delta, x).value;
        CHECK(series == doctest::Approx(wright).epsilon(1e-10));
    }
}

TEST_CASE("ek quadrature matches the series route") {
    // D^{theta-delta,delta} applied pointwise to the transformed series
    // recovers Gamma(alpha) E_{alpha,alpha}
    double alpha = 1.5, delta = 0.5;
    double theta = 1.0 / alpha;
    for (double x : {0.5, 1.0, 2.0}) {
        auto wf = [&](double y) { return wright_2f2(alpha, delta, y).value; };
        EkValue v = ek_apply(wf, {theta - delta, delta}, x, 1e-10);
        double ml = gamma_fn(alpha) * mittag_leffler(alpha, alpha, x).value;
        CHECK(v.value == doctest::Approx(ml).epsilon(1e-9));
        CHECK(v.discrepancy <= 1e-8);
    }
}
