#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "levyx/exponent.hpp"

using namespace levyx;

TEST_CASE("closed family evaluation") {
    auto bm = LaplaceExponent::brownian(1, 0, 0);
    CHECK(bm(2.0) == doctest::Approx(2.0).epsilon(1e-15));
    auto st = LaplaceExponent::stable(1.5);
    CHECK(st(4.0) == doctest::Approx(8.0).epsilon(1e-14));
    auto cp = LaplaceExponent::cp_exp_sub(1, 1, 0);
    CHECK(cp.phi(1.0) == doctest::Approx(0.5).epsilon(1e-15));
    auto ps = LaplaceExponent::poisson_sub(std::exp(-1.0));
    CHECK(ps.phi(1.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-14));
    auto ss = LaplaceExponent::stable_sub(0.5);
    CHECK(ss.phi(4.0) == doctest::Approx(2.0).epsilon(1e-14));
    auto po = LaplaceExponent::pochhammer_sn(1.5);
    CHECK(po(1.0) == 0.0);
    CHECK(po(2.0) == doctest::Approx(gamma_fn(2.5)).epsilon(1e-13));
}

TEST_CASE("family parameter validation") {
    CHECK_THROWS_AS(LaplaceExponent::stable(2.5), std::domain_error);
    CHECK_THROWS_AS(LaplaceExponent::stable_sub(1.5), std::domain_error);
    CHECK_THROWS_AS(LaplaceExponent::poisson_sub(1.5), std::domain_error);
    CHECK_THROWS_AS(LaplaceExponent::brownian(-1, 0, 0), std::domain_error);
}

TEST_CASE("domain floor errors") {
    auto cp = LaplaceExponent::cp_exp_sub(1, 1, 0);
    CHECK_THROWS_AS(cp(-1.0), std::domain_error);
    auto ss = LaplaceExponent::stable_sub(0.5);
    CHECK_THROWS_AS(ss(-0.1), std::domain_error);
}

TEST_CASE("levy-khintchine quadrature oracle") {
    // pure linear triple
    LevyTriple lin;
    lin.a = 1;
    CHECK(eval_lk_triple(lin, 3.0) == doctest::Approx(3.0).epsilon(1e-14));
    // killed triple at u = 0
    LevyTriple killed;
    killed.kappa = 2;
    CHECK(eval_lk_triple(killed, 0.0) == doctest::Approx(-2.0).epsilon(1e-14));

    // closed forms against the integrated triples
    const double tol = 1e-10;
    for (auto e : {LaplaceExponent::stable(1.5), LaplaceExponent::stable_sub(0.5),
                   LaplaceExponent::poisson_sub(0.5),
                   LaplaceExponent::cp_exp_sub(1, 1, 1)}) {
        LevyTriple t = to_triple(e);
        for (double u : {0.5, 1.0, 2.0, 5.0}) {
            double ref = e(u);
            double num = eval_lk_triple(t, u, tol);
            CHECK(std::fabs(num - ref) <= 10 * tol * std::max(1.0, std::fabs(ref)));
        }
    }
}

TEST_CASE("drift at zero") {
    CHECK(drift_at_zero(LaplaceExponent::brownian(1, 0.5, 0)).value ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK(drift_at_zero(LaplaceExponent::stable(1.5)).value ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK(drift_at_zero(LaplaceExponent::stable(1.5, 1.0)).value ==
          doctest::Approx(1.5).epsilon(1e-12));
    // killed flag
    CHECK(drift_at_zero(LaplaceExponent::cp_exp_sub(1, 1, 1)).killed);
    CHECK_FALSE(drift_at_zero(LaplaceExponent::brownian(1, 1, 0)).killed);
    // pochhammer families (pole-limit derivative): psi_1'(0+) = (alpha-1) Gamma(alpha)
    auto lam1 = LaplaceExponent::pochhammer_general(1.5, 0.5, 0.0);
    CHECK(drift_at_zero(lam1).value ==
          doctest::Approx(0.5 * gamma_fn(1.5)).epsilon(1e-12));
}

TEST_CASE("cramer root") {
    // psi(u) = u^2 - u
    auto bm = LaplaceExponent::brownian(2, -1, 0);
    CHECK(cramer_root(bm) == doctest::Approx(1.0).epsilon(1e-10));
    // pochhammer: psi(1) = 0 and positive beyond
    CHECK(cramer_root(LaplaceExponent::pochhammer_sn(1.5)) ==
          doctest::Approx(1.0).epsilon(1e-10));
    // positive drift: root at zero
    CHECK(cramer_root(LaplaceExponent::brownian(1, 1, 0)) == 0.0);
    // killed exponent has a strictly positive root
    auto killed = LaplaceExponent::brownian(2, 0, 1);
    double th = cramer_root(killed);
    CHECK(killed(th) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(killed(th + 1e-11 * 10) > -1e-10);
}

TEST_CASE("cramer root properties") {
    // psi(theta) = 0 within tol and psi(theta + 10 tol) strictly positive
    for (auto e : {LaplaceExponent::brownian(2, -1, 0),
                   LaplaceExponent::lamperti_stable_sn(1.5),
                   LaplaceExponent::pochhammer_general(1.5, 1.5, 1.0 / 1.5),
                   LaplaceExponent::brownian(1.3, -0.7, 0.4)}) {
        double th = cramer_root(e, 1e-12);
        CHECK(std::fabs(e(th)) < 1e-9);
        CHECK(e(th + 1e-11) > 0.0);
    }
}

TEST_CASE("ladder exponent") {
    auto bm = LaplaceExponent::brownian(2, 0, 0);
    auto lad = ladder(bm);
    CHECK(lad(3.0) == doctest::Approx(3.0).epsilon(1e-14));
    auto st = LaplaceExponent::stable(1.5);
    auto lst = ladder(st);
    CHECK(lst(4.0) == doctest::Approx(2.0).epsilon(1e-14));
    auto po = LaplaceExponent::pochhammer_sn(1.5);
    auto lpo = ladder(po);
    CHECK(lpo(2.0) == doctest::Approx(gamma_fn(2.5) / 2.0).epsilon(1e-12));
    CHECK(lpo(2.0) == doctest::Approx(0.664670).epsilon(1e-6));
    // u Phi(u) = psi(u) to relative 1e-14
    for (double u : {0.5, 1.0, 2.0, 5.0, 9.0}) {
        double lhs = u * lpo(u), rhs = po(u);
        CHECK(std::fabs(lhs - rhs) <= 1e-14 * std::max(1.0, std::fabs(rhs)));
    }
    // Phi(0+) = psi'(0+)
    CHECK(lad(0.0) == doctest::Approx(drift_at_zero(bm).value).epsilon(1e-12));
    // killed exponent rejected
    CHECK_THROWS_AS(ladder(LaplaceExponent::brownian(1, 0, 1)), std::domain_error);
}

TEST_CASE("validate report") {
    std::vector<double> grid;
    for (double u = 0; u <= 6; u += 0.25) grid.push_back(u);
    CHECK(validate(LaplaceExponent::brownian(1, 0, 0), grid).all_pass());
    CHECK(validate(LaplaceExponent::stable_sub(0.5), grid).all_pass());
    CHECK(validate(LaplaceExponent::cp_exp_sub(1, 1, 1), grid).all_pass());
    CHECK(validate(LaplaceExponent::lamperti_stable_sub(0.4), grid).all_pass());
    CHECK(validate(LaplaceExponent::poisson_sub(0.3), grid).all_pass());
    // a fake non-convex "exponent"
    auto fake = LaplaceExponent::wrap([](double u) { return std::sin(u); },
                                      neg_inf, 0.0);
    auto rep = validate(fake, grid);
    CHECK_FALSE(rep.all_pass());
    bool convexity_failed = false;
    for (auto& c : rep.checks)
        if (c.name == "convexity" && !c.pass) convexity_failed = true;
    CHECK(convexity_failed);
}

TEST_CASE("convexity invariant across families") {
    std::vector<double> grid;
    for (double u = 0; u <= 5; u += 0.1) grid.push_back(u);
    for (auto e : {LaplaceExponent::brownian(1.7, -0.3, 0.2),
                   LaplaceExponent::stable(1.5, 0.7, 0.1),
                   LaplaceExponent::stable_sub(0.7),
                   LaplaceExponent::poisson_sub(0.3),
                   LaplaceExponent::cp_exp_sub(2, 3, 0.5)}) {
        for (size_t i = 0; i + 2 < grid.size(); ++i) {
            double u1 = grid[i], u2 = grid[i + 1], u3 = grid[i + 2];
            double lam = (u2 - u1) / (u3 - u1);
            double interp = (1 - lam) * e(u1) + lam * e(u3);
            CHECK(e(u2) <= interp + 1e-12);
        }
    }
}

TEST_CASE("jump measure tail") {
    auto st = to_triple(LaplaceExponent::stable_sub(0.5));
    // closed-form tail x^{-alpha}/Gamma(1-alpha)
    for (double x : {0.5, 1.0, 2.0}) {
        double ref = std::pow(x, -0.5) / gamma_fn(0.5);
        CHECK(st.jumps.tail(x) == doctest::Approx(ref).epsilon(1e-12));
    }
    auto pt = to_triple(LaplaceExponent::poisson_sub(std::exp(-1.0)));
    CHECK(pt.jumps.tail(0.5) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(pt.jumps.tail(1.5) == 0.0);
}
