#pragma once

// Laws and moments of exponential functionals I = int_0^infty e^{-xi_s} ds:
// moment ladders and their recursions, length-bias reweighting, Beta/Gamma
// factorizations, the Erdelyi-Kober kernel, closed-form example laws and the
// power tail asymptote.

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "levyx/exponent.hpp"
#include "levyx/quadrature.hpp"
#include "levyx/specfun.hpp"
#include "levyx/transform.hpp"

namespace levyx {

// --- moment ladders -----------------------------------------------------------

struct MomentLadder {
    bool negative_order = false;  // m[n] = E[I^{-n}] instead of E[I^n]
    std::vector<double> m;        // m[0] = 1

    double operator[](size_t n) const { return m.at(n); }
    size_t order() const { return m.size() - 1; }
};

// E[I_phi^n] = n! / prod_{k=1}^n phi(k); the subordinator is carried as
// psi = -phi.
inline MomentLadder sub_moments(const LaplaceExponent& exp_phi, int N) {
    MomentLadder lad;
    lad.m.assign(N + 1, 1.0);
    for (int n = 1; n <= N; ++n) {
        double ph = exp_phi.phi(double(n));
        if (!(ph > 0))
            throw std::domain_error("sub_moments: phi(" + std::to_string(n) +
                                    ") <= 0");
        lad.m[n] = n * lad.m[n - 1] / ph;
    }
    return lad;
}

// E[I_psi^{-n}] = psi'(0+) prod_{k=1}^{n-1} psi(k) / Gamma(n), via the
// recursion E[I^{-(n+1)}] = (psi(n)/n) E[I^{-n}], E[I^{-1}] = psi'(0+).
inline MomentLadder sn_neg_moments(const LaplaceExponent& psi, int N) {
    if (std::fabs(psi(0.0)) > 1e-12)
        throw std::domain_error("sn_neg_moments: psi(0) must vanish");
    double d0 = drift_at_zero(psi).value;
    if (!(d0 > 0))
        throw std::domain_error("sn_neg_moments: psi'(0+) must be positive");
    MomentLadder lad;
    lad.negative_order = true;
    lad.m.assign(N + 1, 1.0);
    if (N >= 1) lad.m[1] = d0;
    for (int n = 1; n < N; ++n) lad.m[n + 1] = psi(double(n)) / n * lad.m[n];
    return lad;
}

// closed-form Mellin s -> E[I_phi^s] for the families that have one
inline std::function<double(double)> exp_functional_mellin(
    const LaplaceExponent& phi) {
    switch (phi.family()) {
        case Family::StableSub: {
            double alpha = phi.param("alpha");
            return [alpha](double s) {
                if (s <= -1) throw std::domain_error("mellin: s <= -1");
                return std::exp((1.0 - alpha) * log_gamma(1.0 + s));
            };
        }
        case Family::LampertiStableSub: {
            double alpha = phi.param("alpha");
            return [alpha](double s) {
                if (s <= -1) throw std::domain_error("mellin: s <= -1");
                return std::exp(log_gamma(1.0 + s) + log_gamma(alpha) -
                                log_gamma(alpha + alpha * s));
            };
        }
        case Family::CPExpSub: {
            double c = phi.param("c"), b = phi.param("b"), k = phi.param("kappa");
            double kb = k * b / (k + c);
            return [c, b, k, kb](double s) {
                if (s <= -1) throw std::domain_error("mellin: s <= -1");
                return std::pow(k + c, -s) *
                       std::exp(log_gamma(b + 1 + s) - log_gamma(b + 1) +
                                log_gamma(1 + s) + log_gamma(1 + kb) -
                                log_gamma(1 + kb + s));
            };
        }
        case Family::PoissonSub: {
            double q = phi.param("q");
            double qq = q_pochhammer_inf(q, q);
            return [q, qq](double s) {
                if (s <= -1) throw std::domain_error("mellin: s <= -1");
                return std::exp(log_gamma(1 + s)) *
                       q_pochhammer_inf(std::pow(q, 1 + s), q) / qq;
            };
        }
        default:
            throw std::domain_error(
                "exp_functional_mellin: no closed Mellin for this family");
    }
}

// E[I_{T_beta phi}^n] = E[I_phi^{n+beta}] / E[I_phi^beta].  Integer beta uses
// the ladder directly; fractional beta needs a Mellin representation.
inline MomentLadder sub_tbeta_moments(const LaplaceExponent& exp_phi, double beta,
                                      int N) {
    if (beta < 0) throw std::domain_error("sub_tbeta_moments: beta must be >= 0");
    MomentLadder lad;
    lad.m.assign(N + 1, 1.0);
    if (std::fabs(beta - std::nearbyint(beta)) < 1e-12) {
        int B = int(std::nearbyint(beta));
        MomentLadder base = sub_moments(exp_phi, N + B);
        for (int n = 1; n <= N; ++n) lad.m[n] = base.m[n + B] / base.m[B];
        return lad;
    }
    auto mellin = exp_functional_mellin(exp_phi);
    double mb = mellin(beta);
    for (int n = 1; n <= N; ++n) lad.m[n] = mellin(n + beta) / mb;
    return lad;
}

// --- densities ----------------------------------------------------------------

struct DensityHandle {
    enum class Provenance { ClosedForm, Reweighted, KernelTransformed, Empirical };
    std::function<double(double)> f;
    Provenance provenance = Provenance::ClosedForm;
    double support_hint = 50.0;  // initial guess for the upper truncation
    double tail_power = 0.0;     // f ~ C x^{tail_power}, 0 = faster than power

    double operator()(double x) const { return f(x); }
};

namespace detail {

inline double density_upper_limit(const DensityHandle& h) {
    double peak = 0;
    for (int i = 1; i <= 64; ++i)
        peak = std::max(peak, h.f(h.support_hint * i / 64.0));
    double hi = h.support_hint;
    int guard = 0;
    while (h.f(hi) > 1e-12 * peak && guard++ < 60) hi *= 2;
    return hi;
}

}  // namespace detail

// int_0^infty x^s f(x) dx via the log substitution x = e^t
inline double density_moment(const DensityHandle& h, double s, double tol = 1e-9) {
    double hi = detail::density_upper_limit(h);
    auto g = [&](double t) {
        double x = std::exp(t);
        return std::pow(x, s + 1.0) * h.f(x);
    };
    QuadResult q = integrate(g, -45.0, std::log(hi), tol, 1e-12, 4000);
    double rem = 0;
    if (h.tail_power < -1.0 - s)
        rem = h.f(hi) * std::pow(hi, s + 1.0) / (-h.tail_power - 1.0 - s);
    return q.value + rem;
}

inline double density_integral(const DensityHandle& h, double tol = 1e-9) {
    return density_moment(h, 0.0, tol);
}

// f_{T_beta psi}(x) = x^{-beta} f_psi(x) / E[I_psi^{-beta}]; the normalizer
// may be supplied (e.g. from a closed Mellin) or is computed numerically.
inline DensityHandle sn_tbeta_density(const DensityHandle& f_psi,
                                      double beta,
                                      std::optional<double> neg_moment = {}) {
    if (beta < 0) throw std::domain_error("sn_tbeta_density: beta must be >= 0");
    if (beta == 0) return f_psi;
    double z = neg_moment ? *neg_moment : density_moment(f_psi, -beta);
    if (!(z > 0) || !std::isfinite(z))
        throw std::domain_error("sn_tbeta_density: reweighting not integrable");
    auto base = f_psi.f;
    DensityHandle out;
    out.f = [base, beta, z](double x) {
        return std::pow(x, -beta) * base(x) / z;
    };
    out.provenance = DensityHandle::Provenance::Reweighted;
    out.support_hint = f_psi.support_hint;
    out.tail_power = (f_psi.tail_power != 0) ? f_psi.tail_power - beta : 0.0;
    return out;
}

// --- symbolic factor products ---------------------------------------------------

struct FactorTerm {
    enum class Kind { BetaRV, GammaRV, ExpRV, ConstFactor, Opaque };
    Kind kind = Kind::ConstFactor;
    double a = 1, b = 1;  // Beta(a,b) / Gamma(a) parameters
    double power = 1;     // the factor enters as X^power
    double cval = 1;      // ConstFactor
    std::function<double(double)> opaque_mellin;  // s -> E[X^s]
    std::string label;

    static FactorTerm beta_rv(double a, double b, double power = 1) {
        FactorTerm t;
        t.kind = Kind::BetaRV;
        t.a = a;
        t.b = b;
        t.power = power;
        t.label = "Beta(" + std::to_string(a) + "," + std::to_string(b) + ")^" +
                  std::to_string(power);
        return t;
    }
    static FactorTerm gamma_rv(double a, double power = 1) {
        FactorTerm t;
        t.kind = Kind::GammaRV;
        t.a = a;
        t.power = power;
        t.label = "Gamma(" + std::to_string(a) + ")^" + std::to_string(power);
        return t;
    }
    static FactorTerm exp_rv(double power = 1) {
        FactorTerm t;
        t.kind = Kind::ExpRV;
        t.power = power;
        t.label = "Exp(1)^" + std::to_string(power);
        return t;
    }
    static FactorTerm constant(double c) {
        FactorTerm t;
        t.kind = Kind::ConstFactor;
        t.cval = c;
        t.label = "const " + std::to_string(c);
        return t;
    }
    static FactorTerm opaque(std::function<double(double)> mellin,
                             std::string label, double power = 1) {
        FactorTerm t;
        t.kind = Kind::Opaque;
        t.opaque_mellin = std::move(mellin);
        t.power = power;
        t.label = std::move(label);
        return t;
    }

    // E[(X^power)^s]
    double mellin(double s) const {
        double p = power * s;
        switch (kind) {
            case Kind::BetaRV: {
                if (a + p <= 0)
                    throw std::domain_error("factor mellin: Beta moment undefined");
                return std::exp(log_gamma(a + p) + log_gamma(a + b) -
                                log_gamma(a) - log_gamma(a + b + p));
            }
            case Kind::GammaRV:
                if (a + p <= 0)
                    throw std::domain_error("factor mellin: Gamma moment undefined");
                return std::exp(log_gamma(a + p) - log_gamma(a));
            case Kind::ExpRV:
                if (1 + p <= 0)
                    throw std::domain_error("factor mellin: Exp moment undefined");
                return std::exp(log_gamma(1 + p));
            case Kind::ConstFactor:
                return std::pow(cval, s);
            case Kind::Opaque:
                return opaque_mellin(p);
        }
        return 1.0;
    }
};

struct DistributionFactor {
    std::vector<FactorTerm> terms;

    double mellin(double s) const {
        double v = 1;
        for (const auto& t : terms) v *= t.mellin(s);
        return v;
    }
    double moment(int n) const { return mellin(double(n)); }

    bool sampleable() const {
        for (const auto& t : terms)
            if (t.kind == FactorTerm::Kind::Opaque) return false;
        return true;
    }
};

// --- Erdelyi-Kober kernel -------------------------------------------------------

struct ErdelyiKoberParams {
    double alpha;  // > -1
    double delta;  // > 0
    void check() const {
        if (!(alpha > -1) || !(delta > 0))
            throw std::domain_error("erdelyi-kober: need alpha > -1, delta > 0");
    }
};

struct EkValue {
    double value;        // the Beta-expectation route
    double discrepancy;  // |integral route - expectation route|
    operator double() const { return value; }
};

namespace detail {

// E[f(B(a+1,delta) x)] split at u = 1/2: the left half runs in log scale
// (robust when f concentrates near the origin relative to x), the right half
// removes the (1-u)^{delta-1} endpoint singularity by a power substitution.
inline QuadResult beta_kernel_expectation(const std::function<double(double)>& f,
                                          double a, double delta, double x,
                                          double tol) {
    double lb = log_gamma(a + 1) + log_gamma(delta) - log_gamma(a + delta + 1);
    double s_lo = -45.0 * std::max(1.0, 1.0 / (1.0 + a));
    auto left_log = [&](double s) {
        double u = std::exp(s);
        return f(u * x) * std::exp(s * (1.0 + a)) * std::pow(1.0 - u, delta - 1.0);
    };
    // unit-width chunks in log scale cannot skip a density that lives on a
    // multiplicative scale far below x; relative tolerance governs refinement
    QuadResult qa;
    qa.converged = true;
    double s_hi = std::log(0.5);
    for (double s = s_lo; s < s_hi; s += 1.0) {
        QuadResult c = integrate(left_log, s, std::min(s + 1.0, s_hi),
                                 1e-300, std::max(1e-12, tol), 400);
        qa.value += c.value;
        qa.abs_error += c.abs_error;
        qa.evaluations += c.evaluations;
    }
    auto right = [&](double v) {
        double u = 1.0 - v;
        return f(u * x) * std::pow(u, a) * std::pow(v, delta - 1.0);
    };
    QuadResult qb =
        integrate_power_left(right, 0.0, 0.5, delta - 1.0, 1e-300,
                             std::max(1e-12, tol));
    QuadResult out;
    out.value = (qa.value + qb.value) * std::exp(-lb);
    out.abs_error = (qa.abs_error + qb.abs_error) * std::exp(-lb);
    out.converged = qa.converged && qb.converged;
    out.evaluations = qa.evaluations + qb.evaluations;
    return out;
}

}  // namespace detail

// D^{alpha,delta} f(x) = E[f(B(alpha+1,delta) x)], evaluated by two
// quadrature representations that must agree: the singular-kernel integral
// with the substitution r = x(1 - t^{1/delta}), and the Beta expectation
// with endpoint substitutions.
inline EkValue ek_apply(const std::function<double(double)>& f,
                        const ErdelyiKoberParams& p, double x,
                        double tol = 1e-10) {
    p.check();
    if (!(x > 0)) throw std::domain_error("ek_apply: x must be > 0");
    const double al = p.alpha, de = p.delta;

    // route 1: (Gamma(alpha+delta+1) / (Gamma(alpha+1) Gamma(delta+1))) *
    //          int_0^1 (1 - t^{1/delta})^alpha f(x (1 - t^{1/delta})) dt
    double c1 = std::exp(log_gamma(al + de + 1) - log_gamma(al + 1) -
                         log_gamma(de + 1));
    auto g1 = [&](double t) {
        double u = 1.0 - std::pow(t, 1.0 / de);
        if (u <= 0) return 0.0;
        return std::pow(u, al) * f(x * u);
    };
    QuadResult q1 = integrate(g1, 0.0, 1.0, tol / 2, 1e-12, 4000);

    // route 2: the Beta expectation
    QuadResult q2 = detail::beta_kernel_expectation(f, al, de, x, tol);

    if (!q1.converged || !q2.converged)
        throw std::runtime_error("ek_apply: singular quadrature did not converge");
    double route1 = c1 * q1.value;
    return {q2.value, std::fabs(route1 - q2.value)};
}

// termwise image of a density: returns the kernel-transformed handle
inline DensityHandle ek_density(const DensityHandle& h, const ErdelyiKoberParams& p,
                                double tol = 1e-9) {
    auto base = h.f;
    ErdelyiKoberParams pc = p;
    DensityHandle out;
    out.f = [base, pc, tol](double x) { return ek_apply(base, pc, x, tol).value; };
    out.provenance = DensityHandle::Provenance::KernelTransformed;
    out.support_hint = h.support_hint;
    out.tail_power = h.tail_power;
    return out;
}

// Density of I_{T_{delta,theta} psi} from the density of I_{psi_theta}.
// From I_{T} = B(theta-delta,delta)^{-1} I_{psi_theta}, conditioning on the
// Beta factor gives f_T(x) = E[B f(Bx)], i.e. the B-reweighted kernel
//   f_T = ((theta-delta)/theta) D^{theta-delta, delta} f_{psi_theta},
// which reproduces the factorization moments E[B^n] E[I^{-n}] exactly.
inline DensityHandle transformed_density(const DensityHandle& f_theta,
                                         double theta, double delta,
                                         double tol = 1e-9) {
    if (!(delta > 0 && delta < theta))
        throw std::domain_error("transformed_density: need 0 < delta < theta");
    DensityHandle out =
        ek_density(f_theta, ErdelyiKoberParams{theta - delta, delta}, tol);
    auto kernel = out.f;
    double w = (theta - delta) / theta;
    out.f = [kernel, w](double x) { return w * kernel(x); };
    out.tail_power = delta - theta - 1.0;
    return out;
}

// --- factorizations -------------------------------------------------------------

// I_{T_{delta,theta} psi} = B(theta-delta, delta)^{-1} * I_{psi_theta}.
// The I_{psi_theta} factor reduces to Exp(1) primitives for the
// ((alpha-1)(u-1))_alpha family; otherwise it stays opaque with integer
// negative moments supplied by the ladder.
inline DistributionFactor beta_factorization(const LaplaceExponent& psi,
                                             double delta) {
    double theta = cramer_root(psi);
    if (!(theta > 0))
        throw std::domain_error(
            "beta_factorization: requires a positive root (psi'(0+) < 0 or killing)");
    if (!(delta > 0 && delta < theta))
        throw std::domain_error("beta_factorization: need 0 < delta < theta");
    DistributionFactor out;
    out.terms.push_back(FactorTerm::beta_rv(theta - delta, delta, -1.0));
    if (psi.family() == Family::LampertiStableSN) {
        double alpha = psi.param("alpha");
        out.terms.push_back(FactorTerm::constant(1.0 / (alpha - 1.0)));
        out.terms.push_back(FactorTerm::exp_rv(-(alpha - 1.0)));
        return out;
    }
    LaplaceExponent psi_theta = shifted(psi, theta);
    auto mellin = [psi_theta](double s) {
        double n = -s;
        if (std::fabs(n - std::nearbyint(n)) > 1e-9 || n < 0)
            throw std::domain_error(
                "opaque exponential-functional factor: only integer negative "
                "moments available");
        int N = int(std::nearbyint(n));
        if (N == 0) return 1.0;
        return sn_neg_moments(psi_theta, N).m[N];
    };
    out.terms.push_back(FactorTerm::opaque(mellin, "I_psi_theta"));
    return out;
}

// --- tail asymptote --------------------------------------------------------------

struct TailAsymptote {
    double power;     // delta - theta - beta - 1
    double constant;  // prefactor of x^{power}
};

// f_{T^beta_{delta,theta} psi}(x) ~ C x^{delta-theta-beta-1}; the constant is
//   Gamma(theta)/(Gamma(delta) Gamma(theta-delta)) E[I_{psi_theta}^{theta-delta}]
// divided by E[I_{T_{delta,theta} psi}^{-beta}] (equal to 1 when beta = 0).
inline TailAsymptote tail_asymptote(
    const LaplaceExponent& psi, double delta, double beta = 0.0,
    std::optional<std::function<double(double)>> mellin_I_theta = {}) {
    double theta = cramer_root(psi);
    if (!(delta > 0 && delta < theta))
        throw std::domain_error("tail_asymptote: need 0 < delta < theta");
    if (beta < 0) throw std::domain_error("tail_asymptote: beta must be >= 0");
    std::function<double(double)> mellin;
    if (mellin_I_theta) {
        mellin = *mellin_I_theta;
    } else if (psi.family() == Family::LampertiStableSN) {
        double alpha = psi.param("alpha");
        mellin = [alpha](double s) {
            if ((alpha - 1.0) * s >= 1.0)
                throw std::domain_error("tail_asymptote: fractional moment blows up");
            return std::pow(alpha - 1.0, -s) * gamma_fn(1.0 - (alpha - 1.0) * s);
        };
    } else {
        throw std::domain_error(
            "tail_asymptote: fractional moment of I_{psi_theta} unavailable");
    }
    double c = std::exp(log_gamma(theta) - log_gamma(delta) -
                        log_gamma(theta - delta)) *
               mellin(theta - delta);
    if (beta > 0) {
        // E[I_{T_{delta,theta} psi}^{-beta}] through the factorization
        double beta_part = std::exp(
            log_gamma(theta - delta + beta) + log_gamma(theta) -
            log_gamma(theta - delta) - log_gamma(theta + beta));
        c /= beta_part * mellin(-beta);
    }
    return {delta - theta - beta - 1.0, c};
}

// --- closed example laws ----------------------------------------------------------

struct PoissonExpLaw {
    double q;
    DensityHandle density;
    std::function<double(double)> mellin;
};

// q-series density of I for the unit-rate Poisson subordinator with jumps
// -log q, and its Mellin transform Gamma(1+s) (q^{1+s};q)_inf / (q;q)_inf.
inline PoissonExpLaw poisson_exp_law(double q, int max_terms = 200) {
    if (!(q > 0 && q < 1)) throw std::domain_error("poisson_exp_law: q in (0,1)");
    double qq = q_pochhammer_inf(q, q);
    auto dens = [q, qq, max_terms](double y) {
        if (y < 0) return 0.0;
        double sum = 0;
        double qpow = 1.0;       // q^{n(n-1)/2}
        double qfac = 1.0;       // (q;q)_n
        for (int n = 0; n < max_terms; ++n) {
            double term = std::exp(-y / std::pow(q, n)) * qpow / (qq * qfac);
            sum += (n % 2 ? -term : term);
            if (std::fabs(term) < 1e-16 * std::max(1e-300, std::fabs(sum)) && n > 4)
                break;
            qpow *= std::pow(q, n);  // advances n(n-1)/2 by n
            qfac *= (1.0 - std::pow(q, n + 1));
        }
        return sum;
    };
    PoissonExpLaw law;
    law.q = q;
    law.density.f = dens;
    law.density.support_hint = 20.0 / (1.0 - q);
    law.mellin = [q, qq](double s) {
        return std::exp(log_gamma(1 + s)) *
               q_pochhammer_inf(std::pow(q, 1 + s), q) / qq;
    };
    return law;
}

// x^beta reweighting of the Poisson law (subordinator length-bias image)
inline DensityHandle poisson_tbeta_density(double q, double beta) {
    PoissonExpLaw law = poisson_exp_law(q);
    double z = law.mellin(beta);
    auto base = law.density.f;
    DensityHandle out;
    out.f = [base, beta, z](double x) { return std::pow(x, beta) * base(x) / z; };
    out.provenance = DensityHandle::Provenance::Reweighted;
    out.support_hint = law.density.support_hint;
    return out;
}

// I_phi for the killed compound Poisson subordinator with exponential jumps:
// (kappa+c)^{-1} Gamma(b+1) Beta(1, kappa_b) as independent factors.
inline DistributionFactor cpexp_exp_factor(double c, double b, double kappa) {
    if (!(c > 0 && b > 0 && kappa >= 0))
        throw std::domain_error("cpexp_exp_factor: c, b > 0, kappa >= 0");
    double kb = kappa * b / (kappa + c);
    DistributionFactor f;
    f.terms.push_back(FactorTerm::constant(1.0 / (kappa + c)));
    f.terms.push_back(FactorTerm::gamma_rv(b + 1.0));
    if (kb > 0) f.terms.push_back(FactorTerm::beta_rv(1.0, kb));
    return f;
}

// T_beta image of the same law: (kappa+c)^{-1} Gamma(b+beta+1) Beta(1+beta, kappa_b)
inline DistributionFactor cpexp_tbeta_factor(double c, double b, double kappa,
                                             double beta) {
    double kb = kappa * b / (kappa + c);
    DistributionFactor f;
    f.terms.push_back(FactorTerm::constant(1.0 / (kappa + c)));
    f.terms.push_back(FactorTerm::gamma_rv(b + beta + 1.0));
    if (kb > 0) f.terms.push_back(FactorTerm::beta_rv(1.0 + beta, kb));
    return f;
}

// Mellin of I for the stable subordinator, E[I^s] = Gamma(1+s)^{1-alpha},
// and of its T_beta image, (Gamma(1+beta+s)/Gamma(1+beta))^{1-alpha}.
inline std::function<double(double)> stable_sub_mellin(double alpha) {
    return [alpha](double s) {
        return std::exp((1.0 - alpha) * log_gamma(1.0 + s));
    };
}
inline std::function<double(double)> stable_sub_tbeta_mellin(double alpha,
                                                             double beta) {
    return [alpha, beta](double s) {
        return std::exp((1.0 - alpha) *
                        (log_gamma(1.0 + beta + s) - log_gamma(1.0 + beta)));
    };
}

// Mellin of I for the Lamperti-stable subordinator phi(u) = (alpha u)_alpha:
// E[I^s] = Gamma(1+s) Gamma(alpha) / Gamma(alpha(1+s)), the continuation of
// n! Gamma(alpha)/Gamma(alpha(n+1)).
inline std::function<double(double)> lamperti_sub_mellin(double alpha) {
    return [alpha](double s) {
        return std::exp(log_gamma(1.0 + s) + log_gamma(alpha) -
                        log_gamma(alpha * (1.0 + s)));
    };
}

// Two candidate product readings for the Lamperti-stable subordinator law;
// the test suite compares both against the Mellin above.
inline DistributionFactor lamperti_sub_reading_independent(double alpha,
                                                           double beta) {
    DistributionFactor f;
    f.terms.push_back(FactorTerm::gamma_rv(beta + 1.0, 1.0));
    f.terms.push_back(FactorTerm::gamma_rv(beta + 1.0, -alpha));
    return f;
}
inline DistributionFactor lamperti_sub_reading_same_variable(double alpha,
                                                             double beta) {
    DistributionFactor f;
    f.terms.push_back(FactorTerm::gamma_rv(beta + 1.0, 1.0 - alpha));
    return f;
}

}  // namespace levyx
