#pragma once

// Scale functions W_psi: closed forms for the stable, tempered-stable and
// Pochhammer families, the transformation formulas
//   W_{T_beta psi}(x)       = e^{-beta x} W_psi(x)
//                             + beta int_0^x e^{-beta y} W_psi(y) dy
//   W_{T_{delta,theta} psi}(x) = e^{-theta x} ( W_psi(x)
//                             + delta e^{delta x} int_0^x e^{-delta y} W_psi(y) dy )
// and numerical Laplace inversion of 1/psi along a fixed Talbot contour
// shifted right of the largest root, with an Euler-summation fallback.

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "levyx/exponent.hpp"
#include "levyx/quadrature.hpp"
#include "levyx/specfun.hpp"
#include "levyx/transform.hpp"

namespace levyx {

// --- Laplace inversion ------------------------------------------------------

namespace detail {

// fixed-Talbot inversion of G at t > 0 (singularities of G in Re < 0)
template <typename G>
double talbot(const G& g, double t, int M) {
    const double r = 2.0 * M / (5.0 * t);
    double sum = 0.5 * std::real(g(std::complex<double>(r, 0))) * std::exp(r * t);
    for (int k = 1; k < M; ++k) {
        double th = k * pi / M;
        double cot = std::cos(th) / std::sin(th);
        std::complex<double> s(r * th * cot, r * th);
        double sigma = th + (th * cot - 1.0) * cot;
        std::complex<double> v =
            std::exp(s * t) * g(s) * std::complex<double>(1.0, sigma);
        sum += std::real(v);
    }
    return sum * r / M;
}

// Euler-summation inversion (alternating Bromwich series with binomial
// averaging); discretization error ~ e^{-A}
template <typename G>
double euler_inversion(const G& g, double t, int N = 24, int M = 14,
                       double A = 21.5) {
    std::vector<double> terms(N + M + 1);
    double base = 0.5 * std::real(g(std::complex<double>(A / (2 * t), 0)));
    double partial = base;
    for (int k = 1; k <= N + M; ++k) {
        std::complex<double> s(A / (2 * t), k * pi / t);
        double term = std::real(g(s));
        partial += ((k % 2) ? -1.0 : 1.0) * term;
        terms[k] = partial;
    }
    // binomial average of partial sums s_N .. s_{N+M}
    double avg = 0, binom = 1, norm = std::pow(2.0, M);
    for (int m = 0; m <= M; ++m) {
        avg += binom * terms[N + m];
        binom *= double(M - m) / double(m + 1);
    }
    return std::exp(A / 2) / t * (avg / norm);
}

}  // namespace detail

struct InversionResult {
    double value = 0;
    double est_error = 0;
    bool used_fallback = false;
};

// W_psi(x) by inversion of 1/psi(u); contour shifted right of theta.
inline InversionResult scale_inversion_detail(const LaplaceExponent& psi,
                                              double theta, double x,
                                              double tol = 1e-8, int M = 48) {
    if (x < 0) throw std::domain_error("scale_inversion: x must be >= 0");
    if (x == 0) return {0.0, 0.0, false};
    if (!psi.has_complex())
        throw std::runtime_error("scale_inversion: exponent lacks complex continuation");
    const double c = theta + std::max(1.0, theta / 2);
    auto g = [&](std::complex<double> s) {
        return 1.0 / psi.eval_complex(s + c);
    };
    double v1 = detail::talbot(g, x, M);
    double v2 = detail::talbot(g, x, M - 8);
    double scale = std::exp(c * x);
    double est = std::fabs(v1 - v2) * scale;
    double val = v1 * scale;
    if (!std::isfinite(val) || est > std::max(tol * std::fabs(val), 1e-14)) {
        double ve = detail::euler_inversion(g, x) * scale;
        double este = std::fabs(ve - val);
        if (std::isfinite(ve) && (!std::isfinite(val) || este < est))
            return {ve, este, true};
    }
    return {val, est, false};
}

inline double scale_inversion(const LaplaceExponent& psi, double x,
                              double tol = 1e-8) {
    if (psi.is_subordinator())
        throw std::domain_error("scale_inversion: monotone paths have no scale function");
    double theta = cramer_root(psi);
    InversionResult r = scale_inversion_detail(psi, theta, x, tol);
    if (!std::isfinite(r.value))
        throw std::runtime_error("scale_inversion: inversion did not converge");
    return r.value;
}

// --- closed forms -----------------------------------------------------------

// Brownian with drift and killing: 1/psi inverts by partial fractions.
inline double scale_brownian(double sigma2, double drift, double kappa, double x) {
    if (sigma2 <= 0) throw std::domain_error("scale_brownian: sigma2 must be > 0");
    double disc = drift * drift + 2.0 * sigma2 * kappa;
    double sq = std::sqrt(disc);
    double r1 = (-drift + sq) / sigma2, r2 = (-drift - sq) / sigma2;
    if (std::fabs(r1 - r2) < 1e-12)
        return 2.0 / sigma2 * x * std::exp(r1 * x);
    return 2.0 / sigma2 * (std::exp(r1 * x) - std::exp(r2 * x)) / (r1 - r2);
}

// (tempered) stable: W(x) = e^{-cx} x^{alpha-1} E_{alpha,alpha}((kappa+c^alpha) x^alpha)
inline double scale_stable(double alpha, double kappa, double c, double x) {
    if (!(alpha > 1 && alpha < 2) || kappa < 0 || c < 0)
        throw std::domain_error("scale_stable: parameter out of range");
    if (x == 0) return 0.0;
    double k = kappa + std::pow(c, alpha);
    return std::exp(-c * x) * std::pow(x, alpha - 1) *
           mittag_leffler(alpha, alpha, k * std::pow(x, alpha)).value;
}

// W for psi(u) = (u-1)_alpha: Laplace transform
//   int e^{-ux} e^{x} (1-e^{-x})^{alpha-1} dx / Gamma(alpha)
//   = B(u-1, alpha)/Gamma(alpha) = 1/(u-1)_alpha.
inline double scale_tstable(double alpha, double x) {
    if (!(alpha > 1 && alpha < 2))
        throw std::domain_error("scale_tstable: alpha must be in (1,2)");
    if (x == 0) return 0.0;
    return std::exp(x) * std::pow(-std::expm1(-x), alpha - 1) / gamma_fn(alpha);
}

// W_{T_beta psi_{kappa,c}} by the stable closed form plus quadrature
inline double scale_tbeta_stable(double alpha, double kappa, double c,
                                 double beta, double x, double tol = 1e-10) {
    if (x == 0) return 0.0;
    double head = std::exp(-beta * x) * scale_stable(alpha, kappa, c, x);
    if (beta == 0) return head;
    auto f = [&](double y) {
        return std::exp(-beta * y) * scale_stable(alpha, kappa, c, y);
    };
    return head + beta * integrate_power_left(f, 0.0, x, alpha - 1.0, tol);
}

// W_{T_{delta,0} psi_{kappa,0}}: in incomplete-Mittag-Leffler form,
//   delta^{1-alpha} e^{delta x} E^inc_{alpha,alpha-1}(delta x; kappa/delta^alpha),
// which reduces for kappa = 0 to
//   (delta^{1-alpha} / Gamma(alpha-1)) e^{delta x} gamma(alpha-1, delta x).
inline double scale_tdelta0_stable(double alpha, double kappa, double delta,
                                   double x, bool lower_inc = true) {
    if (!(alpha > 1 && alpha < 2) || delta <= 0 || kappa < 0)
        throw std::domain_error("scale_tdelta0_stable: parameter out of range");
    if (x == 0) return 0.0;
    double kap = kappa / std::pow(delta, alpha);
    double s = inc_mittag_leffler(alpha, alpha - 1.0, delta * x, kap, lower_inc).value;
    return std::pow(delta, 1.0 - alpha) * std::exp(delta * x) * s;
}

// W_{T^beta_{delta,0} psi_{kappa,0}} = [ beta Vt_beta(x)
//   - delta e^{-(beta-delta)x} Vt_delta(x) ] / (beta - delta),
// Vt_d(x) = d^{1-alpha} E^inc_{alpha,alpha-1}(d x; kappa/d^alpha).
inline double scale_tbeta_tdelta0_stable(double alpha, double kappa, double delta,
                                         double beta, double x) {
    if (std::fabs(beta - delta) < 1e-14)
        throw std::domain_error("scale_tbeta_tdelta0_stable: beta == delta");
    if (x == 0) return 0.0;
    auto vt = [&](double d) {
        double kap = kappa / std::pow(d, alpha);
        return std::pow(d, 1.0 - alpha) *
               inc_mittag_leffler(alpha, alpha - 1.0, d * x, kap).value;
    };
    return (beta * vt(beta) - delta * std::exp(-(beta - delta) * x) * vt(delta)) /
           (beta - delta);
}

namespace detail {

// int_0^x e^{a y} (e^y - 1)^{alpha-2} (e^y + alpha - 2) dy / Gamma(alpha):
// the e^{-delta y} W'_psi(y) core of the compact transformation formulas,
// with W'_psi(y) = e^{(2-alpha) y} (e^y - 1)^{alpha-2} (e^y + alpha - 2)
// / Gamma(alpha) for psi(u) = (u-1)_alpha.
inline double tstable_core_integral(double alpha, double a, double x,
                                    double tol = 1e-11) {
    auto f = [&](double y) {
        return std::exp(a * y) * std::pow(std::expm1(y), alpha - 2.0) *
               (std::exp(y) + alpha - 2.0);
    };
    return integrate_power_left(f, 0.0, x, alpha - 2.0, tol) / gamma_fn(alpha);
}

}  // namespace detail

// W_{T_{delta,1} psi} for psi(u) = (u-1)_alpha (theta = 1)
inline double scale_tdelta1_tstable(double alpha, double delta, double x,
                                    double tol = 1e-11) {
    if (x == 0) return 0.0;
    return std::exp((delta - 1.0) * x) *
           detail::tstable_core_integral(alpha, 2.0 - alpha - delta, x, tol);
}

// W_{T^beta_{delta,1} psi} for psi(u) = (u-1)_alpha
inline double scale_tbeta_tdelta1_tstable(double alpha, double delta, double beta,
                                          double x, double tol = 1e-11) {
    if (x == 0) return 0.0;
    double c = beta + 1.0 - delta;
    double k = detail::tstable_core_integral(alpha, 1.0 - alpha - beta, x, tol);
    double j = detail::tstable_core_integral(alpha, 2.0 - alpha - delta, x, tol);
    return beta / c * k + (1.0 - delta) / c * std::exp(-c * x) * j;
}

// --- transformation formulas on an arbitrary scale function ------------------

// W_{T_beta psi}(x) from W_psi by quadrature
template <typename W>
double scale_tbeta(const W& w, double beta, double x, double tol = 1e-10) {
    if (beta < 0 || x < 0) throw std::domain_error("scale_tbeta: beta, x >= 0");
    double head = std::exp(-beta * x) * w(x);
    if (beta == 0 || x == 0) return (x == 0) ? w(x) : head;
    auto f = [&](double y) { return std::exp(-beta * y) * w(y); };
    QuadResult q = integrate(f, 0.0, x, tol);
    if (!q.converged) throw std::runtime_error("scale_tbeta: quadrature failed");
    return head + beta * q.value;
}

// W_{T_{delta,theta} psi}(x) from W_psi by quadrature; requires psi'(0+) <= 0
// and theta the largest root.
template <typename W>
double scale_tdelta_theta(const W& w, double delta, double theta, double x,
                          double tol = 1e-10) {
    if (delta < 0 || x < 0)
        throw std::domain_error("scale_tdelta_theta: delta, x >= 0");
    if (x == 0) return w(0.0);
    if (delta == 0) return std::exp(-theta * x) * w(x);
    auto f = [&](double y) { return std::exp(-delta * y) * w(y); };
    QuadResult q = integrate(f, 0.0, x, tol);
    if (!q.converged)
        throw std::runtime_error("scale_tdelta_theta: quadrature failed");
    return std::exp(-theta * x) * (w(x) + delta * std::exp(delta * x) * q.value);
}

// compact forms for unbounded-variation psi (W differentiable, W(0) = 0)
template <typename Wp>
double scale_compact_tbeta(const Wp& wprime, double beta, double x,
                           double sing_power = 0.0, double tol = 1e-10) {
    if (x == 0) return 0.0;
    auto f = [&](double y) { return std::exp(-beta * y) * wprime(y); };
    return integrate_power_left(f, 0.0, x, sing_power, tol);
}

template <typename Wp>
double scale_compact_tdelta(const Wp& wprime, double delta, double theta,
                            double x, double sing_power = 0.0,
                            double tol = 1e-10) {
    if (x == 0) return 0.0;
    auto f = [&](double y) { return std::exp(-delta * y) * wprime(y); };
    return std::exp(-(theta - delta) * x) *
           integrate_power_left(f, 0.0, x, sing_power, tol);
}

// --- the defining Laplace identity -------------------------------------------

struct LaplaceIdentityCheck {
    double residual;          // |int_0^A e^{-ux} W(x) dx - 1/psi(u)|
    double truncation_bound;  // tail estimate beyond A
    bool tail_bound_ok;       // W(A) respected the assumed envelope
};

// Checks int_0^infty e^{-ux} W(x) dx = 1/psi(u) for u > theta, truncating at
// A with the envelope W(x) <= e^{(theta+eps)x}/psi'(theta+eps).
inline LaplaceIdentityCheck verify_laplace_identity(
    const std::function<double(double)>& w, const LaplaceExponent& psi, double u,
    double A, double tol = 1e-9) {
    double theta = cramer_root(psi);
    if (u <= theta)
        throw std::domain_error("verify_laplace_identity: require u > theta");
    const double eps = 0.1;
    double dpsi = psi.has_deriv()
                      ? psi.deriv(theta + eps)
                      : (psi(theta + eps + 1e-6) - psi(theta + eps - 1e-6)) / 2e-6;
    double envelope = std::exp((theta + eps) * A) / dpsi;
    bool tail_ok = w(A) <= envelope * 1.0001;
    double bound =
        std::exp(-(u - theta - eps) * A) / ((u - theta - eps) * dpsi);
    auto f = [&](double x) { return std::exp(-u * x) * w(x); };
    QuadResult q = integrate(f, 0.0, A, tol, 1e-12, 4000);
    double residual = std::fabs(q.value - 1.0 / psi(u));
    return {residual, bound, tail_ok};
}

// --- strategy wrapper ---------------------------------------------------------

class ScaleFunction {
public:
    enum class Strategy { ClosedForm, ThmQuadrature, LaplaceInversion };

    static ScaleFunction for_exponent(const LaplaceExponent& psi,
                                      double tol = 1e-8) {
        if (psi.is_subordinator())
            throw std::domain_error(
                "ScaleFunction: monotone paths have no scale function");
        ScaleFunction w;
        w.psi_ = psi;
        w.theta_ = cramer_root(psi);
        w.tol_ = tol;
        switch (psi.family()) {
            case Family::Brownian:
                w.strategy_ = Strategy::ClosedForm;
                w.eval_ = [psi](double x) {
                    return scale_brownian(psi.param("sigma2"), psi.param("drift"),
                                          psi.param("kappa"), x);
                };
                break;
            case Family::Stable:
                w.strategy_ = Strategy::ClosedForm;
                w.eval_ = [psi](double x) {
                    return scale_stable(psi.param("alpha"), psi.param("kappa"),
                                        psi.param("c"), x);
                };
                break;
            case Family::PochhammerSN:
                w.strategy_ = Strategy::ClosedForm;
                w.eval_ = [psi](double x) {
                    return scale_tstable(psi.param("alpha"), x);
                };
                break;
            default: {
                w.strategy_ = Strategy::LaplaceInversion;
                double theta = w.theta_;
                double tl = tol;
                w.eval_ = [psi, theta, tl](double x) {
                    return scale_inversion_detail(psi, theta, x, tl).value;
                };
            }
        }
        return w;
    }

    // derived scale functions through the transformation formulas
    static ScaleFunction tbeta_of(const ScaleFunction& base, double beta) {
        ScaleFunction w = base;
        w.strategy_ = Strategy::ThmQuadrature;
        auto b = base.eval_;
        double tol = base.tol_;
        w.psi_ = t_beta(base.psi_, beta);
        w.theta_ = std::max(0.0, base.theta_ - beta);
        w.eval_ = [b, beta, tol](double x) { return scale_tbeta(b, beta, x, tol); };
        return w;
    }

    static ScaleFunction tdelta_theta_of(const ScaleFunction& base, double delta) {
        if (drift_at_zero(base.exponent()).value > 0 && base.theta_ == 0)
            throw std::domain_error("tdelta_theta_of: requires psi'(0+) <= 0");
        ScaleFunction w = base;
        w.strategy_ = Strategy::ThmQuadrature;
        auto b = base.eval_;
        double theta = base.theta_, tol = base.tol_;
        w.psi_ = t_transform(base.psi_, delta, theta);
        w.theta_ = 0.0;
        w.eval_ = [b, delta, theta, tol](double x) {
            return scale_tdelta_theta(b, delta, theta, x, tol);
        };
        return w;
    }

    double operator()(double x) const { return eval_(x); }
    double theta() const { return theta_; }
    Strategy strategy() const { return strategy_; }
    const LaplaceExponent& exponent() const { return psi_; }
    double est_error(double x) const {
        if (strategy_ == Strategy::LaplaceInversion)
            return scale_inversion_detail(psi_, theta_, x, tol_).est_error;
        return tol_;
    }

private:
    std::function<double(double)> eval_;
    LaplaceExponent psi_;
    double theta_ = 0;
    double tol_ = 1e-8;
    Strategy strategy_ = Strategy::LaplaceInversion;
};

}  // namespace levyx
