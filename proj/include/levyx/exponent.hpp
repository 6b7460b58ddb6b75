#pragma once

// Laplace exponents of (possibly killed) spectrally negative Levy processes
// and subordinators: closed-form families, Levy-Khintchine triples, the
// ladder exponent, the largest nonnegative root, and validation.

#include <algorithm>
#include <complex>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "levyx/quadrature.hpp"
#include "levyx/specfun.hpp"

namespace levyx {

inline constexpr double neg_inf = -std::numeric_limits<double>::infinity();

// (e^y - 1 - y) / y^2, stable for small |y|
inline double expm1_m1_over_y2(double y) {
    if (std::fabs(y) < 1e-3) {
        return 0.5 + y * (1.0 / 6 + y * (1.0 / 24 + y * (1.0 / 120 + y / 720.0)));
    }
    return (std::expm1(y) - y) / (y * y);
}

// --- jump measures ----------------------------------------------------------

// One weighted piece of a jump measure concentrated on (-inf, 0).
struct JumpComponent {
    enum class Kind { Atom, Density };
    Kind kind = Kind::Density;
    double weight = 1.0;
    double position = -1.0;                     // Atom only, < 0
    std::function<double(double)> density;      // Density: value at x < 0
    std::function<double(double)> tail;         // optional: int_{-inf}^{-x} density
    double small_x_power = 0.0;                 // density ~ C |x|^{-1-p} near 0
    double tail_decay_power = 0.0;              // density ~ C |x|^{-1-q} at -inf; 0 = faster

    static JumpComponent atom(double x0, double w) {
        if (x0 >= 0) throw std::domain_error("jump atom must sit on (-inf,0)");
        JumpComponent c;
        c.kind = Kind::Atom;
        c.position = x0;
        c.weight = w;
        return c;
    }
    static JumpComponent make_density(std::function<double(double)> f, double w,
                                      double sing_power = 0.0,
                                      std::function<double(double)> tail = {},
                                      double decay_power = 0.0) {
        JumpComponent c;
        c.kind = Kind::Density;
        c.density = std::move(f);
        c.weight = w;
        c.small_x_power = sing_power;
        c.tail = std::move(tail);
        c.tail_decay_power = decay_power;
        return c;
    }
};

struct JumpMeasure {
    std::vector<JumpComponent> components;

    bool empty() const { return components.empty(); }

    // tail Pi_bar(x) = Pi(-inf, -x) for x > 0
    double tail(double x) const {
        if (x <= 0) throw std::domain_error("jump tail defined for x > 0");
        double t = 0;
        for (const auto& c : components) {
            if (c.kind == JumpComponent::Kind::Atom) {
                if (x < -c.position) t += c.weight;
            } else if (c.tail) {
                t += c.weight * c.tail(x);
            } else if (c.tail_decay_power > 0) {
                t += c.weight * integrate_to_inf_power(
                        [&](double r) { return c.density(-r); }, x,
                        c.tail_decay_power, 1e-12);
            } else {
                t += c.weight * integrate_to_inf(
                        [&](double r) { return c.density(-r); }, x, 1e-12);
            }
        }
        return t;
    }

    // int (1 wedge x^2) Pi(dx), the integrability requirement
    double integrability_proxy() const {
        double s = 0;
        for (const auto& c : components) {
            if (c.kind == JumpComponent::Kind::Atom) {
                double x = c.position;
                s += c.weight * std::min(1.0, x * x);
            } else {
                auto f2 = [&](double r) { return r * r * c.density(-r); };
                s += c.weight * integrate_power_left(f2, 0.0, 1.0,
                                                     1.0 - c.small_x_power, 1e-9);
                s += c.weight *
                     ((c.tail_decay_power > 0)
                          ? integrate_to_inf_power(
                                [&](double r) { return c.density(-r); }, 1.0,
                                c.tail_decay_power, 1e-9)
                          : integrate_to_inf(
                                [&](double r) { return c.density(-r); }, 1.0,
                                1e-9))
                         .value;
            }
        }
        return s;
    }
};

struct LevyTriple {
    double kappa = 0;   // killing rate >= 0
    double a = 0;       // linear coefficient
    double sigma2 = 0;  // Gaussian coefficient >= 0
    JumpMeasure jumps;
};

// psi(u) = -kappa + a u + sigma^2 u^2 / 2
//          + int (e^{ux} - 1 - u x 1_{|x|<1}) Pi(dx),
// by adaptive quadrature split at x = -1; the small-jump integrand is
// evaluated through its x^2 factorization to survive the 0- endpoint.
inline double eval_lk_triple(const LevyTriple& t, double u, double tol = 1e-10) {
    if (t.kappa < 0 || t.sigma2 < 0)
        throw std::domain_error("eval_lk_triple: kappa and sigma2 must be >= 0");
    double v = -t.kappa + t.a * u + 0.5 * t.sigma2 * u * u;
    for (const auto& c : t.jumps.components) {
        if (c.kind == JumpComponent::Kind::Atom) {
            double x = c.position;
            double comp = (std::fabs(x) < 1.0) ? u * x : 0.0;
            v += c.weight * (std::expm1(u * x) - comp);
            continue;
        }
        // small jumps on (-1,0): (e^{ux} - 1 - ux) = u^2 x^2 h(ux)
        auto small = [&](double r) {
            double x = -r;
            return u * u * (x * x) * expm1_m1_over_y2(u * x) * c.density(x);
        };
        QuadResult qs =
            integrate_power_left(small, 0.0, 1.0, 1.0 - c.small_x_power, tol / 4);
        // large jumps on (-inf,-1]: e^{ux} - 1
        auto large = [&](double r) { return std::expm1(-u * r) * c.density(-r); };
        QuadResult ql = (c.tail_decay_power > 0 && u >= 0)
                            ? integrate_to_inf_power(large, 1.0,
                                                     c.tail_decay_power, tol / 4)
                            : integrate_to_inf(large, 1.0, tol / 4);
        if (!qs.converged || !ql.converged)
            throw std::runtime_error("eval_lk_triple: quadrature failed to converge");
        v += c.weight * (qs.value + ql.value);
    }
    return v;
}

// --- Laplace exponents ------------------------------------------------------

enum class Family {
    Brownian,
    Stable,
    PochhammerSN,        // (u-1)_alpha
    LampertiStableSN,    // ((alpha-1)(u-1))_alpha
    PochhammerGeneralSN, // (scale (u - shift))_alpha
    StableSub,           // phi(u) = u^alpha
    LampertiStableSub,   // phi(u) = (alpha u)_alpha
    PoissonSub,          // phi(u) = 1 - q^u
    CPExpSub,            // phi(u) = c u/(u+b) + kappa
    Custom,
};

// A Laplace exponent in the spectrally negative convention,
// E[e^{u xi_t}] = e^{psi(u) t}.  Subordinators are carried as psi = -phi
// with a convention flag.  Immutable after construction.
class LaplaceExponent {
public:
    using RealFn = std::function<double(double)>;
    using ComplexFn = std::function<std::complex<double>(std::complex<double>)>;

    LaplaceExponent() = default;

    double operator()(double u) const {
        if (u < ell_ || (u == ell_ && !floor_closed_))
            throw std::domain_error("LaplaceExponent: argument below domain floor");
        return eval_(u);
    }
    double phi(double u) const { return -(*this)(u); }

    bool has_complex() const { return static_cast<bool>(eval_c_); }
    std::complex<double> eval_complex(std::complex<double> z) const {
        if (!eval_c_)
            throw std::runtime_error("LaplaceExponent: no complex continuation");
        return eval_c_(z);
    }

    bool has_deriv() const { return static_cast<bool>(deriv_); }
    double deriv(double u) const {
        if (!deriv_) throw std::runtime_error("LaplaceExponent: no analytic derivative");
        return deriv_(u);
    }

    double domain_floor() const { return ell_; }
    double killing() const { return kappa_; }
    bool is_subordinator() const { return subordinator_; }
    Family family() const { return family_; }
    double param(const std::string& k) const { return params_.at(k); }
    bool has_param(const std::string& k) const { return params_.count(k) > 0; }
    const std::map<std::string, double>& params() const { return params_; }

    // ---- factories ----

    // psi(u) = -kappa + drift u + sigma2 u^2/2
    static LaplaceExponent brownian(double sigma2, double drift, double kappa = 0) {
        require(sigma2 >= 0 && kappa >= 0, "brownian: sigma2, kappa >= 0");
        LaplaceExponent e;
        e.family_ = Family::Brownian;
        e.params_ = {{"sigma2", sigma2}, {"drift", drift}, {"kappa", kappa}};
        e.kappa_ = kappa;
        e.ell_ = neg_inf;
        e.eval_ = [=](double u) { return -kappa + drift * u + 0.5 * sigma2 * u * u; };
        e.eval_c_ = [=](std::complex<double> z) {
            return -kappa + drift * z + 0.5 * sigma2 * z * z;
        };
        e.deriv_ = [=](double u) { return drift + sigma2 * u; };
        return e;
    }

    // psi(u) = (u+c)^alpha - c^alpha - kappa, 1 < alpha < 2
    static LaplaceExponent stable(double alpha, double c = 0, double kappa = 0) {
        require(alpha > 1 && alpha < 2, "stable: alpha must be in (1,2)");
        require(c >= 0 && kappa >= 0, "stable: c, kappa >= 0");
        LaplaceExponent e;
        e.family_ = Family::Stable;
        e.params_ = {{"alpha", alpha}, {"c", c}, {"kappa", kappa}};
        e.kappa_ = kappa;
        e.ell_ = -c;
        e.floor_closed_ = true;
        e.eval_ = [=](double u) {
            return std::pow(u + c, alpha) - std::pow(c, alpha) - kappa;
        };
        e.eval_c_ = [=](std::complex<double> z) {
            return std::pow(z + c, alpha) - std::pow(c, alpha) - kappa;
        };
        e.deriv_ = [=](double u) { return alpha * std::pow(u + c, alpha - 1); };
        return e;
    }

    // psi(u) = (scale (u - shift))_alpha
    static LaplaceExponent pochhammer_general(double alpha, double scale,
                                              double shift) {
        require(alpha > 0 && scale > 0, "pochhammer_general: alpha, scale > 0");
        LaplaceExponent e;
        e.family_ = Family::PochhammerGeneralSN;
        e.params_ = {{"alpha", alpha}, {"scale", scale}, {"shift", shift}};
        e.kappa_ = -pochhammer(-scale * shift, alpha);  // psi(0) = -kappa
        if (std::fabs(e.kappa_) < 1e-300) e.kappa_ = 0;
        e.ell_ = shift - 1.0 / scale;  // first Gamma pole below the origin
        e.floor_closed_ = true;
        e.eval_ = [=](double u) { return pochhammer(scale * (u - shift), alpha); };
        e.eval_c_ = [=](std::complex<double> z) {
            std::complex<double> x = scale * (z - shift);
            return std::exp(log_gamma(x + alpha) - log_gamma(x));
        };
        e.deriv_ = [=](double u) {
            return scale * pochhammer_deriv(scale * (u - shift), alpha);
        };
        return e;
    }

    static LaplaceExponent pochhammer_sn(double alpha) {
        require(alpha > 1 && alpha < 2, "pochhammer_sn: alpha must be in (1,2)");
        LaplaceExponent e = pochhammer_general(alpha, 1.0, 1.0);
        e.family_ = Family::PochhammerSN;
        e.params_ = {{"alpha", alpha}};
        return e;
    }

    static LaplaceExponent lamperti_stable_sn(double alpha) {
        require(alpha > 1 && alpha < 2, "lamperti_stable_sn: alpha must be in (1,2)");
        LaplaceExponent e = pochhammer_general(alpha, alpha - 1.0, 1.0);
        e.family_ = Family::LampertiStableSN;
        e.params_ = {{"alpha", alpha}};
        return e;
    }

    // phi(u) = u^alpha, 0 < alpha < 1
    static LaplaceExponent stable_sub(double alpha) {
        require(alpha > 0 && alpha < 1, "stable_sub: alpha must be in (0,1)");
        LaplaceExponent e;
        e.family_ = Family::StableSub;
        e.params_ = {{"alpha", alpha}};
        e.subordinator_ = true;
        e.ell_ = 0;
        e.floor_closed_ = true;
        e.eval_ = [=](double u) { return -std::pow(u, alpha); };
        e.eval_c_ = [=](std::complex<double> z) { return -std::pow(z, alpha); };
        e.deriv_ = [=](double u) { return -alpha * std::pow(u, alpha - 1); };
        return e;
    }

    // phi(u) = (alpha u)_alpha, 0 < alpha < 1
    static LaplaceExponent lamperti_stable_sub(double alpha) {
        require(alpha > 0 && alpha < 1,
                "lamperti_stable_sub: alpha must be in (0,1)");
        LaplaceExponent e;
        e.family_ = Family::LampertiStableSub;
        e.params_ = {{"alpha", alpha}};
        e.subordinator_ = true;
        e.ell_ = -1.0 / alpha;
        e.floor_closed_ = true;
        e.eval_ = [=](double u) { return -pochhammer(alpha * u, alpha); };
        e.eval_c_ = [=](std::complex<double> z) {
            std::complex<double> x = alpha * z;
            return -std::exp(log_gamma(x + alpha) - log_gamma(x));
        };
        e.deriv_ = [=](double u) { return -alpha * pochhammer_deriv(alpha * u, alpha); };
        return e;
    }

    // phi(u) = 1 - q^u: unit-rate jumps of size -log q, so that e^{-xi}
    // steps through powers of q and phi(k) = 1 - q^k.
    static LaplaceExponent poisson_sub(double q) {
        require(q > 0 && q < 1, "poisson_sub: q must be in (0,1)");
        LaplaceExponent e;
        e.family_ = Family::PoissonSub;
        e.params_ = {{"q", q}};
        e.subordinator_ = true;
        e.ell_ = neg_inf;
        double lq = std::log(q);
        e.eval_ = [=](double u) { return -(1.0 - std::exp(u * lq)); };
        e.eval_c_ = [=](std::complex<double> z) { return -(1.0 - std::exp(z * lq)); };
        e.deriv_ = [=](double u) { return lq * std::exp(u * lq); };
        return e;
    }

    // phi(u) = c u / (u + b) + kappa
    static LaplaceExponent cp_exp_sub(double c, double b, double kappa = 0) {
        require(c > 0 && b > 0 && kappa >= 0, "cp_exp_sub: c, b > 0, kappa >= 0");
        LaplaceExponent e;
        e.family_ = Family::CPExpSub;
        e.params_ = {{"c", c}, {"b", b}, {"kappa", kappa}};
        e.subordinator_ = true;
        e.kappa_ = kappa;
        e.ell_ = -b;
        e.eval_ = [=](double u) { return -(c * u / (u + b) + kappa); };
        e.eval_c_ = [=](std::complex<double> z) { return -(c * z / (z + b) + kappa); };
        e.deriv_ = [=](double u) { return -c * b / ((u + b) * (u + b)); };
        return e;
    }

    static LaplaceExponent from_triple(LevyTriple t, double tol = 1e-10) {
        auto shared = std::make_shared<LevyTriple>(std::move(t));
        LaplaceExponent e;
        e.family_ = Family::Custom;
        e.kappa_ = shared->kappa;
        e.ell_ = 0;
        e.floor_closed_ = true;
        e.triple_ = shared;
        e.eval_ = [shared, tol](double u) { return eval_lk_triple(*shared, u, tol); };
        return e;
    }

    // arbitrary evaluator (used by the transform module); the wrapped
    // callable is responsible for its own endpoint limits
    static LaplaceExponent wrap(RealFn f, double ell, double kappa,
                                bool subordinator = false, RealFn deriv = {},
                                ComplexFn fc = {}) {
        LaplaceExponent e;
        e.family_ = Family::Custom;
        e.eval_ = std::move(f);
        e.ell_ = ell;
        e.floor_closed_ = true;
        e.kappa_ = kappa;
        e.subordinator_ = subordinator;
        e.deriv_ = std::move(deriv);
        e.eval_c_ = std::move(fc);
        return e;
    }

    bool has_triple() const { return static_cast<bool>(triple_); }
    const LevyTriple& triple() const {
        if (!triple_) throw std::runtime_error("LaplaceExponent: no stored triple");
        return *triple_;
    }

private:
    static void require(bool ok, const char* msg) {
        if (!ok) throw std::domain_error(msg);
    }

    RealFn eval_;
    ComplexFn eval_c_;
    RealFn deriv_;
    double ell_ = neg_inf;
    bool floor_closed_ = false;  // u == ell_ itself is evaluable
    double kappa_ = 0;
    bool subordinator_ = false;
    Family family_ = Family::Custom;
    std::map<std::string, double> params_;
    std::shared_ptr<LevyTriple> triple_;
};

// --- Levy-Khintchine triples for the families with known jump structure -----

inline LevyTriple to_triple(const LaplaceExponent& psi) {
    LevyTriple t;
    switch (psi.family()) {
        case Family::Brownian: {
            t.kappa = psi.param("kappa");
            t.a = psi.param("drift");
            t.sigma2 = psi.param("sigma2");
            return t;
        }
        case Family::Stable: {
            if (psi.param("c") != 0)
                throw std::domain_error("to_triple: tempered stable not supported");
            double alpha = psi.param("alpha");
            double calpha = alpha * (alpha - 1.0) / gamma_fn(2.0 - alpha);
            t.kappa = psi.param("kappa");
            // restore the truncated compensation over (-inf,-1]
            t.a = alpha / gamma_fn(2.0 - alpha);
            t.jumps.components.push_back(JumpComponent::make_density(
                [=](double x) { return std::pow(-x, -1.0 - alpha); }, calpha, alpha,
                [=](double x) { return std::pow(x, -alpha) / alpha; }, alpha));
            return t;
        }
        case Family::StableSub: {
            double alpha = psi.param("alpha");
            double w = alpha / gamma_fn(1.0 - alpha);
            t.a = -w / (1.0 - alpha);  // = int_{(-1,0)} x Pi(dx)
            t.jumps.components.push_back(JumpComponent::make_density(
                [=](double x) { return std::pow(-x, -1.0 - alpha); }, w, alpha,
                [=](double x) { return std::pow(x, -alpha) / alpha; }, alpha));
            return t;
        }
        case Family::PoissonSub: {
            double q = psi.param("q");
            double j = -std::log(q);  // jump size, unit rate
            t.jumps.components.push_back(JumpComponent::atom(-j, 1.0));
            if (j < 1.0) t.a = -j;  // cancel the compensation of a small atom
            return t;
        }
        case Family::CPExpSub: {
            double c = psi.param("c"), b = psi.param("b");
            t.kappa = psi.param("kappa");
            t.jumps.components.push_back(JumpComponent::make_density(
                [=](double x) { return b * std::exp(b * x); }, c, 0.0,
                [=](double x) { return std::exp(-b * x); }));
            // a = int_{(-1,0)} x Pi(dx)
            t.a = -c * (1.0 - std::exp(-b) * (1.0 + b)) / b;
            return t;
        }
        default:
            throw std::domain_error("to_triple: family has no implemented triple");
    }
}

// --- derived quantities -----------------------------------------------------

struct DriftAtZero {
    double value;
    bool killed;  // psi(0) != 0
};

// psi'(0+): analytic when available, else finite difference with one
// Richardson level (step h).
inline DriftAtZero drift_at_zero(const LaplaceExponent& psi, double h = 1e-6) {
    bool killed = std::fabs(psi(0.0)) > 1e-14;
    if (psi.has_deriv()) return {psi.deriv(0.0), killed};
    if (psi.domain_floor() < -2.0 * h) {
        auto central = [&](double step) {
            return (psi(step) - psi(-step)) / (2.0 * step);
        };
        return {(4.0 * central(h / 2) - central(h)) / 3.0, killed};
    }
    auto one_sided = [&](double step) {
        return (-3.0 * psi(0.0) + 4.0 * psi(step) - psi(2.0 * step)) / (2.0 * step);
    };
    return {(4.0 * one_sided(h / 2) - one_sided(h)) / 3.0, killed};
}

// theta = sup{ lambda >= 0 : psi(lambda) = 0 }, by bracket doubling and
// bisection.  Returns 0 when psi(0) = 0 and psi'(0+) >= 0.
inline double cramer_root(const LaplaceExponent& psi, double tol = 1e-12) {
    double p0 = psi(0.0);
    if (std::fabs(p0) < 1e-300) {
        if (drift_at_zero(psi).value >= 0) return 0.0;
    }
    double hi = 1.0;
    int guard = 0;
    while (psi(hi) <= 0) {
        hi *= 2.0;
        if (++guard > 60)
            throw std::runtime_error("cramer_root: no positive bracket found");
    }
    double lo = hi / 2.0;
    guard = 0;
    while (psi(lo) >= 0) {
        lo /= 2.0;
        if (++guard > 200) return 0.0;  // psi >= 0 on the probed range
    }
    while (hi - lo > tol) {
        double m = 0.5 * (lo + hi);
        if (psi(m) > 0)
            hi = m;
        else
            lo = m;
    }
    return 0.5 * (lo + hi);
}

// Phi(u) = psi(u)/u with Phi(0+) = psi'(0+); requires psi(0) = 0.
class LadderExponent {
public:
    explicit LadderExponent(LaplaceExponent psi) : base_(std::move(psi)) {
        if (std::fabs(base_(0.0)) > 1e-12)
            throw std::domain_error("ladder: psi(0) must vanish");
        drift0_ = drift_at_zero(base_).value;
    }
    double operator()(double u) const {
        if (std::fabs(u) < 1e-12) return drift0_;
        return base_(u) / u;
    }
    const LaplaceExponent& base() const { return base_; }

private:
    LaplaceExponent base_;
    double drift0_;
};

inline LadderExponent ladder(const LaplaceExponent& psi) {
    return LadderExponent(psi);
}

// --- validation -------------------------------------------------------------

struct ValidationCheck {
    std::string name;
    bool pass;
    double worst;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

inline ValidationReport validate(const LaplaceExponent& psi,
                                 const std::vector<double>& grid,
                                 double tol = 1e-9) {
    ValidationReport rep;
    std::vector<double> g = grid;
    std::sort(g.begin(), g.end());
    double worst = 0;
    for (size_t i = 0; i + 2 < g.size(); ++i) {
        double u1 = g[i], u2 = g[i + 1], u3 = g[i + 2];
        double lam = (u2 - u1) / (u3 - u1);
        double interp = (1 - lam) * psi(u1) + lam * psi(u3);
        worst = std::min(worst, interp - psi(u2));
    }
    rep.checks.push_back({"convexity", worst >= -tol, worst});
    double r = psi(0.0) + psi.killing();
    rep.checks.push_back({"psi(0)=-kappa", std::fabs(r) <= tol, r});
    if (psi.is_subordinator()) {
        double mono = 0, conc = 0;
        for (size_t i = 0; i + 1 < g.size(); ++i)
            mono = std::min(mono, psi.phi(g[i + 1]) - psi.phi(g[i]));
        for (size_t i = 0; i + 2 < g.size(); ++i) {
            double u1 = g[i], u2 = g[i + 1], u3 = g[i + 2];
            double lam = (u2 - u1) / (u3 - u1);
            double interp = (1 - lam) * psi.phi(u1) + lam * psi.phi(u3);
            conc = std::min(conc, psi.phi(u2) - interp);
        }
        rep.checks.push_back({"phi non-decreasing", mono >= -tol, mono});
        rep.checks.push_back({"phi concave", conc >= -tol, conc});
    }
    return rep;
}

}  // namespace levyx
