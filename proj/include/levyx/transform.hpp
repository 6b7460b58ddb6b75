#pragma once

// The two-parameter map T_{delta,beta} on Laplace exponents,
//   T_{delta,beta} psi(u) = (u+beta-delta)/(u+beta) psi(u+beta)
//                           - (beta-delta)/beta psi(beta),
// together with the Esscher special case E_beta = T_{0,beta}, the composed
// map T^gamma_{delta,beta} = T_gamma o T_{delta,beta}, and the image of a
// Levy triple under T_{delta,beta}.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "levyx/exponent.hpp"

namespace levyx {

struct TransformParams {
    double delta = 0;
    double beta = 0;
    double gamma = 0;

    void check() const {
        if (delta < 0 || beta < 0 || gamma < 0)
            throw std::domain_error("transform: delta, beta, gamma must be >= 0");
    }
};

namespace detail {

inline void check_beta_zero_constraint(const LaplaceExponent& psi) {
    if (std::fabs(psi(0.0)) > 1e-12)
        throw std::domain_error("transform: beta = 0 requires psi(0) = 0");
    double d0 = drift_at_zero(psi).value;
    if (std::fabs(d0) > 1e-9)
        throw std::domain_error("transform: beta = 0 requires psi'(0+) = 0");
}

}  // namespace detail

// E_beta psi(u) = psi(u+beta) - psi(beta)
inline LaplaceExponent esscher(const LaplaceExponent& psi, double beta) {
    if (beta < 0) throw std::domain_error("esscher: beta must be >= 0");
    if (beta == 0) return psi;
    double at_beta = psi(beta);
    LaplaceExponent::RealFn deriv;
    if (psi.has_deriv())
        deriv = [psi, beta](double u) { return psi.deriv(u + beta); };
    LaplaceExponent::ComplexFn fc;
    if (psi.has_complex())
        fc = [psi, beta, at_beta](std::complex<double> z) {
            return psi.eval_complex(z + beta) - at_beta;
        };
    return LaplaceExponent::wrap(
        [psi, beta, at_beta](double u) { return psi(u + beta) - at_beta; },
        psi.domain_floor() - beta, 0.0, false, std::move(deriv), std::move(fc));
}

// psi_theta(u) = psi(u + theta); coincides with esscher at the root theta.
inline LaplaceExponent shifted(const LaplaceExponent& psi, double theta) {
    return esscher(psi, theta);
}

inline LaplaceExponent t_transform(const LaplaceExponent& psi, double delta,
                                   double beta) {
    TransformParams{delta, beta, 0}.check();
    if (beta == 0) {
        if (delta == 0) return psi;
        detail::check_beta_zero_constraint(psi);
        // T_{delta,0} psi(u) = psi(u) - delta psi(u)/u, extended by 0 at u = 0
        LaplaceExponent::RealFn deriv;
        LaplaceExponent::ComplexFn fc;
        if (psi.has_complex())
            fc = [psi, delta](std::complex<double> z) {
                return (1.0 - delta / z) * psi.eval_complex(z);
            };
        return LaplaceExponent::wrap(
            [psi, delta](double u) {
                if (u == 0.0) return 0.0;
                return psi(u) - delta * psi(u) / u;
            },
            psi.domain_floor(), 0.0, false, std::move(deriv), std::move(fc));
    }
    double at_beta = psi(beta);
    double second = (beta - delta) / beta * at_beta;
    double kill = psi.killing();
    auto value = [psi, delta, beta, second, kill](double u) {
        double v = u + beta;
        if (std::fabs(v) < 1e-14) {
            if (kill > 0)
                throw std::domain_error("transform: u = -beta not evaluable for killed base");
            return -delta * drift_at_zero(psi).value - second;
        }
        return (v - delta) / v * psi(v) - second;
    };
    LaplaceExponent::RealFn deriv;
    if (psi.has_deriv())
        deriv = [psi, delta, beta](double u) {
            double v = u + beta;
            return (v - delta) / v * psi.deriv(v) + delta / (v * v) * psi(v);
        };
    LaplaceExponent::ComplexFn fc;
    if (psi.has_complex())
        fc = [psi, delta, beta, second](std::complex<double> z) {
            std::complex<double> v = z + beta;
            return (v - delta) / v * psi.eval_complex(v) - second;
        };
    return LaplaceExponent::wrap(value, psi.domain_floor() - beta, 0.0, false,
                                 std::move(deriv), std::move(fc));
}

// T_beta = T_{beta,beta}
inline LaplaceExponent t_beta(const LaplaceExponent& psi, double beta) {
    return t_transform(psi, beta, beta);
}

// T^gamma_{delta,beta} by the closed form
//   u/(u+gamma) [ (u+gamma+beta-delta)/(u+gamma+beta) psi(u+gamma+beta)
//                 - (beta-delta)/beta psi(beta) ].
inline LaplaceExponent t_composed(const LaplaceExponent& psi, double gamma,
                                  double delta, double beta) {
    TransformParams{delta, beta, gamma}.check();
    if (gamma == 0) return t_transform(psi, delta, beta);
    double second = 0;
    if (beta > 0)
        second = (beta - delta) / beta * psi(beta);
    else if (delta > 0)
        detail::check_beta_zero_constraint(psi);
    auto value = [psi, gamma, delta, beta, second](double u) {
        if (u == 0.0) return 0.0;
        double v = u + gamma + beta;
        double inner;
        if (beta == 0 && std::fabs(u + gamma) < 1e-14)
            inner = -delta * drift_at_zero(psi).value;
        else
            inner = (v - delta) / v * psi(v) - second;
        return u / (u + gamma) * inner;
    };
    LaplaceExponent::ComplexFn fc;
    if (psi.has_complex())
        fc = [psi, gamma, delta, beta, second](std::complex<double> z) {
            std::complex<double> v = z + gamma + beta;
            return z / (z + gamma) *
                   ((v - delta) / v * psi.eval_complex(v) - second);
        };
    return LaplaceExponent::wrap(value, psi.domain_floor() - beta - gamma, 0.0,
                                 false, {}, std::move(fc));
}

// max over the grid of |T_gamma(T_beta psi)(u) - T_{gamma+beta} psi(u)|
inline double semigroup_residual(const LaplaceExponent& psi, double beta,
                                 double gamma, const std::vector<double>& grid) {
    if (beta + gamma < 0)
        throw std::domain_error("semigroup_residual: beta + gamma must be >= 0");
    LaplaceExponent lhs = t_beta(t_beta(psi, beta), gamma);
    LaplaceExponent rhs = t_beta(psi, gamma + beta);
    double worst = 0;
    for (double u : grid) worst = std::max(worst, std::fabs(lhs(u) - rhs(u)));
    return worst;
}

// Image of a Levy triple under T_{delta,beta}: killing drops, the Gaussian
// coefficient is kept, the jump measure becomes
//   e^{beta x} Pi(dx) + delta e^{beta x} Pi_bar(x) dx
//   + delta (kappa/beta) e^{beta x} dx      on (-inf, 0),
// and the linear coefficient is fixed by one-point calibration at u = 1
// against the defining formula.
inline LevyTriple transformed_triple(const LevyTriple& t, double delta,
                                     double beta, double tol = 1e-10) {
    TransformParams{delta, beta, 0}.check();
    if (beta == 0 && t.kappa > 0)
        throw std::domain_error("transformed_triple: beta = 0 with killing");
    LevyTriple out;
    out.kappa = 0;
    out.sigma2 = t.sigma2;
    // Esscher tilt of the original components
    for (const auto& c : t.jumps.components) {
        if (c.kind == JumpComponent::Kind::Atom) {
            out.jumps.components.push_back(JumpComponent::atom(
                c.position, c.weight * std::exp(beta * c.position)));
        } else {
            auto dens = c.density;
            out.jumps.components.push_back(JumpComponent::make_density(
                [dens, beta](double x) { return std::exp(beta * x) * dens(x); },
                c.weight, c.small_x_power));
        }
    }
    if (delta > 0 && !t.jumps.empty()) {
        // delta e^{beta x} Pi_bar(x) dx; the tail inherits one power less
        // of the small-jump singularity
        JumpMeasure base = t.jumps;
        double sing = 0;
        for (const auto& c : t.jumps.components)
            sing = std::max(sing, c.small_x_power - 1.0);
        out.jumps.components.push_back(JumpComponent::make_density(
            [base, beta](double x) { return std::exp(beta * x) * base.tail(-x); },
            delta, sing));
    }
    if (delta > 0 && t.kappa > 0) {
        // delta kappa e^{beta x}: expanding -delta E_beta Phi for the killed
        // part gives delta kappa [1/(u+beta) - 1/beta], the exponent of this
        // density
        out.jumps.components.push_back(JumpComponent::make_density(
            [beta](double x) { return std::exp(beta * x); }, delta * t.kappa, 0.0,
            [beta](double x) { return std::exp(-beta * x) / beta; }));
    }
    // calibrate the linear coefficient at u = 1
    out.a = 0;
    LaplaceExponent base = LaplaceExponent::from_triple(t, tol);
    double target = t_transform(base, delta, beta)(1.0);
    out.a = target - eval_lk_triple(out, 1.0, tol);
    return out;
}

}  // namespace levyx
