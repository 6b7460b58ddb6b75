#pragma once

// Entrance laws of positive self-similar Markov processes driven by
// spectrally negative Levy processes: integer moments, Beta factorizations,
// moment-level intertwining, the eigenfunction power series I_psi(z) and the
// diagonal action of the Erdelyi-Kober kernel on its coefficients.

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "levyx/exponent.hpp"
#include "levyx/expfunctional.hpp"
#include "levyx/specfun.hpp"
#include "levyx/transform.hpp"

namespace levyx {

// --- entrance law moments -------------------------------------------------------

enum class EntranceRegime { BertoinYor, RecurrentExtension };

struct EntranceLaw {
    EntranceRegime regime;
    double theta = 0;
    std::vector<double> m;  // m[n] = E[J^n], m[0] = 1

    double operator[](size_t n) const { return m.at(n); }
};

// E[J_psi^n] = prod_{k=1}^n psi(k) / Gamma(n+1), valid when either
// psi'(0+) >= 0 with no killing, or min(psi(0), psi'(0+)) < 0 with theta < 1.
inline EntranceLaw entrance_moments(const LaplaceExponent& psi, int N) {
    EntranceLaw law;
    double p0 = psi(0.0);
    double d0 = drift_at_zero(psi).value;
    if (d0 >= 0 && std::fabs(p0) < 1e-12 && psi.killing() == 0) {
        law.regime = EntranceRegime::BertoinYor;
        law.theta = 0;
    } else if (std::min(p0, d0) < 0) {
        law.theta = cramer_root(psi);
        if (!(law.theta < 1.0))
            throw std::domain_error("entrance_moments: recurrent regime needs theta < 1");
        law.regime = EntranceRegime::RecurrentExtension;
    } else {
        throw std::domain_error("entrance_moments: regime preconditions fail");
    }
    law.m.assign(N + 1, 1.0);
    for (int n = 1; n <= N; ++n) {
        double pk = psi(double(n));
        if (law.regime == EntranceRegime::RecurrentExtension && !(pk > 0))
            throw std::domain_error("entrance_moments: psi(k) must be positive");
        law.m[n] = law.m[n - 1] * pk / n;
    }
    return law;
}

// J_psi = B(1-theta, theta) / I_{T_{1-theta} psi_theta} with independent
// factors; requires the recurrent-extension regime.
inline DistributionFactor entrance_factorization(const LaplaceExponent& psi) {
    double p0 = psi(0.0);
    double d0 = drift_at_zero(psi).value;
    if (!(std::min(p0, d0) < 0))
        throw std::domain_error("entrance_factorization: need min(psi(0),psi'(0+)) < 0");
    double theta = cramer_root(psi);
    if (!(theta > 0 && theta < 1))
        throw std::domain_error("entrance_factorization: need theta in (0,1)");
    DistributionFactor out;
    if (theta > 1e-12)  // B(1,0) at theta -> 0 degenerates to the constant 1
        out.terms.push_back(FactorTerm::beta_rv(1.0 - theta, theta, 1.0));
    LaplaceExponent partner = t_beta(shifted(psi, theta), 1.0 - theta);
    auto mellin = [partner](double s) {
        // the factor enters as I^{-1}: mellin(p) = E[I^{p}] with p = -n
        double n = -s;
        if (std::fabs(n - std::nearbyint(n)) > 1e-9 || n < 0)
            throw std::domain_error("entrance factor: integer moments only");
        int N = int(std::nearbyint(n));
        if (N == 0) return 1.0;
        return sn_neg_moments(partner, N).m[N];
    };
    out.terms.push_back(FactorTerm::opaque(mellin, "I_{T_{1-theta}psi_theta}", -1.0));
    return out;
}

// --- Mellin profiles -------------------------------------------------------------

struct MellinProfile {
    std::vector<double> s;
    std::vector<std::complex<double>> value;
    double min_modulus = 0;
    std::vector<double> flagged;  // grid points with |M| below threshold
};

inline MellinProfile mellin_profile(
    const std::function<std::complex<double>(double)>& mellin,
    const std::vector<double>& s_grid, double threshold = 1e-8) {
    MellinProfile p;
    p.s = s_grid;
    p.min_modulus = std::numeric_limits<double>::infinity();
    for (double s : s_grid) {
        std::complex<double> v = mellin(s);
        p.value.push_back(v);
        double a = std::abs(v);
        p.min_modulus = std::min(p.min_modulus, a);
        if (a < threshold) p.flagged.push_back(s);
    }
    return p;
}

inline std::vector<double> uniform_grid(double lo, double hi, double step) {
    std::vector<double> g;
    for (double s = lo; s <= hi + 1e-12; s += step) g.push_back(s);
    return g;
}

// M(s) = Gamma(alpha(is+1)) / (Gamma(alpha) Gamma(is+1))  [psi_theta of the
// (alpha(u-1/alpha))_alpha family]
inline std::function<std::complex<double>(double)> mellin_pochhammer_entrance(
    double alpha) {
    return [alpha](double s) {
        std::complex<double> is(0.0, s);
        return std::exp(log_gamma(alpha * (is + 1.0)) - log_gamma(alpha) -
                        log_gamma(is + 1.0));
    };
}

// M(s) = Gamma(is+1)^{alpha-1}  [psi(u) = u^alpha]
inline std::function<std::complex<double>(double)> mellin_stable_entrance(
    double alpha) {
    return [alpha](double s) {
        std::complex<double> is(0.0, s);
        return std::exp((alpha - 1.0) * log_gamma(is + 1.0));
    };
}

// closed-form entrance Mellin for the families whose moment products
// telescope: psi(u) = u^alpha gives Gamma(is+1)^{alpha-1}, and
// (alpha(u - r))_alpha gives Gamma(alpha(is+1)-c)/(Gamma(alpha-c)Gamma(is+1))
// with c = alpha r.
inline std::function<std::complex<double>(double)> entrance_mellin(
    const LaplaceExponent& psi) {
    switch (psi.family()) {
        case Family::Stable:
            if (psi.param("c") == 0 && psi.param("kappa") == 0)
                return mellin_stable_entrance(psi.param("alpha"));
            break;
        case Family::PochhammerGeneralSN: {
            double alpha = psi.param("alpha");
            double sc = psi.param("scale"), c = sc * psi.param("shift");
            if (sc == alpha) {
                return [alpha, c](double s) {
                    std::complex<double> is(0.0, s);
                    return std::exp(log_gamma(alpha * (is + 1.0) - c) -
                                    log_gamma(alpha - c) - log_gamma(is + 1.0));
                };
            }
            break;
        }
        default: break;
    }
    throw std::domain_error("entrance_mellin: no Mellin representation available");
}

inline MellinProfile mellin_profile(const LaplaceExponent& psi,
                                    const std::vector<double>& s_grid,
                                    double threshold = 1e-8) {
    return mellin_profile(entrance_mellin(psi), s_grid, threshold);
}

// --- moment-level intertwining ---------------------------------------------------

struct IntertwiningFactor {
    int which_case;          // 1, 2 or 3
    FactorTerm beta;         // the Beta random factor
    LaplaceExponent partner; // exponent whose entrance law is the partner
    LaplaceExponent transformed;
    std::vector<double> moment_ratio;  // E[J_transformed^n]/E[J_partner^n], n = 0..N
    bool parameter_band_flagged = false;  // delta in [theta, theta+1) in case 1
    bool mellin_checked = false;          // nonvanishing scan ran
    double mellin_min_modulus = 0;        // evidence from the scan
};

// Case 1: J_{T_{delta,theta} psi} = B(1+theta-delta, delta) J_{psi_theta}
// Case 2: J_psi = B(1-theta, theta) J_{T_{-theta} psi_theta},
//         with T_{-theta} psi_theta(u) read as u psi(u)/(u - theta)
// Case 3: J_{T_{delta,0} psi} = B(1-delta, delta) J_psi
inline IntertwiningFactor intertwining_factor(const LaplaceExponent& psi,
                                              double delta, int which_case,
                                              int N = 6) {
    IntertwiningFactor out;
    out.which_case = which_case;
    double d0 = drift_at_zero(psi).value;
    switch (which_case) {
        case 1: {
            if (!(d0 < 0))
                throw std::domain_error("intertwining case 1: psi'(0+) < 0 required");
            double theta = cramer_root(psi);
            if (!(delta < theta + 1.0))
                throw std::domain_error("intertwining case 1: delta < theta + 1");
            out.parameter_band_flagged = (delta >= theta);
            out.beta = FactorTerm::beta_rv(1.0 + theta - delta, delta, 1.0);
            out.partner = shifted(psi, theta);
            out.transformed = t_transform(psi, delta, theta);
            break;
        }
        case 2: {
            double p0 = psi(0.0);
            if (!(std::min(p0, d0) < 0))
                throw std::domain_error("intertwining case 2: min(psi(0),psi'(0+)) < 0");
            double theta = cramer_root(psi);
            if (!(theta > 0 && theta < 1))
                throw std::domain_error("intertwining case 2: theta in (0,1) required");
            out.beta = FactorTerm::beta_rv(1.0 - theta, theta, 1.0);
            // partner exponent u -> u psi(u)/(u-theta), with the root limit
            auto base = psi;
            auto val = [base, theta](double u) {
                if (std::fabs(u - theta) < 1e-9) {
                    double dp = base.has_deriv()
                                    ? base.deriv(theta)
                                    : (base(theta + 1e-6) - base(theta - 1e-6)) / 2e-6;
                    return theta * dp;  // limit at the removable singularity
                }
                return u * base(u) / (u - theta);
            };
            out.partner = LaplaceExponent::wrap(val, psi.domain_floor(), 0.0);
            out.transformed = psi;  // the factorization targets J_psi itself
            break;
        }
        case 3: {
            if (std::fabs(d0) > 1e-9 || std::fabs(psi(0.0)) > 1e-12)
                throw std::domain_error("intertwining case 3: psi'(0+) = psi(0) = 0");
            if (!(delta < 1.0))
                throw std::domain_error("intertwining case 3: delta < 1 required");
            out.beta = FactorTerm::beta_rv(1.0 - delta, delta, 1.0);
            out.partner = psi;
            out.transformed = t_transform(psi, delta, 0.0);
            break;
        }
        default:
            throw std::domain_error("intertwining_factor: case must be 1, 2 or 3");
    }
    // moment ratios E[Beta^n] for n = 0..N
    out.moment_ratio.assign(N + 1, 1.0);
    for (int n = 1; n <= N; ++n) out.moment_ratio[n] = out.beta.mellin(double(n));
    // nonvanishing scan of the hypothesis Mellin where a closed form exists
    // (telescoping families); evidence, not proof
    std::function<std::complex<double>(double)> scan;
    if (psi.family() == Family::PochhammerGeneralSN &&
        psi.param("scale") == psi.param("alpha")) {
        double alpha = psi.param("alpha");
        double theta = cramer_root(psi);
        if (which_case == 1) {
            // partner psi_theta: shift parameter r - theta
            double c = alpha * (psi.param("shift") - theta);
            scan = [alpha, c](double s) {
                std::complex<double> is(0.0, s);
                return std::exp(log_gamma(alpha * (is + 1.0) - c) -
                                log_gamma(alpha - c) - log_gamma(is + 1.0));
            };
        } else if (which_case == 2) {
            // partner u psi(u)/(u-theta): base moments with a Gamma shift
            double c = alpha * psi.param("shift");
            scan = [alpha, c, theta](double s) {
                std::complex<double> is(0.0, s);
                return std::exp(log_gamma(alpha * (is + 1.0) - c) -
                                log_gamma(alpha - c) + log_gamma(1.0 - theta) -
                                log_gamma(is + 1.0 - theta));
            };
        }
    } else if (which_case == 3 && psi.family() == Family::Stable &&
               psi.param("c") == 0 && psi.param("kappa") == 0) {
        scan = mellin_stable_entrance(psi.param("alpha"));
    }
    if (scan) {
        MellinProfile prof = mellin_profile(scan, uniform_grid(-50, 50, 0.05));
        out.mellin_checked = true;
        out.mellin_min_modulus = prof.min_modulus;
        if (!(prof.min_modulus > 0))
            throw std::domain_error(
                "intertwining_factor: Mellin vanishes on the scan grid");
    }
    return out;
}

// --- eigenfunction power series --------------------------------------------------

struct PowerSeries {
    std::vector<double> a;  // a[0] = 1

    struct Eval {
        double value;
        double trunc_error;
        int terms;
    };

    Eval eval(double x, const SeriesEvalPolicy& pol = {}) const {
        double sum = 0, xn = 1;
        size_t n = 0;
        for (; n < a.size(); ++n) {
            double term = a[n] * xn;
            sum += term;
            xn *= x;
            if (n + 1 < a.size() &&
                std::fabs(a[n + 1] * xn) < pol.term_cutoff * std::fabs(sum) &&
                n > 2)
                return {sum, std::fabs(a[n + 1] * xn), int(n + 1)};
        }
        double tail = (a.size() >= 2)
                          ? std::fabs(a.back() * xn * x / a.size())
                          : 0.0;
        return {sum, tail, int(n)};
    }
};

// a_n(psi)^{-1} = prod_{k=1}^n psi(k)
inline PowerSeries eigen_series(const LaplaceExponent& psi, int N) {
    PowerSeries s;
    s.a.assign(N + 1, 1.0);
    for (int n = 1; n <= N; ++n) {
        double pk = psi(double(n));
        if (pk == 0.0)
            throw std::domain_error("eigen_series: psi(" + std::to_string(n) +
                                    ") = 0");
        s.a[n] = s.a[n - 1] / pk;
    }
    return s;
}

// termwise Erdelyi-Kober action: coefficient n picks up E[B(alpha+1,delta)^n]
inline PowerSeries ek_on_series(const PowerSeries& p, double alpha, double delta) {
    ErdelyiKoberParams{alpha, delta}.check();
    PowerSeries out;
    out.a.resize(p.a.size());
    double lg0 = log_gamma(alpha + delta + 1.0) - log_gamma(alpha + 1.0);
    for (size_t n = 0; n < p.a.size(); ++n) {
        double mult = std::exp(lg0 + log_gamma(alpha + 1.0 + n) -
                               log_gamma(alpha + delta + 1.0 + n));
        out.a[n] = p.a[n] * mult;
    }
    return out;
}

}  // namespace levyx
