#pragma once

// Self-contained special-function kernel: gamma family (real and complex
// log-gamma, digamma, beta), incomplete gamma, generalized and incomplete
// Mittag-Leffler series, q-Pochhammer symbols and the Wright 2F2 series.

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

namespace levyx {

inline constexpr double pi = 3.14159265358979323846264338327950288;
inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;

struct SeriesEvalPolicy {
    double term_cutoff = 1e-16;  // relative to the partial sum
    int max_terms = 500;
    double condition_alarm = 1e4;  // |largest term| / |sum|
};

struct SeriesValue {
    double value = 0;
    double trunc_error = 0;  // >= |first omitted term|
    int terms = 0;
    double condition = 1;
    operator double() const { return value; }
};

namespace detail {

// Lanczos approximation, g = 7, 9 coefficients. Valid for Re(z) >= 0.5.
inline constexpr double lanczos_c[9] = {
    0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,     12.507343278686905,
    -0.13857109526572012,     9.9843695780195716e-6,  1.5056327351493116e-7};

template <typename T>
T lanczos_log_gamma_half(T z) {
    // caller guarantees Re(z) >= 0.5
    z -= 1.0;
    T x = lanczos_c[0];
    for (int k = 1; k < 9; ++k) x += lanczos_c[k] / (z + static_cast<double>(k));
    T t = z + 7.5;
    return 0.91893853320467274178 + (z + 0.5) * std::log(t) - t + std::log(x);
}

// sin(pi*x) with argument reduction; accurate near integers.
inline double sin_pi(double x) {
    double r = x - 2.0 * std::floor(x / 2.0);  // r in [0,2)
    if (r < 0.5) return std::sin(pi * r);
    if (r < 1.5) return std::sin(pi * (1.0 - r));
    return std::sin(pi * (r - 2.0));
}

// log(sin(pi*z)) stable for large |Im z|.
inline std::complex<double> log_sin_pi(std::complex<double> z) {
    if (z.imag() < 0) return std::conj(log_sin_pi(std::conj(z)));
    if (z.imag() > 4.0) {
        // sin(pi z) = e^{-i pi z} (e^{2 i pi z} - 1) / (2i)
        std::complex<double> i(0, 1);
        std::complex<double> w = std::exp(2.0 * i * pi * z);  // |w| small
        return -i * pi * z + std::log(-(1.0 - w)) - std::log(2.0 * i);
    }
    return std::log(std::sin(pi * z));
}

}  // namespace detail

// --- real gamma family ------------------------------------------------------

struct SignedLog {
    double log_abs;
    int sign;  // -1, 0 (value is exactly zero), +1
};

// log |Gamma(x)| with sign; poles at nonpositive integers give log_abs = +inf.
inline SignedLog log_gamma_signed(double x) {
    if (std::isnan(x)) return {std::numeric_limits<double>::quiet_NaN(), 0};
    if (x > 0.5) return {detail::lanczos_log_gamma_half(x), 1};
    double s = detail::sin_pi(x);
    if (s == 0.0)
        return {std::numeric_limits<double>::infinity(), 1};  // pole
    double la = std::log(pi) - std::log(std::fabs(s)) -
                detail::lanczos_log_gamma_half(1.0 - x);
    return {la, s > 0 ? 1 : -1};
}

inline double log_gamma(double x) {
    if (x <= 0.0 && x == std::floor(x))
        return std::numeric_limits<double>::infinity();
    return log_gamma_signed(x).log_abs;
}

inline double gamma_fn(double x) {
    SignedLog sl = log_gamma_signed(x);
    if (std::isinf(sl.log_abs) && sl.log_abs > 0)
        return std::numeric_limits<double>::infinity();
    return sl.sign * std::exp(sl.log_abs);
}

// 1/Gamma(x); entire, zero at nonpositive integers.
inline double rgamma(double x) {
    SignedLog sl = log_gamma_signed(x);
    if (std::isinf(sl.log_abs) && sl.log_abs > 0) return 0.0;
    return sl.sign * std::exp(-sl.log_abs);
}

inline std::complex<double> log_gamma(std::complex<double> z) {
    if (z.real() >= 0.5) return detail::lanczos_log_gamma_half(z);
    // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
    return std::log(pi) - detail::log_sin_pi(z) -
           detail::lanczos_log_gamma_half(1.0 - z);
}

inline std::complex<double> gamma_fn(std::complex<double> z) {
    return std::exp(log_gamma(z));
}

inline double digamma(double x) {
    if (x <= 0.0 && x == std::floor(x))
        throw std::domain_error("digamma: pole at nonpositive integer");
    double result = 0.0;
    if (x < 0.5) {
        // psi(x) = psi(1-x) - pi cot(pi x)
        result -= pi * std::cos(pi * x) / detail::sin_pi(x);
        x = 1.0 - x;
    }
    while (x < 6.0) {
        result -= 1.0 / x;
        x += 1.0;
    }
    double inv = 1.0 / x, inv2 = inv * inv;
    result += std::log(x) - 0.5 * inv;
    // Bernoulli tail through x^-12
    result -= inv2 * (1.0 / 12 + inv2 * (-1.0 / 120 + inv2 * (1.0 / 252 +
              inv2 * (-1.0 / 240 + inv2 * (1.0 / 132 - inv2 * 691.0 / 32760)))));
    return result;
}

inline double beta_fn(double a, double b) {
    return std::exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b));
}

// Pochhammer symbol (x)_s = Gamma(x+s)/Gamma(x), continuous through the
// zeros induced by poles of Gamma(x).
inline double pochhammer(double x, double s) {
    SignedLog num = log_gamma_signed(x + s);
    SignedLog den = log_gamma_signed(x);
    if (std::isinf(num.log_abs)) {
        if (std::isinf(den.log_abs)) {
            // both arguments at poles: finite limit Gamma-residue ratio
            long m = std::lround(-x), n = std::lround(-(x + s));
            double lg = log_gamma(m + 1.0) - log_gamma(n + 1.0);
            int sign = ((m - n) % 2 == 0) ? 1 : -1;
            return sign * std::exp(lg);
        }
        throw std::domain_error("pochhammer: pole at x+s = " +
                                std::to_string(x + s));
    }
    if (std::isinf(den.log_abs)) return 0.0;
    return num.sign * den.sign * std::exp(num.log_abs - den.log_abs);
}

// d/dx (x)_s, with the finite limit at nonpositive-integer x.
inline double pochhammer_deriv(double x, double s) {
    double r = x - std::nearbyint(x);
    if (x <= 0.25 && std::fabs(r) < 1e-7) {
        long m = std::lround(-x);
        int sign = (m % 2 == 0) ? 1 : -1;
        return sign * std::exp(log_gamma(m + 1.0)) * gamma_fn(s - m);
    }
    return pochhammer(x, s) * (digamma(x + s) - digamma(x));
}

// --- incomplete gamma -------------------------------------------------------

namespace detail {

inline double gamma_p_series(double a, double x) {
    double ap = a, sum = 1.0 / a, del = sum;
    for (int n = 0; n < 500; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-16)
            return sum * std::exp(-x + a * std::log(x) - log_gamma(a));
    }
    throw std::runtime_error("gamma_p_series: no convergence");
}

inline double gamma_q_cf(double a, double x) {
    const double fpmin = 1e-300;
    double b = x + 1.0 - a, c = 1.0 / fpmin, d = 1.0 / b, h = d;
    for (int i = 1; i <= 500; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = b + an / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16)
            return h * std::exp(-x + a * std::log(x) - log_gamma(a));
    }
    throw std::runtime_error("gamma_q_cf: no convergence");
}

}  // namespace detail

// regularized lower incomplete gamma P(a,x) = gamma(a,x)/Gamma(a)
inline double gamma_p(double a, double x) {
    if (a <= 0) throw std::domain_error("gamma_p: a must be positive");
    if (x < 0) throw std::domain_error("gamma_p: x must be nonnegative");
    if (x == 0) return 0.0;
    return (x < a + 1.0) ? detail::gamma_p_series(a, x)
                         : 1.0 - detail::gamma_q_cf(a, x);
}

inline double gamma_q(double a, double x) {
    if (a <= 0) throw std::domain_error("gamma_q: a must be positive");
    if (x < 0) throw std::domain_error("gamma_q: x must be nonnegative");
    if (x == 0) return 1.0;
    return (x < a + 1.0) ? 1.0 - detail::gamma_p_series(a, x)
                         : detail::gamma_q_cf(a, x);
}

// upper incomplete Gamma(a,b) = int_b^inf t^{a-1} e^{-t} dt
inline double inc_gamma_upper(double a, double b) {
    return gamma_q(a, b) * gamma_fn(a);
}

inline double inc_gamma_lower(double a, double b) {
    return gamma_p(a, b) * gamma_fn(a);
}

// --- Mittag-Leffler family --------------------------------------------------

// E_{alpha,beta}(x) = sum_n x^n / Gamma(alpha n + beta)
inline SeriesValue mittag_leffler(double alpha, double beta, double x,
                                  const SeriesEvalPolicy& pol = {}) {
    if (alpha <= 0) throw std::domain_error("mittag_leffler: alpha must be > 0");
    SeriesValue out;
    double sum = 0, xn = 1, peak = 0;
    int n = 0;
    for (; n < pol.max_terms; ++n) {
        double term = xn * rgamma(alpha * n + beta);
        sum += term;
        peak = std::max(peak, std::fabs(term));
        xn *= x;
        double next = std::fabs(xn * rgamma(alpha * (n + 1) + beta));
        if (next < pol.term_cutoff * std::fabs(sum) && n > 2) {
            out.trunc_error = 2.0 * next;
            ++n;
            break;
        }
    }
    if (n >= pol.max_terms)
        throw std::runtime_error("mittag_leffler: series did not converge");
    out.value = sum;
    out.terms = n;
    out.condition = (sum != 0) ? peak / std::fabs(sum) : peak;
    return out;
}

// Incomplete Mittag-Leffler sum: terms inc_gamma(alpha n + beta; x) k^n /
// Gamma(alpha n + beta), with the lower incomplete gamma by default and the
// upper variant behind a flag.
inline SeriesValue inc_mittag_leffler(double alpha, double beta, double x,
                                      double kappa, bool lower = true,
                                      const SeriesEvalPolicy& pol = {}) {
    if (alpha <= 0) throw std::domain_error("inc_mittag_leffler: alpha must be > 0");
    if (x < 0) throw std::domain_error("inc_mittag_leffler: x must be >= 0");
    SeriesValue out;
    double sum = 0, kn = 1, peak = 0;
    int n = 0;
    for (; n < pol.max_terms; ++n) {
        double p = lower ? gamma_p(alpha * n + beta, x) : gamma_q(alpha * n + beta, x);
        double term = p * kn;
        sum += term;
        peak = std::max(peak, std::fabs(term));
        kn *= kappa;
        double next = std::fabs(kn);  // regularized factor is <= 1
        if (next * (lower ? gamma_p(alpha * (n + 1) + beta, x) : 1.0) <
                pol.term_cutoff * std::max(std::fabs(sum), 1e-300) && n > 1) {
            out.trunc_error = 2.0 * next;
            ++n;
            break;
        }
    }
    if (n >= pol.max_terms)
        throw std::runtime_error("inc_mittag_leffler: series did not converge");
    out.value = sum;
    out.terms = n;
    out.condition = (sum != 0) ? peak / std::fabs(sum) : peak;
    return out;
}

// --- q-Pochhammer -----------------------------------------------------------

// (a;q)_n = prod_{j=0}^{n-1} (1 - a q^j)
inline double q_pochhammer(double a, double q, int n) {
    if (std::fabs(q) >= 1) throw std::domain_error("q_pochhammer: |q| must be < 1");
    double prod = 1.0, aq = a;
    for (int j = 0; j < n; ++j) {
        prod *= (1.0 - aq);
        aq *= q;
    }
    return prod;
}

inline double q_pochhammer_inf(double a, double q,
                               const SeriesEvalPolicy& pol = {}) {
    if (std::fabs(q) >= 1) throw std::domain_error("q_pochhammer: |q| must be < 1");
    double prod = 1.0, aq = a;
    for (int j = 0; j < 100000; ++j) {
        if (std::fabs(aq) < pol.term_cutoff) break;
        prod *= (1.0 - aq);
        aq *= q;
    }
    return prod;
}

// --- Wright 2F2 series ------------------------------------------------------

// The normalized Wright hypergeometric series
//   c * sum_n Gamma(n + 1/alpha + 1) / (Gamma(n + 1/alpha + 1 - delta)
//       Gamma(alpha n + alpha)) x^n,
//   c = Gamma(alpha) Gamma(1/alpha + 1 - delta) / Gamma(1/alpha + 1),
// the eigenfunction expansion paired with Gamma(alpha) E_{alpha,alpha}.
inline SeriesValue wright_2f2(double alpha, double delta, double x,
                              const SeriesEvalPolicy& pol = {}) {
    double ia = 1.0 / alpha;
    double c0 = 1.0 + ia, c1 = 1.0 + ia - delta;
    if (c1 <= 0 && c1 == std::floor(c1))
        throw std::domain_error("wright_2f2: gamma pole in coefficients");
    double norm = std::exp(log_gamma(alpha) + log_gamma(c1) - log_gamma(c0));
    SeriesValue out;
    double sum = 0, xn = 1, peak = 0;
    int n = 0;
    for (; n < pol.max_terms; ++n) {
        double lg = log_gamma(n + c0) - log_gamma(n + c1) -
                    log_gamma(alpha * n + alpha);
        double term = std::exp(lg) * xn;
        sum += term;
        peak = std::max(peak, std::fabs(term));
        xn *= x;
        double lgn = log_gamma(n + 1 + c0) - log_gamma(n + 1 + c1) -
                     log_gamma(alpha * (n + 1) + alpha);
        double next = std::exp(lgn) * std::fabs(xn);
        if (next < pol.term_cutoff * std::fabs(sum) && n > 2) {
            out.trunc_error = 2.0 * next * norm;
            ++n;
            break;
        }
    }
    if (n >= pol.max_terms)
        throw std::runtime_error("wright_2f2: series did not converge");
    out.value = norm * sum;
    out.terms = n;
    out.condition = (sum != 0) ? peak / std::fabs(sum) : peak;
    return out;
}

}  // namespace levyx
