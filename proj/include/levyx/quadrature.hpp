#pragma once

// Adaptive Gauss-Kronrod (G7,K15) quadrature on finite intervals, with
// helpers for semi-infinite ranges and integrable power singularities.

#include <cmath>
#include <functional>
#include <queue>
#include <stdexcept>
#include <vector>

namespace levyx {

struct QuadResult {
    double value = 0;
    double abs_error = 0;
    int evaluations = 0;
    bool converged = true;
    operator double() const { return value; }
};

namespace detail {

// QUADPACK dqk15 nodes and weights on [-1,1]
inline constexpr double gk_x[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double gk_wk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double gk_wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename F>
inline void gk15(const F& f, double a, double b, double& val, double& err) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double fc = f(c);
    double resg = fc * gk_wg[3];
    double resk = fc * gk_wk[7];
    for (int j = 0; j < 7; ++j) {
        double x = h * gk_x[j];
        double f1 = f(c - x), f2 = f(c + x);
        resk += gk_wk[j] * (f1 + f2);
        if (j % 2 == 1) resg += gk_wg[j / 2] * (f1 + f2);
    }
    val = resk * h;
    double diff = std::fabs(resk - resg) * std::fabs(h);
    err = (diff > 0) ? std::pow(200.0 * diff, 1.5) : 0.0;
    if (err > diff) err = diff;
    err = std::max(err, std::fabs(val) * 1e-16);
}

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

}  // namespace detail

template <typename F>
QuadResult integrate(const F& f, double a, double b, double abs_tol = 1e-10,
                     double rel_tol = 1e-12, int max_segments = 2000) {
    QuadResult out;
    if (a == b) return out;
    std::priority_queue<detail::Segment> heap;
    double v, e;
    detail::gk15(f, a, b, v, e);
    out.evaluations = 15;
    heap.push({a, b, v, e});
    double total_v = v, total_e = e;
    int n = 1;
    while (total_e > std::max(abs_tol, rel_tol * std::fabs(total_v)) &&
           n < max_segments) {
        detail::Segment s = heap.top();
        heap.pop();
        double m = 0.5 * (s.a + s.b);
        if (m <= s.a || m >= s.b) {  // interval exhausted at double precision
            heap.push({s.a, s.b, s.value, 0.0});
            total_e -= s.error;
            continue;
        }
        double v1, e1, v2, e2;
        detail::gk15(f, s.a, m, v1, e1);
        detail::gk15(f, m, s.b, v2, e2);
        out.evaluations += 30;
        total_v += v1 + v2 - s.value;
        total_e += e1 + e2 - s.error;
        heap.push({s.a, m, v1, e1});
        heap.push({m, s.b, v2, e2});
        ++n;
    }
    out.value = total_v;
    out.abs_error = total_e;
    out.converged = total_e <= std::max(abs_tol, rel_tol * std::fabs(total_v)) * 4;
    return out;
}

// integral over [a, inf) by the substitution x = a + t/(1-t); suited to
// integrands with exponential (or faster-than-x^{-2}) decay
template <typename F>
QuadResult integrate_to_inf(const F& f, double a, double abs_tol = 1e-10,
                            double rel_tol = 1e-12) {
    auto g = [&](double t) {
        double om = 1.0 - t;
        double x = a + t / om;
        return f(x) / (om * om);
    };
    return integrate(g, 0.0, 1.0, abs_tol, rel_tol);
}

// integral over [a, inf), a > 0, of f ~ C x^{-1-p} with p > 0: the
// substitution x = a v^{-1/p} keeps the transformed integrand bounded
template <typename F>
QuadResult integrate_to_inf_power(const F& f, double a, double p,
                                  double abs_tol = 1e-10,
                                  double rel_tol = 1e-12) {
    if (!(a > 0 && p > 0))
        throw std::domain_error("integrate_to_inf_power: need a > 0, p > 0");
    auto g = [&](double v) {
        double x = a * std::pow(v, -1.0 / p);
        return f(x) * (a / p) * std::pow(v, -1.0 / p - 1.0);
    };
    return integrate(g, 1e-40, 1.0, abs_tol, rel_tol);
}

// integral of f over (a,b] where f(x) ~ C (x-a)^p near a with p > -1:
// substitution x = a + (b-a) t^{1/(1+p)} removes the singularity.
template <typename F>
QuadResult integrate_power_left(const F& f, double a, double b, double p,
                                double abs_tol = 1e-10, double rel_tol = 1e-12) {
    if (p <= -1) throw std::domain_error("integrate_power_left: p must be > -1");
    if (p == 0.0) return integrate(f, a, b, abs_tol, rel_tol);
    double q = 1.0 / (1.0 + p), w = b - a;
    auto g = [&](double t) {
        double tq = std::pow(t, q);
        double x = a + w * tq;
        return f(x) * w * q * tq / t;
    };
    // substituted integrand is bounded near 0; clip the endpoint so the
    // original integrand is never evaluated in the underflow range
    return integrate(g, 1e-40, 1.0, abs_tol, rel_tol);
}

}  // namespace levyx
