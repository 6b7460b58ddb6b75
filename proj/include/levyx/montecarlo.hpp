#pragma once

// Path simulation: per-path deterministic RNG streams, exact increment
// samplers (Brownian, compound Poisson, positive stable, spectrally negative
// stable), exponential-functional estimation with residual bounds, Gnedin
// sliced splitting, the Lamperti time change, and z-score comparison reports.
//
// Determinism contract: every sample depends only on (seed, path index), and
// reductions run in path order, so results are bit-identical for any worker
// count.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "levyx/exponent.hpp"
#include "levyx/expfunctional.hpp"
#include "levyx/transform.hpp"

namespace levyx {

// --- RNG ----------------------------------------------------------------------

namespace detail {

inline uint64_t splitmix64(uint64_t& x) {
    x += 0x9E3779B97F4A7C15ULL;
    uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace detail

// xoshiro256++ seeded by splitmix64 from (seed, stream); one stream per path.
class RngStream {
    uint64_t s_[4];

public:
    RngStream(uint64_t seed, uint64_t stream) {
        uint64_t x = seed ^ (0xD2B74407B1CE6E93ULL * (stream + 1));
        for (auto& w : s_) w = detail::splitmix64(x);
    }

    uint64_t next() {
        uint64_t r = detail::rotl(s_[0] + s_[3], 23) + s_[0];
        uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = detail::rotl(s_[3], 45);
        return r;
    }

    double u01() { return (next() >> 11) * 0x1.0p-53; }  // [0,1)
    double u01_open() {                                   // (0,1)
        double u;
        do u = u01();
        while (u == 0.0);
        return u;
    }
    double expo() { return -std::log1p(-u01()); }
    double normal() {
        double u1 = u01_open(), u2 = u01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * pi * u2);
    }
    long poisson(double lambda) {
        if (lambda <= 0) return 0;
        if (lambda < 30) {
            double p = std::exp(-lambda), c = p, u = u01();
            long k = 0;
            while (u > c && k < 10000) {
                ++k;
                p *= lambda / k;
                c += p;
            }
            return k;
        }
        // normal approximation cutover is avoided: sum exponentials in blocks
        long k = 0;
        double t = expo();
        while (t < lambda) {
            ++k;
            t += expo();
        }
        return k;
    }
    double gamma_rv(double a) {
        if (a <= 0) throw std::domain_error("gamma_rv: a must be > 0");
        if (a < 1.0) {
            double u = u01_open();
            return gamma_rv(a + 1.0) * std::pow(u, 1.0 / a);
        }
        double d = a - 1.0 / 3.0, c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x = normal();
            double v = 1.0 + c * x;
            if (v <= 0) continue;
            v = v * v * v;
            double u = u01_open();
            if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v))
                return d * v;
        }
    }
    double beta_rv(double a, double b) {
        double ga = gamma_rv(a), gb = gamma_rv(b);
        return ga / (ga + gb);
    }

    // positive stable with E[e^{-l S}] = e^{-l^alpha}, 0 < alpha < 1 (Kanter)
    double positive_stable(double alpha) {
        double u = u01_open() * pi;
        double w = expo();
        double ia = 1.0 - alpha;
        double a = std::pow(std::sin(alpha * u), alpha / ia) *
                   std::sin(ia * u) / std::pow(std::sin(u), 1.0 / ia);
        return std::pow(a / w, ia / alpha);
    }

    // spectrally negative stable with E[e^{u X}] = e^{u^alpha}, 1 < alpha < 2
    // (Chambers-Mallows-Stuck for the totally skewed case, then negated and
    // scaled by |cos(pi alpha/2)|^{1/alpha})
    double sn_stable(double alpha) {
        double tn = std::tan(0.5 * pi * alpha);
        double b0 = std::atan(tn) / alpha;
        double s0 = std::pow(1.0 + tn * tn, 0.5 / alpha);
        double v = pi * (u01_open() - 0.5);
        double w = expo();
        double x = s0 * std::sin(alpha * (v + b0)) /
                   std::pow(std::cos(v), 1.0 / alpha) *
                   std::pow(std::cos(v - alpha * (v + b0)) / w,
                            (1.0 - alpha) / alpha);
        return -std::pow(std::fabs(std::cos(0.5 * pi * alpha)), 1.0 / alpha) * x;
    }
};

// --- configuration and reports --------------------------------------------------

struct SimConfig {
    uint64_t seed = 1;
    long paths = 10000;
    double dt = 1e-3;
    double horizon_eps = 1e-6;  // stop when e^{-xi} < eps
    double fixed_T = -1;        // > 0: fixed horizon instead
    double jump_trunc = 1e-3;   // eta for general triples
    int workers = 0;            // 0: auto
};

inline int resolve_workers(const SimConfig& cfg) {
    if (cfg.workers > 0) return cfg.workers;
    int hw = int(std::thread::hardware_concurrency());
    if (hw <= 0) hw = 1;
    if (const char* env = std::getenv("LEVYX_THREADS")) {
        int cap = std::atoi(env);
        if (cap > 0) hw = std::min(hw, cap);
    }
    return std::min(hw, 8);
}

// run fn(i) for i in [0, paths); contiguous blocks per worker
template <typename Fn>
void for_each_path(long paths, int workers, Fn&& fn) {
    if (workers <= 1 || paths < 2 * workers) {
        for (long i = 0; i < paths; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    long chunk = (paths + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        long lo = w * chunk, hi = std::min(paths, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (long i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

struct SampleStats {
    long n = 0;
    double mean = 0, se = 0, var = 0;
};

inline SampleStats stats_of(const std::vector<double>& xs) {
    SampleStats s;
    s.n = long(xs.size());
    if (s.n == 0) return s;
    double sum = 0;
    for (double x : xs) sum += x;  // path order
    s.mean = sum / s.n;
    double ss = 0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.var = (s.n > 1) ? ss / (s.n - 1) : 0.0;
    s.se = std::sqrt(s.var / s.n);
    return s;
}

struct CompareTarget {
    enum class Kind { Moment, Laplace, Raw };
    Kind kind = Kind::Raw;
    double parameter = 1;  // moment order n or Laplace argument u
    double target = 0;
    std::string name;
};

struct CompareLine {
    std::string name;
    double empirical, se, target, z;
    bool pass;
};

struct CompareReport {
    std::vector<CompareLine> lines;
    bool pass = true;
};

inline CompareReport mc_compare(const std::vector<double>& samples,
                                const std::vector<CompareTarget>& targets,
                                double z_max = 3.0) {
    if (samples.empty()) throw std::domain_error("mc_compare: no samples");
    CompareReport rep;
    for (const auto& t : targets) {
        std::vector<double> ys(samples.size());
        for (size_t i = 0; i < samples.size(); ++i) {
            switch (t.kind) {
                case CompareTarget::Kind::Moment:
                    ys[i] = std::pow(samples[i], t.parameter);
                    break;
                case CompareTarget::Kind::Laplace:
                    ys[i] = std::exp(-t.parameter * samples[i]);
                    break;
                case CompareTarget::Kind::Raw:
                    ys[i] = samples[i];
                    break;
            }
        }
        SampleStats st = stats_of(ys);
        if (st.se == 0 && st.mean != t.target)
            throw std::runtime_error("mc_compare: zero variance with mismatch");
        double z = (st.se > 0) ? std::fabs(st.mean - t.target) / st.se : 0.0;
        bool ok = z <= z_max;
        rep.lines.push_back({t.name, st.mean, st.se, t.target, z, ok});
        rep.pass = rep.pass && ok;
    }
    return rep;
}

// --- increment samplers ----------------------------------------------------------

// description of one simulation step model for a family
struct IncrementSampler {
    // returns the xi increment over dt
    std::function<double(RngStream&, double dt)> draw;
    bool exact = true;
    bool nondecreasing = false;  // subordinator paths
    double kill_rate = 0;
};

struct TruncatedTripleInfo {
    double eta = 0;
    double sigma2_small = 0;  // matched variance of removed jumps
    double lambda = 0;        // jump intensity beyond eta
};

namespace detail {

// numeric inverse of the decreasing tail: smallest m with tail(m) <= target
inline double invert_tail(const JumpMeasure& jm, double target, double eta) {
    double lo = eta, hi = eta;
    while (jm.tail(hi) > target && hi < 1e12) hi *= 2;
    for (int it = 0; it < 200 && hi - lo > 1e-12 * (1 + hi); ++it) {
        double m = 0.5 * (lo + hi);
        if (jm.tail(m) > target)
            lo = m;
        else
            hi = m;
    }
    return 0.5 * (lo + hi);
}

}  // namespace detail

// small jumps below eta replaced by a Gaussian with the matched variance
inline IncrementSampler triple_sampler(const LevyTriple& t, double eta,
                                       TruncatedTripleInfo* info = nullptr) {
    double sigma2_small = 0;
    for (const auto& c : t.jumps.components) {
        if (c.kind == JumpComponent::Kind::Density) {
            auto f2 = [&](double r) { return r * r * c.density(-r); };
            sigma2_small += c.weight *
                integrate_power_left(f2, 0.0, eta, 1.0 - c.small_x_power, 1e-12);
        }
    }
    struct Big {
        double rate;
        std::function<double(RngStream&)> draw;  // returns jump (negative)
        double compensated_mean;                 // int x 1_{|x|<1} over the piece
    };
    auto bigs = std::make_shared<std::vector<Big>>();
    for (const auto& c : t.jumps.components) {
        if (c.kind == JumpComponent::Kind::Atom) {
            double x0 = c.position, w = c.weight;
            bigs->push_back({w, [x0](RngStream&) { return x0; },
                             (std::fabs(x0) < 1) ? w * x0 : 0.0});
        } else {
            double lam = c.weight * c.tail(eta);
            if (lam <= 0) continue;
            JumpMeasure single;
            single.components.push_back(c);
            auto piece = std::make_shared<JumpMeasure>(single);
            double e = eta;
            auto draw = [piece, lam, e](RngStream& g) {
                double u = g.u01_open();
                return -detail::invert_tail(*piece, u * lam, e);
            };
            // mean of compensated part from the piece: int_{-1<=x<=-eta} x dPi
            double m = 0;
            if (eta < 1.0) {
                auto fx = [&](double r) { return -r * c.density(-r); };
                m = c.weight *
                    integrate_power_left(fx, eta, 1.0, 0.0, 1e-12).value;
            }
            bigs->push_back({lam, draw, m});
        }
    }
    double total_rate = 0, comp = 0;
    for (const auto& b : *bigs) {
        total_rate += b.rate;
        comp += b.compensated_mean;
    }
    if (info) *info = {eta, sigma2_small, total_rate};
    double a = t.a, s2 = t.sigma2 + sigma2_small;
    IncrementSampler s;
    s.exact = false;
    s.kill_rate = t.kappa;
    s.draw = [a, s2, bigs, total_rate, comp](RngStream& g, double dt) {
        double d = (a - comp) * dt;
        if (s2 > 0) d += std::sqrt(s2 * dt) * g.normal();
        long n = g.poisson(total_rate * dt);
        for (long k = 0; k < n; ++k) {
            // choose the component proportionally to its rate
            double u = g.u01() * total_rate, acc = 0;
            for (const auto& b : *bigs) {
                acc += b.rate;
                if (u <= acc || &b == &bigs->back()) {
                    d += b.draw(g);
                    break;
                }
            }
        }
        return d;
    };
    return s;
}

inline IncrementSampler make_sampler(const LaplaceExponent& e,
                                     double jump_trunc = 1e-3) {
    IncrementSampler s;
    switch (e.family()) {
        case Family::Brownian: {
            double sig = std::sqrt(e.param("sigma2")), a = e.param("drift");
            s.kill_rate = e.param("kappa");
            s.draw = [sig, a](RngStream& g, double dt) {
                return a * dt + sig * std::sqrt(dt) * g.normal();
            };
            return s;
        }
        case Family::StableSub: {
            double alpha = e.param("alpha");
            s.nondecreasing = true;
            s.draw = [alpha](RngStream& g, double dt) {
                return std::pow(dt, 1.0 / alpha) * g.positive_stable(alpha);
            };
            return s;
        }
        case Family::Stable: {
            if (e.param("c") != 0 || e.param("kappa") != 0)
                throw std::domain_error("make_sampler: tempered/killed stable unsupported");
            double alpha = e.param("alpha");
            s.draw = [alpha](RngStream& g, double dt) {
                return std::pow(dt, 1.0 / alpha) * g.sn_stable(alpha);
            };
            return s;
        }
        case Family::PoissonSub: {
            double j = -std::log(e.param("q"));
            s.nondecreasing = true;
            s.draw = [j](RngStream& g, double dt) {
                return j * double(g.poisson(dt));
            };
            return s;
        }
        case Family::CPExpSub: {
            double c = e.param("c"), b = e.param("b");
            s.nondecreasing = true;
            s.kill_rate = e.param("kappa");
            s.draw = [c, b](RngStream& g, double dt) {
                long n = g.poisson(c * dt);
                double v = 0;
                for (long k = 0; k < n; ++k) v += g.expo() / b;
                return v;
            };
            return s;
        }
        case Family::Custom:
            if (e.has_triple()) return triple_sampler(e.triple(), jump_trunc);
            [[fallthrough]];
        default:
            throw std::domain_error("make_sampler: family unsupported");
    }
}

inline std::vector<double> sample_increments(const LaplaceExponent& e, double dt,
                                             long n, RngStream& g) {
    IncrementSampler s = make_sampler(e);
    std::vector<double> out(n);
    for (long i = 0; i < n; ++i) out[i] = s.draw(g, dt);
    return out;
}

// --- exponential functionals ------------------------------------------------------

struct ExpFunctionalResult {
    std::vector<double> samples;
    double mean_residual_bound = 0;  // recorded eps I/(1-eps) average
    double bias_bound = 0;           // quadrature-in-time bias estimate
    std::string method;
};

namespace detail {

// event-driven integral of e^{-xi} for compound Poisson with drift;
// exact between events
struct CpSpec {
    double drift = 0;
    double rate = 0;
    std::function<double(RngStream&)> jump;  // positive jump of xi
    double kill = 0;
};

inline double cp_exp_functional(const CpSpec& cp, RngStream& g, double eps,
                                double* residual_bound) {
    double xi = 0, I = 0;
    double t_kill = (cp.kill > 0) ? g.expo() / cp.kill
                                  : std::numeric_limits<double>::infinity();
    double t = 0;
    auto seg = [&](double len) {  // integrates e^{-xi - drift s} over [0,len]
        if (len <= 0) return 0.0;
        if (cp.drift == 0) return std::exp(-xi) * len;
        return std::exp(-xi) * -std::expm1(-cp.drift * len) / cp.drift;
    };
    int guard = 0;
    for (;;) {
        double dt_next = (cp.rate > 0) ? g.expo() / cp.rate
                                       : std::numeric_limits<double>::infinity();
        if (t + dt_next >= t_kill) {
            I += seg(t_kill - t);
            if (residual_bound) *residual_bound = 0;  // exact at the killing time
            return I;
        }
        I += seg(dt_next);
        xi += cp.drift * dt_next;
        if (cp.jump) xi += cp.jump(g);
        t += dt_next;
        if (std::exp(-xi) < eps && cp.drift >= 0) {
            if (residual_bound) *residual_bound = eps * I / (1 - eps);
            return I;
        }
        if (++guard > 100000000)
            throw std::runtime_error("cp_exp_functional: path did not terminate");
    }
}

}  // namespace detail

// Samples of I = int_0^{e_kappa} e^{-xi_s} ds.  Compound-Poisson families
// integrate exactly between events; stepped families use trapezoidal
// integration with step growth once e^{-xi} is small.
inline ExpFunctionalResult sample_exp_functional(const LaplaceExponent& e,
                                                 const SimConfig& cfg) {
    ExpFunctionalResult out;
    out.samples.assign(cfg.paths, 0.0);
    std::vector<double> residuals(cfg.paths, 0.0);
    int workers = resolve_workers(cfg);
    double eps = cfg.horizon_eps;

    bool cp_like = (e.family() == Family::PoissonSub ||
                    e.family() == Family::CPExpSub ||
                    (e.family() == Family::Brownian && e.param("sigma2") == 0));
    if (cp_like) {
        out.method = "event";
        detail::CpSpec cp;
        if (e.family() == Family::PoissonSub) {
            double j = -std::log(e.param("q"));
            cp.rate = 1.0;
            cp.jump = [j](RngStream&) { return j; };
        } else if (e.family() == Family::CPExpSub) {
            double b = e.param("b");
            cp.rate = e.param("c");
            cp.kill = e.param("kappa");
            cp.jump = [b](RngStream& g) { return g.expo() / b; };
        } else {
            cp.drift = e.param("drift");
            cp.kill = e.param("kappa");
            if (cp.drift <= 0 && cp.kill == 0)
                throw std::domain_error("sample_exp_functional: I is infinite a.s.");
        }
        uint64_t seed = cfg.seed;
        for_each_path(cfg.paths, workers, [&](long i) {
            RngStream g(seed, uint64_t(i));
            double rb = 0;
            out.samples[i] = detail::cp_exp_functional(cp, g, eps, &rb);
            residuals[i] = rb;
        });
    } else {
        out.method = "stepped";
        IncrementSampler s = make_sampler(e, cfg.jump_trunc);
        if (!s.nondecreasing) {
            double d0 = drift_at_zero(e).value;
            if (!(d0 > 0) && s.kill_rate == 0)
                throw std::domain_error(
                    "sample_exp_functional: drift condition psi'(0+) > 0 fails");
        }
        double dt = cfg.dt;
        double level = -std::log(eps);
        uint64_t seed = cfg.seed;
        for_each_path(cfg.paths, workers, [&](long i) {
            RngStream g(seed, uint64_t(i));
            double t_kill = (s.kill_rate > 0)
                                ? g.expo() / s.kill_rate
                                : std::numeric_limits<double>::infinity();
            double xi = 0, I = 0, t = 0;
            double eprev = 1.0;
            long guard = 0;
            while (t < t_kill) {
                // grow the step once the integrand is negligible
                double step = dt * std::max(1.0, std::floor(xi / 2.0) * 4.0);
                step = std::min(step, 0.25);
                if (t + step > t_kill) step = t_kill - t;
                if (step <= 0) break;
                xi += s.draw(g, step);
                double enow = std::exp(-xi);
                I += 0.5 * (eprev + enow) * step;
                eprev = enow;
                t += step;
                if (xi > level) break;
                if (++guard > 50000000)
                    throw std::runtime_error("sample_exp_functional: no progress");
            }
            out.samples[i] = I;
            residuals[i] = eps * I / (1 - eps);
        });
        out.bias_bound = 0.5 * dt;  // trapezoid against unit total variation
    }
    double acc = 0;
    for (double r : residuals) acc += r;
    out.mean_residual_bound = acc / double(cfg.paths);
    return out;
}

// sampling from a primitive factor product (exact law)
inline std::vector<double> sample_factor(const DistributionFactor& f,
                                         const SimConfig& cfg) {
    if (!f.sampleable())
        throw std::domain_error("sample_factor: opaque factor present");
    std::vector<double> out(cfg.paths);
    int workers = resolve_workers(cfg);
    uint64_t seed = cfg.seed;
    auto terms = f.terms;
    for_each_path(cfg.paths, workers, [&](long i) {
        RngStream g(seed, uint64_t(i));
        double v = 1;
        for (const auto& t : terms) {
            switch (t.kind) {
                case FactorTerm::Kind::BetaRV:
                    v *= std::pow(g.beta_rv(t.a, t.b), t.power);
                    break;
                case FactorTerm::Kind::GammaRV:
                    v *= std::pow(g.gamma_rv(t.a), t.power);
                    break;
                case FactorTerm::Kind::ExpRV:
                    v *= std::pow(g.expo(), t.power);
                    break;
                case FactorTerm::Kind::ConstFactor:
                    v *= t.cval;
                    break;
                case FactorTerm::Kind::Opaque:
                    break;  // unreachable
            }
        }
        out[i] = v;
    });
    return out;
}

// --- sliced splitting ---------------------------------------------------------------

// Gnedin surgery on a subordinator without killing: run copies until they
// first cross independent Exp(beta) levels, capping each contribution at its
// level.  Returns S_t samples; compound Poisson bases are exact, stepped
// bases localize the crossing within one step.
inline std::vector<double> sliced_splitting(const LaplaceExponent& phi,
                                            double beta, double t,
                                            const SimConfig& cfg) {
    if (!(beta > 0)) throw std::domain_error("sliced_splitting: beta must be > 0");
    if (phi.killing() != 0)
        throw std::domain_error("sliced_splitting: requires no killing");
    std::vector<double> out(cfg.paths, 0.0);
    int workers = resolve_workers(cfg);
    uint64_t seed = cfg.seed;

    if (phi.family() == Family::PoissonSub || phi.family() == Family::CPExpSub) {
        double rate;
        std::function<double(RngStream&)> jump;
        if (phi.family() == Family::PoissonSub) {
            double j = -std::log(phi.param("q"));
            rate = 1.0;
            jump = [j](RngStream&) { return j; };
        } else {
            double b = phi.param("b");
            rate = phi.param("c");
            jump = [b](RngStream& g) { return g.expo() / b; };
        }
        for_each_path(cfg.paths, workers, [&](long i) {
            RngStream g(seed, uint64_t(i));
            double S = 0, remaining = t;
            int guard = 0;
            while (remaining > 0 && guard++ < 1000000) {
                double level = g.expo() / beta;
                double copy_val = 0, copy_time = 0;
                bool crossed = false;
                while (true) {
                    double dt_next = g.expo() / rate;
                    if (copy_time + dt_next >= remaining) break;
                    copy_time += dt_next;
                    copy_val += jump(g);
                    if (copy_val > level) {
                        crossed = true;
                        break;
                    }
                }
                if (crossed) {
                    S += level;  // capped at the crossing level
                    remaining -= copy_time;
                } else {
                    S += std::min(copy_val, level);
                    remaining = 0;
                }
            }
            out[i] = S;
        });
        return out;
    }

    IncrementSampler s = make_sampler(phi, cfg.jump_trunc);
    if (!s.nondecreasing)
        throw std::domain_error("sliced_splitting: base must be a subordinator");
    double dt = cfg.dt;
    for_each_path(cfg.paths, workers, [&](long i) {
        RngStream g(seed, uint64_t(i));
        double S = 0, remaining = t;
        int guard = 0;
        while (remaining > 0 && guard++ < 100000000) {
            double level = g.expo() / beta;
            double copy_val = 0, copy_time = 0;
            bool crossed = false;
            while (copy_time + dt < remaining) {
                copy_val += s.draw(g, dt);
                copy_time += dt;
                if (copy_val > level) {
                    crossed = true;
                    break;
                }
            }
            if (crossed) {
                S += level;
                remaining -= copy_time;
            } else {
                double last = remaining - copy_time;
                if (last > 0) copy_val += s.draw(g, last);
                S += std::min(copy_val, level);
                remaining = 0;
            }
        }
        out[i] = S;
    });
    return out;
}

// exponential functional of the spliced process (integrates e^{-S} exactly
// between events for compound Poisson bases)
inline std::vector<double> sliced_exp_functional(const LaplaceExponent& phi,
                                                 double beta,
                                                 const SimConfig& cfg) {
    if (!(beta > 0)) throw std::domain_error("sliced_exp_functional: beta > 0");
    IncrementSampler s = make_sampler(phi, cfg.jump_trunc);
    if (!s.nondecreasing)
        throw std::domain_error("sliced_exp_functional: base must be a subordinator");
    std::vector<double> out(cfg.paths, 0.0);
    int workers = resolve_workers(cfg);
    uint64_t seed = cfg.seed;
    double eps = cfg.horizon_eps, dt = cfg.dt;
    bool cp = (phi.family() == Family::PoissonSub || phi.family() == Family::CPExpSub);

    for_each_path(cfg.paths, workers, [&](long i) {
        RngStream g(seed, uint64_t(i));
        double S = 0, I = 0;
        long guard = 0;
        double level = g.expo() / beta;
        double copy_val = 0;
        if (cp) {
            double rate = (phi.family() == Family::PoissonSub) ? 1.0
                                                               : phi.param("c");
            double b = (phi.family() == Family::CPExpSub) ? phi.param("b") : 0;
            double j = (phi.family() == Family::PoissonSub)
                           ? -std::log(phi.param("q"))
                           : 0;
            while (std::exp(-S) >= eps && guard++ < 10000000) {
                double seg = g.expo() / rate;
                I += std::exp(-S) * seg;
                double jmp = (phi.family() == Family::PoissonSub) ? j
                                                                  : g.expo() / b;
                copy_val += jmp;
                if (copy_val > level) {
                    S += level - (copy_val - jmp);  // cap: total spliced gain = level
                    // new copy from the crossing position
                    level = g.expo() / beta;
                    copy_val = 0;
                } else {
                    S += jmp;
                }
            }
        } else {
            double eprev = std::exp(-S);
            while (eprev >= eps && guard++ < 100000000) {
                double step = dt * std::max(1.0, std::floor(S / 2.0) * 4.0);
                step = std::min(step, 0.25);
                double inc = s.draw(g, step);
                double ncopy = copy_val + inc;
                double ds;
                if (ncopy > level) {
                    ds = level - copy_val;
                    level = g.expo() / beta;
                    copy_val = 0;
                } else {
                    ds = inc;
                    copy_val = ncopy;
                }
                double enow = std::exp(-(S + ds));
                I += 0.5 * (eprev + enow) * step;
                S += ds;
                eprev = enow;
            }
        }
        out[i] = I;
    });
    return out;
}

// spliced and uncapped-concatenation values at time t from the same jump
// stream (compound Poisson base); the uncapped copy is again a phi
// subordinator by the strong Markov property, and dominates pathwise.
struct CoupledSplit {
    double spliced;
    double unspliced;
};

inline CoupledSplit sliced_coupled_at(const LaplaceExponent& phi, double beta,
                                      double t, RngStream& g) {
    if (phi.family() != Family::PoissonSub && phi.family() != Family::CPExpSub)
        throw std::domain_error("sliced_coupled_at: compound Poisson base only");
    double rate = (phi.family() == Family::PoissonSub) ? 1.0 : phi.param("c");
    double b = (phi.family() == Family::CPExpSub) ? phi.param("b") : 0;
    double j = (phi.family() == Family::PoissonSub) ? -std::log(phi.param("q")) : 0;
    double S = 0, U = 0, remaining = t;
    int guard = 0;
    while (remaining > 0 && guard++ < 1000000) {
        double level = g.expo() / beta;
        double copy_val = 0, copy_time = 0;
        bool crossed = false;
        while (true) {
            double dt_next = g.expo() / rate;
            if (copy_time + dt_next >= remaining) break;
            copy_time += dt_next;
            double jmp = (phi.family() == Family::PoissonSub) ? j : g.expo() / b;
            copy_val += jmp;
            if (copy_val > level) {
                crossed = true;
                break;
            }
        }
        if (crossed) {
            S += level;
            U += copy_val;
            remaining -= copy_time;
        } else {
            S += std::min(copy_val, level);
            U += copy_val;
            remaining = 0;
        }
    }
    return {S, U};
}

// --- Lamperti time change ------------------------------------------------------------

struct PathSample {
    std::vector<double> times;
    std::vector<double> values;
    double killing_time = std::numeric_limits<double>::infinity();
    std::string family;
    uint64_t config_hash = 0;

    void check() const {
        if (times.size() != values.size() || times.empty())
            throw std::domain_error("PathSample: times/values mismatch");
        for (size_t i = 1; i < times.size(); ++i)
            if (!(times[i] > times[i - 1]))
                throw std::domain_error("PathSample: times must increase");
    }
};

// Lamperti transform of a stored piecewise-constant path (hold-left):
// X_t = exp(xi_{A_t} + log x0) with the clock inverted segment by segment.
// Throws when the path is too short to reach the requested time.
inline double lamperti_from_path(const PathSample& path, double alpha_ss,
                                 double x0, double t) {
    path.check();
    if (!(x0 > 0)) throw std::domain_error("lamperti_from_path: x0 must be > 0");
    double lx = std::log(x0);
    double clock = 0;
    for (size_t i = 0; i + 1 < path.times.size(); ++i) {
        double seg = path.times[i + 1] - path.times[i];
        double rate = std::exp(alpha_ss * (path.values[i] + lx));
        if (clock + rate * seg > t) return std::exp(path.values[i] + lx);
        clock += rate * seg;
    }
    throw std::runtime_error("lamperti_from_path: horizon not reached");
}

// X_t = exp(xi_{A_t}) with A_t = inf{s : int_0^s e^{alpha xi_u} du > t},
// xi started at log(x0).  Drivers: families with increment samplers.
// Brownian paths interpolate xi linearly inside the step; compound Poisson
// paths are piecewise constant and the clock inverts exactly.
inline std::vector<double> lamperti_pssmp_samples(const LaplaceExponent& driver,
                                                  double alpha_ss, double x0,
                                                  double t,
                                                  const SimConfig& cfg) {
    if (!(x0 > 0)) throw std::domain_error("lamperti: x0 must be > 0");
    std::vector<double> out(cfg.paths, 0.0);
    int workers = resolve_workers(cfg);
    uint64_t seed = cfg.seed;
    bool cp = (driver.family() == Family::PoissonSub ||
               driver.family() == Family::CPExpSub ||
               (driver.family() == Family::Brownian &&
                driver.param("sigma2") == 0));
    double dt = cfg.dt;

    for_each_path(cfg.paths, workers, [&](long i) {
        RngStream g(seed, uint64_t(i));
        double xi = std::log(x0), clock = 0;
        long guard = 0;
        if (cp) {
            double rate = 0, drift = 0, b = 0, jsize = 0;
            if (driver.family() == Family::PoissonSub) {
                rate = 1.0;
                jsize = -std::log(driver.param("q"));
            } else if (driver.family() == Family::CPExpSub) {
                rate = driver.param("c");
                b = driver.param("b");
            } else {
                drift = driver.param("drift");
            }
            for (;;) {
                double seg = (rate > 0) ? g.expo() / rate
                                        : std::numeric_limits<double>::infinity();
                // clock advance over a constant-or-linear xi segment
                double w = alpha_ss * drift;
                double gain = (w == 0) ? std::exp(alpha_ss * xi) * seg
                                       : std::exp(alpha_ss * xi) *
                                             std::expm1(w * seg) / w;
                if (clock + gain > t) {
                    double rem = t - clock;
                    double s_in;
                    if (w == 0)
                        s_in = rem / std::exp(alpha_ss * xi);
                    else
                        s_in = std::log1p(rem * w / std::exp(alpha_ss * xi)) / w;
                    out[i] = std::exp(xi + drift * s_in);
                    return;
                }
                clock += gain;
                xi += drift * seg;
                if (rate > 0)
                    xi += (driver.family() == Family::PoissonSub) ? jsize
                                                                  : g.expo() / b;
                if (++guard > 10000000)
                    throw std::runtime_error("lamperti: horizon not reached");
            }
        }
        IncrementSampler s = make_sampler(driver, cfg.jump_trunc);
        double eprev = std::exp(alpha_ss * xi);
        for (;;) {
            double inc = s.draw(g, dt);
            double enow = std::exp(alpha_ss * (xi + inc));
            double gain = 0.5 * (eprev + enow) * dt;
            if (clock + gain > t) {
                double frac = (t - clock) / gain;
                out[i] = std::exp(xi + frac * inc);  // linear interpolation
                return;
            }
            clock += gain;
            xi += inc;
            eprev = enow;
            if (++guard > 100000000)
                throw std::runtime_error("lamperti: horizon not reached");
        }
    });
    return out;
}

}  // namespace levyx
