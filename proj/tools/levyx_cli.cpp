// levyx command-line front end: parse exponent specs, dispatch
// computations, run the verification suite, emit CSV/JSON.
//
// Exit codes: 0 success, 2 validation failure, 3 numerical failure,
// 64 usage / unknown flags.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "levyx/levyx.hpp"

using namespace levyx;
using nlohmann::json;

namespace {

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(std::stod(tok));
    }
    return out;
}

// "a:b:step" inclusive grid
std::vector<double> parse_range(const std::string& s) {
    std::vector<double> parts = parse_list([&] {
        std::string t = s;
        for (auto& c : t)
            if (c == ':') c = ',';
        return t;
    }());
    if (parts.size() == 2) parts.push_back(1.0);
    if (parts.size() != 3 || parts[2] <= 0)
        throw std::invalid_argument("range must be a:b:step");
    std::vector<double> g;
    for (double x = parts[0]; x <= parts[1] + 1e-12 * parts[2]; x += parts[2])
        g.push_back(x);
    return g;
}

// accumulated double-rounding bound for closed-form arithmetic
double rounding_bound(double v) { return 16.0 * 2.22e-16 * std::fabs(v); }

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

RunManifest make_manifest(const std::string& command, const json& spec,
                          const std::string& config, uint64_t seed) {
    RunManifest m;
    m.command = command;
    m.spec_hash = fnv1a(canonical_dump(spec));
    m.config = config;
    m.seed = seed;
    return m;
}

void write_output(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw std::runtime_error("cannot open output file " + out_path);
    f << text;
}

struct GlobalOpts {
    uint64_t seed = 1;
    long paths = 10000;
    double tol = 1e-9;
    std::string out;
};

int run_quick_verify(bool quick);

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Laplace exponent transforms for one-sided Levy processes"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    GlobalOpts g;
    app.add_option("--seed", g.seed, "RNG seed");
    app.add_option("--paths", g.paths, "Monte Carlo path count");
    app.add_option("--tol", g.tol, "numeric tolerance");
    app.add_option("--out", g.out, "output file (default stdout)");

    std::string spec_path, eval_list, grid_spec = "0:5:0.25", x_range = "0:5:0.1";
    std::string u_list = "0.5,1,2", ek_pair, example = "poisson", report = "json";
    std::string strategy = "auto";
    double delta = 0, beta = 0, gamma = -1, tval = 1, q = 0.5, xval = 1.0;
    int n_moments = 6, which_case = 1;
    bool quick = false;

    auto* c_exp = app.add_subcommand("exponent", "evaluate and validate exponents");
    auto* c_exp_eval = c_exp->add_subcommand("eval", "evaluate psi on points");
    c_exp_eval->add_option("--spec", spec_path)->required();
    c_exp_eval->add_option("--u", eval_list)->required();
    auto* c_exp_val = c_exp->add_subcommand("validate", "run shape checks");
    c_exp_val->add_option("--spec", spec_path)->required();
    c_exp_val->add_option("--grid", grid_spec);

    auto* c_tr = app.add_subcommand("transform", "apply T transforms");
    auto* c_tr_apply = c_tr->add_subcommand("apply", "evaluate the image exponent");
    c_tr_apply->add_option("--spec", spec_path)->required();
    c_tr_apply->add_option("--delta", delta)->required();
    c_tr_apply->add_option("--beta", beta)->required();
    c_tr_apply->add_option("--gamma", gamma);
    c_tr_apply->add_option("--eval", eval_list)->required();

    auto* c_sc = app.add_subcommand("scale", "scale functions");
    auto* c_sc_table = c_sc->add_subcommand("table", "tabulate W on a grid");
    c_sc_table->add_option("--spec", spec_path)->required();
    c_sc_table->add_option("--strategy", strategy);
    c_sc_table->add_option("--x", x_range);

    auto* c_ef = app.add_subcommand("expfun", "exponential functionals");
    auto* c_ef_mom = c_ef->add_subcommand("moments", "integer moment ladder");
    c_ef_mom->add_option("--spec", spec_path)->required();
    c_ef_mom->add_option("--n", n_moments);
    auto* c_ef_dens = c_ef->add_subcommand("density", "closed-form example density");
    c_ef_dens->add_option("--example", example);
    c_ef_dens->add_option("--q", q);
    c_ef_dens->add_option("--x-grid", x_range);
    auto* c_ef_fac = c_ef->add_subcommand("factorize", "Beta factorization");
    c_ef_fac->add_option("--spec", spec_path)->required();
    c_ef_fac->add_option("--delta", delta)->required();

    auto* c_ps = app.add_subcommand("pssmp", "entrance laws and intertwining");
    auto* c_ps_ent = c_ps->add_subcommand("entrance", "entrance moments");
    c_ps_ent->add_option("--spec", spec_path)->required();
    c_ps_ent->add_option("--n", n_moments);
    auto* c_ps_int = c_ps->add_subcommand("intertwine", "Beta intertwining factor");
    c_ps_int->add_option("--spec", spec_path)->required();
    c_ps_int->add_option("--delta", delta);
    c_ps_int->add_option("--case", which_case)->check(CLI::Range(1, 3));
    c_ps_int->add_option("--n", n_moments);
    c_ps_int->add_option("--report", report);
    auto* c_ps_ser = c_ps->add_subcommand("series", "eigenfunction series");
    c_ps_ser->add_option("--spec", spec_path)->required();
    c_ps_ser->add_option("--x", xval);
    c_ps_ser->add_option("--ek", ek_pair);

    auto* c_mc = app.add_subcommand("mc", "Monte Carlo");
    auto* c_mc_ef = c_mc->add_subcommand("expfun", "exponential functional samples");
    c_mc_ef->add_option("--spec", spec_path)->required();
    c_mc_ef->add_option("--report", report);
    auto* c_mc_sl = c_mc->add_subcommand("slice", "sliced splitting check");
    c_mc_sl->add_option("--spec", spec_path)->required();
    c_mc_sl->add_option("--beta", beta)->required();
    c_mc_sl->add_option("--t", tval);
    c_mc_sl->add_option("--u", u_list);

    auto* c_vf = app.add_subcommand("verify", "verification suite");
    auto* c_vf_all = c_vf->add_subcommand("all", "run the verification set");
    c_vf_all->add_flag("--quick", quick);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n" << app.help() << "\n";
        return 64;
    }

    try {
        auto spec_json = [&]() {
            std::ifstream in(spec_path);
            if (!in) throw std::invalid_argument("cannot open spec " + spec_path);
            return json::parse(in);
        };

        if (c_exp_eval->parsed()) {
            json sj = spec_json();
            LaplaceExponent e = exponent_from_json(sj);
            json out;
            out["manifest"] =
                make_manifest("exponent eval", sj, "u=" + eval_list, g.seed).to_json();
            out["values"] = json::array();
            for (double u : parse_list(eval_list)) {
                double v = e(u);
                out["values"].push_back(
                    {{"u", u}, {"psi", v}, {"est_error", rounding_bound(v)}});
            }
            write_output(g.out, out.dump(2) + "\n");
            return 0;
        }
        if (c_exp_val->parsed()) {
            json sj = spec_json();
            LaplaceExponent e = exponent_from_json(sj);
            ValidationReport rep = validate(e, parse_range(grid_spec));
            json out;
            out["manifest"] =
                make_manifest("exponent validate", sj, grid_spec, g.seed).to_json();
            for (const auto& c : rep.checks)
                out["checks"].push_back(
                    {{"name", c.name}, {"pass", c.pass}, {"worst", c.worst}});
            out["pass"] = rep.all_pass();
            write_output(g.out, out.dump(2) + "\n");
            return rep.all_pass() ? 0 : 2;
        }
        if (c_tr_apply->parsed()) {
            json sj = spec_json();
            LaplaceExponent e = exponent_from_json(sj);
            LaplaceExponent t = (gamma > 0) ? t_composed(e, gamma, delta, beta)
                                            : t_transform(e, delta, beta);
            json out;
            std::string cfg = "delta=" + fmt(delta) + " beta=" + fmt(beta) +
                              (gamma > 0 ? " gamma=" + fmt(gamma) : "");
            out["manifest"] =
                make_manifest("transform apply", sj, cfg, g.seed).to_json();
            out["values"] = json::array();
            for (double u : parse_list(eval_list)) {
                double v = t(u);
                out["values"].push_back(
                    {{"u", u}, {"value", v}, {"est_error", rounding_bound(v)}});
            }
            write_output(g.out, out.dump(2) + "\n");
            return 0;
        }
        if (c_sc_table->parsed()) {
            json sj = spec_json();
            LaplaceExponent e = exponent_from_json(sj);
            ScaleFunction w = ScaleFunction::for_exponent(e, g.tol);
            const char* sname =
                (w.strategy() == ScaleFunction::Strategy::ClosedForm)
                    ? "closed_form"
                    : "laplace_inversion";
            if (strategy != "auto" && strategy != sname)
                throw std::invalid_argument("strategy '" + strategy +
                                            "' not available for this family");
            RunManifest m = make_manifest("scale table", sj, x_range, g.seed);
            std::ostringstream os;
            os.precision(17);
            os << "# manifest spec_hash=" << m.spec_hash << " config=" << m.config
               << "\n";
            os << "x,W(x),strategy,est_error\n";
            for (double x : parse_range(x_range))
                os << x << "," << w(x) << "," << sname << "," << w.est_error(x)
                   << "\n";
            write_output(g.out, os.str());
            return 0;
        }
        if (c_ef_mom->parsed()) {
            json sj = spec_json();
            LaplaceExponent e = exponent_from_json(sj);
            MomentLadder lad = sub_moments(e, n_moments);
            json out;
            out["manifest"] =
                make_manifest("expfun moments", sj, "n=" + std::to_string(n_moments),
                              g.seed).to_json();
            for (size_t n = 0; n < lad.m.size(); ++n)
                out["moments"].push_back({{"n", n},
                                          {"value", lad.m[n]},
                                          {"est_error", rounding_bound(lad.m[n])}});
            write_output(g.out, out.dump(2) + "\n");
            return 0;
        }
        if (c_ef_dens->parsed()) {
            if (example != "poisson")
                throw std::invalid_argument("only --example poisson is tabulated");
            PoissonExpLaw law = poisson_exp_law(q);
            json out;
            out["manifest"] = make_manifest("expfun density", json{{"q", q}},
                                            "grid=" + x_range, g.seed).to_json();
            for (double x : parse_range(x_range))
                out["density"].push_back({{"x", x}, {"f", law.density(x)}});
            out["normalization"] = density_integral(law.density, 1e-9);
            write_output(g.out, out.dump(2) + "\n");
            return 0;
        }
        if (c_ef_fac->parsed()) {
            json sj = spec_json();
            LaplaceExponent e = exponent_from_json(sj);
            DistributionFactor f = beta_factorization(e, delta);
            json out;
            out["manifest"] = make_manifest("expfun factorize", sj,
                                            "delta=" + fmt(delta), g.seed).to_json();
            for (const auto& t : f.terms) out["factors"].push_back(t.label);
            json moms = json::array();
            for (int n = 1; n <= 4; ++n)
                moms.push_back({{"n", -n}, {"value", f.mellin(-double(n))}});
            out["negative_moments"] = moms;
            write_output(g.out, out.dump(2) + "\n");
            return 0;
        }
        if (c_ps_ent->parsed()) {
            json sj = spec_json();
            LaplaceExponent e = exponent_from_json(sj);
            EntranceLaw law = entrance_moments(e, n_moments);
            json out;
            out["manifest"] =
                make_manifest("pssmp entrance", sj, "n=" + std::to_string(n_moments),
                              g.seed).to_json();
            out["regime"] = (law.regime == EntranceRegime::BertoinYor)
                                ? "drift"
                                : "recurrent-extension";
            out["theta"] = law.theta;
            for (size_t n = 0; n < law.m.size(); ++n)
                out["moments"].push_back({{"n", n},
                                          {"value", law.m[n]},
                                          {"est_error", rounding_bound(law.m[n])}});
            write_output(g.out, out.dump(2) + "\n");
            return 0;
        }
        if (c_ps_int->parsed()) {
            json sj = spec_json();
            LaplaceExponent e = exponent_from_json(sj);
            IntertwiningFactor iw = intertwining_factor(e, delta, which_case,
                                                        n_moments);
            json out;
            out["manifest"] = make_manifest(
                "pssmp intertwine", sj,
                "delta=" + fmt(delta) + " case=" + std::to_string(which_case),
                g.seed).to_json();
            out["beta_factor"] = iw.beta.label;
            out["parameter_band_flagged"] = iw.parameter_band_flagged;
            out["mellin_checked"] = iw.mellin_checked;
            if (iw.mellin_checked) out["mellin_min_modulus"] = iw.mellin_min_modulus;
            EntranceLaw jt = entrance_moments(iw.transformed, n_moments);
            EntranceLaw jp = entrance_moments(iw.partner, n_moments);
            for (int n = 0; n <= n_moments; ++n) {
                double rhs = iw.beta.mellin(double(n)) * jp[n];
                out["moments"].push_back({{"n", n},
                                          {"transformed", jt[n]},
                                          {"beta_times_partner", rhs},
                                          {"residual", jt[n] - rhs}});
            }
            write_output(g.out, out.dump(2) + "\n");
            return 0;
        }
        if (c_ps_ser->parsed()) {
            json sj = spec_json();
            LaplaceExponent e = exponent_from_json(sj);
            PowerSeries s = eigen_series(e, 200);
            json out;
            out["manifest"] = make_manifest("pssmp series", sj, "x=" + fmt(xval),
                                            g.seed).to_json();
            if (!ek_pair.empty()) {
                auto ab = parse_list(ek_pair);
                if (ab.size() != 2)
                    throw std::invalid_argument("--ek expects alpha,delta");
                s = ek_on_series(s, ab[0], ab[1]);
                out["ek"] = {{"alpha", ab[0]}, {"delta", ab[1]}};
            }
            auto ev = s.eval(xval);
            out["value"] = ev.value;
            out["trunc_error"] = ev.trunc_error;
            out["terms"] = ev.terms;
            write_output(g.out, out.dump(2) + "\n");
            return 0;
        }
        if (c_mc_ef->parsed()) {
            json sj = spec_json();
            LaplaceExponent e = exponent_from_json(sj);
            SimConfig cfg;
            cfg.seed = g.seed;
            cfg.paths = g.paths;
            ExpFunctionalResult r = sample_exp_functional(e, cfg);
            SampleStats st = stats_of(r.samples);
            json out;
            out["manifest"] = make_manifest(
                "mc expfun", sj, "paths=" + std::to_string(g.paths), g.seed)
                .to_json();
            out["mean"] = st.mean;
            out["se"] = st.se;
            out["residual_bound"] = r.mean_residual_bound;
            out["bias_bound"] = r.bias_bound;
            out["method"] = r.method;
            // z-scores against the moment ladder when available
            try {
                MomentLadder lad = sub_moments(e, 2);
                CompareReport rep = mc_compare(
                    r.samples, {{CompareTarget::Kind::Moment, 1, lad[1], "E[I]"},
                                {CompareTarget::Kind::Moment, 2, lad[2], "E[I^2]"}});
                for (const auto& l : rep.lines)
                    out["targets"].push_back({{"name", l.name},
                                              {"empirical", l.empirical},
                                              {"se", l.se},
                                              {"target", l.target},
                                              {"z", l.z}});
                out["pass"] = rep.pass;
                if (!rep.pass) {
                    write_output(g.out, out.dump(2) + "\n");
                    return 3;
                }
            } catch (const std::domain_error&) {
                // no ladder for this family: report the bare estimate
            }
            write_output(g.out, out.dump(2) + "\n");
            return 0;
        }
        if (c_mc_sl->parsed()) {
            json sj = spec_json();
            LaplaceExponent e = exponent_from_json(sj);
            SimConfig cfg;
            cfg.seed = g.seed;
            cfg.paths = g.paths;
            auto samples = sliced_splitting(e, beta, tval, cfg);
            auto tb = t_beta(e, beta);
            std::vector<CompareTarget> targets;
            for (double u : parse_list(u_list))
                targets.push_back({CompareTarget::Kind::Laplace, u,
                                   std::exp(tval * tb(u)), "u=" + fmt(u)});
            CompareReport rep = mc_compare(samples, targets);
            json out;
            out["manifest"] = make_manifest(
                "mc slice", sj,
                "beta=" + fmt(beta) + " t=" + fmt(tval) + " paths=" +
                    std::to_string(g.paths),
                g.seed).to_json();
            for (const auto& l : rep.lines)
                out["targets"].push_back({{"name", l.name},
                                          {"empirical", l.empirical},
                                          {"se", l.se},
                                          {"target", l.target},
                                          {"z", l.z}});
            out["pass"] = rep.pass;
            write_output(g.out, out.dump(2) + "\n");
            return rep.pass ? 0 : 3;
        }
        if (c_vf_all->parsed()) return run_quick_verify(quick);

        std::cerr << app.help() << "\n";
        return 64;
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    }
}

namespace {

int run_quick_verify(bool quick) {
    int failures = 0;
    auto report = [&](const std::string& name, bool ok, double worst) {
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << " (worst "
                  << worst << ")\n";
        if (!ok) ++failures;
    };
    std::vector<double> grid = {0.25, 0.5, 1.0, 2.0, 5.0};

    {
        double worst = 0;
        for (auto e :
             {LaplaceExponent::brownian(1, 0, 0), LaplaceExponent::stable(1.5),
              LaplaceExponent::stable_sub(0.5),
              LaplaceExponent::cp_exp_sub(1, 1, 0)}) {
            worst = std::max(worst, semigroup_residual(e, 0.3, 0.7, grid));
            worst = std::max(worst, semigroup_residual(e, 1.0, 2.0, grid));
        }
        report("semigroup law", worst <= 1e-12, worst);
    }
    {
        auto e = LaplaceExponent::stable(1.5);
        auto ref = t_transform(e, 1.0, 1.0);
        LevyTriple img = transformed_triple(to_triple(e), 1.0, 1.0, 1e-10);
        double worst = 0;
        for (double u : {0.5, 1.0, 2.0})
            worst = std::max(worst,
                             std::fabs(eval_lk_triple(img, u, 1e-10) - ref(u)));
        report("transformed triple equivalence", worst <= 1e-7, worst);
    }
    {
        double worst = 0;
        auto w = [](double x) { return 2.0 * x; };
        for (double x : {0.5, 1.0, 3.0})
            worst = std::max(
                worst, std::fabs(scale_tbeta(w, 2.0, x) + std::expm1(-2.0 * x)));
        report("scale transformation (brownian)", worst <= 1e-8, worst);
    }
    {
        double v = ek_apply([](double r) { return r; }, {1.0, 0.5}, 1.0).value;
        report("erdelyi-kober monomial", std::fabs(v - 0.8) <= 1e-10,
               std::fabs(v - 0.8));
    }
    {
        auto psi = LaplaceExponent::pochhammer_general(1.5, 1.5, 1.0 / 1.5);
        EntranceLaw law = entrance_moments(psi, 6);
        DistributionFactor fac = entrance_factorization(psi);
        double worst = 0;
        for (int n = 1; n <= 6; ++n)
            worst = std::max(worst, std::fabs(fac.mellin(double(n)) - law[n]) /
                                        law[n]);
        report("entrance factorization", worst <= 1e-10, worst);
    }
    if (!quick) {
        SimConfig cfg;
        cfg.paths = 20000;
        cfg.seed = 7;
        auto cp = LaplaceExponent::cp_exp_sub(1, 1, 1);
        auto r = sample_exp_functional(cp, cfg);
        MomentLadder lad = sub_moments(cp, 2);
        CompareReport rep = mc_compare(
            r.samples, {{CompareTarget::Kind::Moment, 1, lad[1], "E[I]"},
                        {CompareTarget::Kind::Moment, 2, lad[2], "E[I^2]"}});
        double worstz = 0;
        for (auto& l : rep.lines) worstz = std::max(worstz, l.z);
        report("mc exponential functional", rep.pass, worstz);
    }
    std::cout << (failures == 0 ? "verification passed\n"
                                : "verification FAILED\n");
    return failures == 0 ? 0 : 3;
}

}  // namespace
