#pragma once

// JSON schema for exponent specs and run manifests.
//
// Family form:  {"family": "...", "params": {...}}
// Triple form:  {"triple": {"kappa": k, "a": a, "sigma2": s,
//                           "jumps": [{"type": "atom", "position": x, "weight": w},
//                                     {"type": "stable_density", "alpha": a, "weight": w},
//                                     {"type": "exp_density", "b": b, "weight": w}]}}

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "levyx/exponent.hpp"

namespace levyx {

using json = nlohmann::json;

inline LaplaceExponent exponent_from_json(const json& j) {
    if (j.contains("family")) {
        std::string fam = j.at("family").get<std::string>();
        const json& p = j.value("params", json::object());
        auto get = [&](const char* k, double dflt) {
            return p.contains(k) ? p.at(k).get<double>() : dflt;
        };
        auto need = [&](const char* k) {
            if (!p.contains(k))
                throw std::invalid_argument(std::string("spec: missing params.") + k);
            return p.at(k).get<double>();
        };
        if (fam == "brownian")
            return LaplaceExponent::brownian(need("sigma2"), need("drift"),
                                             get("kappa", 0));
        if (fam == "stable")
            return LaplaceExponent::stable(need("alpha"), get("c", 0),
                                           get("kappa", 0));
        if (fam == "pochhammer_sn")
            return LaplaceExponent::pochhammer_sn(need("alpha"));
        if (fam == "lamperti_stable_sn")
            return LaplaceExponent::lamperti_stable_sn(need("alpha"));
        if (fam == "pochhammer_general_sn")
            return LaplaceExponent::pochhammer_general(need("alpha"), need("scale"),
                                                       need("shift"));
        if (fam == "stable_sub") return LaplaceExponent::stable_sub(need("alpha"));
        if (fam == "lamperti_stable_sub")
            return LaplaceExponent::lamperti_stable_sub(need("alpha"));
        if (fam == "poisson_sub") return LaplaceExponent::poisson_sub(need("q"));
        if (fam == "cp_exp_sub")
            return LaplaceExponent::cp_exp_sub(need("c"), need("b"),
                                               get("kappa", 0));
        throw std::invalid_argument("spec: unknown family '" + fam + "'");
    }
    if (j.contains("triple")) {
        const json& t = j.at("triple");
        LevyTriple triple;
        triple.kappa = t.value("kappa", 0.0);
        triple.a = t.value("a", 0.0);
        triple.sigma2 = t.value("sigma2", 0.0);
        for (const auto& c : t.value("jumps", json::array())) {
            std::string type = c.at("type").get<std::string>();
            double w = c.value("weight", 1.0);
            if (type == "atom") {
                triple.jumps.components.push_back(
                    JumpComponent::atom(c.at("position").get<double>(), w));
            } else if (type == "stable_density") {
                double alpha = c.at("alpha").get<double>();
                triple.jumps.components.push_back(JumpComponent::make_density(
                    [alpha](double x) { return std::pow(-x, -1.0 - alpha); }, w,
                    alpha,
                    [alpha](double x) { return std::pow(x, -alpha) / alpha; },
                    alpha));
            } else if (type == "exp_density") {
                double b = c.at("b").get<double>();
                triple.jumps.components.push_back(JumpComponent::make_density(
                    [b](double x) { return b * std::exp(b * x); }, w, 0.0,
                    [b](double x) { return std::exp(-b * x); }));
            } else {
                throw std::invalid_argument("spec: unknown jump type '" + type + "'");
            }
        }
        if (triple.kappa < 0 || triple.sigma2 < 0)
            throw std::invalid_argument("spec: triple.kappa and triple.sigma2 >= 0");
        return LaplaceExponent::from_triple(std::move(triple));
    }
    throw std::invalid_argument("spec: need either 'family' or 'triple'");
}

inline json exponent_to_json(const LaplaceExponent& e) {
    json j;
    switch (e.family()) {
        case Family::Brownian: j["family"] = "brownian"; break;
        case Family::Stable: j["family"] = "stable"; break;
        case Family::PochhammerSN: j["family"] = "pochhammer_sn"; break;
        case Family::LampertiStableSN: j["family"] = "lamperti_stable_sn"; break;
        case Family::PochhammerGeneralSN:
            j["family"] = "pochhammer_general_sn";
            break;
        case Family::StableSub: j["family"] = "stable_sub"; break;
        case Family::LampertiStableSub: j["family"] = "lamperti_stable_sub"; break;
        case Family::PoissonSub: j["family"] = "poisson_sub"; break;
        case Family::CPExpSub: j["family"] = "cp_exp_sub"; break;
        case Family::Custom:
            throw std::invalid_argument("emit_spec: custom exponents not serializable");
    }
    j["params"] = json::object();
    for (const auto& [k, v] : e.params()) j["params"][k] = v;
    return j;
}

inline LaplaceExponent load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("load_spec: cannot open " + path);
    json j = json::parse(in);
    return exponent_from_json(j);
}

// doubles serialized with 17 significant digits for lossless round trips
inline std::string canonical_dump(const json& j) {
    std::ostringstream os;
    os.precision(17);
    std::function<void(const json&)> emit = [&](const json& v) {
        if (v.is_object()) {
            os << '{';
            bool first = true;
            for (auto it = v.begin(); it != v.end(); ++it) {
                if (!first) os << ',';
                first = false;
                os << '"' << it.key() << "\":";
                emit(it.value());
            }
            os << '}';
        } else if (v.is_array()) {
            os << '[';
            for (size_t i = 0; i < v.size(); ++i) {
                if (i) os << ',';
                emit(v[i]);
            }
            os << ']';
        } else if (v.is_number_float()) {
            os << v.get<double>();
        } else {
            os << v.dump();
        }
    };
    emit(j);
    return os.str();
}

inline uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

struct RunManifest {
    std::string command;
    uint64_t spec_hash = 0;
    std::string config;
    std::string tool_version = "levyx 0.1.0";
    uint64_t seed = 0;
    std::vector<std::string> outputs;

    json to_json() const {
        json j;
        j["command"] = command;
        j["spec_hash"] = spec_hash;
        j["config"] = config;
        j["tool_version"] = tool_version;
        j["seed"] = seed;
        j["outputs"] = outputs;
        return j;
    }
};

}  // namespace levyx
