#include "stratakit/json_io.hpp"

#include <sstream>

namespace stratakit {

json parse_json(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidInputError(what + ": " + e.what());
    }
}

json to_json(const RealPolyField& P) {
    return json{{"k", P.k}, {"coeffs", P.eps}};
}

RealPolyField poly_from_json(const json& j) {
    try {
        int k = j.at("k").get<int>();
        std::vector<double> eps = j.at("coeffs").get<std::vector<double>>();
        return RealPolyField(k, std::move(eps));
    } catch (const json::exception& e) {
        throw InvalidInputError(std::string("polynomial JSON: ") + e.what());
    }
}

json to_json(const NonXInvolution& tau) {
    json pairs = json::array();
    for (auto [a, b] : tau.arcs()) pairs.push_back(json::array({a, b}));
    return json{{"k", tau.k}, {"ell", tau.ell}, {"pairs", pairs}, {"fixed", tau.fixed_points()}};
}

NonXInvolution involution_from_json(const json& j) {
    try {
        NonXInvolution tau;
        tau.k = j.at("k").get<int>();
        tau.ell = j.at("ell").get<int>();
        const int n = tau.k - tau.ell;
        if (n < 0) throw InvalidInputError("involution JSON: ell exceeds k");
        tau.pairing.assign(static_cast<std::size_t>(n), 0);
        for (const auto& f : j.at("fixed")) {
            int v = f.get<int>();
            if (v < 1 || v > n) throw InvalidInputError("involution JSON: fixed point out of range");
            tau.pairing[static_cast<std::size_t>(v - 1)] = v;
        }
        for (const auto& p : j.at("pairs")) {
            int a = p.at(0).get<int>(), b = p.at(1).get<int>();
            if (a < 1 || a > n || b < 1 || b > n) throw InvalidInputError("involution JSON: pair out of range");
            tau.pairing[static_cast<std::size_t>(a - 1)] = b;
            tau.pairing[static_cast<std::size_t>(b - 1)] = a;
        }
        for (int v : tau.pairing)
            if (v == 0) throw InvalidInputError("involution JSON: pairing does not cover the domain");
        tau.validate();
        return tau;
    } catch (const json::exception& e) {
        throw InvalidInputError(std::string("involution JSON: ") + e.what());
    }
}

json to_json(const Modulus& mod) {
    json eta_h = json::array();
    for (const cplx& h : mod.eta_H) eta_h.push_back(json::array({h.real(), h.imag()}));
    json j{{"tau", to_json(mod.tau)}, {"eta_H", eta_h}, {"eta_I", mod.eta_I}};
    j["eta_R"] = mod.eta_R ? json(*mod.eta_R) : json(nullptr);
    return j;
}

Modulus modulus_from_json(const json& j) {
    try {
        Modulus mod;
        mod.tau = involution_from_json(j.at("tau"));
        for (const auto& h : j.at("eta_H"))
            mod.eta_H.emplace_back(h.at(0).get<double>(), h.at(1).get<double>());
        mod.eta_I = j.at("eta_I").get<std::vector<double>>();
        if (!j.at("eta_R").is_null()) mod.eta_R = j.at("eta_R").get<double>();
        mod.validate();
        return mod;
    } catch (const json::exception& e) {
        throw InvalidInputError(std::string("modulus JSON: ") + e.what());
    }
}

json to_json(const K3Label& label) {
    json w = json::object();
    for (const auto& [name, value] : label.witnesses) w[name] = value;
    json j{{"label", label.label}, {"m", label.m}, {"delta", label.delta}, {"witnesses", w}};
    j["stratum"] = label.stratum.empty() ? json(nullptr) : json(label.stratum);
    return j;
}

json to_json(const K3Sample& sample) {
    json j{{"eps", sample.eps}, {"label", sample.label.label}, {"m", sample.label.m},
           {"delta", sample.label.delta}};
    if (!sample.label.stratum.empty()) j["stratum"] = sample.label.stratum;
    return j;
}

std::string trace_dump(const FieldAnalysis& fa) {
    std::ostringstream os;
    for (const auto& t : fa.traces) {
        json points = json::array();
        for (const cplx& z : t.points) points.push_back(json::array({z.real(), z.imag()}));
        os << json{{"index", t.index}, {"landing", t.landing}, {"points", points}}.dump() << "\n";
    }
    return os.str();
}

} // namespace stratakit
