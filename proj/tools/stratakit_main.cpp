#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "stratakit/json_io.hpp"
#include "stratakit/realize.hpp"
#include "stratakit/selfcheck.hpp"
#include "stratakit/svg.hpp"

namespace sk = stratakit;

namespace {

// Inline JSON, "-" for stdin, or a file path.
std::string read_payload(const std::string& arg) {
    if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) return arg;
    if (arg == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream in(arg);
    if (!in) throw sk::InvalidInputError("cannot open input file: " + arg);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_output(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw sk::InvalidInputError("cannot open output file: " + out_path);
    out << text;
}

sk::Tolerances make_tol(double rel) {
    sk::Tolerances tol;
    tol.generic_margin = rel;
    tol.locus_band = rel;
    tol.sym_project_rel = rel;
    tol.trace_tol = rel * 1e-3;
    tol.quad_tol = rel * 1e-5;
    return tol;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"stratakit: strata, invariants and realization of real polynomial fields z' = P(z)"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    bool as_json = false;
    double tol_rel = 1e-7;
    unsigned seed = 1;
    std::string out_path;
    app.add_flag("--json", as_json, "machine-readable output");
    app.add_option("--tol", tol_rel, "relative tolerance knob (default 1e-7)");
    app.add_option("--seed", seed, "seed for randomized fallbacks and sampling");
    app.add_option("--out", out_path, "write output to a file instead of stdout");

    int k_arg = 1;
    auto* cmd_count = app.add_subcommand("count", "stratum counting table at codimension k");
    cmd_count->add_option("k", k_arg, "codimension (1..12)")->required();

    auto* cmd_enum = app.add_subcommand("enumerate", "canonical list of strata at codimension k");
    cmd_enum->add_option("k", k_arg, "codimension (1..12)")->required();

    std::string payload;
    std::string traces_path;
    auto* cmd_inv = app.add_subcommand("invariant", "extract the modulus of a polynomial field");
    cmd_inv->add_option("poly", payload, "polynomial JSON, file, or -")->required();
    cmd_inv->add_option("--traces", traces_path, "also dump separatrix polylines as JSON lines");

    auto* cmd_real = app.add_subcommand("realize", "find the unique polynomial with a given modulus");
    cmd_real->add_option("modulus", payload, "modulus JSON, file, or -")->required();

    std::vector<double> eps3;
    auto* cmd_cls = app.add_subcommand("classify3", "classify a point of the degree-4 diagram");
    cmd_cls->add_option("eps", eps3, "eps2 eps1 eps0")->expected(3);

    std::string sweep_spec;
    int sample_n = 0;
    double sphere_radius = 0.0;
    cmd_cls->add_option("--sample", sample_n, "classify a random cloud of this size in [-2,2]^3");
    cmd_cls->add_option("--sphere", sphere_radius, "classify a lattice sample of the sphere of this radius");

    auto* cmd_port = app.add_subcommand("portrait", "render a deterministic SVG phase portrait");
    cmd_port->add_option("poly", payload, "polynomial JSON, file, or -")->required();
    std::vector<double> window;
    int density = 7;
    bool tree = false;
    cmd_port->add_option("--window", window, "x_min x_max y_min y_max")->expected(4);
    cmd_port->add_option("--density", density, "orbit seeds per axis");
    cmd_port->add_flag("--tree", tree, "overlay the tree graph");

    std::string filter;
    auto* cmd_self = app.add_subcommand("selfcheck", "run the acceptance criteria");
    cmd_self->add_option("--filter", filter, "run only criteria whose name contains this");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    const sk::Tolerances tol = make_tol(tol_rel);

    try {
        if (*cmd_count) {
            if (k_arg < 1 || k_arg > 12) throw sk::InvalidInputError("count: k must be in 1..12");
            sk::json per_m = sk::json::object();
            std::ostringstream human;
            human << "k = " << k_arg << "\n";
            human << "D(k)      = " << sk::count_D(k_arg) << "  (strata over R)\n";
            human << "Dd(k)     = " << sk::dispersed_count(k_arg) << "  (strata with a real singular point)\n";
            human << "C(k)      = " << sk::catalan(k_arg) << "  (strata over C)\n";
            human << "D(k,m):";
            for (int m = (k_arg + 1) % 2; m <= k_arg + 1; m += 2) {
                if (m == 0 && k_arg % 2 == 0) continue;
                long long v = sk::count_Dkm(k_arg, m);
                per_m[std::to_string(m)] = v;
                human << "  m=" << m << ": " << v;
            }
            human << "\n";
            if (as_json) {
                sk::json j{{"k", k_arg},
                           {"D", sk::count_D(k_arg)},
                           {"dispersed", sk::dispersed_count(k_arg)},
                           {"catalan", sk::catalan(k_arg)},
                           {"D_per_m", per_m}};
                write_output(out_path, j.dump(2));
            } else {
                write_output(out_path, human.str());
            }
        } else if (*cmd_enum) {
            if (k_arg < 1 || k_arg > 12) throw sk::InvalidInputError("enumerate: k must be in 1..12");
            auto strata = sk::enumerate_strata(k_arg);
            if (as_json) {
                sk::json arr = sk::json::array();
                for (std::size_t i = 0; i < strata.size(); ++i) {
                    sk::json j = sk::to_json(strata[i]);
                    j["id"] = "k" + std::to_string(k_arg) + "-" + std::to_string(i);
                    j["m"] = strata[i].real_point_count();
                    arr.push_back(j);
                }
                write_output(out_path, arr.dump(2));
            } else {
                std::ostringstream os;
                for (std::size_t i = 0; i < strata.size(); ++i) {
                    const auto& tau = strata[i];
                    os << "k" << k_arg << "-" << i << "  ell=" << tau.ell
                       << " m=" << tau.real_point_count() << "  word=" << sk::canonical_key(tau)
                       << "  pairs=[";
                    bool first = true;
                    for (auto [a, b] : tau.arcs()) {
                        if (!first) os << ' ';
                        os << a << '-' << b;
                        first = false;
                    }
                    os << "] fixed=[";
                    first = true;
                    for (int f : tau.fixed_points()) {
                        if (!first) os << ' ';
                        os << f;
                        first = false;
                    }
                    os << "]\n";
                }
                write_output(out_path, os.str());
            }
        } else if (*cmd_inv) {
            sk::RealPolyField P = sk::poly_from_json(sk::parse_json(read_payload(payload), "invariant"));
            sk::FieldAnalysis fa = sk::FieldAnalysis::build(P, tol);
            sk::Modulus mod = sk::extract_modulus(fa);
            if (!traces_path.empty()) {
                std::ofstream traces(traces_path, std::ios::binary);
                if (!traces) throw sk::InvalidInputError("cannot open trace file: " + traces_path);
                traces << sk::trace_dump(fa);
            }
            sk::json j = sk::to_json(mod);
            j["stratum"] = sk::stratum_id(mod.tau);
            write_output(out_path, j.dump(2));
        } else if (*cmd_real) {
            sk::Modulus target = sk::modulus_from_json(sk::parse_json(read_payload(payload), "realize"));
            sk::RealPolyField seed_poly = sk::seed_for_stratum(target.tau, tol, seed);
            sk::RealizationResult res = sk::realize({target, seed_poly, tol});
            sk::json j = sk::to_json(res.poly);
            j["residual"] = res.residual;
            j["iterations"] = res.iterations;
            j["continuation_steps"] = res.continuation_steps;
            write_output(out_path, j.dump(2));
        } else if (*cmd_cls) {
            if (sample_n > 0 || sphere_radius > 0.0) {
                auto samples = sample_n > 0
                                   ? sk::sample_k3_box(sample_n, seed, -2.0, 2.0, tol, true)
                                   : sk::sample_k3_sphere(sphere_radius, 500, tol, true);
                std::ostringstream os;
                for (const auto& s : samples) os << sk::to_json(s).dump() << "\n";
                write_output(out_path, os.str());
            } else {
                if (eps3.size() != 3) throw sk::InvalidInputError("classify3: expected eps2 eps1 eps0");
                sk::K3Label label = sk::classify_k3(eps3[0], eps3[1], eps3[2], tol, true);
                if (as_json) {
                    write_output(out_path, sk::to_json(label).dump(2));
                } else {
                    std::ostringstream os;
                    os << label.label;
                    if (!label.stratum.empty()) os << " (" << label.stratum << ")";
                    os << "  m=" << label.m << "  delta=" << label.delta << "\n";
                    write_output(out_path, os.str());
                }
            }
        } else if (*cmd_port) {
            sk::PortraitSpec spec;
            spec.poly = sk::poly_from_json(sk::parse_json(read_payload(payload), "portrait"));
            if (!window.empty()) {
                spec.x_min = window[0];
                spec.x_max = window[1];
                spec.y_min = window[2];
                spec.y_max = window[3];
            }
            spec.density = density;
            spec.tree_overlay = tree;
            write_output(out_path, sk::render_portrait(spec, tol));
        } else if (*cmd_self) {
            sk::SelfcheckOptions opts;
            opts.filter = filter;
            opts.seed = seed;
            opts.tol = tol;
            auto results = sk::run_selfcheck(opts);
            std::ostringstream os;
            bool all_ok = true;
            for (const auto& r : results) {
                os << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << " (" << r.seconds << " s): "
                   << r.detail << "\n";
                all_ok = all_ok && r.pass;
            }
            write_output(out_path, os.str());
            return all_ok ? 0 : 1;
        }
    } catch (const sk::InvalidInputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const sk::NotGenericError& e) {
        std::cerr << "not generic within tolerance: " << e.what() << "\n";
        return 3;
    } catch (const sk::NumericFailureError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
