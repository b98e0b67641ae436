#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "stratakit/bifurcation3.hpp"
#include "stratakit/json_io.hpp"
#include "stratakit/realize.hpp"
#include "stratakit/selfcheck.hpp"
#include "stratakit/svg.hpp"

namespace py = pybind11;
using namespace stratakit;

namespace {

std::string step_word_of(const DispersedDyckPath& p) {
    std::string s;
    for (Step st : p.steps) s.push_back(st == Step::up ? 'u' : st == Step::down ? 'd' : 'f');
    return s;
}

DispersedDyckPath path_from_word(const std::string& word) {
    DispersedDyckPath p;
    for (char c : word) {
        if (c == 'u') p.steps.push_back(Step::up);
        else if (c == 'd') p.steps.push_back(Step::down);
        else if (c == 'f') p.steps.push_back(Step::flat);
        else throw InvalidInputError("path word must be over {u,d,f}");
    }
    p.validate();
    return p;
}

} // namespace

PYBIND11_MODULE(_stratakit, m) {
    m.doc() = "Strata, invariants and realization of complex polynomial fields z' = P(z) "
              "with real coefficients.";
    m.attr("__version__") = version_string;

    py::register_exception<InvalidInputError>(m, "InvalidInputError", PyExc_ValueError);
    py::register_exception<NotGenericError>(m, "NotGenericError", PyExc_ArithmeticError);
    py::register_exception<NumericFailureError>(m, "NumericFailureError", PyExc_RuntimeError);

    py::class_<RealPolyField>(m, "RealPolyField")
        .def(py::init<int, std::vector<double>>(), py::arg("k"), py::arg("coeffs"))
        .def_readonly("k", &RealPolyField::k)
        .def_readonly("coeffs", &RealPolyField::eps)
        .def("__call__", [](const RealPolyField& P, cplx z) { return eval(P, z); })
        .def("__repr__", [](const RealPolyField& P) { return to_json(P).dump(); });

    py::enum_<PointKind>(m, "PointKind")
        .value("radial_node", PointKind::radial_node)
        .value("strong_focus", PointKind::strong_focus)
        .value("center", PointKind::center)
        .value("parabolic", PointKind::parabolic);

    py::class_<SingularPoint>(m, "SingularPoint")
        .def_readonly("location", &SingularPoint::location)
        .def_readonly("multiplicity", &SingularPoint::multiplicity)
        .def_readonly("eigenvalue", &SingularPoint::eigenvalue)
        .def_readonly("residue", &SingularPoint::residue)
        .def_readonly("kind", &SingularPoint::kind)
        .def_readonly("is_real", &SingularPoint::is_real)
        .def("__repr__", [](const SingularPoint& sp) {
            return "SingularPoint(" + std::to_string(sp.location.real()) + "+" +
                   std::to_string(sp.location.imag()) + "j, mult=" + std::to_string(sp.multiplicity) +
                   ", " + to_string(sp.kind) + ")";
        });

    py::class_<NonXInvolution>(m, "NonXInvolution")
        .def(py::init([](int k, int ell, std::vector<int> pairing) {
                 NonXInvolution tau{k, ell, std::move(pairing)};
                 tau.validate();
                 return tau;
             }),
             py::arg("k"), py::arg("ell"), py::arg("pairing"))
        .def_readonly("k", &NonXInvolution::k)
        .def_readonly("ell", &NonXInvolution::ell)
        .def_readonly("pairing", &NonXInvolution::pairing)
        .def_property_readonly("m", &NonXInvolution::real_point_count)
        .def_property_readonly("id", [](const NonXInvolution& t) { return stratum_id(t); })
        .def("arcs", &NonXInvolution::arcs)
        .def("fixed_points", &NonXInvolution::fixed_points)
        .def("__eq__", [](const NonXInvolution& a, const NonXInvolution& b) { return a == b; })
        .def("__repr__", [](const NonXInvolution& t) { return to_json(t).dump(); });

    py::class_<Modulus>(m, "Modulus")
        .def(py::init([](const NonXInvolution& tau, std::vector<cplx> eta_H,
                         std::vector<double> eta_I, std::optional<double> eta_R) {
                 Modulus mod{tau, std::move(eta_H), std::move(eta_I), eta_R};
                 mod.validate();
                 return mod;
             }),
             py::arg("tau"), py::arg("eta_H"), py::arg("eta_I"), py::arg("eta_R") = std::nullopt)
        .def_readonly("tau", &Modulus::tau)
        .def_readonly("eta_H", &Modulus::eta_H)
        .def_readonly("eta_I", &Modulus::eta_I)
        .def_readonly("eta_R", &Modulus::eta_R)
        .def("coords", [](const Modulus& mod) { return modulus_coords(mod); })
        .def("__repr__", [](const Modulus& mod) { return to_json(mod).dump(); });

    py::class_<K3Label>(m, "K3Label")
        .def_readonly("label", &K3Label::label)
        .def_readonly("stratum", &K3Label::stratum)
        .def_readonly("m", &K3Label::m)
        .def_readonly("delta", &K3Label::delta)
        .def_readonly("witnesses", &K3Label::witnesses)
        .def("__repr__", [](const K3Label& l) { return to_json(l).dump(); });

    py::class_<CheckResult>(m, "CheckResult")
        .def_readonly("name", &CheckResult::name)
        .def_readonly("passed", &CheckResult::pass)
        .def_readonly("detail", &CheckResult::detail)
        .def_readonly("seconds", &CheckResult::seconds);

    // poly-core
    m.def("find_roots", [](const RealPolyField& P) { return find_roots(P); });
    m.def("classify_eigenvalue",
          [](cplx lam) { return to_string(classify_eigenvalue(lam)); });
    m.def("residue_sum", [](const RealPolyField& P) { return residue_sum(P); });
    m.def("is_generic_real", [](const RealPolyField& P) {
        auto rep = is_generic_real(P);
        return py::make_tuple(rep.generic, rep.diagnostic);
    });
    m.def("normalize", [](const std::vector<double>& raw) {
        Normalized n = normalize(raw);
        return py::make_tuple(n.poly, n.change.shift, n.change.scale, n.change.time_reversed);
    });
    m.def("unfold_jacobian_rank_margin", [](const RealPolyField& P, cplx z0) {
        auto fam = unfold_parabolic(P, z0);
        return min_singular_value_scaled(unfolding_jacobian(fam));
    });

    // combinatorics
    m.def("enumerate_strata", &enumerate_strata, py::arg("k"));
    m.def("count_D", &count_D, py::arg("k"));
    m.def("count_Dkm", &count_Dkm, py::arg("k"), py::arg("m"));
    m.def("catalan", &catalan, py::arg("n"));
    m.def("dispersed_count", &dispersed_count, py::arg("n"));
    m.def("involution_to_path",
          [](const NonXInvolution& tau) { return step_word_of(involution_to_dispersed(tau)); });
    m.def("path_to_involution",
          [](const std::string& word) { return dispersed_to_involution(path_from_word(word)); });
    m.def("dispersed_to_plain",
          [](const std::string& word) { return dispersed_to_plain(path_from_word(word)); });
    m.def("attachment_classes", [](const NonXInvolution& tau) {
        StratumDescriptor d = attachment_classes(tau);
        std::vector<std::string> forest;
        for (const auto& tree : d.upper_forest) forest.push_back(tree.encode());
        return py::make_tuple(d.classes, forest);
    });
    m.def("successor_strata", [](const NonXInvolution& tau) {
        auto [a, b] = successor_strata(tau);
        return py::make_tuple(a, b);
    });

    // invariants
    m.def("trace_landings", [](const RealPolyField& P) {
        FieldAnalysis fa = FieldAnalysis::build(P);
        std::vector<std::pair<int, int>> out;
        for (const auto& t : fa.traces) out.emplace_back(t.index, t.landing);
        return out;
    });
    m.def("extract_combinatorial",
          [](const RealPolyField& P) { return extract_combinatorial(P); });
    m.def("transversal_time", [](const RealPolyField& P, int j, int tj) {
        return transversal_time(P, {j, tj});
    });
    m.def("period_R", [](const RealPolyField& P) { return period_R(P); });
    m.def("extract_modulus", [](const RealPolyField& P) { return extract_modulus(P); });

    // realization
    m.def("seed_for_stratum",
          [](const NonXInvolution& tau, unsigned seed) { return seed_for_stratum(tau, {}, seed); },
          py::arg("tau"), py::arg("seed") = 1u);
    m.def("realize",
          [](const Modulus& target, std::optional<RealPolyField> seed) {
              RealPolyField s = seed ? *seed : seed_for_stratum(target.tau);
              RealizationResult res = realize({target, s, Tolerances{}});
              return py::make_tuple(res.poly, res.residual, res.iterations);
          },
          py::arg("target"), py::arg("seed") = std::nullopt);
    m.def("modulus_jacobian", [](const RealPolyField& P) { return modulus_jacobian(P); });

    // degree-4 diagram
    m.def("discriminant", &k3_discriminant, py::arg("eps2"), py::arg("eps1"), py::arg("eps0"));
    m.def("classify_k3",
          [](double e2, double e1, double e0, bool resolve) {
              return classify_k3(e2, e1, e0, {}, resolve);
          },
          py::arg("eps2"), py::arg("eps1"), py::arg("eps0"), py::arg("resolve_stratum") = true);
    m.def("sample_k3_box",
          [](int count, unsigned seed, double lo, double hi, bool resolve) {
              std::vector<py::tuple> out;
              for (const auto& s : sample_k3_box(count, seed, lo, hi, {}, resolve))
                  out.push_back(py::make_tuple(s.eps, s.label));
              return out;
          },
          py::arg("count"), py::arg("seed") = 1u, py::arg("lo") = -2.0, py::arg("hi") = 2.0,
          py::arg("resolve_stratum") = true);

    // output
    m.def("render_portrait", [](const RealPolyField& P, double x0, double x1, double y0, double y1,
                                int density, bool tree) {
              PortraitSpec spec;
              spec.poly = P;
              spec.x_min = x0;
              spec.x_max = x1;
              spec.y_min = y0;
              spec.y_max = y1;
              spec.density = density;
              spec.tree_overlay = tree;
              return render_portrait(spec);
          },
          py::arg("poly"), py::arg("x_min") = -2.0, py::arg("x_max") = 2.0, py::arg("y_min") = -2.0,
          py::arg("y_max") = 2.0, py::arg("density") = 7, py::arg("tree") = false);
    m.def("run_selfcheck",
          [](const std::string& filter) {
              SelfcheckOptions opts;
              opts.filter = filter;
              return run_selfcheck(opts);
          },
          py::arg("filter") = std::string());

    m.def("poly_to_json", [](const RealPolyField& P) { return to_json(P).dump(); });
    m.def("poly_from_json",
          [](const std::string& text) { return poly_from_json(parse_json(text, "poly")); });
    m.def("modulus_to_json", [](const Modulus& mod) { return to_json(mod).dump(); });
    m.def("modulus_from_json",
          [](const std::string& text) { return modulus_from_json(parse_json(text, "modulus")); });
}
