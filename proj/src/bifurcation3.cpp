#include "stratakit/bifurcation3.hpp"

#include <algorithm>
#include <cmath>

#include "stratakit/parallel.hpp"
#include "stratakit/rng.hpp"

namespace stratakit {

double k3_discriminant(double e2, double e1, double e0) {
    return 256.0 * e0 * e0 * e0 - 27.0 * e1 * e1 * e1 * e1 + 144.0 * e0 * e1 * e1 * e2 -
           128.0 * e0 * e0 * e2 * e2 - 4.0 * e1 * e1 * e2 * e2 * e2 + 16.0 * e0 * e2 * e2 * e2 * e2;
}

namespace {

double discriminant_scale(double e2, double e1, double e0) {
    return 256.0 * std::abs(e0 * e0 * e0) + 27.0 * e1 * e1 * e1 * e1 +
           std::abs(144.0 * e0 * e1 * e1 * e2) + 128.0 * e0 * e0 * e2 * e2 +
           std::abs(4.0 * e1 * e1 * e2 * e2 * e2) + std::abs(16.0 * e0 * e2 * e2 * e2 * e2);
}

struct RootView {
    std::vector<SingularPoint> roots;
    int m = 0;                 // real singular points (distinct)
    bool has_multiple = false;
    bool multiple_is_real = false;
    double min_gap = std::numeric_limits<double>::infinity();
    cplx closest_pair_mid;
};

RootView inspect_roots(const RealPolyField& P, const Tolerances& tol) {
    RootView v;
    v.roots = find_roots(P, tol);
    for (const auto& sp : v.roots) {
        if (sp.is_real) ++v.m;
        if (sp.multiplicity > 1) {
            v.has_multiple = true;
            if (sp.is_real) v.multiple_is_real = true;
            v.min_gap = 0.0;
            v.closest_pair_mid = sp.location;
        }
    }
    for (std::size_t i = 0; i < v.roots.size(); ++i)
        for (std::size_t j = i + 1; j < v.roots.size(); ++j) {
            double d = std::abs(v.roots[i].location - v.roots[j].location);
            if (d < v.min_gap) {
                v.min_gap = d;
                v.closest_pair_mid = 0.5 * (v.roots[i].location + v.roots[j].location);
            }
        }
    return v;
}

} // namespace

K3Label classify_k3(double e2, double e1, double e0, const Tolerances& tol, bool resolve_stratum) {
    K3Label out;
    out.delta = k3_discriminant(e2, e1, e0);

    if (e2 == 0.0 && e1 == 0.0 && e0 == 0.0) {
        out.label = "higher-codim";
        out.m = 1;
        out.witnesses.emplace_back("quadruple-root", 4.0);
        return out;
    }

    // Zoom to weighted radius one: eps_j carries weight k+1-j.
    const double w = std::max({std::sqrt(std::abs(e2)), std::cbrt(std::abs(e1)),
                               std::pow(std::abs(e0), 0.25)});
    const double r = 1.0 / w;
    const double E2 = e2 * r * r, E1 = e1 * r * r * r, E0 = e0 * r * r * r * r;

    const double band = tol.locus_band;
    const double delta_s = k3_discriminant(E2, E1, E0);
    const double delta_scale = std::max(discriminant_scale(E2, E1, E0), 1e-30);
    const bool on_disc = std::abs(delta_s) <= band * delta_scale;
    const bool e1_zero = std::abs(E1) <= band;
    const double df = E2 * E2 - 4.0 * E0;
    const bool df_zero = std::abs(df) <= band * std::max({1.0, E2 * E2, 4.0 * std::abs(E0)});
    const bool e0_zero = std::abs(E0) <= band;

    RealPolyField scaled(3, {E2, E1, E0});
    RootView rv = inspect_roots(scaled, tol);
    out.m = rv.m;
    out.witnesses.emplace_back("delta_scaled", delta_s);
    out.witnesses.emplace_back("eps1_scaled", E1);
    out.witnesses.emplace_back("min_root_gap", rv.min_gap);

    const bool pair_is_real =
        std::abs(rv.closest_pair_mid.imag()) <= 1e-6 * (1.0 + std::abs(rv.closest_pair_mid));

    if (on_disc || rv.has_multiple) {
        const bool real_side = rv.has_multiple ? rv.multiple_is_real : pair_is_real;
        if (real_side) {
            // Swallowtail face or one of its distinguished edges/intersections.
            if (e1_zero && e0_zero && E2 > band) {
                out.label = "higher-codim"; // real parabolic at 0 plus homoclinic loops
                out.witnesses.emplace_back("real-parabolic-and-homoclinic", E2);
            } else if (e1_zero && df_zero && E2 < -band) {
                out.label = "higher-codim"; // two real parabolic points
                out.witnesses.emplace_back("double-real-parabolic", df);
            } else {
                out.label = "real-parabolic";
            }
        } else {
            if (e1_zero && df_zero && E2 > band) {
                out.label = "nonreal-parabolic-pair";
                out.witnesses.emplace_back("df", df);
            } else {
                out.label = "higher-codim";
                out.witnesses.emplace_back("nonreal-multiple-off-curve", df);
            }
        }
        return out;
    }

    if (e1_zero) {
        if (df_zero && E2 > band) {
            out.label = "nonreal-parabolic-pair";
            out.witnesses.emplace_back("df", df);
            return out;
        }
        if (E0 < -band) {
            out.label = "homoclinic-pair-m2";
            return out;
        }
        if (e0_zero && E2 > band) {
            out.label = "higher-codim"; // parabolic at 0 meets the loop surface
            out.witnesses.emplace_back("real-parabolic-and-homoclinic", E2);
            return out;
        }
        if (E0 > band && E2 > band && df > 0.0) {
            out.label = "homoclinic-pair-m0";
            return out;
        }
        // eps1 = 0 with four real roots, or with a nonreal quadruple off the
        // imaginary axis, is plainly generic; fall through.
    }

    // Consistency: a nonreal center off every recognized locus is an
    // unresolved intersection, not a generic point.
    for (const auto& sp : rv.roots) {
        if (sp.is_real) continue;
        double margin = std::abs(sp.eigenvalue.real()) / std::abs(sp.eigenvalue);
        if (margin <= tol.generic_margin) {
            out.label = "higher-codim";
            out.witnesses.emplace_back("center-off-locus", margin);
            return out;
        }
    }

    out.label = "generic";
    if (resolve_stratum) {
        try {
            NonXInvolution tau = extract_combinatorial(scaled, tol);
            out.stratum = stratum_id(tau);
        } catch (const Error&) {
            out.label = "higher-codim";
            out.witnesses.emplace_back("extraction-refused", 1.0);
        }
    }
    return out;
}

std::vector<K3Sample> sample_k3_box(int count, unsigned seed, double lo, double hi,
                                    const Tolerances& tol, bool resolve_stratum) {
    std::vector<K3Sample> out(static_cast<std::size_t>(count));
    Rng rng(seed);
    for (auto& s : out)
        s.eps = {rng.uniform(lo, hi), rng.uniform(lo, hi), rng.uniform(lo, hi)};
    parallel_for(out.size(), [&](std::size_t i) {
        out[i].label = classify_k3(out[i].eps[0], out[i].eps[1], out[i].eps[2], tol, resolve_stratum);
    });
    return out;
}

std::vector<K3Sample> sample_k3_sweep(double e2, double e0_lo, double e0_hi, int count,
                                      const Tolerances& tol, bool resolve_stratum) {
    std::vector<K3Sample> out(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        double t = count > 1 ? static_cast<double>(i) / (count - 1) : 0.0;
        out[static_cast<std::size_t>(i)].eps = {e2, 0.0, e0_lo + t * (e0_hi - e0_lo)};
    }
    parallel_for(out.size(), [&](std::size_t i) {
        out[i].label = classify_k3(out[i].eps[0], out[i].eps[1], out[i].eps[2], tol, resolve_stratum);
    });
    return out;
}

std::vector<K3Sample> sample_k3_sphere(double radius, int count, const Tolerances& tol,
                                       bool resolve_stratum) {
    std::vector<K3Sample> out(static_cast<std::size_t>(count));
    const double golden = M_PI * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < count; ++i) {
        double y = 1.0 - 2.0 * (i + 0.5) / count;
        double rho = std::sqrt(std::max(0.0, 1.0 - y * y));
        double phi = golden * i;
        double x = rho * std::cos(phi), z = rho * std::sin(phi);
        out[static_cast<std::size_t>(i)].eps = {radius * x, radius * y, radius * z};
    }
    parallel_for(out.size(), [&](std::size_t i) {
        out[i].label = classify_k3(out[i].eps[0], out[i].eps[1], out[i].eps[2], tol, resolve_stratum);
    });
    return out;
}

} // namespace stratakit
