#include "stratakit/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <set>
#include <sstream>

namespace stratakit {

namespace {

std::string fmt(double v) {
    char buf[40];
    // fixed 1e-4 rounding keeps the output byte-stable across runs
    std::snprintf(buf, sizeof(buf), "%.4f", v == 0.0 ? 0.0 : v);
    return buf;
}

struct Frame {
    double x0, x1, y0, y1;
    double w, h;
    double px(double x) const { return (x - x0) / (x1 - x0) * w; }
    double py(double y) const { return h - (y - y0) / (y1 - y0) * h; }
    bool contains(cplx z, double margin) const {
        return z.real() > x0 - margin && z.real() < x1 + margin && z.imag() > y0 - margin &&
               z.imag() < y1 + margin;
    }
};

void emit_polyline(std::ostringstream& os, const Frame& fr, const std::vector<cplx>& pts,
                   const char* cls) {
    if (pts.size() < 2) return;
    os << "<polyline class=\"" << cls << "\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) os << ' ';
        os << fmt(fr.px(pts[i].real())) << ',' << fmt(fr.py(pts[i].imag()));
    }
    os << "\"/>\n";
}

// Fixed-step RK4 on the unit-speed field: plotting only needs smooth chords.
std::vector<cplx> orbit_polyline(const RealPolyField& P, const std::vector<SingularPoint>& roots,
                                 cplx z0, int dir, const Frame& fr, double step, int max_steps) {
    std::vector<cplx> pts{z0};
    cplx z = z0;
    auto f = [&](cplx v) -> std::optional<cplx> {
        cplx p = eval(P, v);
        double m = std::abs(p);
        if (m < 1e-12) return std::nullopt;
        return static_cast<double>(dir) * p / m;
    };
    const double margin = 0.2 * std::max(fr.x1 - fr.x0, fr.y1 - fr.y0);
    for (int i = 0; i < max_steps; ++i) {
        auto k1 = f(z);
        if (!k1) break;
        auto k2 = f(z + 0.5 * step * *k1);
        if (!k2) break;
        auto k3 = f(z + 0.5 * step * *k2);
        if (!k3) break;
        auto k4 = f(z + step * *k3);
        if (!k4) break;
        z += step / 6.0 * (*k1 + 2.0 * *k2 + 2.0 * *k3 + *k4);
        pts.push_back(z);
        if (!fr.contains(z, margin)) break;
        bool parked = false;
        for (const auto& sp : roots)
            if (std::abs(z - sp.location) < 1.5 * step) parked = true;
        if (parked) break;
    }
    return pts;
}

const char* kind_color(PointKind kind) {
    switch (kind) {
        case PointKind::radial_node: return "#c23b22";
        case PointKind::strong_focus: return "#e08a00";
        case PointKind::center: return "#2660a4";
        case PointKind::parabolic: return "#222222";
    }
    return "#222222";
}

} // namespace

std::string render_portrait(const PortraitSpec& spec, const Tolerances& tol) {
    if (spec.x_max <= spec.x_min || spec.y_max <= spec.y_min)
        throw InvalidInputError("render_portrait: empty window");
    if (spec.density < 1)
        throw InvalidInputError("render_portrait: density must be positive");

    const double aspect = (spec.y_max - spec.y_min) / (spec.x_max - spec.x_min);
    Frame fr{spec.x_min, spec.x_max, spec.y_min, spec.y_max,
             static_cast<double>(spec.size_px), spec.size_px * aspect};

    const auto roots = find_roots(spec.poly, tol);

    std::optional<FieldAnalysis> analysis;
    std::string warning;
    try {
        analysis = FieldAnalysis::build(spec.poly, tol);
    } catch (const Error& e) {
        warning = e.what();
    }

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(fr.w) << "\" height=\""
       << fmt(fr.h) << "\" viewBox=\"0 0 " << fmt(fr.w) << ' ' << fmt(fr.h) << "\">\n";
    os << "<desc>phase portrait, stratakit " << version_string << "</desc>\n";
    if (!warning.empty()) os << "<desc class=\"warning\">" << warning << "</desc>\n";
    os << "<style>.orbit{fill:none;stroke:#9aa5ad;stroke-width:0.8}"
          ".separatrix{fill:none;stroke:#2e8b57;stroke-width:1.8}"
          ".tree{fill:none;stroke:#8b5a2b;stroke-width:1.2;stroke-dasharray:5 4}"
          ".axis{stroke:#d5d9dc;stroke-width:0.6}</style>\n";
    os << "<rect width=\"" << fmt(fr.w) << "\" height=\"" << fmt(fr.h) << "\" fill=\"#ffffff\"/>\n";
    if (spec.y_min < 0 && spec.y_max > 0)
        os << "<line class=\"axis\" x1=\"0\" y1=\"" << fmt(fr.py(0)) << "\" x2=\"" << fmt(fr.w)
           << "\" y2=\"" << fmt(fr.py(0)) << "\"/>\n";

    // Orbits from a fixed seed grid, both time directions.
    const double step = std::max(fr.x1 - fr.x0, fr.y1 - fr.y0) / 400.0;
    for (int iy = 0; iy < spec.density; ++iy) {
        for (int ix = 0; ix < spec.density; ++ix) {
            cplx z0(spec.x_min + (ix + 0.5) * (spec.x_max - spec.x_min) / spec.density,
                    spec.y_min + (iy + 0.5) * (spec.y_max - spec.y_min) / spec.density);
            for (int dir : {+1, -1})
                emit_polyline(os, fr, orbit_polyline(spec.poly, roots, z0, dir, fr, step, 1200),
                              "orbit");
        }
    }

    if (analysis) {
        for (const auto& t : analysis->traces) emit_polyline(os, fr, t.points, "separatrix");

        if (spec.tree_overlay) {
            // Zone edges join the landing roots of the separatrices bounding
            // each end of the zone.
            const auto& traces = analysis->traces;
            const int k = spec.poly.k;
            std::set<std::pair<int, int>> drawn;
            auto draw_edge = [&](int ra, int rb) {
                if (ra < 0 || rb < 0 || ra == rb) return;
                auto key = std::minmax(ra, rb);
                if (!drawn.insert(key).second) return;
                cplx a = analysis->roots[static_cast<std::size_t>(ra)].location;
                cplx b = analysis->roots[static_cast<std::size_t>(rb)].location;
                emit_polyline(os, fr, {a, b}, "tree");
            };
            if (analysis->m > 0) {
                for (int i = 0; i < 2 * k; ++i)
                    draw_edge(traces[static_cast<std::size_t>(i)].landing,
                              traces[static_cast<std::size_t>((i + 1) % (2 * k))].landing);
            } else if (k >= 3) {
                for (int i = 1; i + 1 <= k - 1; ++i)
                    draw_edge(traces[static_cast<std::size_t>(i)].landing,
                              traces[static_cast<std::size_t>(i + 1)].landing);
                for (int i = k + 1; i + 1 <= 2 * k - 1; ++i)
                    draw_edge(traces[static_cast<std::size_t>(i)].landing,
                              traces[static_cast<std::size_t>(i + 1)].landing);
            }
        }
    }

    for (const auto& sp : roots) {
        if (!fr.contains(sp.location, 0.0)) continue;
        os << "<circle cx=\"" << fmt(fr.px(sp.location.real())) << "\" cy=\""
           << fmt(fr.py(sp.location.imag())) << "\" r=\"4\" fill=\"" << kind_color(sp.kind)
           << "\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

} // namespace stratakit
