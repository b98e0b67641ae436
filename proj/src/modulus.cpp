#include "stratakit/modulus.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

namespace stratakit {

void Modulus::validate() const {
    tau.validate();
    const int k = tau.k;
    const int m = tau.real_point_count();
    const int ell = tau.ell;
    if (static_cast<int>(eta_H.size()) != (k - m + 1) / 2 - ell)
        throw InvalidInputError("Modulus: wrong number of zone-pair coordinates");
    if (static_cast<int>(eta_I.size()) != m - 1 + ell)
        throw InvalidInputError("Modulus: wrong number of symmetric-zone coordinates");
    if (eta_R.has_value() != (ell == 1))
        throw InvalidInputError("Modulus: axis period present iff ell = 1");
    for (const cplx& h : eta_H)
        if (!(h.imag() > 0.0)) throw InvalidInputError("Modulus: zone-pair time must lie in the upper half plane");
    for (double v : eta_I)
        if (!(v > 0.0)) throw InvalidInputError("Modulus: symmetric-zone time must be positive imaginary");
    if (eta_R && !(*eta_R > 0.0)) throw InvalidInputError("Modulus: axis period must be positive");
    if (real_dimension() != k)
        throw InvalidInputError("Modulus: real dimension must equal k");
}

std::vector<double> modulus_coords(const Modulus& mod) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(mod.tau.k));
    for (const cplx& h : mod.eta_H) {
        out.push_back(h.real());
        out.push_back(h.imag());
    }
    for (double v : mod.eta_I) out.push_back(v);
    if (mod.eta_R) out.push_back(*mod.eta_R);
    return out;
}

namespace {

// Genericity gate for extraction.  Multiple roots always refuse.  A nonreal
// center forces a homoclinic loop off the real axis, except in the k = 1,
// m = 0 family where the unique upper point is always a center and its
// period annulus is bounded by the axis loop itself.
void require_extractable(const RealPolyField& P, const std::vector<SingularPoint>& roots,
                         int m, const Tolerances& tol) {
    for (const auto& sp : roots)
        if (sp.multiplicity > 1)
            throw NotGenericError("extraction: multiple singular point");
    if (P.k == 1 && m == 0) return;
    for (const auto& sp : roots) {
        if (sp.is_real) continue;
        double margin = std::abs(sp.eigenvalue.real()) / std::abs(sp.eigenvalue);
        if (margin < tol.generic_margin)
            throw NotGenericError("extraction: nonreal eigenvalue within tolerance of the imaginary axis");
    }
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j) {
            double scale = 1.0 + std::max(std::abs(roots[i].location), std::abs(roots[j].location));
            if (std::abs(roots[i].location - roots[j].location) < tol.generic_margin * scale)
                throw NotGenericError("extraction: singular points within tolerance of collision");
        }
}

std::string trace_summary(const FieldAnalysis& fa) {
    std::ostringstream os;
    for (const auto& t : fa.traces)
        os << " s" << t.index << "->" << t.landing << "@" << t.incoming_angle;
    return os.str();
}

// ---- path integration helpers ------------------------------------------

cplx adaptive_simpson(const std::function<cplx(double)>& f, double a, double b, double tol_abs);

cplx simpson_rec(const std::function<cplx(double)>& f, double a, double b, cplx fa, cplx fm, cplx fb,
                 cplx whole, double tol_abs, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const cplx flm = f(lm), frm = f(rm);
    const cplx left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const cplx right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const cplx sum = left + right;
    if (depth > 40) throw NumericFailureError("quadrature: recursion depth exhausted");
    if (std::abs(sum - whole) < 15.0 * tol_abs) return sum + (sum - whole) / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol_abs, depth + 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol_abs, depth + 1);
}

cplx adaptive_simpson(const std::function<cplx(double)>& f, double a, double b, double tol_abs) {
    const cplx fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const cplx whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(f, a, b, fa, fm, fb, whole, tol_abs, 0);
}

// int_{R e^{i theta}}^{infinity e^{i theta}} dz / P: numeric leg up to 10R
// plus a series tail.  1/P = z^{-(k+1)} (1 + sum_{n>=2} c_n z^{-n}) with the
// c_n from inverting the monic-centered coefficient series.
cplx ray_to_infinity(const RealPolyField& P, double R, double theta, const Tolerances& tol) {
    const cplx d = std::polar(1.0, theta);
    const double R_far = 10.0 * R;
    auto integrand = [&](double t) { return d / eval(P, t * d); };
    cplx leg = adaptive_simpson(integrand, R, R_far, tol.quad_tol);

    // u(w) = sum_{n=2}^{k+1} eps_{k+1-n} w^n, 1/(1+u) = sum (-u)^i, w = 1/z.
    const int N = 64;
    std::vector<double> u(static_cast<std::size_t>(N) + 1, 0.0);
    for (int n = 2; n <= P.k + 1; ++n)
        if (n <= N) u[static_cast<std::size_t>(n)] = P.eps_at(P.k + 1 - n);
    std::vector<double> inv(static_cast<std::size_t>(N) + 1, 0.0), term(static_cast<std::size_t>(N) + 1, 0.0);
    inv[0] = 1.0;
    term[0] = 1.0;
    for (int i = 1; i <= N / 2; ++i) {
        std::vector<double> next(static_cast<std::size_t>(N) + 1, 0.0);
        double mag = 0.0;
        for (int a = 0; a <= N; ++a) {
            if (term[static_cast<std::size_t>(a)] == 0.0) continue;
            for (int b = 2; a + b <= N; ++b)
                next[static_cast<std::size_t>(a + b)] -= term[static_cast<std::size_t>(a)] * u[static_cast<std::size_t>(b)];
        }
        for (int a = 0; a <= N; ++a) {
            inv[static_cast<std::size_t>(a)] += next[static_cast<std::size_t>(a)];
            mag = std::max(mag, std::abs(next[static_cast<std::size_t>(a)]));
        }
        term = std::move(next);
        if (mag == 0.0) break;
    }

    const cplx D = R_far * d;
    const cplx invD = 1.0 / D;
    cplx pw = std::pow(invD, P.k); // D^{-(k+n)} built iteratively from n = 0
    cplx tail = 0.0;
    double last_rel = 1.0;
    for (int n = 0; n <= N; ++n) {
        cplx inc = inv[static_cast<std::size_t>(n)] * pw / static_cast<double>(P.k + n);
        tail += inc;
        last_rel = std::abs(inc) / std::max(std::abs(tail), 1e-300);
        pw *= invD;
    }
    if (last_rel > 1e-14)
        throw NumericFailureError("ray_to_infinity: tail series did not converge");
    return leg + tail;
}

struct ArcGeometry {
    int root = -1;
    double rho = 0.0;
    double from_angle = 0.0;
    double sweep = 0.0;
};

// Signed sweep from angle a to angle b inside the sector of the circle
// |z - c| = rho cut by the separatrix crossings; both endpoints must fall in
// the same sector.
bool sector_sweep(const std::vector<double>& sep_angles, double a, double b, double& sweep) {
    if (sep_angles.empty()) {
        double d = std::remainder(b - a, 2.0 * M_PI);
        sweep = d;
        return true;
    }
    std::vector<double> cuts = sep_angles;
    std::sort(cuts.begin(), cuts.end());
    auto wrap = [&](double x) {
        double w = std::fmod(x - cuts.front(), 2.0 * M_PI);
        if (w < 0) w += 2.0 * M_PI;
        return w;
    };
    double pa = wrap(a), pb = wrap(b);
    // Sector index = number of cuts (relative to cuts.front()) below the angle.
    auto sector_of = [&](double p) {
        std::size_t s = 0;
        for (double c : cuts) {
            double pc = wrap(c);
            if (pc <= p && pc > 0.0) ++s;
        }
        return s;
    };
    if (sector_of(pa) != sector_of(pb)) return false;
    sweep = pb - pa;
    return true;
}

cplx arc_integral(const RealPolyField& P, cplx center, const ArcGeometry& g, const Tolerances& tol) {
    auto integrand = [&](double phi) {
        cplx e = std::polar(g.rho, phi);
        return cplx(0, 1) * e / eval(P, center + e);
    };
    return adaptive_simpson(integrand, g.from_angle, g.from_angle + g.sweep, tol.quad_tol);
}

} // namespace

FieldAnalysis FieldAnalysis::build(const RealPolyField& P, const Tolerances& tol) {
    FieldAnalysis fa;
    fa.P = P;
    fa.tol = tol;
    fa.roots = find_roots(P, tol);
    fa.m = 0;
    for (const auto& sp : fa.roots)
        if (sp.is_real) fa.m += sp.multiplicity;
    fa.ell = fa.m == 0 ? 1 : 0;
    require_extractable(P, fa.roots, fa.m, tol);
    fa.R = escape_radius(P);
    if (!(P.k == 1 && fa.m == 0)) fa.traces = trace_separatrices(P, fa.roots, tol);
    return fa;
}

NonXInvolution extract_combinatorial(const FieldAnalysis& fa) {
    const int k = fa.P.k;

    if (fa.m == 0 && k == 1) return NonXInvolution{1, 1, {}};

    if (fa.m == 0 && k % 2 == 0)
        throw ExtractionError("extract_combinatorial: no real roots with even k");

    // Arrival lists per root; the counterclockwise rotation of the arrivals
    // at each root is the attachment permutation.
    auto rotation = [&](const std::vector<int>& seps, std::vector<int>& sigma) {
        std::vector<std::pair<double, int>> arr;
        for (int s : seps)
            arr.emplace_back(fa.traces[static_cast<std::size_t>(s)].incoming_angle, s);
        std::sort(arr.begin(), arr.end());
        for (std::size_t i = 0; i < arr.size(); ++i)
            sigma[static_cast<std::size_t>(arr[i].second)] = arr[(i + 1) % arr.size()].second;
    };

    NonXInvolution tau;
    if (fa.m > 0) {
        std::map<int, std::vector<int>> by_root;
        for (const auto& t : fa.traces) {
            if (t.landing < 0)
                throw ExtractionError("extract_combinatorial: a separatrix escaped although real roots exist;" +
                                      trace_summary(fa));
            by_root[t.landing].push_back(t.index);
        }
        if (static_cast<int>(by_root.size()) != k + 1)
            throw ExtractionError("extract_combinatorial: expected k+1 landing classes;" + trace_summary(fa));
        std::vector<int> sigma(static_cast<std::size_t>(2 * k), -1);
        for (auto& [root, seps] : by_root) rotation(seps, sigma);

        // tau(i) = sigma(i-1) on the 0..2k-1 end indexing.
        std::vector<int> tau_idx(static_cast<std::size_t>(2 * k), -1);
        for (int i = 0; i < 2 * k; ++i)
            tau_idx[static_cast<std::size_t>((i + 1) % (2 * k))] = sigma[static_cast<std::size_t>(i)];
        std::vector<int> pairing(static_cast<std::size_t>(k), 0);
        for (int j = 1; j <= k; ++j) {
            int image_idx = tau_idx[static_cast<std::size_t>(end_to_index(j, k))];
            int image = index_to_end(image_idx, k);
            int mirror_idx = tau_idx[static_cast<std::size_t>(end_to_index(-j, k))];
            if (index_to_end(mirror_idx, k) != -image)
                throw ExtractionError("extract_combinatorial: conjugation symmetry violated;" + trace_summary(fa));
            if (image == j || image == 0 || (image < 0 && image != -j))
                throw ExtractionError("extract_combinatorial: degenerate end pairing;" + trace_summary(fa));
            pairing[static_cast<std::size_t>(j - 1)] = std::abs(image);
        }
        tau = NonXInvolution{k, 0, std::move(pairing)};
    } else {
        // Upper half-plane quotient: separatrices s_1..s_{k-1} land at the
        // (k+1)/2 upper points; the lower half-plane is the mirror image.
        std::map<int, std::vector<int>> by_root;
        for (int s = 1; s <= k - 1; ++s) {
            const auto& t = fa.traces[static_cast<std::size_t>(s)];
            if (t.landing < 0 || fa.roots[static_cast<std::size_t>(t.landing)].location.imag() <= 0)
                throw ExtractionError("extract_combinatorial: upper separatrix did not land above the axis;" +
                                      trace_summary(fa));
            int mirror = 2 * k - s;
            const auto& tm = fa.traces[static_cast<std::size_t>(mirror)];
            if (tm.landing < 0 ||
                std::abs(std::conj(fa.roots[static_cast<std::size_t>(tm.landing)].location) -
                         fa.roots[static_cast<std::size_t>(t.landing)].location) > 1e-9 * (1.0 + fa.R))
                throw ExtractionError("extract_combinatorial: mirror separatrix broke conjugation;" + trace_summary(fa));
            by_root[t.landing].push_back(s);
        }
        if (static_cast<int>(by_root.size()) != (k + 1) / 2)
            throw ExtractionError("extract_combinatorial: expected (k+1)/2 upper landing classes;" + trace_summary(fa));
        std::vector<int> sigma(static_cast<std::size_t>(2 * k), -1);
        for (auto& [root, seps] : by_root) rotation(seps, sigma);
        const int n = k - 1;
        std::vector<int> pairing(static_cast<std::size_t>(n), 0);
        for (int j = 1; j <= n; ++j) {
            int prev = (j == 1) ? n : j - 1;
            pairing[static_cast<std::size_t>(j - 1)] = sigma[static_cast<std::size_t>(prev)];
        }
        tau = NonXInvolution{k, 1, std::move(pairing)};
    }

    try {
        tau.validate();
    } catch (const InvalidInputError& e) {
        throw ExtractionError(std::string("extract_combinatorial: inadmissible involution (") + e.what() + ");" +
                              trace_summary(fa));
    }

    // Cross-check: the landing classes must reproduce the attachment classes
    // derived from the involution alone.
    StratumDescriptor desc = attachment_classes(tau);
    std::map<int, std::vector<int>> observed;
    if (fa.m > 0) {
        for (const auto& t : fa.traces) observed[t.landing].push_back(t.index);
    } else {
        for (int s = 1; s <= k - 1; ++s)
            observed[fa.traces[static_cast<std::size_t>(s)].landing].push_back(s);
    }
    std::vector<std::vector<int>> obs;
    for (auto& [root, seps] : observed) {
        std::sort(seps.begin(), seps.end());
        obs.push_back(seps);
    }
    std::sort(obs.begin(), obs.end());
    if (obs != desc.classes)
        throw ExtractionError("extract_combinatorial: landing classes disagree with the attachment permutation;" +
                              trace_summary(fa));
    return tau;
}

NonXInvolution extract_combinatorial(const RealPolyField& P, const Tolerances& tol) {
    return extract_combinatorial(FieldAnalysis::build(P, tol));
}

namespace {

// Start end of the zone path: the end on the lower strip boundary, which is
// the positive odd label or the negative label with even absolute value.
bool is_lower_end(int label) {
    return label > 0 ? (label % 2 == 1) : (std::abs(label) % 2 == 0);
}

// Validated (lower, upper) pair of end labels for the requested zone.
std::pair<int, int> zone_path_ends(const FieldAnalysis& fa, std::pair<int, int> zone) {
    const int n = fa.P.k - fa.ell;
    auto check_label = [&](int v) {
        if (v == 0 || std::abs(v) > n)
            throw InvalidInputError("transversal_time: end label out of range");
    };
    check_label(zone.first);
    check_label(zone.second);
    NonXInvolution tau = extract_combinatorial(fa);
    if (tau.tau_extended(zone.first) != zone.second)
        throw InvalidInputError("transversal_time: the two ends do not bound a common zone");
    int from = is_lower_end(zone.first) ? zone.first : zone.second;
    int to = (from == zone.first) ? zone.second : zone.first;
    if (is_lower_end(to) || !is_lower_end(from))
        throw InvalidInputError("transversal_time: inconsistent end parities");
    return {from, to};
}

// Residue sum of one counterclockwise separatrix-index arc [b, a), or
// nullopt when the arc contains an unlanded separatrix (axis loop).  Every
// landing class must sit entirely inside or outside the arc.
std::optional<cplx> arc_residue_sum(const FieldAnalysis& fa, int b, int a) {
    const int n = 2 * fa.P.k;
    std::vector<bool> in_arc(static_cast<std::size_t>(n), false);
    for (int i = b; i != a; i = (i + 1) % n) in_arc[static_cast<std::size_t>(i)] = true;
    std::vector<int> root_state(fa.roots.size(), -1); // -1 unseen, 0 out, 1 in
    cplx sum = 0.0;
    for (const auto& t : fa.traces) {
        bool inside = in_arc[static_cast<std::size_t>(t.index)];
        if (t.landing < 0) {
            if (inside) return std::nullopt;
            continue;
        }
        int& state = root_state[static_cast<std::size_t>(t.landing)];
        if (state == -1) {
            state = inside ? 1 : 0;
            if (inside) sum += fa.roots[static_cast<std::size_t>(t.landing)].residue;
        } else if (state != (inside ? 1 : 0)) {
            throw ExtractionError("transversal_time: a landing class straddles the zone boundary");
        }
    }
    return sum;
}

// eta = 2 pi i * (residues enclosed by the zone path closed at infinity).
cplx transversal_time_residues(const FieldAnalysis& fa, std::pair<int, int> zone) {
    auto [from, to] = zone_path_ends(fa, zone);
    const int k = fa.P.k;
    const int a = end_to_index(from, k);
    const int b = end_to_index(to, k);
    const cplx two_pi_i(0.0, 2.0 * M_PI);

    std::optional<cplx> inside = arc_residue_sum(fa, b, a);
    std::optional<cplx> outside = arc_residue_sum(fa, a, b);
    if (inside && outside) {
        double scale = std::max(std::abs(*inside), 1e-3);
        if (std::abs(*inside + *outside) > 1e-9 * scale)
            throw NumericFailureError("transversal_time: the two residue arcs disagree");
    }
    if (inside) return two_pi_i * *inside;
    if (outside) return -two_pi_i * *outside;
    throw ExtractionError("transversal_time: both index arcs touch the axis loop");
}

// ---- quadrature route (independent cross-check) --------------------------

std::vector<double> circle_crossings(const std::vector<cplx>& points, cplx center, double radius) {
    std::vector<double> out;
    for (std::size_t i = 1; i < points.size(); ++i) {
        double d0 = std::abs(points[i - 1] - center);
        double d1 = std::abs(points[i] - center);
        if ((d0 - radius) * (d1 - radius) > 0.0) continue;
        cplx va = points[i - 1] - center, vb = points[i] - center;
        cplx d = vb - va;
        double A = std::norm(d);
        double B = 2.0 * (va.real() * d.real() + va.imag() * d.imag());
        double C = std::norm(va) - radius * radius;
        double disc = B * B - 4 * A * C;
        double t;
        if (disc <= 0.0 || A == 0.0) t = (d1 == d0) ? 0.5 : (radius - d0) / (d1 - d0);
        else {
            double r1 = (-B - std::sqrt(disc)) / (2 * A);
            double r2 = (-B + std::sqrt(disc)) / (2 * A);
            t = (0.0 <= r1 && r1 <= 1.0) ? r1 : r2;
        }
        out.push_back(std::arg(va + t * d));
    }
    return out;
}

double crossing_nearest(const std::vector<cplx>& points, cplx center, double radius, double ref) {
    auto all = circle_crossings(points, center, radius);
    if (all.empty())
        throw NumericFailureError("transversal_time: separatrix never crosses the reference circle");
    double best = all.front(), best_d = 10.0;
    for (double a : all) {
        double d = std::abs(std::remainder(a - ref, 2.0 * M_PI));
        if (d < best_d) {
            best_d = d;
            best = a;
        }
    }
    return best;
}

cplx transversal_time_path(const FieldAnalysis& fa, std::pair<int, int> zone) {
    const RealPolyField& P = fa.P;
    const Tolerances& tol = fa.tol;
    const int k = P.k;
    auto [from, to] = zone_path_ends(fa, zone);

    double root_scale = 0.0;
    for (const auto& sp : fa.roots) root_scale = std::max(root_scale, std::abs(sp.location));
    double r_zone = std::min(fa.R, 1.5 * (1.0 + root_scale));

    // Entry points: the angular midpoint of the end at radius r_zone, read
    // off the traced boundary separatrices near their asymptotic directions.
    auto end_entry = [&](int label) {
        int e = end_to_index(label, k);
        int s_lo = (e + 2 * k - 1) % (2 * k), s_hi = e;
        double ref_lo = M_PI * s_lo / k, ref_hi = M_PI * s_hi / k;
        double lo = crossing_nearest(fa.traces[static_cast<std::size_t>(s_lo)].points, 0.0, r_zone, ref_lo);
        double hi = crossing_nearest(fa.traces[static_cast<std::size_t>(s_hi)].points, 0.0, r_zone, ref_hi);
        double width = hi - lo;
        while (width <= 0) width += 2.0 * M_PI;
        return std::polar(r_zone, lo + 0.5 * width);
    };
    const cplx A = end_entry(from);
    const cplx B = end_entry(to);

    std::vector<double> rho(fa.roots.size());
    auto fill_rho = [&](double shrink) {
        for (std::size_t i = 0; i < fa.roots.size(); ++i) {
            double gap = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < fa.roots.size(); ++j)
                if (j != i) gap = std::min(gap, std::abs(fa.roots[i].location - fa.roots[j].location));
            double base = std::min(0.05 * (1.0 + std::abs(fa.roots[i].location)),
                                   std::isfinite(gap) ? 0.3 * gap : 1.0);
            rho[i] = shrink * base;
        }
    };

    for (int attempt = 0; attempt < 3; ++attempt) {
        fill_rho(std::pow(0.5, attempt));
        FlowHit hitA = flow_to_circle(P, fa.roots, A, -1, rho, 2.5 * fa.R, tol, false);
        FlowHit hitB = flow_to_circle(P, fa.roots, B, -1, rho, 2.5 * fa.R, tol, false);
        if (hitA.root < 0 || hitB.root < 0)
            throw NotGenericError("transversal_time: zone orbit escaped instead of reaching a root");
        if (hitA.root != hitB.root) continue; // pinched zone; shrink and retry
        const int rep = hitA.root;
        const cplx c = fa.roots[static_cast<std::size_t>(rep)].location;

        std::vector<double> sep_angles;
        for (const auto& t : fa.traces)
            if (t.landing == rep)
                sep_angles.push_back(polyline_angle_at_radius(t.points, c, rho[static_cast<std::size_t>(rep)]));

        double a_ang = std::arg(hitA.endpoint - c);
        double b_ang = std::arg(hitB.endpoint - c);
        ArcGeometry g;
        g.root = rep;
        g.rho = rho[static_cast<std::size_t>(rep)];
        g.from_angle = a_ang;
        if (!sector_sweep(sep_angles, a_ang, b_ang, g.sweep)) continue;

        return -ray_to_infinity(P, r_zone, std::arg(A), tol) - hitA.time_integral +
               arc_integral(P, c, g, tol) + hitB.time_integral +
               ray_to_infinity(P, r_zone, std::arg(B), tol);
    }
    throw NotGenericError("transversal_time: could not build a path inside the zone");
}

} // namespace

cplx transversal_time(const FieldAnalysis& fa, std::pair<int, int> zone_ends) {
    return transversal_time_residues(fa, zone_ends);
}

cplx transversal_time(const RealPolyField& P, std::pair<int, int> zone_ends, const Tolerances& tol) {
    return transversal_time_residues(FieldAnalysis::build(P, tol), zone_ends);
}

cplx transversal_time_quadrature(const FieldAnalysis& fa, std::pair<int, int> zone_ends) {
    return transversal_time_path(fa, zone_ends);
}

PeriodCheck period_R_detail(const RealPolyField& P, const Tolerances& tol) {
    const auto roots = find_roots(P, tol);
    for (const auto& sp : roots)
        if (sp.is_real) throw InvalidInputError("period_R: the polynomial has real roots");

    cplx resid = 0.0;
    for (const auto& sp : roots)
        if (sp.location.imag() > 0) resid += sp.residue;
    const cplx via_residues = 2.0 * M_PI * cplx(0, 1) * resid;
    if (std::abs(via_residues.imag()) > 1e-9 * std::abs(via_residues))
        throw NumericFailureError("period_R: residue combination is not real");

    // Direct quadrature of the axis integral as an independent cross-check.
    const double X = escape_radius(P);
    auto integrand = [&](double t) { return cplx(1.0, 0.0) / eval(P, cplx(t, 0.0)); };
    cplx core = adaptive_simpson(integrand, -X, X, tol.quad_tol);
    cplx total = core + ray_to_infinity(P, X, 0.0, tol) - ray_to_infinity(P, X, M_PI, tol);

    return {via_residues.real(), total.real()};
}

double period_R(const RealPolyField& P, const Tolerances& tol) {
    const PeriodCheck pc = period_R_detail(P, tol);
    const double a = pc.via_residues, b = pc.via_quadrature;
    if (std::abs(a - b) > tol.period_agree * std::max({std::abs(a), std::abs(b), 1e-30}))
        throw NumericFailureError("period_R: residue and quadrature values disagree");
    if (!(a > 0.0)) throw NumericFailureError("period_R: period must be positive");
    return a;
}

Modulus extract_modulus(const FieldAnalysis& fa) {
    Modulus mod;
    mod.tau = extract_combinatorial(fa);
    const int n = mod.tau.domain_size();

    std::vector<int> odd_unpaired, fixed;
    for (int j = 1; j <= n; ++j) {
        if (mod.tau.tau_bar(j) == j) fixed.push_back(j);
        else if (j % 2 == 1) odd_unpaired.push_back(j);
    }

    for (int q : odd_unpaired) {
        cplx eta = transversal_time_residues(fa, {q, mod.tau.tau_bar(q)});
        if (!(eta.imag() > 0.0))
            throw ExtractionError("extract_modulus: zone-pair time left the upper half plane");
        mod.eta_H.push_back(eta);
    }
    for (int r : fixed) {
        cplx eta = transversal_time_residues(fa, {r, -r});
        if (std::abs(eta.real()) > fa.tol.sym_project_rel * std::abs(eta))
            throw NumericFailureError("extract_modulus: symmetric zone time has a nonzero real part");
        if (!(eta.imag() > 0.0))
            throw ExtractionError("extract_modulus: symmetric zone time must be positive imaginary");
        mod.eta_I.push_back(eta.imag());
    }
    if (fa.ell == 1) mod.eta_R = period_R(fa.P, fa.tol);
    mod.validate();
    return mod;
}

Modulus extract_modulus(const RealPolyField& P, const Tolerances& tol) {
    return extract_modulus(FieldAnalysis::build(P, tol));
}

} // namespace stratakit
