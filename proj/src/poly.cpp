#include "stratakit/poly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace stratakit {

namespace {

bool all_finite(const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

// Deterministic jitter in [-0.5, 0.5) from an integer key.
double hash_jitter(unsigned i) {
    unsigned long long x = (static_cast<unsigned long long>(i) + 1) * 0x9e3779b97f4a7c15ull;
    x ^= x >> 29;
    x *= 0xbf58476d1ce4e5b9ull;
    x ^= x >> 32;
    return static_cast<double>(x % 1000000ull) / 1000000.0 - 0.5;
}

} // namespace

RealPolyField::RealPolyField(int k_, std::vector<double> eps_) : k(k_), eps(std::move(eps_)) {
    if (k < 1)
        throw InvalidInputError("RealPolyField: codimension k must be >= 1");
    if (static_cast<int>(eps.size()) != k)
        throw InvalidInputError("RealPolyField: expected " + std::to_string(k) +
                                " coefficients, got " + std::to_string(eps.size()));
    if (!all_finite(eps))
        throw InvalidInputError("RealPolyField: coefficients must be finite");
}

double RealPolyField::coeff_scale() const {
    double s = 1.0;
    for (double e : eps) s = std::max(s, std::abs(e));
    return s;
}

std::vector<double> RealPolyField::ascending_coeffs() const {
    std::vector<double> a(static_cast<std::size_t>(k) + 2, 0.0);
    a[static_cast<std::size_t>(k) + 1] = 1.0;
    for (int j = 0; j <= k - 1; ++j) a[static_cast<std::size_t>(j)] = eps_at(j);
    return a;
}

namespace polyutil {

cplx horner(const std::vector<double>& ascending, cplx z) {
    cplx acc = 0.0;
    for (auto it = ascending.rbegin(); it != ascending.rend(); ++it) acc = acc * z + *it;
    return acc;
}

cplx horner(const std::vector<cplx>& ascending, cplx z) {
    cplx acc = 0.0;
    for (auto it = ascending.rbegin(); it != ascending.rend(); ++it) acc = acc * z + *it;
    return acc;
}

std::vector<cplx> taylor_shift(const std::vector<double>& ascending, cplx z0) {
    // Repeated synthetic division by (z - z0): t[j] = P^{(j)}(z0)/j!.
    std::vector<cplx> t(ascending.begin(), ascending.end());
    const int n = static_cast<int>(t.size()) - 1;
    for (int j = 0; j < n; ++j)
        for (int i = n - 1; i >= j; --i)
            t[static_cast<std::size_t>(i)] += z0 * t[static_cast<std::size_t>(i) + 1];
    return t;
}

cplx residue_at(const std::vector<double>& ascending, cplx root, int multiplicity) {
    std::vector<cplx> t = taylor_shift(ascending, root);
    const int m = multiplicity;
    if (m == 1) {
        if (t.size() < 2 || t[1] == cplx(0.0))
            throw NumericFailureError("residue_at: vanishing derivative at a simple root");
        return 1.0 / t[1];
    }
    // P = (z-root)^m g(z); residue = coefficient of w^{m-1} in 1/g(root + w).
    std::vector<cplx> g(t.begin() + m, t.end());
    if (g.empty() || std::abs(g[0]) == 0.0)
        throw NumericFailureError("residue_at: degenerate cofactor at a multiple root");
    std::vector<cplx> inv(static_cast<std::size_t>(m), 0.0);
    inv[0] = 1.0 / g[0];
    for (int j = 1; j < m; ++j) {
        cplx acc = 0.0;
        for (int i = 1; i <= j; ++i)
            if (i < static_cast<int>(g.size())) acc += g[static_cast<std::size_t>(i)] * inv[static_cast<std::size_t>(j - i)];
        inv[static_cast<std::size_t>(j)] = -acc / g[0];
    }
    return inv[static_cast<std::size_t>(m - 1)];
}

std::vector<cplx> multiply(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    std::vector<cplx> out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

} // namespace polyutil

cplx eval(const RealPolyField& P, cplx z) {
    // Horner on the sparse form: fold the missing z^k coefficient explicitly.
    cplx acc = 1.0;
    acc = acc * z; // z^k term has coefficient 0
    for (double e : P.eps) acc = acc * z + e;
    return acc;
}

cplx eval_derivative(const RealPolyField& P, cplx z) {
    const int n = P.k + 1;
    cplx acc = static_cast<double>(n);
    acc = acc * z; // derivative of the zero z^k term
    for (int j = P.k - 1; j >= 1; --j) acc = acc * z + static_cast<double>(j) * P.eps_at(j);
    return acc;
}

std::string to_string(PointKind kind) {
    switch (kind) {
        case PointKind::radial_node: return "radial-node";
        case PointKind::strong_focus: return "strong-focus";
        case PointKind::center: return "center";
        case PointKind::parabolic: return "parabolic";
    }
    return "unknown";
}

PointKind classify_eigenvalue(cplx lambda, double rel_tol) {
    const double mag = std::abs(lambda);
    if (mag == 0.0) return PointKind::parabolic;
    if (std::abs(lambda.real()) <= rel_tol * mag) return PointKind::center;
    if (std::abs(lambda.imag()) <= rel_tol * mag) return PointKind::radial_node;
    return PointKind::strong_focus;
}

namespace {

// Ehrlich-Aberth simultaneous iteration on a monic polynomial given by
// ascending coefficients.  Deterministic: fixed perturbed-ring start.
std::vector<cplx> aberth_roots(const std::vector<double>& asc, const Tolerances& tol) {
    const int n = static_cast<int>(asc.size()) - 1;
    double radius = 1.0;
    for (int i = 0; i < n; ++i) radius = std::max(radius, std::abs(asc[static_cast<std::size_t>(i)]));
    radius = 1.0 + radius;

    std::vector<cplx> z(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double angle = 2.0 * M_PI * (i + 0.5) / n + 0.31;
        double r = radius * (1.0 + 0.08 * hash_jitter(static_cast<unsigned>(i)));
        z[static_cast<std::size_t>(i)] = std::polar(r, angle);
    }

    std::vector<double> dasc(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) dasc[static_cast<std::size_t>(i - 1)] = i * asc[static_cast<std::size_t>(i)];

    for (int it = 0; it < tol.root_iter_cap; ++it) {
        double worst = 0.0;
        for (int i = 0; i < n; ++i) {
            cplx zi = z[static_cast<std::size_t>(i)];
            cplx f = polyutil::horner(asc, zi);
            cplx df = polyutil::horner(dasc, zi);
            cplx newton = (df == cplx(0.0)) ? cplx(0.0) : f / df;
            if (df == cplx(0.0) && f != cplx(0.0)) {
                // Exactly stationary start; nudge off deterministically.
                z[static_cast<std::size_t>(i)] += cplx(1e-6 * (1.0 + std::abs(zi)), 1e-6);
                worst = 1.0;
                continue;
            }
            cplx sum = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                cplx d = zi - z[static_cast<std::size_t>(j)];
                if (d == cplx(0.0)) d = cplx(1e-30, 0.0);
                sum += 1.0 / d;
            }
            cplx denom = 1.0 - newton * sum;
            cplx w = (denom == cplx(0.0)) ? newton : newton / denom;
            z[static_cast<std::size_t>(i)] = zi - w;
            worst = std::max(worst, std::abs(w) / (1.0 + std::abs(zi)));
        }
        if (worst < 1e-14) return z;
    }
    // One more acceptance pass: small residuals are still a success (clusters
    // stall the update norm without hurting backward error).
    double res = 0.0;
    for (const cplx& zi : z) {
        double scale = 0.0, p = 1.0;
        for (double a : asc) { scale += std::abs(a) * p; p *= std::abs(zi); }
        res = std::max(res, std::abs(polyutil::horner(asc, zi)) / std::max(scale, 1e-300));
    }
    if (res < 1e-12) return z;
    throw NumericFailureError("find_roots: simultaneous iteration did not converge");
}

struct DisjointSet {
    std::vector<int> parent;
    explicit DisjointSet(int n) : parent(static_cast<std::size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int a) { return parent[static_cast<std::size_t>(a)] == a ? a : parent[static_cast<std::size_t>(a)] = find(parent[static_cast<std::size_t>(a)]); }
    void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

} // namespace

std::vector<SingularPoint> find_roots(const RealPolyField& P, const Tolerances& tol) {
    const std::vector<double> asc = P.ascending_coeffs();
    const int n = P.k + 1;
    std::vector<cplx> z = aberth_roots(asc, tol);

    // Snap near-real roots, then enforce exact conjugate pairing.
    auto near_real = [&](cplx v) { return std::abs(v.imag()) < tol.real_snap_rel * (1.0 + std::abs(v)); };
    std::vector<cplx> reals, upper, lower;
    for (cplx v : z) {
        if (near_real(v)) reals.emplace_back(v.real(), 0.0);
        else if (v.imag() > 0) upper.push_back(v);
        else lower.push_back(v);
    }
    while (upper.size() != lower.size()) {
        // Solver noise put an odd straggler on one side; snap the flattest.
        auto& side = upper.size() > lower.size() ? upper : lower;
        auto it = std::min_element(side.begin(), side.end(), [](cplx a, cplx b) {
            return std::abs(a.imag()) < std::abs(b.imag());
        });
        reals.emplace_back(it->real(), 0.0);
        side.erase(it);
    }
    std::vector<cplx> paired;
    std::vector<bool> used(lower.size(), false);
    for (cplx u : upper) {
        std::size_t best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < lower.size(); ++i) {
            if (used[i]) continue;
            double d = std::abs(std::conj(lower[i]) - u);
            if (d < best_d) { best_d = d; best = i; }
        }
        used[best] = true;
        cplx w = 0.5 * (u + std::conj(lower[best]));
        paired.push_back(w);
    }

    // One Newton polish per isolated representative (exact conjugacy kept by
    // polishing the upper member only).
    std::vector<double> dasc(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) dasc[static_cast<std::size_t>(i - 1)] = i * asc[static_cast<std::size_t>(i)];
    auto polish = [&](cplx v, bool keep_real) {
        for (int step = 0; step < 2; ++step) {
            cplx f = polyutil::horner(asc, v);
            cplx df = polyutil::horner(dasc, v);
            if (std::abs(df) == 0.0) return v;
            cplx dz = f / df;
            if (std::abs(dz) > 0.5 * tol.cluster_rel * (1.0 + std::abs(v))) return v; // clustered; leave to centroid
            v -= dz;
            if (keep_real) v = cplx(v.real(), 0.0);
        }
        return v;
    };
    for (cplx& v : reals) v = polish(v, true);
    for (cplx& v : paired) v = polish(v, false);

    std::vector<cplx> all;
    all.insert(all.end(), reals.begin(), reals.end());
    for (cplx w : paired) { all.push_back(w); all.push_back(std::conj(w)); }

    // Multiplicity by clustering.
    DisjointSet ds(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double r = tol.cluster_rel * (1.0 + std::max(std::abs(all[static_cast<std::size_t>(i)]), std::abs(all[static_cast<std::size_t>(j)])));
            if (std::abs(all[static_cast<std::size_t>(i)] - all[static_cast<std::size_t>(j)]) < r) ds.unite(i, j);
        }
    std::vector<std::vector<int>> groups;
    {
        std::vector<int> rep(static_cast<std::size_t>(n), -1);
        for (int i = 0; i < n; ++i) {
            int g = ds.find(i);
            if (rep[static_cast<std::size_t>(g)] < 0) {
                rep[static_cast<std::size_t>(g)] = static_cast<int>(groups.size());
                groups.emplace_back();
            }
            groups[static_cast<std::size_t>(rep[static_cast<std::size_t>(g)])].push_back(i);
        }
    }

    std::vector<SingularPoint> out;
    out.reserve(groups.size());
    for (const auto& g : groups) {
        cplx centroid = 0.0;
        for (int i : g) centroid += all[static_cast<std::size_t>(i)];
        centroid /= static_cast<double>(g.size());
        if (near_real(centroid)) centroid = cplx(centroid.real(), 0.0);
        SingularPoint sp;
        sp.location = centroid;
        sp.multiplicity = static_cast<int>(g.size());
        sp.is_real = centroid.imag() == 0.0;
        sp.eigenvalue = (sp.multiplicity > 1) ? cplx(0.0) : eval_derivative(P, centroid);
        sp.residue = polyutil::residue_at(asc, centroid, sp.multiplicity);
        sp.kind = (sp.multiplicity > 1) ? PointKind::parabolic
                                        : classify_eigenvalue(sp.eigenvalue, tol.generic_margin);
        out.push_back(sp);
    }

    std::sort(out.begin(), out.end(), [](const SingularPoint& a, const SingularPoint& b) {
        if (a.location.imag() != b.location.imag()) return a.location.imag() < b.location.imag();
        return a.location.real() < b.location.real();
    });

    int total = 0;
    for (const auto& sp : out) total += sp.multiplicity;
    if (total != n) throw NumericFailureError("find_roots: multiplicities do not sum to the degree");
    return out;
}

cplx residue_sum(const RealPolyField& P, const Tolerances& tol) {
    cplx sum = 0.0;
    for (const auto& sp : find_roots(P, tol)) sum += sp.residue;
    return sum;
}

GenericityReport is_generic_real(const RealPolyField& P, const Tolerances& tol) {
    const auto roots = find_roots(P, tol);
    GenericityReport rep;
    rep.margin = std::numeric_limits<double>::infinity();

    for (const auto& sp : roots)
        if (sp.multiplicity > 1) {
            rep.generic = false;
            rep.diagnostic = "multiple singular point at " + std::to_string(sp.location.real()) +
                             (sp.location.imag() >= 0 ? "+" : "") + std::to_string(sp.location.imag()) + "i";
            rep.margin = 0.0;
            return rep;
        }

    // Margin against root collision (beyond the clustering radius).
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j) {
            double scale = 1.0 + std::max(std::abs(roots[i].location), std::abs(roots[j].location));
            double gap = std::abs(roots[i].location - roots[j].location) / scale;
            rep.margin = std::min(rep.margin, gap);
            if (gap < tol.generic_margin)
                throw NotGenericError("is_generic_real: two singular points within tolerance of collision");
        }

    // No nonreal center (a nonreal purely imaginary eigenvalue forces a
    // homoclinic loop off the real axis).
    for (const auto& sp : roots) {
        if (sp.is_real) continue;
        double c = std::abs(sp.eigenvalue.real()) / std::abs(sp.eigenvalue);
        if (c <= tol.numeric_zero) {
            rep.generic = false;
            rep.diagnostic = "nonreal center pair (symmetric homoclinic loops)";
            rep.margin = 0.0;
            return rep;
        }
        if (c < tol.generic_margin)
            throw NotGenericError("is_generic_real: nonreal eigenvalue within tolerance of the imaginary axis");
        rep.margin = std::min(rep.margin, c);
    }

    rep.generic = true;
    return rep;
}

Normalized normalize(const std::vector<double>& raw_coeffs, const Tolerances& tol) {
    if (raw_coeffs.size() < 3)
        throw InvalidInputError("normalize: need degree >= 2 (k >= 1)");
    if (!all_finite(raw_coeffs))
        throw InvalidInputError("normalize: coefficients must be finite");
    double scale = 0.0;
    for (double c : raw_coeffs) scale = std::max(scale, std::abs(c));
    if (std::abs(raw_coeffs[0]) <= tol.numeric_zero * scale || raw_coeffs[0] == 0.0)
        throw InvalidInputError("normalize: zero leading coefficient");

    const int k = static_cast<int>(raw_coeffs.size()) - 2;
    const double lead = raw_coeffs[0];
    const double shift = -raw_coeffs[1] / ((k + 1) * lead);

    // Translate z = w + shift (ascending order for the shift helper).
    std::vector<double> asc(raw_coeffs.rbegin(), raw_coeffs.rend());
    std::vector<cplx> shifted_c = polyutil::taylor_shift(asc, cplx(shift, 0.0));
    std::vector<double> b(shifted_c.size());
    for (std::size_t i = 0; i < b.size(); ++i) b[i] = shifted_c[i].real();
    b[static_cast<std::size_t>(k)] = 0.0; // killed by construction; drop roundoff

    Normalized res;
    res.change.shift = shift;
    double lead_now = b.back();
    if (lead_now < 0.0) {
        if (k % 2 == 0) {
            res.change.time_reversed = true;
            for (double& c : b) c = -c;
            lead_now = -lead_now;
        }
        // k odd: a negative zoom flips the sign below.
    }
    double r = std::pow(std::abs(lead_now), -1.0 / k);
    if (lead_now < 0.0) r = -r;
    res.change.scale = r;

    // w = r*u: coefficient of u^j is b[j] * r^{j-1}.
    std::vector<double> eps(static_cast<std::size_t>(k));
    double rpow = 1.0 / r; // r^{j-1} for j = 0
    for (int j = 0; j <= k + 1; ++j) {
        if (j <= k - 1) eps[static_cast<std::size_t>(k - 1 - j)] = b[static_cast<std::size_t>(j)] * rpow;
        rpow *= r;
    }
    res.poly = RealPolyField(k, std::move(eps));
    return res;
}

RealPolyField zoom_to_unit(const RealPolyField& P) {
    double w = 0.0;
    for (int j = 0; j <= P.k - 1; ++j)
        w = std::max(w, std::pow(std::abs(P.eps_at(j)), 1.0 / (P.k + 1 - j)));
    if (w == 0.0) return P;
    const double r = 1.0 / w;
    std::vector<double> eps(P.eps.size());
    for (int j = 0; j <= P.k - 1; ++j)
        eps[static_cast<std::size_t>(P.k - 1 - j)] = P.eps_at(j) * std::pow(r, P.k + 1 - j);
    return RealPolyField(P.k, std::move(eps));
}

UnfoldingFamily::UnfoldingFamily(RealPolyField base, cplx root, int multiplicity,
                                 std::vector<double> cofactor_coeffs)
    : base_(std::move(base)), root_(root), s_(multiplicity), cofactor_(std::move(cofactor_coeffs)) {
    if (root_.imag() < 0) root_ = std::conj(root_); // upper representative
}

RealPolyField UnfoldingFamily::evaluate(const std::vector<double>& nu) const {
    const int k = base_.k;
    const int s = s_;
    const int ell = k + 1 - 2 * s; // degree of the cofactor
    if (static_cast<int>(nu.size()) != k)
        throw InvalidInputError("UnfoldingFamily: expected " + std::to_string(k) + " parameters");

    // Perturbation coefficients of the Weierstrass factor R.
    std::vector<cplx> c(static_cast<std::size_t>(s) + 1, 0.0);
    c[static_cast<std::size_t>(s)] = 1.0;
    double delta_top = 0.0;
    if (ell > 0) {
        for (int j = 0; j < s; ++j)
            c[static_cast<std::size_t>(j)] = cplx(nu[static_cast<std::size_t>(2 * j)], nu[static_cast<std::size_t>(2 * j + 1)]);
        delta_top = nu[static_cast<std::size_t>(2 * s - 2)];
    } else {
        for (int j = 0; j + 1 < s; ++j)
            c[static_cast<std::size_t>(j)] = cplx(nu[static_cast<std::size_t>(2 * j)], nu[static_cast<std::size_t>(2 * j + 1)]);
        c[static_cast<std::size_t>(s - 1)] = cplx(0.0, nu[static_cast<std::size_t>(k - 1)]);
    }

    // R(z) = (z - z0)^s + sum_j c_j (z - z0)^j, and its coefficientwise conjugate.
    cplx z0 = root_;
    if (ell == 0) z0 = cplx(0.0, z0.imag()); // the pair is purely imaginary here
    std::vector<cplx> R{1.0}, Rbar{1.0};
    std::vector<cplx> pow{1.0}, powbar{1.0};
    std::vector<cplx> accR(static_cast<std::size_t>(s) + 1, 0.0), accRbar(static_cast<std::size_t>(s) + 1, 0.0);
    for (int j = 0; j <= s; ++j) {
        for (std::size_t i = 0; i < pow.size(); ++i) {
            accR[i] += c[static_cast<std::size_t>(j)] * pow[i];
            accRbar[i] += std::conj(c[static_cast<std::size_t>(j)]) * powbar[i];
        }
        pow = polyutil::multiply(pow, {-z0, 1.0});
        powbar = polyutil::multiply(powbar, {-std::conj(z0), 1.0});
    }
    R = accR;
    Rbar = accRbar;

    std::vector<cplx> prod = polyutil::multiply(R, Rbar);

    if (ell > 0) {
        std::vector<cplx> q(cofactor_.begin(), cofactor_.end());
        q[static_cast<std::size_t>(ell - 1)] -= 2.0 * delta_top;
        for (int j = 0; j <= ell - 2; ++j)
            q[static_cast<std::size_t>(j)] += nu[static_cast<std::size_t>(2 * s + j)];
        prod = polyutil::multiply(prod, q);
    }

    // The product of conjugate factors times a real cofactor is real and the
    // z^k coefficient cancels; verify and strip roundoff.
    double imag_max = 0.0, mag = 1.0;
    for (const cplx& v : prod) { imag_max = std::max(imag_max, std::abs(v.imag())); mag = std::max(mag, std::abs(v)); }
    if (imag_max > 1e-9 * mag)
        throw NumericFailureError("UnfoldingFamily: nonreal coefficients in the unfolded polynomial");
    if (std::abs(prod[static_cast<std::size_t>(k)]) > 1e-9 * mag)
        throw NumericFailureError("UnfoldingFamily: unfolded polynomial is not centered");

    std::vector<double> eps(static_cast<std::size_t>(k));
    for (int j = 0; j <= k - 1; ++j) eps[static_cast<std::size_t>(k - 1 - j)] = prod[static_cast<std::size_t>(j)].real();
    return RealPolyField(k, std::move(eps));
}

UnfoldingFamily unfold_parabolic(const RealPolyField& P_star, cplx z0, const Tolerances& tol) {
    if (P_star.k < 2)
        throw InvalidInputError("unfold_parabolic: requires k >= 2");
    if (std::abs(z0.imag()) <= tol.real_snap_rel * (1.0 + std::abs(z0)))
        throw InvalidInputError("unfold_parabolic: the unfolded root must be nonreal");

    const auto roots = find_roots(P_star, tol);
    const SingularPoint* match = nullptr;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& sp : roots) {
        double d = std::abs(sp.location - z0);
        if (d < best) { best = d; match = &sp; }
    }
    if (!match || best > 1e-5 * (1.0 + std::abs(z0)))
        throw InvalidInputError("unfold_parabolic: z0 is not a root of the base polynomial");
    cplx root = match->location;
    const int s = match->multiplicity;
    const int ell = P_star.k + 1 - 2 * s;
    if (ell < 0)
        throw InvalidInputError("unfold_parabolic: multiplicity exceeds the degree budget");

    // Divide out ((z - root)(z - conj root))^s to get the real cofactor Q.
    std::vector<double> q = P_star.ascending_coeffs();
    const double a = root.real(), b2 = std::norm(root);
    for (int rep = 0; rep < s; ++rep) {
        // Descending synthetic division by z^2 - 2a z + b2.
        std::vector<double> desc(q.rbegin(), q.rend());
        std::vector<double> quot(desc.size() - 2, 0.0);
        for (std::size_t i = 0; i < quot.size(); ++i) {
            quot[i] = desc[i];
            desc[i + 1] += 2.0 * a * quot[i];
            desc[i + 2] -= b2 * quot[i];
        }
        double rem = std::max(std::abs(desc[desc.size() - 2]), std::abs(desc[desc.size() - 1]));
        if (rem > 1e-6 * P_star.coeff_scale())
            throw NumericFailureError("unfold_parabolic: cofactor division left a large remainder");
        q.assign(quot.rbegin(), quot.rend());
    }
    if (static_cast<int>(q.size()) != ell + 1)
        throw NumericFailureError("unfold_parabolic: unexpected cofactor degree");
    q.back() = 1.0; // monic by construction; strip roundoff

    if (ell == 0 && std::abs(root.real()) > 1e-7 * (1.0 + std::abs(root)))
        throw NumericFailureError("unfold_parabolic: full-degree pair is not purely imaginary");

    return UnfoldingFamily(P_star, root, s, std::move(q));
}

std::vector<std::vector<double>> unfolding_jacobian(const UnfoldingFamily& family, double step) {
    const int k = family.param_dim();
    std::vector<std::vector<double>> J(static_cast<std::size_t>(k), std::vector<double>(static_cast<std::size_t>(k), 0.0));
    for (int j = 0; j < k; ++j) {
        std::vector<double> plus(static_cast<std::size_t>(k), 0.0), minus(static_cast<std::size_t>(k), 0.0);
        plus[static_cast<std::size_t>(j)] = step;
        minus[static_cast<std::size_t>(j)] = -step;
        RealPolyField p = family.evaluate(plus), m = family.evaluate(minus);
        for (int i = 0; i < k; ++i)
            J[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                (p.eps[static_cast<std::size_t>(i)] - m.eps[static_cast<std::size_t>(i)]) / (2.0 * step);
    }
    return J;
}

} // namespace stratakit
