#include "stratakit/selfcheck.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "stratakit/bifurcation3.hpp"
#include "stratakit/json_io.hpp"
#include "stratakit/parallel.hpp"
#include "stratakit/realize.hpp"
#include "stratakit/rng.hpp"
#include "stratakit/svg.hpp"

namespace stratakit {

namespace {

struct Report {
    std::ostringstream detail;
    bool ok = true;
    int checks = 0;

    void expect(bool cond, const std::string& msg) {
        ++checks;
        if (!cond) {
            ok = false;
            detail << msg << "; ";
        }
    }
};

// ---- enumeration helpers for the exhaustive bijection checks -------------

std::vector<DispersedDyckPath> all_dispersed(int n) {
    std::vector<DispersedDyckPath> out;
    std::vector<Step> cur;
    std::function<void(int, int)> rec = [&](int pos, int h) {
        if (pos == n) {
            if (h == 0) out.push_back(DispersedDyckPath{cur});
            return;
        }
        for (Step s : {Step::up, Step::down, Step::flat}) {
            if (s == Step::down && h == 0) continue;
            if (s == Step::flat && h != 0) continue;
            cur.push_back(s);
            rec(pos + 1, h + (s == Step::up ? 1 : s == Step::down ? -1 : 0));
            cur.pop_back();
        }
    };
    rec(0, 0);
    return out;
}

std::vector<std::vector<int>> all_plain(int n) {
    std::vector<std::vector<int>> out;
    const int want = n % 2 == 0 ? 0 : -1;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<int> steps(static_cast<std::size_t>(n));
        int h = 0;
        for (int i = 0; i < n; ++i) {
            steps[static_cast<std::size_t>(i)] = (mask >> i) & 1 ? 1 : -1;
            h += steps[static_cast<std::size_t>(i)];
        }
        if (h == want) out.push_back(std::move(steps));
    }
    return out;
}

std::string path_key(const DispersedDyckPath& p) {
    std::string s;
    for (Step st : p.steps) s.push_back(st == Step::up ? 'u' : st == Step::down ? 'd' : 'f');
    return s;
}

std::string plain_key(const std::vector<int>& p) {
    std::string s;
    for (int v : p) s.push_back(v == 1 ? 'u' : 'd');
    return s;
}

// Perturb a polynomial inside its stratum (verified by extraction).
RealPolyField perturb_in_stratum(const RealPolyField& P, const NonXInvolution& tau, double scale,
                                 Rng& rng, const Tolerances& tol) {
    for (int attempt = 0; attempt < 24; ++attempt) {
        std::vector<double> eps = P.eps;
        for (double& e : eps) e += scale * (1.0 + std::abs(e)) * rng.uniform(-1.0, 1.0);
        try {
            RealPolyField cand(P.k, eps);
            if (extract_combinatorial(cand, tol) == tau) return cand;
        } catch (const Error&) {
        }
        scale *= 0.6;
    }
    throw NumericFailureError("selfcheck: could not perturb inside the stratum");
}

double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

// ---- criteria -------------------------------------------------------------

void check_counts(Report& rep, const SelfcheckOptions&) {
    const long long expected[] = {2, 2, 4, 6, 12, 20, 40, 70, 140, 252};
    for (int k = 1; k <= 10; ++k) {
        auto strata = enumerate_strata(k);
        rep.expect(static_cast<long long>(strata.size()) == expected[k - 1],
                   "enumeration size off at k=" + std::to_string(k));
        rep.expect(count_D(k) == expected[k - 1], "closed form off at k=" + std::to_string(k));
        for (const auto& tau : strata) tau.validate();
    }
    for (int k = 1; k <= 8; ++k) {
        std::map<int, long long> hist;
        for (const auto& tau : enumerate_strata(k)) ++hist[tau.real_point_count()];
        long long total = 0;
        for (int m = (k + 1) % 2; m <= k + 1; m += 2) {
            if (m == 0 && k % 2 == 0) continue;
            long long want = count_Dkm(k, m);
            long long got = hist.count(m) ? hist[m] : 0;
            rep.expect(got == want, "D(" + std::to_string(k) + "," + std::to_string(m) + ") histogram off");
            total += want;
        }
        rep.expect(total == count_D(k), "D(k,m) does not sum to D(k) at k=" + std::to_string(k));
    }
}

void check_successors(Report& rep, const SelfcheckOptions&) {
    for (int k = 1; k <= 8; ++k) {
        auto strata = enumerate_strata(k);
        std::multiset<std::string> image;
        long long with_real = 0;
        for (const auto& tau : strata) {
            if (tau.real_point_count() == 0) continue;
            ++with_real;
            auto [a, b] = successor_strata(tau);
            image.insert(canonical_key(a));
            image.insert(canonical_key(b));
        }
        long long want = (k % 2 == 0) ? 2 * count_D(k) : 2 * (count_D(k) - catalan((k - 1) / 2));
        rep.expect(static_cast<long long>(image.size()) == 2 * with_real,
                   "successor image lost elements at k=" + std::to_string(k));
        rep.expect(want == count_D(k + 1), "recurrence value off at k=" + std::to_string(k));
        std::multiset<std::string> next;
        for (const auto& tau : enumerate_strata(k + 1)) next.insert(canonical_key(tau));
        rep.expect(image == next, "successor image differs from the k+1 enumeration at k=" + std::to_string(k));
    }
}

void check_bijections(Report& rep, const SelfcheckOptions&) {
    for (int k = 1; k <= 8; ++k) {
        auto paths = all_dispersed(k);
        rep.expect(static_cast<long long>(paths.size()) == dispersed_count(k),
                   "dispersed count off at n=" + std::to_string(k));

        std::set<std::string> from_strata;
        for (const auto& tau : enumerate_strata(k)) {
            if (tau.ell != 0) continue;
            auto p = involution_to_dispersed(tau);
            rep.expect(dispersed_to_involution(p) == tau, "involution round trip failed at k=" + std::to_string(k));
            from_strata.insert(path_key(p));
        }
        std::set<std::string> all_keys;
        for (const auto& p : paths) all_keys.insert(path_key(p));
        rep.expect(from_strata == all_keys, "involution<->path bijection not onto at k=" + std::to_string(k));

        std::set<std::string> plain_image;
        for (const auto& p : paths) {
            auto plain = dispersed_to_plain(p);
            rep.expect(plain_to_dispersed(plain) == p, "path round trip failed at n=" + std::to_string(k));
            plain_image.insert(plain_key(plain));
        }
        std::set<std::string> plain_all;
        for (const auto& p : all_plain(k)) plain_all.insert(plain_key(p));
        rep.expect(plain_image == plain_all, "dispersed<->plain bijection not onto at n=" + std::to_string(k));
    }
}

void check_residues(Report& rep, const SelfcheckOptions& opts) {
    Rng rng(opts.seed + 17);
    for (int k = 1; k <= 6; ++k) {
        double worst = 0.0;
        for (int trial = 0; trial < 1000; ++trial) {
            std::vector<double> eps(static_cast<std::size_t>(k));
            for (double& e : eps) e = rng.uniform(-5.0, 5.0);
            worst = std::max(worst, std::abs(residue_sum(RealPolyField(k, eps), opts.tol)));
        }
        rep.expect(worst < 1e-10, "residue sum reached " + std::to_string(worst) + " at k=" + std::to_string(k));
    }
}

void check_oracles(Report& rep, const SelfcheckOptions& opts) {
    for (double a : {0.5, 1.0, 2.0}) {
        double pr = period_R(RealPolyField(1, {a * a}), opts.tol);
        rep.expect(std::abs(pr - M_PI / a) <= 1e-8 * (M_PI / a),
                   "axis period off for a=" + std::to_string(a));
        Modulus mod = extract_modulus(RealPolyField(1, {-a * a}), opts.tol);
        rep.expect(mod.eta_I.size() == 1 && std::abs(mod.eta_I[0] - M_PI / a) <= 1e-8 * (M_PI / a),
                   "symmetric-zone time off for a=" + std::to_string(a));
    }
    PeriodCheck pc = period_R_detail(RealPolyField(3, {5.0, 0.0, 4.0}), opts.tol);
    rep.expect(std::abs(pc.via_residues - pc.via_quadrature) <=
                   1e-6 * std::max(std::abs(pc.via_residues), std::abs(pc.via_quadrature)),
               "residue and quadrature periods disagree for (z^2+1)(z^2+4)");
}

std::vector<RealPolyField> symmetry_corpus(const SelfcheckOptions& opts) {
    std::vector<RealPolyField> corpus;
    Rng rng(opts.seed + 23);
    for (int k = 1; k <= 4; ++k) {
        for (const auto& tau : enumerate_strata(k)) {
            RealPolyField seed = seed_for_stratum(tau, opts.tol, opts.seed);
            corpus.push_back(seed);
            if (k >= 2 && !(k == 1 && tau.ell == 1))
                corpus.push_back(perturb_in_stratum(seed, tau, 0.05, rng, opts.tol));
        }
    }
    return corpus;
}

void check_symmetry(Report& rep, const SelfcheckOptions& opts) {
    auto corpus = symmetry_corpus(opts);
    rep.expect(corpus.size() >= 20, "symmetry corpus smaller than 20");
    for (const auto& P : corpus) {
        FieldAnalysis fa = FieldAnalysis::build(P, opts.tol);
        Modulus mod = extract_modulus(fa);
        const int k = P.k;
        const int m = mod.tau.real_point_count();
        const int ell = mod.tau.ell;
        rep.expect(static_cast<int>(mod.eta_I.size()) == m - 1 + ell,
                   "purely imaginary count off for k=" + std::to_string(k));
        rep.expect(mod.real_dimension() == k, "modulus dimension off for k=" + std::to_string(k));
        if (P.k == 1 && m == 0) continue; // no zones to mirror
        for (int j = 1; j <= mod.tau.domain_size(); ++j) {
            int t = mod.tau.tau_extended(j);
            cplx upper = transversal_time(fa, {j, t});
            cplx mirror = transversal_time(fa, {-j, -t});
            double err = std::abs(upper - (-std::conj(mirror)));
            rep.expect(err <= 1e-8 * std::max(1.0, std::abs(upper)),
                       "symmetry law violated by " + std::to_string(err) + " for k=" + std::to_string(k));
        }
    }
}

void check_round_trip(Report& rep, const SelfcheckOptions& opts) {
    Rng rng(opts.seed + 31);
    std::vector<NonXInvolution> targets;
    for (int k = 1; k <= 3; ++k)
        for (const auto& tau : enumerate_strata(k)) targets.push_back(tau);
    {
        auto k4 = enumerate_strata(4);
        targets.insert(targets.end(), k4.begin(), k4.begin() + 3);
    }
    for (const auto& tau : targets) {
        RealPolyField P = seed_for_stratum(tau, opts.tol, opts.seed);
        Modulus target = extract_modulus(P, opts.tol);
        RealPolyField seed_a = P, seed_b = P;
        if (tau.k >= 2) {
            seed_a = perturb_in_stratum(P, tau, 0.08, rng, opts.tol);
            seed_b = perturb_in_stratum(P, tau, 0.15, rng, opts.tol);
        }
        RealizationResult ra = realize({target, seed_a, opts.tol});
        RealizationResult rb = realize({target, seed_b, opts.tol});
        rep.expect(sup_diff(ra.poly.eps, P.eps) < 1e-6,
                   "round trip missed the original at " + stratum_id(tau));
        rep.expect(sup_diff(rb.poly.eps, P.eps) < 1e-6,
                   "second-seed round trip missed at " + stratum_id(tau));
        rep.expect(sup_diff(ra.poly.eps, rb.poly.eps) < 1e-6,
                   "two seeds disagree at " + stratum_id(tau));
    }
}

void check_k3(Report& rep, const SelfcheckOptions& opts) {
    // Discriminant-sign / multiple-root equivalence on a random cloud.
    Rng rng(opts.seed + 41);
    const int n = 10000;
    std::vector<std::array<double, 3>> pts(static_cast<std::size_t>(n));
    for (auto& p : pts) p = {rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
    std::vector<int> failures(static_cast<std::size_t>(n), 0);
    parallel_for(pts.size(), [&](std::size_t i) {
        auto [e2, e1, e0] = pts[i];
        double delta = k3_discriminant(e2, e1, e0);
        double scale = 256.0 * std::abs(e0 * e0 * e0) + 27.0 * e1 * e1 * e1 * e1 +
                       std::abs(144.0 * e0 * e1 * e1 * e2) + 128.0 * e0 * e0 * e2 * e2 +
                       std::abs(4.0 * e1 * e1 * e2 * e2 * e2) + std::abs(16.0 * e0 * e2 * e2 * e2 * e2);
        bool disc_zero = std::abs(delta) <= 1e-9 * std::max(scale, 1.0);
        bool multiple = false;
        for (const auto& sp : find_roots(RealPolyField(3, {e2, e1, e0}), opts.tol))
            if (sp.multiplicity > 1) multiple = true;
        if (disc_zero != multiple) failures[i] = 1;
    });
    int bad = 0;
    for (int f : failures) bad += f;
    rep.expect(bad == 0, std::to_string(bad) + " discriminant/multiplicity equivalence failures");

    // The eps1 = 0, eps2 = 1 sweep reproduces the label sequence, including
    // the parabolic pair at eps0 = 1/4.
    auto sweep = sample_k3_sweep(1.0, -1.0, 1.0, 41, opts.tol, true);
    for (int i = 0; i < 41; ++i) {
        double e0 = sweep[static_cast<std::size_t>(i)].eps[2];
        const std::string& lab = sweep[static_cast<std::size_t>(i)].label.label;
        std::string want;
        if (e0 < -1e-12) want = "homoclinic-pair-m2";
        else if (std::abs(e0) <= 1e-12) want = "higher-codim";
        else if (e0 < 0.25 - 1e-12) want = "homoclinic-pair-m0";
        else if (std::abs(e0 - 0.25) <= 1e-12) want = "nonreal-parabolic-pair";
        else want = "generic";
        rep.expect(lab == want, "sweep label at eps0=" + std::to_string(e0) + " is " + lab +
                                    " (expected " + want + ")");
        if (want == "generic")
            rep.expect(sweep[static_cast<std::size_t>(i)].label.m == 0,
                       "sweep generic point should have m=0");
    }

    // Scaling invariance of labels.
    std::vector<int> mism(100, 0);
    std::vector<std::array<double, 4>> cases(100);
    for (auto& c : cases) c = {rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0),
                               rng.uniform(0.3, 3.0)};
    parallel_for(cases.size(), [&](std::size_t i) {
        auto [e2, e1, e0, r] = cases[i];
        K3Label a = classify_k3(e2, e1, e0, opts.tol, true);
        K3Label b = classify_k3(e2 * r * r, e1 * r * r * r, e0 * r * r * r * r, opts.tol, true);
        if (a.label != b.label || a.stratum != b.stratum || a.m != b.m) mism[i] = 1;
    });
    int mismatches = 0;
    for (int v : mism) mismatches += v;
    rep.expect(mismatches == 0, std::to_string(mismatches) + " scaling-invariance mismatches");
}

void check_unfolding(Report& rep, const SelfcheckOptions& opts) {
    {
        // (z^2+1)^2 = z^4 + 2z^2 + 1, double pair at +-i.
        RealPolyField P(3, {2.0, 0.0, 1.0});
        auto fam = unfold_parabolic(P, cplx(0.0, 1.0), opts.tol);
        double sv = min_singular_value_scaled(unfolding_jacobian(fam));
        rep.expect(sv > 1e-6, "unfolding Jacobian nearly singular for the double pair, sv=" + std::to_string(sv));
    }
    {
        // (z^2+1)(z-1), centered by normalize, simple root near i.
        Normalized n = normalize({1.0, -1.0, 1.0, -1.0}, opts.tol);
        auto fam = unfold_parabolic(n.poly, cplx(-n.change.shift, 1.0), opts.tol);
        double sv = min_singular_value_scaled(unfolding_jacobian(fam));
        rep.expect(sv > 1e-6, "unfolding Jacobian nearly singular for the simple pair, sv=" + std::to_string(sv));
    }
}

void check_determinism(Report& rep, const SelfcheckOptions& opts) {
    auto enumerate_json = [&] {
        json arr = json::array();
        for (const auto& tau : enumerate_strata(4)) {
            json j = to_json(tau);
            j["id"] = stratum_id(tau);
            arr.push_back(j);
        }
        return arr.dump();
    };
    rep.expect(enumerate_json() == enumerate_json(), "enumeration JSON not byte-stable");

    auto portrait = [&] {
        PortraitSpec spec;
        spec.poly = RealPolyField(2, {-1.0, 0.0});
        spec.tree_overlay = true;
        return render_portrait(spec, opts.tol);
    };
    rep.expect(portrait() == portrait(), "portrait SVG not byte-stable");

    auto classify_json = [&] { return to_json(classify_k3(0.0, 1.0, 1.0, opts.tol, true)).dump(); };
    rep.expect(classify_json() == classify_json(), "classification JSON not byte-stable");

    auto cloud = [&] {
        std::string out;
        for (const auto& s : sample_k3_box(64, opts.seed, -2.0, 2.0, opts.tol, false))
            out += to_json(s).dump() + "\n";
        return out;
    };
    rep.expect(cloud() == cloud(), "sampled cloud JSON not byte-stable");
}

} // namespace

std::vector<CheckResult> run_selfcheck(const SelfcheckOptions& opts) {
    using Clock = std::chrono::steady_clock;
    const std::vector<std::pair<std::string, std::function<void(Report&, const SelfcheckOptions&)>>> checks = {
        {"combinatorics/counts", check_counts},
        {"combinatorics/successors", check_successors},
        {"combinatorics/dyck-bijections", check_bijections},
        {"poly/residues", check_residues},
        {"invariants/oracles", check_oracles},
        {"invariants/symmetry", check_symmetry},
        {"realization/round-trip", check_round_trip},
        {"bifurcation3/classifier", check_k3},
        {"poly/unfolding", check_unfolding},
        {"cli/determinism", check_determinism},
    };

    std::vector<CheckResult> out;
    for (const auto& [name, fn] : checks) {
        if (!opts.filter.empty() && name.find(opts.filter) == std::string::npos) continue;
        CheckResult res;
        res.name = name;
        auto t0 = Clock::now();
        Report rep;
        try {
            fn(rep, opts);
            res.pass = rep.ok;
            res.detail = rep.ok ? std::to_string(rep.checks) + " checks" : rep.detail.str();
        } catch (const std::exception& e) {
            res.pass = false;
            res.detail = std::string("exception: ") + e.what();
        }
        res.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        out.push_back(std::move(res));
    }
    return out;
}

} // namespace stratakit
