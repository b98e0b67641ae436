#include "stratakit/realize.hpp"

#include <algorithm>
#include <cmath>

#include "stratakit/parallel.hpp"
#include "stratakit/rng.hpp"

namespace stratakit {

namespace {

bool matches(const RealPolyField& P, const NonXInvolution& tau, const Tolerances& tol) {
    try {
        return extract_combinatorial(P, tol) == tau;
    } catch (const Error&) {
        return false;
    }
}

// Multiply ascending real coefficient vectors.
std::vector<double> mul(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

RealPolyField renormalized(const std::vector<double>& ascending, const Tolerances& tol) {
    std::vector<double> desc(ascending.rbegin(), ascending.rend());
    return zoom_to_unit(normalize(desc, tol).poly);
}

// Append a real root to the left of everything else, a few typical spacings
// out (verified by extraction afterwards).
RealPolyField append_left_root(const RealPolyField& P, double gap, const Tolerances& tol) {
    auto roots = find_roots(P, tol);
    double lo = 0.0, hi = 0.0;
    for (const auto& sp : roots) {
        lo = std::min(lo, sp.location.real());
        hi = std::max(hi, sp.location.real());
    }
    double spacing = std::max(1.0, (hi - lo) / std::max<std::size_t>(roots.size() - 1, 1));
    double c = lo - gap * spacing;
    return renormalized(mul(P.ascending_coeffs(), {-c, 1.0}), tol);
}

// Split the leftmost real root r0 into the conjugate pair r0 +- i d.
RealPolyField split_leftmost_root(const RealPolyField& P, double rel_d, const Tolerances& tol) {
    auto roots = find_roots(P, tol);
    const SingularPoint* leftmost = nullptr;
    for (const auto& sp : roots)
        if (sp.is_real && (!leftmost || sp.location.real() < leftmost->location.real())) leftmost = &sp;
    if (!leftmost) throw InvalidInputError("split_leftmost_root: no real root to split");
    const double r0 = leftmost->location.real();
    double gap = std::numeric_limits<double>::infinity();
    for (const auto& sp : roots)
        if (&sp != leftmost) gap = std::min(gap, std::abs(sp.location - leftmost->location));
    if (!std::isfinite(gap)) gap = 1.0;
    const double d = rel_d * gap;

    // Deflate (z - r0) and graft ((z - r0)^2 + d^2).
    const std::vector<double> asc = P.ascending_coeffs();
    std::vector<double> desc(asc.rbegin(), asc.rend());
    std::vector<double> quot(desc.size() - 1, 0.0);
    double carry = 0.0;
    for (std::size_t i = 0; i < quot.size(); ++i) {
        quot[i] = desc[i] + carry;
        carry = quot[i] * r0;
    }
    std::vector<double> s_asc(quot.rbegin(), quot.rend());
    std::vector<double> pair_factor{r0 * r0 + d * d, -2.0 * r0, 1.0};
    return renormalized(mul(s_asc, pair_factor), tol);
}

RealPolyField seed_recursive(const NonXInvolution& tau, const Tolerances& tol, Rng& rng);

RealPolyField seed_with_move(const NonXInvolution& predecessor, bool split,
                             const NonXInvolution& target, const Tolerances& tol, Rng& rng) {
    RealPolyField base = seed_recursive(predecessor, tol, rng);
    static constexpr double append_gaps[] = {1.0, 2.0, 4.0, 0.5, 8.0};
    static constexpr double split_rels[] = {0.25, 0.125, 0.4, 0.06, 0.5, 0.03};
    if (!split) {
        for (double g : append_gaps) {
            RealPolyField cand = append_left_root(base, g, tol);
            if (matches(cand, target, tol)) return cand;
        }
    } else {
        for (double r : split_rels) {
            RealPolyField cand = split_leftmost_root(base, r, tol);
            if (matches(cand, target, tol)) return cand;
        }
    }
    // Construction landed too close to a bifurcation; search a coefficient box.
    for (int attempt = 0; attempt < tol.seed_attempts; ++attempt) {
        std::vector<double> eps(static_cast<std::size_t>(target.k));
        for (double& e : eps) e = rng.uniform(-3.0, 3.0);
        RealPolyField cand(target.k, std::move(eps));
        if (matches(cand, target, tol)) return cand;
    }
    throw NumericFailureError("seed_for_stratum: no seed found for stratum " + stratum_id(target));
}

RealPolyField seed_recursive(const NonXInvolution& tau, const Tolerances& tol, Rng& rng) {
    const int k = tau.k;
    if (k == 1) {
        if (tau.ell == 1) return RealPolyField(1, {1.0});  // z^2 + 1
        return RealPolyField(1, {-1.0});                   // z^2 - 1
    }
    if (tau.ell == 1) {
        NonXInvolution pred{k - 1, 0, tau.pairing};
        pred.validate();
        return seed_with_move(pred, true, tau, tol, rng);
    }
    if (tau.tau_bar(k) == k) {
        NonXInvolution pred{k - 1, 0, std::vector<int>(tau.pairing.begin(), tau.pairing.end() - 1)};
        pred.validate();
        return seed_with_move(pred, false, tau, tol, rng);
    }
    const int j = tau.tau_bar(k);
    NonXInvolution pred{k - 1, 0, std::vector<int>(tau.pairing.begin(), tau.pairing.end() - 1)};
    pred.pairing[static_cast<std::size_t>(j - 1)] = j; // reopen the largest fixed point
    pred.validate();
    return seed_with_move(pred, true, tau, tol, rng);
}

} // namespace

RealPolyField seed_for_stratum(const NonXInvolution& tau, const Tolerances& tol, unsigned rng_seed) {
    tau.validate();
    Rng rng(rng_seed);
    RealPolyField seed = seed_recursive(tau, tol, rng);
    if (!matches(seed, tau, tol))
        throw NumericFailureError("seed_for_stratum: constructed seed fails verification for " + stratum_id(tau));
    return seed;
}

namespace {

struct Objective {
    const Modulus& target;
    std::vector<double> target_coords;
    Tolerances tol;

    // Modulus coordinates at eps, or nullopt when eps leaves the stratum.
    std::optional<std::vector<double>> eval(const std::vector<double>& eps) const {
        try {
            RealPolyField P(target.tau.k, eps);
            Modulus mod = extract_modulus(P, tol);
            if (!(mod.tau == target.tau)) return std::nullopt;
            return modulus_coords(mod);
        } catch (const Error&) {
            return std::nullopt;
        }
    }

    static double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
        double m = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
        return m;
    }
};

Matrix fd_jacobian(const Objective& obj, const std::vector<double>& eps,
                   const std::vector<double>& /*f0*/, const Tolerances& tol) {
    const std::size_t k = eps.size();
    Matrix J(k, std::vector<double>(k, 0.0));
    std::vector<int> bad(k, 0);
    parallel_for(k, [&](std::size_t j) {
        double h = tol.fd_step * (1.0 + std::abs(eps[j]));
        for (int shrink = 0; shrink < 6; ++shrink) {
            auto ep = eps, em = eps;
            ep[j] += h;
            em[j] -= h;
            auto fp = obj.eval(ep), fm = obj.eval(em);
            if (fp && fm) {
                for (std::size_t i = 0; i < k; ++i) J[i][j] = ((*fp)[i] - (*fm)[i]) / (2.0 * h);
                return;
            }
            h *= 0.25;
            if (h < 1e-10) break;
        }
        bad[j] = 1;
    });
    for (std::size_t j = 0; j < k; ++j)
        if (bad[j])
            throw NumericFailureError("modulus_jacobian: perturbations keep exiting the stratum");
    return J;
}

// Newton toward fixed target coordinates; returns true on convergence and
// leaves eps/f at the last accepted iterate either way.
bool newton_to(const Objective& obj, const std::vector<double>& goal, std::vector<double>& eps,
               std::vector<double>& f, int& iterations, const Tolerances& tol) {
    auto residual = [&](const std::vector<double>& fv) { return Objective::sup_diff(fv, goal); };
    for (int it = 0; it < tol.newton_iter_cap; ++it) {
        double r0 = residual(f);
        if (r0 <= tol.newton_tol) return true;
        Matrix J = fd_jacobian(obj, eps, f, tol);
        std::vector<double> rhs(eps.size());
        for (std::size_t i = 0; i < eps.size(); ++i) rhs[i] = goal[i] - f[i];
        std::vector<double> step;
        try {
            step = solve_linear(J, rhs);
        } catch (const NumericFailureError&) {
            throw NumericFailureError("realize: Jacobian numerically singular on the stratum");
        }
        bool accepted = false;
        double lambda = 1.0;
        for (int halvings = 0; halvings < 30; ++halvings, lambda *= 0.5) {
            auto cand = eps;
            for (std::size_t i = 0; i < eps.size(); ++i) cand[i] += lambda * step[i];
            auto fc = obj.eval(cand);
            if (!fc) continue;
            if (residual(*fc) <= (1.0 - 0.25 * lambda) * r0 || residual(*fc) <= tol.newton_tol) {
                eps = cand;
                f = *fc;
                ++iterations;
                accepted = true;
                break;
            }
        }
        if (!accepted) return residual(f) <= tol.newton_tol;
    }
    return residual(f) <= tol.newton_tol;
}

} // namespace

RealizationResult realize(const RealizationProblem& prob) {
    prob.target.validate();
    const Tolerances& tol = prob.tol;
    const int k = prob.target.tau.k;
    if (prob.seed.k != k)
        throw InvalidInputError("realize: seed codimension differs from the target");

    RealizationResult res;

    // Closed forms bypass Newton for k = 1: eta_R(z^2+a^2) = pi/a and
    // eta(z^2-a^2) = i pi / a.
    if (k == 1) {
        double a;
        if (prob.target.tau.ell == 1) a = M_PI / *prob.target.eta_R;
        else a = M_PI / prob.target.eta_I[0];
        double eps0 = prob.target.tau.ell == 1 ? a * a : -a * a;
        res.poly = RealPolyField(1, {eps0});
        res.residual = Objective::sup_diff(modulus_coords(extract_modulus(res.poly, tol)),
                                           modulus_coords(prob.target));
        return res;
    }

    Objective obj{prob.target, modulus_coords(prob.target), tol};

    std::vector<double> eps = prob.seed.eps;
    auto f0 = obj.eval(eps);
    if (!f0)
        throw InvalidInputError("realize: the seed is not in the target stratum");
    std::vector<double> f = *f0;

    if (newton_to(obj, obj.target_coords, eps, f, res.iterations, tol)) {
        res.poly = RealPolyField(k, eps);
        res.residual = Objective::sup_diff(f, obj.target_coords);
        return res;
    }

    // Linear continuation in modulus space (the coordinate cone is convex, so
    // the whole segment stays admissible for the fixed invariant).
    std::vector<double> start = f;
    double t = 0.0, dt = 0.25;
    while (t < 1.0) {
        if (res.continuation_steps++ > tol.continuation_cap)
            throw NumericFailureError("realize: continuation exceeded its step budget");
        double t_next = std::min(1.0, t + dt);
        std::vector<double> goal(start.size());
        for (std::size_t i = 0; i < start.size(); ++i)
            goal[i] = (1.0 - t_next) * start[i] + t_next * obj.target_coords[i];
        auto eps_try = eps;
        auto f_try = f;
        if (newton_to(obj, goal, eps_try, f_try, res.iterations, tol)) {
            eps = eps_try;
            f = f_try;
            t = t_next;
            dt = std::min(0.5, dt * 1.7);
        } else {
            dt *= 0.5;
            if (dt < 1e-6)
                throw NumericFailureError("realize: continuation stalled at the stratum boundary");
        }
    }
    res.poly = RealPolyField(k, eps);
    res.residual = Objective::sup_diff(f, obj.target_coords);
    if (res.residual > tol.newton_tol * 10)
        throw NumericFailureError("realize: residual above tolerance after continuation");
    return res;
}

Matrix modulus_jacobian(const RealPolyField& P, const Tolerances& tol) {
    Modulus mod = extract_modulus(P, tol);
    Objective obj{mod, modulus_coords(mod), tol};
    return fd_jacobian(obj, P.eps, obj.target_coords, tol);
}

} // namespace stratakit
