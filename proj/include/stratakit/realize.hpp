#pragma once

#include "stratakit/linalg.hpp"
#include "stratakit/modulus.hpp"

namespace stratakit {

struct RealizationProblem {
    Modulus target;
    RealPolyField seed;   ///< any polynomial whose invariant equals target.tau
    Tolerances tol;
};

struct RealizationResult {
    RealPolyField poly;
    double residual = 0.0; ///< sup norm of the modulus mismatch over the k coordinates
    int iterations = 0;
    int continuation_steps = 0;
};

/// A generic polynomial whose extracted invariant equals tau, built by
/// replaying the codimension-raising moves from the quadratic base cases
/// (append a far-left real root, or split the leftmost real root into a
/// conjugate pair), each step verified by extraction; randomized coefficient
/// search is the fallback near a stubborn bifurcation.
RealPolyField seed_for_stratum(const NonXInvolution& tau, const Tolerances& tol = {},
                               unsigned rng_seed = 1);

/// Invert the modulus map: damped Newton on the k real coordinates with a
/// finite-difference Jacobian, plus linear continuation in modulus space
/// (which is convex) from the seed's modulus when direct Newton stalls.
/// Every accepted iterate must keep the target invariant.
RealizationResult realize(const RealizationProblem& prob);

/// Finite-difference Jacobian of eps -> modulus coordinates at P (central
/// differences; steps shrink if a perturbation exits the stratum).
Matrix modulus_jacobian(const RealPolyField& P, const Tolerances& tol = {});

} // namespace stratakit
