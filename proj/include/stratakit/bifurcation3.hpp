#pragma once

#include <array>
#include <string>
#include <vector>

#include "stratakit/modulus.hpp"

namespace stratakit {

/// Classification of one point of the (eps2, eps1, eps0) parameter space of
/// z^4 + eps2 z^2 + eps1 z + eps0.
struct K3Label {
    std::string label;   ///< generic | real-parabolic | nonreal-parabolic-pair |
                         ///< homoclinic-pair-m2 | homoclinic-pair-m0 | higher-codim
    std::string stratum; ///< stratum id when generic and resolved, else empty
    int m = 0;           ///< real singular points
    double delta = 0.0;  ///< quartic discriminant at the input coefficients
    std::vector<std::pair<std::string, double>> witnesses;
};

/// Depressed-quartic discriminant
/// 256 e0^3 - 27 e1^4 + 144 e0 e1^2 e2 - 128 e0^2 e2^2 - 4 e1^2 e2^3 + 16 e0 e2^4.
double k3_discriminant(double e2, double e1, double e0);

/// Conservative classification: points inside the relative tolerance band of
/// a bifurcation locus get the bifurcation label, intersections of
/// inconsistent loci report higher-codim with both witnesses.  The point is
/// first rescaled to weighted radius one (labels are zoom invariants).
K3Label classify_k3(double e2, double e1, double e0, const Tolerances& tol = {},
                    bool resolve_stratum = true);

struct K3Sample {
    std::array<double, 3> eps; // (eps2, eps1, eps0)
    K3Label label;
};

std::vector<K3Sample> sample_k3_box(int count, unsigned seed, double lo, double hi,
                                    const Tolerances& tol = {}, bool resolve_stratum = true);

/// Sweep eps1 = 0, eps2 fixed, eps0 over [e0_lo, e0_hi] on `count` grid points.
std::vector<K3Sample> sample_k3_sweep(double e2, double e0_lo, double e0_hi, int count,
                                      const Tolerances& tol = {}, bool resolve_stratum = true);

/// Deterministic (Fibonacci lattice) sample of the sphere of the given
/// weighted radius; the zoom action reduces every point to radius one before
/// classification.
std::vector<K3Sample> sample_k3_sphere(double radius, int count,
                                       const Tolerances& tol = {}, bool resolve_stratum = true);

} // namespace stratakit
