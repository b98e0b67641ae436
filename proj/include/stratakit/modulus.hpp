#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "stratakit/involution.hpp"
#include "stratakit/poly.hpp"
#include "stratakit/trace.hpp"

namespace stratakit {

/// Full classification datum: the combinatorial invariant together with the
/// analytic coordinates, ordered as (upper-half-plane transversal times of
/// the zone pairs, indexed by their increasing odd non-fixed end; then the
/// purely imaginary times of the symmetric zones by increasing fixed end;
/// then the axis period when the real axis is a homoclinic loop).
struct Modulus {
    NonXInvolution tau;
    std::vector<cplx> eta_H;          ///< Im > 0; one per symmetric zone pair
    std::vector<double> eta_I;        ///< positive imaginary parts of the symmetric-zone times
    std::optional<double> eta_R;      ///< axis period, present iff ell = 1

    int real_dimension() const {
        return 2 * static_cast<int>(eta_H.size()) + static_cast<int>(eta_I.size()) + (eta_R ? 1 : 0);
    }
    void validate() const;
};

/// Roots plus separatrix traces for one polynomial, shared by the extractors.
struct FieldAnalysis {
    RealPolyField P;
    Tolerances tol;
    std::vector<SingularPoint> roots;
    std::vector<SeparatrixTrace> traces;
    double R = 2.0;
    int m = 0;   ///< real singular points
    int ell = 0; ///< 1 iff the real axis is a homoclinic loop

    static FieldAnalysis build(const RealPolyField& P, const Tolerances& tol = {});
};

/// Recover the combinatorial invariant from the landing pattern: at every
/// root the arriving separatrices are rotated counterclockwise, which yields
/// the attachment permutation and hence the involution.  Refuses (hard error)
/// on any conjugation or non-crossing violation instead of repairing it.
NonXInvolution extract_combinatorial(const FieldAnalysis& fa);
NonXInvolution extract_combinatorial(const RealPolyField& P, const Tolerances& tol = {});

/// Transversal time of the zone with the given pair of ends (signed labels,
/// extended involution orbit): the integral of dz/P over a path from
/// infinity in the zone's lower end to infinity in its upper end, so Im > 0;
/// symmetric zones come out purely imaginary.
///
/// Closing the zone path with an arc at infinity (free of charge, the full
/// residue sum vanishes) encloses exactly the landing roots of the
/// separatrices in one index arc, so the value is 2 pi i times that residue
/// sum.  Both index arcs are evaluated and must agree.
cplx transversal_time(const FieldAnalysis& fa, std::pair<int, int> zone_ends);
cplx transversal_time(const RealPolyField& P, std::pair<int, int> zone_ends,
                      const Tolerances& tol = {});

/// Independent slow route to the same number: adaptive quadrature along an
/// explicit path (rays from infinity, unit-speed orbit legs into the zone's
/// repelling point, and a circular arc around it).  Used as a cross-check;
/// ill-conditioned when a zone is much thinner than the root spread.
cplx transversal_time_quadrature(const FieldAnalysis& fa, std::pair<int, int> zone_ends);

/// Period of the real axis for m = 0: the residue form 2 pi i * sum of the
/// upper-half-plane residues of 1/P, cross-checked against direct quadrature
/// of the axis integral.
double period_R(const RealPolyField& P, const Tolerances& tol = {});

struct PeriodCheck {
    double via_residues = 0.0;
    double via_quadrature = 0.0;
};

/// Both routes to the axis period, without the agreement gate.
PeriodCheck period_R_detail(const RealPolyField& P, const Tolerances& tol = {});

Modulus extract_modulus(const RealPolyField& P, const Tolerances& tol = {});
Modulus extract_modulus(const FieldAnalysis& fa);

/// The k real coordinates of a modulus (Re/Im of each upper time, then the
/// imaginary parts, then the period).
std::vector<double> modulus_coords(const Modulus& mod);

} // namespace stratakit
