#pragma once

#include <vector>

#include "stratakit/poly.hpp"

namespace stratakit {

/// Polyline of one separatrix of infinity, traced inward from the escape
/// radius along its tangent direction exp(i pi j / k).
struct SeparatrixTrace {
    int index = 0;
    std::vector<cplx> points;
    int landing = -1;            ///< index into the roots list; -1 = escaped back to infinity
    double incoming_angle = 0.0; ///< arg(z - root) where the trace meets the landing circle
};

/// R = max(2, 2(1 + max_j |eps_j|)); beyond it the leading term dominates the
/// rest of P by at least a factor of two, so every separatrix is inside its
/// asymptotic sector.
double escape_radius(const RealPolyField& P);

/// Landing radius delta for one root.
double landing_radius(const SingularPoint& root, const Tolerances& tol);

std::vector<SeparatrixTrace> trace_separatrices(const RealPolyField& P,
                                                const std::vector<SingularPoint>& roots,
                                                const Tolerances& tol = {});

/// One unit-speed flow segment, with the field-time integral along it.
struct FlowHit {
    cplx endpoint;
    int root = -1;              ///< stop circle that was hit; -1 = escaped
    double time_integral = 0.0; ///< int ds/|P| over the travelled arc (>= 0)
    std::vector<cplx> points;
};

/// Integrate dz/ds = direction * P/|P| from z0 until the trajectory meets the
/// circle |z - root_i| = stop_radius[i] of some root (the crossing is refined
/// onto the circle) or leaves |z| = escape.  Throws NotGenericError when the
/// step budget runs out.
FlowHit flow_to_circle(const RealPolyField& P, const std::vector<SingularPoint>& roots,
                       cplx z0, int direction, const std::vector<double>& stop_radius,
                       double escape, const Tolerances& tol, bool keep_points = false);

/// Angle at which a stored polyline last crosses |z - center| = radius
/// (exact segment/circle intersection on the bracketing segment).
double polyline_angle_at_radius(const std::vector<cplx>& points, cplx center, double radius);

} // namespace stratakit
