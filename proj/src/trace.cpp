#include "stratakit/trace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "stratakit/parallel.hpp"

namespace stratakit {

double escape_radius(const RealPolyField& P) {
    double m = 0.0;
    for (double e : P.eps) m = std::max(m, std::abs(e));
    return std::max(2.0, 2.0 * (1.0 + m));
}

double landing_radius(const SingularPoint& root, const Tolerances& tol) {
    return tol.landing_rel * (1.0 + std::abs(root.location));
}

namespace {

// State of the unit-speed flow dz/ds = dir * P/|P| together with the field
// time T(s) = int ds/|P| accumulated along the arc.
struct State {
    cplx z;
    double t;
};

struct Deriv {
    cplx dz;
    double dt;
};

struct StepOut {
    State y;
    Deriv k_end; // FSAL derivative at the accepted point
    double error;
};

// Dormand-Prince 5(4) pair.
class Stepper {
public:
    Stepper(const RealPolyField& P, int dir, double rtol) : P_(P), dir_(dir), rtol_(rtol) {}

    Deriv field(cplx z) const {
        cplx p = eval(P_, z);
        double mag = std::abs(p);
        if (mag == 0.0) throw NumericFailureError("flow: hit a singular point exactly");
        return {static_cast<double>(dir_) * p / mag, 1.0 / mag};
    }

    StepOut step(const State& y, const Deriv& k1, double h) const {
        Deriv k2 = field(y.z + h * (a21 * k1.dz));
        Deriv k3 = field(y.z + h * (a31 * k1.dz + a32 * k2.dz));
        Deriv k4 = field(y.z + h * (a41 * k1.dz + a42 * k2.dz + a43 * k3.dz));
        Deriv k5 = field(y.z + h * (a51 * k1.dz + a52 * k2.dz + a53 * k3.dz + a54 * k4.dz));
        Deriv k6 = field(y.z + h * (a61 * k1.dz + a62 * k2.dz + a63 * k3.dz + a64 * k4.dz + a65 * k5.dz));
        State y5{y.z + h * (b1 * k1.dz + b3 * k3.dz + b4 * k4.dz + b5 * k5.dz + b6 * k6.dz),
                 y.t + h * (b1 * k1.dt + b3 * k3.dt + b4 * k4.dt + b5 * k5.dt + b6 * k6.dt)};
        Deriv k7 = field(y5.z);
        const cplx e_z = h * (e1 * k1.dz + e3 * k3.dz + e4 * k4.dz + e5 * k5.dz + e6 * k6.dz + e7 * k7.dz);
        const double e_t = h * (e1 * k1.dt + e3 * k3.dt + e4 * k4.dt + e5 * k5.dt + e6 * k6.dt + e7 * k7.dt);
        const double err = std::max(std::abs(e_z) / (rtol_ * (1.0 + std::abs(y.z))),
                                    std::abs(e_t) / (rtol_ * (1.0 + std::abs(y.t))));
        return {y5, k7, err};
    }

private:
    const RealPolyField& P_;
    int dir_;
    double rtol_;

    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = b1 - 5179.0 / 57600, e3 = b3 - 7571.0 / 16695, e4 = b4 - 393.0 / 640,
                            e5 = b5 + 92097.0 / 339200, e6 = b6 - 187.0 / 2100, e7 = -1.0 / 40;
};

} // namespace

FlowHit flow_to_circle(const RealPolyField& P, const std::vector<SingularPoint>& roots,
                       cplx z0, int direction, const std::vector<double>& stop_radius,
                       double escape, const Tolerances& tol, bool keep_points) {
    const Stepper stepper(P, direction, tol.trace_tol);
    const double min_stop = stop_radius.empty()
                                ? 1.0
                                : *std::min_element(stop_radius.begin(), stop_radius.end());

    auto nearest_gap = [&](cplx z) {
        double g = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < roots.size(); ++i)
            g = std::min(g, std::abs(z - roots[i].location) - stop_radius[i]);
        return g;
    };
    auto hit_index = [&](cplx z) -> int {
        for (std::size_t i = 0; i < roots.size(); ++i)
            if (std::abs(z - roots[i].location) <= stop_radius[i]) return static_cast<int>(i);
        return -1;
    };

    FlowHit out;
    State y{z0, 0.0};
    if (keep_points) out.points.push_back(z0);
    Deriv k1 = stepper.field(y.z);
    double h = 0.01 * (1.0 + std::abs(z0));

    for (int steps = 0; steps < tol.trace_step_cap; ++steps) {
        // Unit speed: capping h by the distance to the stop circles makes
        // jumping straight over one impossible.
        double cap = std::max(0.5 * nearest_gap(y.z), 0.05 * min_stop);
        h = std::clamp(h, 0.0, std::min(cap, 0.5 * (1.0 + std::abs(y.z))));
        if (h <= 0.0) h = 1e-12;

        StepOut trial = stepper.step(y, k1, h);
        if (trial.error > 1.0) {
            h *= std::max(0.2, 0.9 * std::pow(trial.error, -0.2));
            continue;
        }

        if (hit_index(trial.y.z) >= 0) {
            // Refine the substep length until the endpoint sits on the circle.
            double lo = 0.0, hi = h;
            State y_hit = trial.y;
            for (int it = 0; it < 60 && (hi - lo) > 1e-14 * h; ++it) {
                double mid = 0.5 * (lo + hi);
                StepOut probe = stepper.step(y, k1, mid);
                if (hit_index(probe.y.z) >= 0) {
                    hi = mid;
                    y_hit = probe.y;
                } else {
                    lo = mid;
                }
            }
            out.endpoint = y_hit.z;
            out.root = hit_index(y_hit.z);
            out.time_integral = y_hit.t;
            if (keep_points) out.points.push_back(y_hit.z);
            return out;
        }

        y = trial.y;
        k1 = trial.k_end;
        if (keep_points) out.points.push_back(y.z);
        if (std::abs(y.z) > escape) {
            out.endpoint = y.z;
            out.root = -1;
            out.time_integral = y.t;
            return out;
        }
        h *= std::min(5.0, std::max(0.2, 0.9 * std::pow(std::max(trial.error, 1e-10), -0.2)));
    }
    throw NotGenericError("flow: step budget exceeded (trajectory lingers near a bifurcation)");
}

double polyline_angle_at_radius(const std::vector<cplx>& points, cplx center, double radius) {
    for (std::size_t i = points.size(); i-- > 1;) {
        double d0 = std::abs(points[i - 1] - center);
        double d1 = std::abs(points[i] - center);
        if ((d0 - radius) * (d1 - radius) > 0.0) continue;
        // Solve |a + t (b - a)| = radius on the bracketing segment.
        cplx a = points[i - 1] - center, b = points[i] - center;
        cplx d = b - a;
        double A = std::norm(d);
        double B = 2.0 * (a.real() * d.real() + a.imag() * d.imag());
        double C = std::norm(a) - radius * radius;
        double disc = B * B - 4 * A * C;
        double t;
        if (disc <= 0.0 || A == 0.0) {
            t = (d1 == d0) ? 0.5 : (radius - d0) / (d1 - d0);
        } else {
            double r1 = (-B - std::sqrt(disc)) / (2 * A);
            double r2 = (-B + std::sqrt(disc)) / (2 * A);
            t = (0.0 <= r1 && r1 <= 1.0) ? r1 : r2;
        }
        return std::arg(a + t * d);
    }
    throw NumericFailureError("polyline_angle_at_radius: polyline never crosses the circle");
}

std::vector<SeparatrixTrace> trace_separatrices(const RealPolyField& P,
                                                const std::vector<SingularPoint>& roots,
                                                const Tolerances& tol) {
    const int k = P.k;
    const double R = escape_radius(P);
    std::vector<double> delta(roots.size());
    for (std::size_t i = 0; i < roots.size(); ++i) delta[i] = landing_radius(roots[i], tol);

    std::vector<SeparatrixTrace> traces(static_cast<std::size_t>(2 * k));
    parallel_for(traces.size(), [&](std::size_t j) {
        cplx start = std::polar(R, M_PI * static_cast<double>(j) / k);
        if (j == 0) start = cplx(R, 0.0);
        if (static_cast<int>(j) == k) start = cplx(-R, 0.0); // axis traces stay exactly real
        // Trace inward: flip time when the radial speed at the start points outward.
        double radial = (std::conj(start) * eval(P, start)).real();
        int dir = radial > 0.0 ? -1 : +1;
        FlowHit hit = flow_to_circle(P, roots, start, dir, delta, 1.15 * R, tol, true);
        SeparatrixTrace t;
        t.index = static_cast<int>(j);
        t.points = std::move(hit.points);
        t.landing = hit.root;
        if (hit.root >= 0)
            t.incoming_angle = std::arg(hit.endpoint - roots[static_cast<std::size_t>(hit.root)].location);
        traces[j] = std::move(t);
    });
    return traces;
}

} // namespace stratakit
