#pragma once

#include <complex>
#include <string>
#include <vector>

#include "stratakit/config.hpp"

namespace stratakit {

using cplx = std::complex<double>;

/// Monic centered real polynomial
///   P(z) = z^{k+1} + eps[0] z^{k-1} + ... + eps[k-2] z + eps[k-1],
/// i.e. eps runs from the z^{k-1} coefficient down to the constant term.
/// P defines the vector field P(z) d/dz of codimension k.
struct RealPolyField {
    int k = 1;
    std::vector<double> eps;

    RealPolyField() : eps{0.0} {}
    RealPolyField(int k_, std::vector<double> eps_);

    int degree() const { return k + 1; }
    double eps_at(int j) const { return eps[static_cast<std::size_t>(k - 1 - j)]; } // coefficient of z^j
    double coeff_scale() const; // max(1, |eps_j|)

    /// Ascending coefficient vector a[0..k+1] with a[k+1] = 1, a[k] = 0.
    std::vector<double> ascending_coeffs() const;

    bool operator==(const RealPolyField&) const = default;
};

cplx eval(const RealPolyField& P, cplx z);
cplx eval_derivative(const RealPolyField& P, cplx z);

enum class PointKind { radial_node, strong_focus, center, parabolic };

std::string to_string(PointKind kind);

struct SingularPoint {
    cplx location;
    int multiplicity = 1;
    cplx eigenvalue;      // P'(location); 0 for multiple roots
    cplx residue;         // Res(1/P, location)
    PointKind kind = PointKind::radial_node;
    bool is_real = false;
};

/// Eigenvalue typing for a simple singular point: center iff the eigenvalue is
/// purely imaginary, radial node iff purely real, strong focus otherwise.
/// A (relative) zero eigenvalue reports parabolic; callers must then use the
/// multiplicity path.
PointKind classify_eigenvalue(cplx lambda, double rel_tol = Tolerances{}.generic_margin);

/// All distinct roots of P with multiplicities summing to k+1, sorted by
/// (Im, Re).  Roots are snapped to the real axis and paired into exact
/// conjugates; eigenvalues, residues and kinds are filled in.
std::vector<SingularPoint> find_roots(const RealPolyField& P, const Tolerances& tol = {});

/// Sum of the residues of 1/P over all singular points; identically zero for
/// every polynomial of degree >= 2.
cplx residue_sum(const RealPolyField& P, const Tolerances& tol = {});

struct GenericityReport {
    bool generic = false;
    std::string diagnostic;  // names the violated condition when not generic
    double margin = 0.0;     // smallest relative margin observed
};

/// True iff all roots are simple and no nonreal root has a purely imaginary
/// eigenvalue.  Violations held by less than the margin raise
/// NotGenericError instead of returning a clean false.
GenericityReport is_generic_real(const RealPolyField& P, const Tolerances& tol = {});

/// Affine data of a normalization: the input variable is z = shift + scale*w
/// where w is the normalized variable.  time_reversed is set when the leading
/// sign cannot be made +1 (k even, negative leading coefficient); the
/// returned polynomial is then the normal form of the time-reversed field.
struct AffineChange {
    double shift = 0.0;
    double scale = 1.0;
    bool time_reversed = false;
};

struct Normalized {
    RealPolyField poly;
    AffineChange change;
};

/// Normalize raw descending coefficients (raw[0] = leading, length k+2) to
/// the monic centered form: a real translation kills the z^k term and a real
/// zoom z -> scale*w absorbs the leading coefficient.  No time rescaling is
/// applied, so transversal times of the normalized field equal the input's.
Normalized normalize(const std::vector<double>& raw_coeffs, const Tolerances& tol = {});

/// Zoom action z -> r z, eps_j -> eps_j r^{k+1-j}, with r chosen so the
/// largest weighted coefficient magnitude is one.  Same phase portrait up to
/// rescaling; labels and invariant structure are unchanged.
RealPolyField zoom_to_unit(const RealPolyField& P);

/// Real k-parameter family P_nu unfolding a nonreal parabolic point: the base
/// factors as R * conj(R) * Q around the root, and the parameters perturb the
/// Weierstrass factor R (plus the cofactor Q when it is nonconstant).
/// evaluate(0) reproduces the base and every evaluate(nu) is real and centered.
class UnfoldingFamily {
public:
    UnfoldingFamily(RealPolyField base, cplx root, int multiplicity,
                    std::vector<double> cofactor_coeffs);

    RealPolyField evaluate(const std::vector<double>& nu) const;

    const RealPolyField& base() const { return base_; }
    cplx parabolic_root() const { return root_; }
    int multiplicity_s() const { return s_; }
    int param_dim() const { return base_.k; }

private:
    RealPolyField base_;
    cplx root_;
    int s_;
    std::vector<double> cofactor_; // ascending coefficients of Q, degree k+1-2s
};

UnfoldingFamily unfold_parabolic(const RealPolyField& P_star, cplx z0,
                                 const Tolerances& tol = {});

/// Finite-difference Jacobian of nu -> eps at nu = 0, column j = d eps / d nu_j.
std::vector<std::vector<double>> unfolding_jacobian(const UnfoldingFamily& family,
                                                    double step = 1e-6);

namespace polyutil {

/// Horner evaluation of ascending coefficients.
cplx horner(const std::vector<double>& ascending, cplx z);
cplx horner(const std::vector<cplx>& ascending, cplx z);

/// Taylor coefficients of the ascending-coefficient polynomial about z0.
std::vector<cplx> taylor_shift(const std::vector<double>& ascending, cplx z0);

/// Residue of 1/P at a root of multiplicity m (series inversion of the
/// cofactor when m > 1).
cplx residue_at(const std::vector<double>& ascending, cplx root, int multiplicity);

/// Product of two ascending-coefficient polynomials.
std::vector<cplx> multiply(const std::vector<cplx>& a, const std::vector<cplx>& b);

} // namespace polyutil

} // namespace stratakit
