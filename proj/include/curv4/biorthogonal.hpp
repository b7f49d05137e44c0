#pragma once

#include "curv4/duality.hpp"
#include "curv4/geometry.hpp"

namespace curv4 {

/// An oriented 2-plane at a point: an orthonormal pair (frame components)
/// together with its simple unit bivector and the self-dual split.
struct TwoPlane {
    Vec4 X{}, Y{};
    Bivector alpha;
    Bivector alpha_plus, alpha_minus;

    /// Builds the plane and validates orthonormality to 1e-10.
    static TwoPlane from_pair(const Vec4& x, const Vec4& y);
};

/// Orthonormal pair spanning the orthogonal complement, oriented so that
/// its bivector is the star of the plane's bivector.
TwoPlane orthogonal_plane(const TwoPlane& p);

/// Sectional curvature K(P) = R(X,Y,X,Y) by direct tensor contraction.
double sectional(const RiemannAtPoint& rap, const TwoPlane& p);

/// Sectional curvature through the dual-variable form:
/// s/12 + <a+,W+ a+> + <a-,W- a-> + 2 <a+, B a->.
double sectional_dual(const CurvatureBlocks& cb, const TwoPlane& p);

/// Biorthogonal curvature (K(P) + K(P_perp))/2; `direct` averages the two
/// tensor contractions, `dual` drops the B term from the dual form. Both
/// agree to 1e-9 on valid inputs.
struct BiorthogonalValue {
    double direct = 0.0;
    double dual = 0.0;
};
BiorthogonalValue biorthogonal_curvature(const RiemannAtPoint& rap,
                                         const CurvatureBlocks& cb, const TwoPlane& p);

/// Pointwise minimum of biorthogonal curvature from the half-Weyl spectra:
/// (w1+ + w1-)/2 + s/12.
double k1perp_closed(const WeylSpectrum& ws, double s);

/// Brute-force minimization results (the closed form is the contract; the
/// brute force is the independent route).
struct BiorthogonalResult {
    double k1perp_closed = 0.0;
    double k1perp_bruteforce = 0.0;
    double sectional_min = 0.0;
    TwoPlane argmin_plane;        // informational
    int grid = 0;
    int refine_iterations = 0;
    double estimated_error = 0.0;
};

/// Minimizes K_perp over the product of the two radius-1/sqrt2 spheres
/// (coarse grid + downhill simplex) and the sectional curvature over
/// Householder-parametrized orthonormal pairs. grid >= 16.
BiorthogonalResult k1perp_bruteforce(const RiemannAtPoint& rap, int grid = 16);

/// Same search driven by a synthetic block operator (used by property tests
/// on random algebraic curvature operators).
BiorthogonalResult k1perp_bruteforce_blocks(const CurvatureBlocks& cb, const Ten4& r_frame,
                                            int grid = 16);

}  // namespace curv4
