#pragma once

#include <functional>

#include "curv4/duality.hpp"
#include "curv4/geometry.hpp"

namespace curv4 {

/// Default finite-difference step factor; the per-axis step is
/// h_scale * max(1, |p_i|), with one Richardson level on top.
constexpr double kDefaultFdScale = 1e-3;

/// Per-axis FD steps and the boundary-margin check (margin 2h per axis).
std::array<double, 4> fd_steps(const Point4& p, double h_scale);
void require_fd_margin(const MetricField& m, const Point4& p,
                       const std::array<double, 4>& h);

/// Covariant derivative of the Weyl field at p: coordinate partials by
/// Richardson-extrapolated central differences of the exact pointwise Weyl
/// tensor plus exact connection terms, then converted to frame components.
/// All norms use the operator normalization (Frobenius norms of the 3x3
/// half-Weyl blocks), matching |W|^2 = sum of squared block eigenvalues.
struct WeylDerivativeReport {
    std::array<Ten4, 4> nabla;      // (nabla W)_frame[a][bcde]
    double grad_w_norm2 = 0.0;      // |nabla W|^2
    double grad_wplus_norm2 = 0.0;  // |nabla W+|^2
    double grad_wminus_norm2 = 0.0;
    double grad_abs_wplus_norm2 = 0.0;   // |nabla |W+||^2
    double grad_abs_wminus_norm2 = 0.0;  // |nabla |W||^2 of the minus half
    double fd_error = 0.0;               // Richardson error estimate
};

WeylDerivativeReport covariant_derivative_W(const MetricField& m, const Point4& p,
                                            double h_scale = kDefaultFdScale);

/// Divergence of the Weyl field, (delta W)_bcd = -sum_a (nabla W)_a,abcd in
/// frame components, with the self-dual/anti-self-dual split. The squared
/// norms satisfy |delta W|^2 = |delta W+|^2 + |delta W-|^2.
struct DivWeylReport {
    Ten3 delta{};
    double norm2 = 0.0, norm2_plus = 0.0, norm2_minus = 0.0;
    double split_residual = 0.0;  // relative defect of the split identity
    double fd_error = 0.0;
};

DivWeylReport div_weyl(const MetricField& m, const Point4& p,
                       double h_scale = kDefaultFdScale);

/// Block Frobenius norms |W+|, |W-| (and s) at a point; the scalar fields
/// differentiated by the reports above.
struct WeylNorms {
    double wplus = 0.0, wminus = 0.0, s = 0.0;
    double det_plus = 0.0, det_minus = 0.0;
};
WeylNorms weyl_norms(const MetricField& m, const Point4& p);

/// Laplace-Beltrami of a computed scalar field by Richardson-extrapolated
/// central differences (sign convention: trace of the Hessian).
double laplace_beltrami_fd(const MetricField& m,
                           const std::function<double(const Point4&)>& f,
                           const Point4& p, double h_scale = kDefaultFdScale);

/// Gradient squared |nabla f|^2 = g^ij di f dj f of a computed scalar field.
double grad_norm2_fd(const MetricField& m,
                     const std::function<double(const Point4&)>& f, const Point4& p,
                     double h_scale = kDefaultFdScale);

}  // namespace curv4
