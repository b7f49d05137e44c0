#pragma once

#include <array>
#include <optional>
#include <string>

#include "curv4/expr.hpp"
#include "curv4/linalg.hpp"

namespace curv4 {

/// Chart coordinates of a point.
using Point4 = std::array<double, 4>;

/// Rank-4 tensor components (frame or coordinate), R[i][j][k][l].
using Ten4 = std::array<std::array<std::array<std::array<double, 4>, 4>, 4>, 4>;

/// Rank-3 tensor components, T[b][c][d].
using Ten3 = std::array<std::array<std::array<double, 4>, 4>, 4>;

/// Christoffel symbols, gamma[k][i][j] symmetric in (i,j).
using Christoffel = std::array<Mat4, 4>;

/// A metric on a single chart: 10 expression-valued components g_ij (i <= j),
/// a closed domain box, and parameter values. `declared` carries optional
/// externally-known metadata that load-time verification re-checks.
struct MetricField {
    std::array<ExprPtr, 10> components;            // index sym4_index(i,j)
    std::array<std::array<double, 2>, 4> domain;   // [lo, hi] per axis
    ParamMap params;
    struct Declared {
        std::optional<bool> einstein;
        std::optional<double> lambda1;
        std::optional<double> scalar;
    } declared;
    std::string name;

    bool contains(const Point4& p) const;

    Mat4 value(const Point4& p) const;

    /// Metric scaled by a constant factor c > 0 (components multiplied by c).
    MetricField scaled(double c) const;
};

/// First and second metric derivatives at a point, from order-2 jets.
struct MetricJets {
    Mat4 g;
    Mat4 ginv;
    std::array<Mat4, 4> dg;    // dg[k][i][j] = d_k g_ij
    std::array<Mat4, 10> d2g;  // d2g[sym4_index(k,l)][i][j]
};

MetricJets metric_jets(const MetricField& m, const Point4& p);

/// Orthonormal frame at a point: e[a] are coordinate components of the
/// frame vectors, g(e_a, e_b) = delta_ab, positively oriented.
struct Frame {
    std::array<Vec4, 4> e;
    double orientation = 1.0;       // sign of det(coordinate <- frame) after correction
    bool orientation_corrected = false;
};

/// Gram-Schmidt frame from the coordinate basis taken in `seed_order`;
/// orientation fixed by swapping the last two vectors when needed.
Frame orthonormal_frame(const Mat4& g, const std::array<int, 4>& seed_order = {0, 1, 2, 3});

/// Full curvature data at a point, all tensor components in the orthonormal
/// frame. Sign convention: R[a][b][a][b] is the sectional curvature of the
/// plane (e_a, e_b), so the unit round sphere has R_abcd = d_ac d_bd - d_ad d_bc.
struct RiemannAtPoint {
    Point4 p;
    Frame frame;
    double s = 0.0;  // scalar curvature
    Ten4 R{};        // Riemann, frame components
    Mat4 Ric{};      // Ricci, frame components
    Mat4 B{};        // traceless Ricci  Ric - (s/4) Id, frame components
    Ten4 W{};        // Weyl, frame components

    double bianchi_residual = 0.0;     // max first-Bianchi cyclic sum
    double weyl_trace_residual = 0.0;  // max |contraction of W|
    double b_trace_residual = 0.0;     // |tr B|

    double einstein_residual() const;  // Frobenius norm of B
};

/// Christoffel symbols of the Levi-Civita connection at p.
/// Throws numeric_error when g(p) is not positive definite.
Christoffel christoffel(const MetricField& m, const Point4& p);
Christoffel christoffel_from_jets(const MetricJets& mj);

RiemannAtPoint curvature_at(const MetricField& m, const Point4& p,
                            const std::array<int, 4>& frame_seed = {0, 1, 2, 3});

/// Coordinate-component curvature pieces used by the finite-difference
/// Weyl-field machinery (no frame involved).
struct CoordinateCurvature {
    Mat4 g, ginv;
    double s;
    Ten4 riemann;  // Riem_ijkl, same sign convention as RiemannAtPoint
    Ten4 weyl;     // W_ijkl coordinate components
};

CoordinateCurvature coordinate_curvature(const MetricField& m, const Point4& p);

/// Laplace-Beltrami of a closed-form scalar at p, computed from exact jets.
/// Sign convention: the trace of the Hessian (so eigenvalues are negative).
double laplace_beltrami(const MetricField& m, const ExprPtr& f, const Point4& p);

}  // namespace curv4
