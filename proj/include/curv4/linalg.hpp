#pragma once

#include <array>
#include <cmath>

namespace curv4 {

using Vec3 = std::array<double, 3>;
using Vec4 = std::array<double, 4>;
using Mat3 = std::array<std::array<double, 3>, 3>;
using Mat4 = std::array<std::array<double, 4>, 4>;
using Mat6 = std::array<std::array<double, 6>, 6>;

inline double dot4(const Vec4& a, const Vec4& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

double det4(const Mat4& m);
Mat4 inverse4(const Mat4& m);

/// True iff m (symmetric) is positive definite; Cholesky-based.
bool is_spd4(const Mat4& m);

/// Eigenvalues of a symmetric 4x4, ascending, via cyclic Jacobi rotations.
Vec4 sym4_eigenvalues(const Mat4& m);

/// Eigenvalues of a symmetric 3x3, ascending, by the closed-form
/// trigonometric solution of the characteristic cubic. Robust for the
/// nearly-degenerate spectra the trace-free operators produce.
Vec3 sym3_eigenvalues_closed(const Mat3& m);

/// Iterative (Jacobi) eigenvalues of a symmetric 3x3, ascending. Kept as an
/// independent route for cross-checking the closed-form solver.
Vec3 sym3_eigenvalues_jacobi(const Mat3& m);

inline double frob3(const Mat3& m) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s += m[i][j] * m[i][j];
    return std::sqrt(s);
}

double det3(const Mat3& m);

}  // namespace curv4
