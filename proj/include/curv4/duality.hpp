#pragma once

#include "curv4/geometry.hpp"
#include "curv4/linalg.hpp"

namespace curv4 {

/// A 2-form at a point, components in the ordered orthonormal-frame basis
///   e1^e2, e1^e3, e1^e4, e2^e3, e2^e4, e3^e4,
/// each basis element of unit norm. A bivector is simple (decomposable)
/// iff its Plucker form  c0*c5 - c1*c4 + c2*c3  vanishes.
struct Bivector {
    std::array<double, 6> c{};

    double dot(const Bivector& o) const {
        double s = 0.0;
        for (int i = 0; i < 6; ++i) s += c[i] * o.c[i];
        return s;
    }
    double norm2() const { return dot(*this); }
    double plucker() const { return c[0] * c[5] - c[1] * c[4] + c[2] * c[3]; }

    Bivector operator+(const Bivector& o) const {
        Bivector r;
        for (int i = 0; i < 6; ++i) r.c[i] = c[i] + o.c[i];
        return r;
    }
    Bivector operator-(const Bivector& o) const {
        Bivector r;
        for (int i = 0; i < 6; ++i) r.c[i] = c[i] - o.c[i];
        return r;
    }
    Bivector operator*(double t) const {
        Bivector r;
        for (int i = 0; i < 6; ++i) r.c[i] = c[i] * t;
        return r;
    }

    /// Wedge of two orthonormal frame vectors, components (X^Y)_ab = XaYb - XbYa.
    static Bivector wedge(const Vec4& x, const Vec4& y);
};

/// Index of the unordered frame pair (a,b), a < b, in the bivector basis.
int bivector_index(int a, int b);

/// Hodge star in a positively oriented orthonormal frame; an involution
/// whose +-1 eigenspaces are spanned by the bases below.
Bivector hodge_star(const Bivector& a);

/// Self-dual / anti-self-dual split a = a+ + a-. A simple unit bivector
/// splits with |a+|^2 = |a-|^2 = 1/2.
struct BivectorSplit {
    Bivector plus, minus;
};
BivectorSplit split_bivector(const Bivector& a);

/// Orthonormal bases of the +-1 eigenspaces of the star, as 6x3 column sets:
///   plus:  (e1^e2+e3^e4)/sqrt2, (e1^e3+e4^e2)/sqrt2, (e3^e2+e4^e1)/sqrt2
///   minus: same with minus signs.
struct DualBases {
    std::array<Bivector, 3> plus;
    std::array<Bivector, 3> minus;
};
const DualBases& dual_bases();

/// The curvature operator as a 6x6 matrix on the bivector basis:
/// M[A][B] = R_(ab)(cd). Sectional curvature is <alpha, M alpha> for simple
/// unit alpha.
Mat6 curvature_operator_matrix(const Ten4& r_frame);

/// Expand a 6x6 bivector operator back to antisymmetric-pair rank-4 components.
Ten4 tensor_from_operator_matrix(const Mat6& mat);

/// Block decomposition of the curvature operator on Lambda+ (+) Lambda-.
/// Aplus = W+ + (s/12) Id, Aminus = W- + (s/12) Id (3x3, symmetric),
/// Bblock: Lambda- -> Lambda+ (the traceless-Ricci block; its Frobenius
/// norm is half the Frobenius norm of B_tensor under this basis convention).
struct CurvatureBlocks {
    Mat3 Aplus{};
    Mat3 Aminus{};
    Mat3 Bblock{};
    double s = 0.0;
    double symmetry_residual = 0.0;  // max asymmetry of the reassembled 6x6

    Mat3 Wplus() const;
    Mat3 Wminus() const;
    double bblock_norm() const { return frob3(Bblock); }
};

CurvatureBlocks curvature_blocks(const RiemannAtPoint& rap);
CurvatureBlocks curvature_blocks_from_matrix(const Mat6& m6, double s);

/// Reassemble the 6x6 operator from blocks (inverse of the decomposition).
Mat6 reassemble_operator(const CurvatureBlocks& cb);

/// Sorted eigenvalues of the half-Weyl operators and derived quantities.
/// Norm convention: |W+-|^2 is the sum of squared eigenvalues of the 3x3
/// block, det the 3x3 determinant; this is the normalization under which
/// s|W|^2 - 36 det W vanishes on the symmetric self-dual model space. The
/// (0,4)-tensor norm is 4x the squared block norm and reported separately.
struct WeylSpectrum {
    Vec3 wplus{};   // ascending
    Vec3 wminus{};  // ascending
    double norm2_plus = 0.0, norm2_minus = 0.0;
    double det_plus = 0.0, det_minus = 0.0;
    double trace_residual_plus = 0.0, trace_residual_minus = 0.0;
};

WeylSpectrum weyl_spectrum(const CurvatureBlocks& cb);

}  // namespace curv4
