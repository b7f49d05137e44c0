#include "curv4/duality.hpp"

#include <cmath>

namespace curv4 {

namespace {
constexpr int kPairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
}

int bivector_index(int a, int b) {
    static constexpr int table[4][4] = {
        {-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
    return table[a][b];
}

Bivector Bivector::wedge(const Vec4& x, const Vec4& y) {
    Bivector r;
    for (int k = 0; k < 6; ++k) {
        const int a = kPairs[k][0], b = kPairs[k][1];
        r.c[k] = x[a] * y[b] - x[b] * y[a];
    }
    return r;
}

Bivector hodge_star(const Bivector& a) {
    // *(e1^e2)=e3^e4, *(e1^e3)=e4^e2, *(e1^e4)=e2^e3 and the involution.
    Bivector r;
    r.c[0] = a.c[5];
    r.c[1] = -a.c[4];
    r.c[2] = a.c[3];
    r.c[3] = a.c[2];
    r.c[4] = -a.c[1];
    r.c[5] = a.c[0];
    return r;
}

BivectorSplit split_bivector(const Bivector& a) {
    const Bivector sa = hodge_star(a);
    BivectorSplit out;
    for (int i = 0; i < 6; ++i) {
        out.plus.c[i] = 0.5 * (a.c[i] + sa.c[i]);
        out.minus.c[i] = 0.5 * (a.c[i] - sa.c[i]);
    }
    return out;
}

const DualBases& dual_bases() {
    static const DualBases bases = [] {
        const double r = 1.0 / std::sqrt(2.0);
        DualBases b;
        // e1^e2 +- e3^e4
        b.plus[0].c[0] = r;  b.plus[0].c[5] = r;
        b.minus[0].c[0] = r; b.minus[0].c[5] = -r;
        // e1^e3 +- e4^e2  (e4^e2 = -e2^e4)
        b.plus[1].c[1] = r;  b.plus[1].c[4] = -r;
        b.minus[1].c[1] = r; b.minus[1].c[4] = r;
        // e3^e2 +- e4^e1  (= -e2^e3, -e1^e4)
        b.plus[2].c[3] = -r;  b.plus[2].c[2] = -r;
        b.minus[2].c[3] = -r; b.minus[2].c[2] = r;
        return b;
    }();
    return bases;
}

Mat6 curvature_operator_matrix(const Ten4& r_frame) {
    Mat6 m{};
    for (int A = 0; A < 6; ++A)
        for (int B = 0; B < 6; ++B)
            m[A][B] = r_frame[kPairs[A][0]][kPairs[A][1]][kPairs[B][0]][kPairs[B][1]];
    return m;
}

Ten4 tensor_from_operator_matrix(const Mat6& mat) {
    Ten4 t{};
    auto comp = [&mat](int i, int j, int k, int l) -> double {
        if (i == j || k == l) return 0.0;
        double sign = 1.0;
        if (i > j) { std::swap(i, j); sign = -sign; }
        if (k > l) { std::swap(k, l); sign = -sign; }
        return sign * mat[bivector_index(i, j)][bivector_index(k, l)];
    };
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) t[i][j][k][l] = comp(i, j, k, l);
    return t;
}

CurvatureBlocks curvature_blocks_from_matrix(const Mat6& m6, double s) {
    const DualBases& bases = dual_bases();
    auto sandwich = [&m6](const Bivector& u, const Bivector& v) {
        double acc = 0.0;
        for (int i = 0; i < 6; ++i) {
            if (u.c[i] == 0.0) continue;
            double row = 0.0;
            for (int j = 0; j < 6; ++j) row += m6[i][j] * v.c[j];
            acc += u.c[i] * row;
        }
        return acc;
    };
    CurvatureBlocks cb;
    cb.s = s;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            cb.Aplus[i][j] = sandwich(bases.plus[i], bases.plus[j]);
            cb.Aminus[i][j] = sandwich(bases.minus[i], bases.minus[j]);
            cb.Bblock[i][j] = sandwich(bases.plus[i], bases.minus[j]);
        }
    double asym = 0.0;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            asym = std::max(asym, std::abs(m6[i][j] - m6[j][i]));
    cb.symmetry_residual = asym;
    return cb;
}

CurvatureBlocks curvature_blocks(const RiemannAtPoint& rap) {
    return curvature_blocks_from_matrix(curvature_operator_matrix(rap.R), rap.s);
}

Mat6 reassemble_operator(const CurvatureBlocks& cb) {
    const DualBases& bases = dual_bases();
    Mat6 m{};
    auto add = [&m](const Bivector& u, const Bivector& v, double coeff) {
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) m[i][j] += coeff * u.c[i] * v.c[j];
    };
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            add(bases.plus[i], bases.plus[j], cb.Aplus[i][j]);
            add(bases.minus[i], bases.minus[j], cb.Aminus[i][j]);
            add(bases.plus[i], bases.minus[j], cb.Bblock[i][j]);
            add(bases.minus[j], bases.plus[i], cb.Bblock[i][j]);
        }
    return m;
}

Mat3 CurvatureBlocks::Wplus() const {
    Mat3 w = Aplus;
    for (int i = 0; i < 3; ++i) w[i][i] -= s / 12.0;
    return w;
}

Mat3 CurvatureBlocks::Wminus() const {
    Mat3 w = Aminus;
    for (int i = 0; i < 3; ++i) w[i][i] -= s / 12.0;
    return w;
}

WeylSpectrum weyl_spectrum(const CurvatureBlocks& cb) {
    WeylSpectrum ws;
    const Mat3 wp = cb.Wplus();
    const Mat3 wm = cb.Wminus();
    ws.wplus = sym3_eigenvalues_closed(wp);
    ws.wminus = sym3_eigenvalues_closed(wm);
    for (int i = 0; i < 3; ++i) {
        ws.norm2_plus += ws.wplus[i] * ws.wplus[i];
        ws.norm2_minus += ws.wminus[i] * ws.wminus[i];
    }
    ws.det_plus = ws.wplus[0] * ws.wplus[1] * ws.wplus[2];
    ws.det_minus = ws.wminus[0] * ws.wminus[1] * ws.wminus[2];
    ws.trace_residual_plus = std::abs(ws.wplus[0] + ws.wplus[1] + ws.wplus[2]);
    ws.trace_residual_minus = std::abs(ws.wminus[0] + ws.wminus[1] + ws.wminus[2]);
    return ws;
}

}  // namespace curv4
