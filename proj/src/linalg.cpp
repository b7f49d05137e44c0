#include "curv4/linalg.hpp"

#include <algorithm>

#include "curv4/errors.hpp"

namespace curv4 {

double det3(const Mat3& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

double det4(const Mat4& m) {
    double det = 0.0;
    for (int c = 0; c < 4; ++c) {
        Mat3 minor{};
        for (int i = 1; i < 4; ++i) {
            int jj = 0;
            for (int j = 0; j < 4; ++j) {
                if (j == c) continue;
                minor[i - 1][jj++] = m[i][j];
            }
        }
        det += ((c % 2) ? -1.0 : 1.0) * m[0][c] * det3(minor);
    }
    return det;
}

Mat4 inverse4(const Mat4& m) {
    // Gauss-Jordan with partial pivoting; 4x4 only, throws on singularity.
    Mat4 a = m;
    Mat4 inv{};
    for (int i = 0; i < 4; ++i) inv[i][i] = 1.0;
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (a[piv][col] == 0.0) throw numeric_error("singular 4x4 matrix");
        std::swap(a[col], a[piv]);
        std::swap(inv[col], inv[piv]);
        const double d = 1.0 / a[col][col];
        for (int j = 0; j < 4; ++j) {
            a[col][j] *= d;
            inv[col][j] *= d;
        }
        for (int r = 0; r < 4; ++r) {
            if (r == col) continue;
            const double f = a[r][col];
            if (f == 0.0) continue;
            for (int j = 0; j < 4; ++j) {
                a[r][j] -= f * a[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

bool is_spd4(const Mat4& m) {
    Mat4 l{};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = m[i][j];
            for (int k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
            if (i == j) {
                if (s <= 0.0 || !std::isfinite(s)) return false;
                l[i][i] = std::sqrt(s);
            } else {
                l[i][j] = s / l[j][j];
            }
        }
    }
    return true;
}

namespace {

// Cyclic Jacobi for symmetric NxN; small fixed sizes only.
template <int N>
std::array<double, N> jacobi_eigenvalues(std::array<std::array<double, N>, N> a) {
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < N; ++i)
            for (int j = i + 1; j < N; ++j) off += a[i][j] * a[i][j];
        if (off < 1e-30) break;
        for (int p = 0; p < N; ++p) {
            for (int q = p + 1; q < N; ++q) {
                if (a[p][q] == 0.0) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < N; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (int k = 0; k < N; ++k) {
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    std::array<double, N> ev;
    for (int i = 0; i < N; ++i) ev[i] = a[i][i];
    std::sort(ev.begin(), ev.end());
    return ev;
}

}  // namespace

Vec4 sym4_eigenvalues(const Mat4& m) { return jacobi_eigenvalues<4>(m); }

Vec3 sym3_eigenvalues_jacobi(const Mat3& m) { return jacobi_eigenvalues<3>(m); }

Vec3 sym3_eigenvalues_closed(const Mat3& m) {
    // Shift by the mean eigenvalue and scale before solving the cubic; the
    // roots of the trace-free normalized matrix come from the triple-angle
    // identity. The acos route loses ~sqrt(eps) near double roots, so the
    // best-separated root is Newton-polished on the characteristic
    // polynomial and the clustered pair recovered from trace/determinant.
    const double q = (m[0][0] + m[1][1] + m[2][2]) / 3.0;
    Mat3 k = m;
    for (int i = 0; i < 3; ++i) k[i][i] -= q;
    double p2 = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) p2 += k[i][j] * k[i][j];
    const double p = std::sqrt(p2 / 6.0);
    if (p < 1e-300) return {q, q, q};
    Mat3 b;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) b[i][j] = k[i][j] / p;
    double r = det3(b) / 2.0;
    r = std::clamp(r, -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;

    // Roots of the normalized trace-free cubic t^3 - 3 t - 2r.
    double t3 = 2.0 * std::cos(phi);
    double t1 = 2.0 * std::cos(phi + 2.0 * M_PI / 3.0);
    double t2 = -t3 - t1;

    // Polish the root farthest from the other two (|p'| is largest there),
    // then rebuild the near pair from t1+t2+t3 = 0 and t1 t2 t3 = 2r.
    double iso = (std::abs(t3) >= std::abs(t1)) ? t3 : t1;
    for (int it = 0; it < 2; ++it) {
        const double f = iso * iso * iso - 3.0 * iso - 2.0 * r;
        const double fp = 3.0 * iso * iso - 3.0;
        if (std::abs(fp) < 1e-8) break;
        iso -= f / fp;
    }
    if (std::abs(iso) > 1e-3) {
        const double sum = -iso;            // remaining pair sum
        const double prod = 2.0 * r / iso;  // remaining pair product
        const double disc = std::max(0.0, sum * sum - 4.0 * prod);
        const double sq = std::sqrt(disc);
        t1 = 0.5 * (sum - sq);
        t2 = 0.5 * (sum + sq);
        t3 = iso;
    }
    Vec3 ev{q + p * t1, q + p * t2, q + p * t3};
    std::sort(ev.begin(), ev.end());
    return ev;
}

}  // namespace curv4
