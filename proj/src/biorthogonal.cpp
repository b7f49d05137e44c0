#include "curv4/biorthogonal.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "curv4/errors.hpp"
#include "curv4/numerics.hpp"

namespace curv4 {

TwoPlane TwoPlane::from_pair(const Vec4& x, const Vec4& y) {
    const double nx = dot4(x, x), ny = dot4(y, y), xy = dot4(x, y);
    if (std::abs(nx - 1.0) > 1e-10 || std::abs(ny - 1.0) > 1e-10 || std::abs(xy) > 1e-10)
        throw input_error("non-orthonormal pair for a 2-plane");
    TwoPlane p;
    p.X = x;
    p.Y = y;
    p.alpha = Bivector::wedge(x, y);
    const BivectorSplit sp = split_bivector(p.alpha);
    p.alpha_plus = sp.plus;
    p.alpha_minus = sp.minus;
    return p;
}

// Extracts an orthonormal spanning pair from a simple unit bivector,
// oriented so that wedge(X, Y) reproduces it.
static TwoPlane plane_from_simple_bivector(const Bivector& alpha) {
    Mat4 a{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (i == j) continue;
            const int idx = bivector_index(i, j);
            a[i][j] = (i < j) ? alpha.c[idx] : -alpha.c[idx];
        }
    int best = 0;
    double best_norm = -1.0;
    for (int k = 0; k < 4; ++k) {
        double n = 0.0;
        for (int i = 0; i < 4; ++i) n += a[i][k] * a[i][k];
        if (n > best_norm) { best_norm = n; best = k; }
    }
    Vec4 u{};
    for (int i = 0; i < 4; ++i) u[i] = a[i][best];
    const double nu = std::sqrt(dot4(u, u));
    for (int i = 0; i < 4; ++i) u[i] /= nu;
    Vec4 w{};
    for (int i = 0; i < 4; ++i) {
        double s = 0.0;
        for (int j = 0; j < 4; ++j) s += a[i][j] * u[j];
        w[i] = -s;
    }
    const double nw = std::sqrt(dot4(w, w));
    for (int i = 0; i < 4; ++i) w[i] /= nw;
    return TwoPlane::from_pair(u, w);
}

TwoPlane orthogonal_plane(const TwoPlane& p) {
    // Complete (X, Y) to an orthonormal 4-frame, then orient the complement
    // pair so its bivector equals star(alpha).
    std::array<Vec4, 2> comp;
    int found = 0;
    for (int k = 0; k < 4 && found < 2; ++k) {
        Vec4 v{};
        v[k] = 1.0;
        double c = dot4(v, p.X);
        for (int i = 0; i < 4; ++i) v[i] -= c * p.X[i];
        c = dot4(v, p.Y);
        for (int i = 0; i < 4; ++i) v[i] -= c * p.Y[i];
        for (int f = 0; f < found; ++f) {
            c = dot4(v, comp[f]);
            for (int i = 0; i < 4; ++i) v[i] -= c * comp[f][i];
        }
        const double n = std::sqrt(dot4(v, v));
        if (n > 1e-6) {
            for (int i = 0; i < 4; ++i) v[i] /= n;
            comp[found++] = v;
        }
    }
    if (found < 2) throw numeric_error("failed to complete plane to a 4-frame");
    const Bivector target = hodge_star(p.alpha);
    if (Bivector::wedge(comp[0], comp[1]).dot(target) < 0.0) std::swap(comp[0], comp[1]);
    return TwoPlane::from_pair(comp[0], comp[1]);
}

double sectional(const RiemannAtPoint& rap, const TwoPlane& p) {
    double k = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            if (p.X[a] == 0.0 && p.Y[b] == 0.0) continue;
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d)
                    k += p.X[a] * p.Y[b] * p.X[c] * p.Y[d] * rap.R[a][b][c][d];
        }
    return k;
}

static double sectional_direct_tensor(const Ten4& r, const Vec4& x, const Vec4& y) {
    // K = sum x_a y_b x_c y_d R_abcd, staged.
    Mat4 m{};
    for (int b = 0; b < 4; ++b)
        for (int d = 0; d < 4; ++d) {
            double s = 0.0;
            for (int a = 0; a < 4; ++a)
                for (int c = 0; c < 4; ++c) s += x[a] * x[c] * r[a][b][c][d];
            m[b][d] = s;
        }
    double k = 0.0;
    for (int b = 0; b < 4; ++b)
        for (int d = 0; d < 4; ++d) k += y[b] * m[b][d] * y[d];
    return k;
}

namespace {

Vec3 plus_coords(const Bivector& b) {
    const DualBases& bases = dual_bases();
    return {b.dot(bases.plus[0]), b.dot(bases.plus[1]), b.dot(bases.plus[2])};
}
Vec3 minus_coords(const Bivector& b) {
    const DualBases& bases = dual_bases();
    return {b.dot(bases.minus[0]), b.dot(bases.minus[1]), b.dot(bases.minus[2])};
}

double quad_form(const Mat3& m, const Vec3& v) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s += v[i] * m[i][j] * v[j];
    return s;
}

double bilinear(const Mat3& m, const Vec3& u, const Vec3& v) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s += u[i] * m[i][j] * v[j];
    return s;
}

}  // namespace

double sectional_dual(const CurvatureBlocks& cb, const TwoPlane& p) {
    const Vec3 ap = plus_coords(p.alpha_plus);
    const Vec3 am = minus_coords(p.alpha_minus);
    return cb.s / 12.0 + quad_form(cb.Wplus(), ap) + quad_form(cb.Wminus(), am) +
           2.0 * bilinear(cb.Bblock, ap, am);
}

BiorthogonalValue biorthogonal_curvature(const RiemannAtPoint& rap,
                                         const CurvatureBlocks& cb, const TwoPlane& p) {
    BiorthogonalValue out;
    const TwoPlane perp = orthogonal_plane(p);
    out.direct = 0.5 * (sectional(rap, p) + sectional(rap, perp));
    const Vec3 ap = plus_coords(p.alpha_plus);
    const Vec3 am = minus_coords(p.alpha_minus);
    out.dual = cb.s / 12.0 + quad_form(cb.Wplus(), ap) + quad_form(cb.Wminus(), am);
    return out;
}

double k1perp_closed(const WeylSpectrum& ws, double s) {
    return 0.5 * (ws.wplus[0] + ws.wminus[0]) + s / 12.0;
}

namespace {

Vec3 sphere_dir(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
            std::cos(theta)};
}

// min over the radius-1/sqrt(2) sphere of <a, M a>: coarse grid in (theta,
// phi) then simplex refinement. Returns the minimum and the direction.
std::pair<double, Vec3> min_half_form(const Mat3& m, int grid, int max_iter, double tol,
                                      int& iterations) {
    auto value = [&m](double theta, double phi) {
        return 0.5 * quad_form(m, sphere_dir(theta, phi));
    };
    double best = std::numeric_limits<double>::infinity();
    double bt = 0.0, bp = 0.0;
    for (int i = 0; i < grid; ++i) {
        const double theta = M_PI * (i + 0.5) / grid;
        for (int j = 0; j < grid; ++j) {
            const double phi = 2.0 * M_PI * j / grid;
            const double v = value(theta, phi);
            if (v < best) { best = v; bt = theta; bp = phi; }
        }
    }
    const SimplexResult r = nelder_mead(
        [&value](const std::vector<double>& x) { return value(x[0], x[1]); },
        {bt, bp}, M_PI / grid, max_iter, tol);
    iterations += r.iterations;
    if (r.value < best) return {r.value, sphere_dir(r.x[0], r.x[1])};
    return {best, sphere_dir(bt, bp)};
}

// Unit vector on S^3 from three angles.
Vec4 s3_dir(double a, double b, double c) {
    return {std::cos(a), std::sin(a) * std::cos(b), std::sin(a) * std::sin(b) * std::cos(c),
            std::sin(a) * std::sin(b) * std::sin(c)};
}

// Householder image of e1..e3 under the reflection sending e0 to x: an
// orthonormal basis of the hyperplane orthogonal to x.
std::array<Vec4, 3> householder_basis(const Vec4& x) {
    std::array<Vec4, 3> basis{};
    if (1.0 - x[0] < 1e-12) {
        for (int k = 0; k < 3; ++k) basis[k][k + 1] = 1.0;
        return basis;
    }
    Vec4 v{1.0 - x[0], -x[1], -x[2], -x[3]};
    const double vv = dot4(v, v);
    for (int k = 0; k < 3; ++k) {
        Vec4 e{};
        e[k + 1] = 1.0;
        const double c = 2.0 * dot4(v, e) / vv;
        for (int i = 0; i < 4; ++i) basis[k][i] = e[i] - c * v[i];
    }
    return basis;
}

std::pair<Vec4, Vec4> pair_from_angles(const std::vector<double>& ang) {
    const Vec4 x = s3_dir(ang[0], ang[1], ang[2]);
    const auto basis = householder_basis(x);
    const Vec3 d = sphere_dir(ang[3], ang[4]);
    Vec4 y{};
    for (int i = 0; i < 4; ++i)
        y[i] = d[0] * basis[0][i] + d[1] * basis[1][i] + d[2] * basis[2][i];
    return {x, y};
}

BiorthogonalResult bruteforce_impl(const CurvatureBlocks& cb, const Ten4& r_frame,
                                   int grid) {
    if (grid < 16) throw input_error("brute-force grid must be at least 16");
    BiorthogonalResult out;
    out.grid = grid;
    const WeylSpectrum ws = weyl_spectrum(cb);
    out.k1perp_closed = k1perp_closed(ws, cb.s);

    int iters = 0;
    const auto [qp, dir_p] = min_half_form(cb.Wplus(), grid, 200, 1e-10, iters);
    const auto [qm, dir_m] = min_half_form(cb.Wminus(), grid, 200, 1e-10, iters);
    out.k1perp_bruteforce = cb.s / 12.0 + qp + qm;
    out.estimated_error = std::abs(qp - 0.5 * ws.wplus[0]) + std::abs(qm - 0.5 * ws.wminus[0]);

    // Argmin plane: alpha = a+ + a- rebuilt from the two minimizing
    // directions, then decomposed into an orthonormal pair.
    const DualBases& bases = dual_bases();
    Bivector alpha;
    const double r = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 6; ++k)
            alpha.c[k] += r * (dir_p[i] * bases.plus[i].c[k] + dir_m[i] * bases.minus[i].c[k]);
    out.argmin_plane = plane_from_simple_bivector(alpha);

    // Sectional minimum over orthonormal pairs (5 angles, includes B).
    auto kf = [&r_frame](const std::vector<double>& ang) {
        const auto [x, y] = pair_from_angles(ang);
        return sectional_direct_tensor(r_frame, x, y);
    };
    const int m = std::max(6, grid / 2);
    double best = std::numeric_limits<double>::infinity();
    std::vector<double> bang(5, 0.0);
    std::vector<double> ang(5);
    for (int i0 = 0; i0 < m; ++i0) {
        ang[0] = M_PI * (i0 + 0.5) / m;
        for (int i1 = 0; i1 < m; ++i1) {
            ang[1] = M_PI * (i1 + 0.5) / m;
            for (int i2 = 0; i2 < m; ++i2) {
                ang[2] = 2.0 * M_PI * i2 / m;
                for (int i3 = 0; i3 < m; ++i3) {
                    ang[3] = M_PI * (i3 + 0.5) / m;
                    for (int i4 = 0; i4 < m; ++i4) {
                        ang[4] = 2.0 * M_PI * i4 / m;
                        const double v = kf(ang);
                        if (v < best) { best = v; bang = ang; }
                    }
                }
            }
        }
    }
    const SimplexResult sr = nelder_mead(kf, bang, M_PI / m, 200, 1e-10);
    iters += sr.iterations;
    out.sectional_min = std::min(best, sr.value);
    out.refine_iterations = iters;
    return out;
}

}  // namespace

BiorthogonalResult k1perp_bruteforce(const RiemannAtPoint& rap, int grid) {
    return bruteforce_impl(curvature_blocks(rap), rap.R, grid);
}

BiorthogonalResult k1perp_bruteforce_blocks(const CurvatureBlocks& cb, const Ten4& r_frame,
                                            int grid) {
    return bruteforce_impl(cb, r_frame, grid);
}

}  // namespace curv4
