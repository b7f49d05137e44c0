#include "curv4/weyl_fields.hpp"

#include <cmath>

#include "curv4/errors.hpp"

namespace curv4 {

std::array<double, 4> fd_steps(const Point4& p, double h_scale) {
    std::array<double, 4> h{};
    for (int i = 0; i < 4; ++i) h[i] = h_scale * std::max(1.0, std::abs(p[i]));
    return h;
}

void require_fd_margin(const MetricField& m, const Point4& p,
                       const std::array<double, 4>& h) {
    if (!m.contains(p)) throw input_error("point outside the chart domain");
    for (int i = 0; i < 4; ++i) {
        if (p[i] - 2.0 * h[i] < m.domain[i][0] || p[i] + 2.0 * h[i] > m.domain[i][1])
            throw numeric_error("point too close to the domain boundary for finite differences");
    }
}

namespace {

Point4 shifted(const Point4& p, int axis, double delta) {
    Point4 q = p;
    q[axis] += delta;
    return q;
}

struct Ten4Pair {
    Ten4 value{};
    double err = 0.0;
};

// Richardson-extrapolated first coordinate partial of the Weyl field.
Ten4Pair weyl_partial(const MetricField& m, const Point4& p, int axis, double h) {
    const Ten4 wp1 = coordinate_curvature(m, shifted(p, axis, h)).weyl;
    const Ten4 wm1 = coordinate_curvature(m, shifted(p, axis, -h)).weyl;
    const Ten4 wp2 = coordinate_curvature(m, shifted(p, axis, 2.0 * h)).weyl;
    const Ten4 wm2 = coordinate_curvature(m, shifted(p, axis, -2.0 * h)).weyl;
    Ten4Pair out;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    const double d1 = (wp1[i][j][k][l] - wm1[i][j][k][l]) / (2.0 * h);
                    const double d2 = (wp2[i][j][k][l] - wm2[i][j][k][l]) / (4.0 * h);
                    out.value[i][j][k][l] = (4.0 * d1 - d2) / 3.0;
                    out.err = std::max(out.err, std::abs(d1 - d2) / 3.0);
                }
    return out;
}

double frob6(const Mat6& m) {
    double s = 0.0;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) s += m[i][j] * m[i][j];
    return s;
}

// Project a 6x6 bivector operator onto its (+,+) and (-,-) blocks, expressed
// back in the plain bivector basis.
void dual_blocks_of(const Mat6& n, Mat3& pp, Mat3& mm) {
    const DualBases& bases = dual_bases();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double sp = 0.0, sm = 0.0;
            for (int a = 0; a < 6; ++a) {
                if (bases.plus[i].c[a] != 0.0) {
                    double row = 0.0;
                    for (int b = 0; b < 6; ++b) row += n[a][b] * bases.plus[j].c[b];
                    sp += bases.plus[i].c[a] * row;
                }
                if (bases.minus[i].c[a] != 0.0) {
                    double row = 0.0;
                    for (int b = 0; b < 6; ++b) row += n[a][b] * bases.minus[j].c[b];
                    sm += bases.minus[i].c[a] * row;
                }
            }
            pp[i][j] = sp;
            mm[i][j] = sm;
        }
}

Mat6 project_block(const Mat3& block, bool plus) {
    const DualBases& bases = dual_bases();
    const auto& basis = plus ? bases.plus : bases.minus;
    Mat6 m{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int a = 0; a < 6; ++a)
                for (int b = 0; b < 6; ++b)
                    m[a][b] += block[i][j] * basis[i].c[a] * basis[j].c[b];
    return m;
}

Ten4 frame_rank4(const Ten4& t, const Frame& fr) {
    Ten4 t1{}, t2{}, t3{}, t4{};
    for (int a = 0; a < 4; ++a)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    double s = 0.0;
                    for (int i = 0; i < 4; ++i) s += fr.e[a][i] * t[i][j][k][l];
                    t1[a][j][k][l] = s;
                }
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    double s = 0.0;
                    for (int j = 0; j < 4; ++j) s += fr.e[b][j] * t1[a][j][k][l];
                    t2[a][b][k][l] = s;
                }
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int l = 0; l < 4; ++l) {
                    double s = 0.0;
                    for (int k = 0; k < 4; ++k) s += fr.e[c][k] * t2[a][b][k][l];
                    t3[a][b][c][l] = s;
                }
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) {
                    double s = 0.0;
                    for (int l = 0; l < 4; ++l) s += fr.e[d][l] * t3[a][b][c][l];
                    t4[a][b][c][d] = s;
                }
    return t4;
}

}  // namespace

WeylNorms weyl_norms(const MetricField& m, const Point4& p) {
    const CoordinateCurvature cc = coordinate_curvature(m, p);
    const Frame fr = orthonormal_frame(cc.g);
    const Ten4 wf = frame_rank4(cc.weyl, fr);
    const CurvatureBlocks cb = curvature_blocks_from_matrix(curvature_operator_matrix(wf), 0.0);
    WeylNorms out;
    out.s = cc.s;
    out.wplus = frob3(cb.Aplus);   // s passed as 0, so Aplus is the W+ block
    out.wminus = frob3(cb.Aminus);
    out.det_plus = det3(cb.Aplus);
    out.det_minus = det3(cb.Aminus);
    return out;
}

WeylDerivativeReport covariant_derivative_W(const MetricField& m, const Point4& p,
                                            double h_scale) {
    const auto h = fd_steps(p, h_scale);
    require_fd_margin(m, p, h);

    const MetricJets mj = metric_jets(m, p);
    const Christoffel gamma = christoffel_from_jets(mj);
    const CoordinateCurvature cc = coordinate_curvature(m, p);
    const Frame fr = orthonormal_frame(mj.g);

    WeylDerivativeReport out;
    std::array<Ten4, 4> nabla_coord{};
    for (int axis = 0; axis < 4; ++axis) {
        const Ten4Pair dw = weyl_partial(m, p, axis, h[axis]);
        out.fd_error = std::max(out.fd_error, dw.err);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                for (int k = 0; k < 4; ++k)
                    for (int l = 0; l < 4; ++l) {
                        double v = dw.value[i][j][k][l];
                        for (int a = 0; a < 4; ++a) {
                            v -= gamma[a][axis][i] * cc.weyl[a][j][k][l];
                            v -= gamma[a][axis][j] * cc.weyl[i][a][k][l];
                            v -= gamma[a][axis][k] * cc.weyl[i][j][a][l];
                            v -= gamma[a][axis][l] * cc.weyl[i][j][k][a];
                        }
                        nabla_coord[axis][i][j][k][l] = v;
                    }
    }

    // Frame components: contract the derivative index with the frame too.
    std::array<Ten4, 4> nabla_frame_partial{};
    for (int axis = 0; axis < 4; ++axis)
        nabla_frame_partial[axis] = frame_rank4(nabla_coord[axis], fr);
    for (int a = 0; a < 4; ++a)
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                for (int k = 0; k < 4; ++k)
                    for (int l = 0; l < 4; ++l) {
                        double s = 0.0;
                        for (int axis = 0; axis < 4; ++axis)
                            s += fr.e[a][axis] * nabla_frame_partial[axis][i][j][k][l];
                        out.nabla[a][i][j][k][l] = s;
                    }

    for (int a = 0; a < 4; ++a) {
        const Mat6 n6 = curvature_operator_matrix(out.nabla[a]);
        Mat3 pp, mm;
        dual_blocks_of(n6, pp, mm);
        out.grad_w_norm2 += frob6(n6);
        out.grad_wplus_norm2 += frob3(pp) * frob3(pp);
        out.grad_wminus_norm2 += frob3(mm) * frob3(mm);
    }

    // Gradients of the scalar norm fields, with the same Richardson level.
    const auto field = [&](bool plus) {
        return [&m, plus](const Point4& q) {
            const WeylNorms wn = weyl_norms(m, q);
            return plus ? wn.wplus : wn.wminus;
        };
    };
    out.grad_abs_wplus_norm2 = grad_norm2_fd(m, field(true), p, h_scale);
    out.grad_abs_wminus_norm2 = grad_norm2_fd(m, field(false), p, h_scale);
    return out;
}

DivWeylReport div_weyl(const MetricField& m, const Point4& p, double h_scale) {
    const WeylDerivativeReport wd = covariant_derivative_W(m, p, h_scale);
    DivWeylReport out;
    out.fd_error = wd.fd_error;

    // Split each directional derivative into its dual blocks, then contract.
    std::array<Ten4, 4> nabla_plus{}, nabla_minus{};
    for (int a = 0; a < 4; ++a) {
        const Mat6 n6 = curvature_operator_matrix(wd.nabla[a]);
        Mat3 pp, mm;
        dual_blocks_of(n6, pp, mm);
        nabla_plus[a] = tensor_from_operator_matrix(project_block(pp, true));
        nabla_minus[a] = tensor_from_operator_matrix(project_block(mm, false));
    }
    Ten3 delta_plus{}, delta_minus{};
    for (int b = 0; b < 4; ++b)
        for (int c = 0; c < 4; ++c)
            for (int d = 0; d < 4; ++d) {
                double s = 0.0, sp = 0.0, sm = 0.0;
                for (int a = 0; a < 4; ++a) {
                    s += wd.nabla[a][a][b][c][d];
                    sp += nabla_plus[a][a][b][c][d];
                    sm += nabla_minus[a][a][b][c][d];
                }
                out.delta[b][c][d] = -s;
                delta_plus[b][c][d] = -sp;
                delta_minus[b][c][d] = -sm;
                out.norm2 += s * s;
                out.norm2_plus += sp * sp;
                out.norm2_minus += sm * sm;
            }
    // Relative defect, floored so harmonic metrics (delta W ~ FD noise)
    // don't divide noise by noise.
    const double floor = 1e-14 * (1.0 + wd.grad_w_norm2);
    out.split_residual =
        std::abs(out.norm2 - out.norm2_plus - out.norm2_minus) / std::max(out.norm2, floor);
    return out;
}

double laplace_beltrami_fd(const MetricField& m,
                           const std::function<double(const Point4&)>& f,
                           const Point4& p, double h_scale) {
    const auto h = fd_steps(p, h_scale);
    require_fd_margin(m, p, h);
    const MetricJets mj = metric_jets(m, p);
    const Christoffel gamma = christoffel_from_jets(mj);
    const double f0 = f(p);

    std::array<double, 4> grad{};
    Mat4 hess{};
    for (int i = 0; i < 4; ++i) {
        const double fp1 = f(shifted(p, i, h[i])), fm1 = f(shifted(p, i, -h[i]));
        const double fp2 = f(shifted(p, i, 2.0 * h[i])), fm2 = f(shifted(p, i, -2.0 * h[i]));
        const double d1 = (fp1 - fm1) / (2.0 * h[i]);
        const double d2 = (fp2 - fm2) / (4.0 * h[i]);
        grad[i] = (4.0 * d1 - d2) / 3.0;
        const double s1 = (fp1 - 2.0 * f0 + fm1) / (h[i] * h[i]);
        const double s2 = (fp2 - 2.0 * f0 + fm2) / (4.0 * h[i] * h[i]);
        hess[i][i] = (4.0 * s1 - s2) / 3.0;
    }
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            auto cross = [&](double hi, double hj) {
                Point4 q = p;
                q[i] += hi;
                q[j] += hj;
                return f(q);
            };
            auto stencil = [&](double hi, double hj) {
                return (cross(hi, hj) - cross(hi, -hj) - cross(-hi, hj) + cross(-hi, -hj)) /
                       (4.0 * hi * hj);
            };
            const double c1 = stencil(h[i], h[j]);
            const double c2 = stencil(2.0 * h[i], 2.0 * h[j]);
            hess[i][j] = hess[j][i] = (4.0 * c1 - c2) / 3.0;
        }

    double lap = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double hij = hess[i][j];
            for (int k = 0; k < 4; ++k) hij -= gamma[k][i][j] * grad[k];
            lap += mj.ginv[i][j] * hij;
        }
    return lap;
}

double grad_norm2_fd(const MetricField& m,
                     const std::function<double(const Point4&)>& f, const Point4& p,
                     double h_scale) {
    const auto h = fd_steps(p, h_scale);
    require_fd_margin(m, p, h);
    const MetricJets mj = metric_jets(m, p);
    std::array<double, 4> grad{};
    for (int i = 0; i < 4; ++i) {
        const double d1 = (f(shifted(p, i, h[i])) - f(shifted(p, i, -h[i]))) / (2.0 * h[i]);
        const double d2 =
            (f(shifted(p, i, 2.0 * h[i])) - f(shifted(p, i, -2.0 * h[i]))) / (4.0 * h[i]);
        grad[i] = (4.0 * d1 - d2) / 3.0;
    }
    double s = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) s += mj.ginv[i][j] * grad[i] * grad[j];
    return s;
}

}  // namespace curv4
