#include "curv4/geometry.hpp"

#include <cmath>

#include "curv4/errors.hpp"

namespace curv4 {

bool MetricField::contains(const Point4& p) const {
    for (int i = 0; i < 4; ++i) {
        if (!std::isfinite(p[i])) return false;
        if (p[i] < domain[i][0] || p[i] > domain[i][1]) return false;
    }
    return true;
}

Mat4 MetricField::value(const Point4& p) const {
    Mat4 g{};
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) {
            const ExprPtr& e = components[sym4_index(i, j)];
            const double v = e ? eval_value(e, p, params) : 0.0;
            g[i][j] = v;
            g[j][i] = v;
        }
    return g;
}

MetricField MetricField::scaled(double c) const {
    MetricField out = *this;
    for (auto& comp : out.components)
        if (comp) comp = expr_scale(comp, c);
    if (out.declared.scalar) out.declared.scalar = *out.declared.scalar / c;
    if (out.declared.lambda1) out.declared.lambda1 = *out.declared.lambda1 / c;
    return out;
}

MetricJets metric_jets(const MetricField& m, const Point4& p) {
    MetricJets mj{};
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) {
            const ExprPtr& e = m.components[sym4_index(i, j)];
            Jet2 jet = e ? eval_jet2(e, p, m.params) : Jet2(0.0);
            mj.g[i][j] = mj.g[j][i] = jet.v;
            for (int k = 0; k < 4; ++k) {
                mj.dg[k][i][j] = mj.dg[k][j][i] = jet.g[k];
                for (int l = k; l < 4; ++l) {
                    const int kl = sym4_index(k, l);
                    mj.d2g[kl][i][j] = mj.d2g[kl][j][i] = jet.hess(k, l);
                }
            }
        }
    if (!is_spd4(mj.g))
        throw numeric_error("metric is not positive definite at the requested point");
    mj.ginv = inverse4(mj.g);
    return mj;
}

Frame orthonormal_frame(const Mat4& g, const std::array<int, 4>& seed_order) {
    if (!is_spd4(g))
        throw numeric_error("metric is not positive definite (frame construction)");
    Frame fr;
    auto inner = [&g](const Vec4& u, const Vec4& w) {
        double s = 0.0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) s += u[i] * g[i][j] * w[j];
        return s;
    };
    for (int a = 0; a < 4; ++a) {
        Vec4 v{};
        v[seed_order[a]] = 1.0;
        for (int b = 0; b < a; ++b) {
            const double c = inner(v, fr.e[b]);
            for (int i = 0; i < 4; ++i) v[i] -= c * fr.e[b][i];
        }
        const double n = std::sqrt(inner(v, v));
        if (!(n > 0.0) || !std::isfinite(n))
            throw numeric_error("degenerate metric in frame construction");
        for (int i = 0; i < 4; ++i) fr.e[a][i] = v[i] / n;
    }
    Mat4 c{};
    for (int i = 0; i < 4; ++i)
        for (int a = 0; a < 4; ++a) c[i][a] = fr.e[a][i];
    if (det4(c) < 0.0) {
        std::swap(fr.e[2], fr.e[3]);
        fr.orientation_corrected = true;
    }
    fr.orientation = 1.0;
    return fr;
}

Christoffel christoffel_from_jets(const MetricJets& mj) {
    Christoffel gamma{};
    for (int k = 0; k < 4; ++k)
        for (int i = 0; i < 4; ++i)
            for (int j = i; j < 4; ++j) {
                double s = 0.0;
                for (int l = 0; l < 4; ++l)
                    s += mj.ginv[k][l] *
                         (mj.dg[i][j][l] + mj.dg[j][i][l] - mj.dg[l][i][j]);
                gamma[k][i][j] = gamma[k][j][i] = 0.5 * s;
            }
    return gamma;
}

Christoffel christoffel(const MetricField& m, const Point4& p) {
    if (!m.contains(p)) throw input_error("point outside the chart domain");
    return christoffel_from_jets(metric_jets(m, p));
}

namespace {

// Riemann in coordinates, sign fixed so constant-curvature metrics give
// Riem_ijkl = K (g_ik g_jl - g_il g_jk).
Ten4 riemann_coordinate(const MetricJets& mj, const Christoffel& gamma) {
    // dginv[m] = -ginv dg[m] ginv
    std::array<Mat4, 4> dginv{};
    for (int mI = 0; mI < 4; ++mI)
        for (int k = 0; k < 4; ++k)
            for (int l = 0; l < 4; ++l) {
                double s = 0.0;
                for (int a = 0; a < 4; ++a)
                    for (int b = 0; b < 4; ++b)
                        s += mj.ginv[k][a] * mj.dg[mI][a][b] * mj.ginv[b][l];
                dginv[mI][k][l] = -s;
            }

    // dgamma[m][k][i][j] = d_m Gamma^k_ij
    std::array<Christoffel, 4> dgamma{};
    for (int mI = 0; mI < 4; ++mI)
        for (int k = 0; k < 4; ++k)
            for (int i = 0; i < 4; ++i)
                for (int j = i; j < 4; ++j) {
                    double s = 0.0;
                    for (int l = 0; l < 4; ++l) {
                        s += dginv[mI][k][l] *
                             (mj.dg[i][j][l] + mj.dg[j][i][l] - mj.dg[l][i][j]);
                        s += mj.ginv[k][l] *
                             (mj.d2g[sym4_index(mI, i)][j][l] +
                              mj.d2g[sym4_index(mI, j)][i][l] -
                              mj.d2g[sym4_index(mI, l)][i][j]);
                    }
                    dgamma[mI][k][i][j] = dgamma[mI][k][j][i] = 0.5 * s;
                }

    // R(d_i, d_j) d_k = Rup[l][k][i][j] d_l
    Ten4 rup{};
    for (int l = 0; l < 4; ++l)
        for (int k = 0; k < 4; ++k)
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    double s = dgamma[i][l][j][k] - dgamma[j][l][i][k];
                    for (int mI = 0; mI < 4; ++mI)
                        s += gamma[l][i][mI] * gamma[mI][j][k] -
                             gamma[l][j][mI] * gamma[mI][i][k];
                    rup[l][k][i][j] = s;
                }

    // Riem_ijkl = g(R(d_i,d_j) d_l, d_k)
    Ten4 riem{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    double s = 0.0;
                    for (int mI = 0; mI < 4; ++mI) s += mj.g[k][mI] * rup[mI][l][i][j];
                    riem[i][j][k][l] = s;
                }
    return riem;
}

Ten4 frame_components(const Ten4& t, const Frame& fr) {
    // Staged contraction, one index at a time.
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

// Weyl part of a Riemann-type tensor with metric gm (coordinate or identity).
Ten4 weyl_part(const Ten4& riem, const Mat4& gm, const Mat4& ginv, double& s_out) {
    Mat4 ric{};
    for (int j = 0; j < 4; ++j)
        for (int l = 0; l < 4; ++l) {
            double s = 0.0;
            for (int i = 0; i < 4; ++i)
                for (int k = 0; k < 4; ++k) s += ginv[i][k] * riem[i][j][k][l];
            ric[j][l] = s;
        }
    double sc = 0.0;
    for (int j = 0; j < 4; ++j)
        for (int l = 0; l < 4; ++l) sc += ginv[j][l] * ric[j][l];
    s_out = sc;

    Mat4 b{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) b[i][j] = ric[i][j] - (sc / 4.0) * gm[i][j];

    Ten4 w{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    double v = riem[i][j][k][l];
                    v -= 0.5 * (b[i][k] * gm[j][l] + b[j][l] * gm[i][k] -
                                b[i][l] * gm[j][k] - b[j][k] * gm[i][l]);
                    v -= (sc / 12.0) * (gm[i][k] * gm[j][l] - gm[i][l] * gm[j][k]);
                    w[i][j][k][l] = v;
                }
    return w;
}

}  // namespace

RiemannAtPoint curvature_at(const MetricField& m, const Point4& p,
                            const std::array<int, 4>& frame_seed) {
    if (!m.contains(p)) throw input_error("point outside the chart domain");
    const MetricJets mj = metric_jets(m, p);
    const Christoffel gamma = christoffel_from_jets(mj);
    const Ten4 riem = riemann_coordinate(mj, gamma);

    RiemannAtPoint out;
    out.p = p;
    out.frame = orthonormal_frame(mj.g, frame_seed);
    out.R = frame_components(riem, out.frame);

    // In the orthonormal frame the metric is the identity.
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            double s = 0.0;
            for (int c = 0; c < 4; ++c) s += out.R[c][a][c][b];
            out.Ric[a][b] = s;
        }
    out.s = out.Ric[0][0] + out.Ric[1][1] + out.Ric[2][2] + out.Ric[3][3];
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            out.B[a][b] = out.Ric[a][b] - (a == b ? out.s / 4.0 : 0.0);

    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) {
                    double v = out.R[a][b][c][d];
                    const double dac = (a == c), dbd = (b == d);
                    const double dad = (a == d), dbc = (b == c);
                    v -= 0.5 * (out.B[a][c] * dbd + out.B[b][d] * dac -
                                out.B[a][d] * dbc - out.B[b][c] * dad);
                    v -= (out.s / 12.0) * (dac * dbd - dad * dbc);
                    out.W[a][b][c][d] = v;
                }

    // Residual diagnostics.
    double bianchi = 0.0, wtrace = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    const double cyc = out.R[i][j][k][l] + out.R[i][k][l][j] +
                                       out.R[i][l][j][k];
                    bianchi = std::max(bianchi, std::abs(cyc));
                }
            double tr = 0.0;
            for (int a = 0; a < 4; ++a) tr += out.W[a][i][a][j];
            wtrace = std::max(wtrace, std::abs(tr));
        }
    out.bianchi_residual = bianchi;
    out.weyl_trace_residual = wtrace;
    out.b_trace_residual =
        std::abs(out.B[0][0] + out.B[1][1] + out.B[2][2] + out.B[3][3]);
    return out;
}

double RiemannAtPoint::einstein_residual() const {
    double s2 = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) s2 += B[a][b] * B[a][b];
    return std::sqrt(s2);
}

CoordinateCurvature coordinate_curvature(const MetricField& m, const Point4& p) {
    const MetricJets mj = metric_jets(m, p);
    const Christoffel gamma = christoffel_from_jets(mj);
    CoordinateCurvature cc;
    cc.g = mj.g;
    cc.ginv = mj.ginv;
    cc.riemann = riemann_coordinate(mj, gamma);
    cc.weyl = weyl_part(cc.riemann, mj.g, mj.ginv, cc.s);
    return cc;
}

double laplace_beltrami(const MetricField& m, const ExprPtr& f, const Point4& p) {
    if (!m.contains(p)) throw input_error("point outside the chart domain");
    const MetricJets mj = metric_jets(m, p);
    const Christoffel gamma = christoffel_from_jets(mj);
    const Jet2 jf = eval_jet2(f, p, m.params);
    double lap = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double hij = jf.hess(i, j);
            for (int k = 0; k < 4; ++k) hij -= gamma[k][i][j] * jf.g[k];
            lap += mj.ginv[i][j] * hij;
        }
    return lap;
}

}  // namespace curv4
