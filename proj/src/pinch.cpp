#include "curv4/pinch.hpp"

#include <cmath>
#include <limits>

#include "curv4/biorthogonal.hpp"
#include "curv4/duality.hpp"
#include "curv4/errors.hpp"
#include "curv4/numerics.hpp"
#include "curv4/weyl_fields.hpp"

namespace curv4 {

ThresholdSet thresholds(double s, double lambda1, std::optional<double> rho) {
    if (!(s > 0.0)) throw input_error("thresholds require s > 0");
    if (!(lambda1 > 0.0)) throw input_error("thresholds require lambda1 > 0");
    ThresholdSet t;
    t.new_threshold = s * s / (24.0 * (3.0 * lambda1 + s));
    t.old_threshold = s * s / (8.0 * (3.0 * s + 5.0 * lambda1));
    t.yang_constant = (std::sqrt(1249.0) - 23.0) / 120.0;
    t.costa_constant = (2.0 - std::sqrt(2.0)) / 6.0;
    if (rho) {
        if (!(*rho > 0.0)) throw input_error("thresholds require rho > 0");
        t.corollary_threshold = s * s / (192.0 * *rho);
    }
    return t;
}

DetBoundCheck check_det_bound(const Vec3& spectrum) {
    const double trace = spectrum[0] + spectrum[1] + spectrum[2];
    if (std::abs(trace) > 1e-9)
        throw input_error("det-bound check requires a trace-free spectrum");
    DetBoundCheck out;
    out.lhs = spectrum[0] * spectrum[1] * spectrum[2];
    const double n2 =
        spectrum[0] * spectrum[0] + spectrum[1] * spectrum[1] + spectrum[2] * spectrum[2];
    out.rhs = std::sqrt(6.0) / 18.0 * std::pow(n2, 1.5);
    out.margin = out.rhs - out.lhs;
    return out;
}

double eigenvalue_bound_margin(const Vec3& spectrum) {
    const double n2 =
        spectrum[0] * spectrum[0] + spectrum[1] * spectrum[1] + spectrum[2] * spectrum[2];
    return 6.0 * spectrum[0] * spectrum[0] - n2;
}

WeitzenbockCheck check_weitzenbock(const MetricField& m, const Point4& p, double h_scale) {
    const DivWeylReport dv = div_weyl(m, p, h_scale);
    WeitzenbockCheck out;
    out.div_w_norm = std::sqrt(dv.norm2);
    if (out.div_w_norm > kHarmonicWeylTol)
        throw numeric_error("Weyl tensor is not harmonic at this point (|delta W| = " +
                            std::to_string(out.div_w_norm) + ")");
    const WeylDerivativeReport wd = covariant_derivative_W(m, p, h_scale);
    out.fd_error = wd.fd_error;
    const CoordinateCurvature cc = coordinate_curvature(m, p);
    const RiemannAtPoint rap = curvature_at(m, p);
    const WeylSpectrum ws = weyl_spectrum(curvature_blocks(rap));

    auto run_half = [&](bool plus, double& residual, double& tol) {
        auto field = [&m, plus](const Point4& q) {
            const WeylNorms wn = weyl_norms(m, q);
            const double w = plus ? wn.wplus : wn.wminus;
            return w * w;
        };
        const double lap = laplace_beltrami_fd(m, field, p, h_scale);
        const double norm2 = plus ? ws.norm2_plus : ws.norm2_minus;
        const double det = plus ? ws.det_plus : ws.det_minus;
        const double grad2 = plus ? wd.grad_wplus_norm2 : wd.grad_wminus_norm2;
        residual = lap - 2.0 * grad2 - cc.s * norm2 + 36.0 * det;
        tol = std::max(1e-3, 1e-2 * std::abs(cc.s * norm2));
    };
    run_half(true, out.residual_plus, out.tol_plus);
    run_half(false, out.residual_minus, out.tol_minus);
    return out;
}

static KatoCheck kato_impl(const MetricField& m, const std::vector<Point4>& points,
                           double guard, double h_scale, bool refined) {
    KatoCheck out;
    out.refined = refined;
    out.guard = guard;
    out.worst_margin = std::numeric_limits<double>::infinity();
    const double factor = refined ? std::sqrt(3.0 / 5.0) : 1.0;
    for (const Point4& p : points) {
        const WeylNorms wn = weyl_norms(m, p);
        const double size = refined ? wn.wplus : std::hypot(wn.wplus, wn.wminus);
        if (size <= guard) {
            ++out.skipped_points;
            continue;
        }
        const WeylDerivativeReport wd = covariant_derivative_W(m, p, h_scale);
        double margin;
        if (refined) {
            margin = factor * std::sqrt(wd.grad_wplus_norm2) -
                     std::sqrt(wd.grad_abs_wplus_norm2);
        } else {
            auto field = [&m](const Point4& q) {
                const WeylNorms w = weyl_norms(m, q);
                return std::hypot(w.wplus, w.wminus);
            };
            const double grad_abs = grad_norm2_fd(m, field, p, h_scale);
            margin = std::sqrt(wd.grad_w_norm2) - std::sqrt(grad_abs);
        }
        out.worst_margin = std::min(out.worst_margin, margin);
        ++out.used_points;
    }
    if (out.used_points == 0)
        throw numeric_error("all sample points fall inside the zero-locus guard");
    return out;
}

KatoCheck check_refined_kato(const MetricField& m, const std::vector<Point4>& points,
                             double guard, double h_scale) {
    if (points.empty()) throw input_error("Kato check needs at least one sample point");
    // The refined constant needs a harmonic self-dual part; probe one point.
    const DivWeylReport dv = div_weyl(m, points.front(), h_scale);
    if (std::sqrt(dv.norm2_plus) > kHarmonicWeylTol)
        throw numeric_error("refined Kato requires harmonic W+ (|delta W+| too large)");
    return kato_impl(m, points, guard, h_scale, true);
}

KatoCheck check_plain_kato(const MetricField& m, const std::vector<Point4>& points,
                           double guard, double h_scale) {
    if (points.empty()) throw input_error("Kato check needs at least one sample point");
    return kato_impl(m, points, guard, h_scale, false);
}

DiscriminantVerdict discriminant_analysis(const PinchInputs& pi) {
    if (!(pi.s > 0.0) || !(pi.lambda1 > 0.0))
        throw input_error("discriminant analysis requires s > 0 and lambda1 > 0");
    if (pi.wplus_norm < 0.0 || pi.wminus_norm < 0.0)
        throw input_error("Weyl norms must be non-negative");
    DiscriminantVerdict out;
    QuadraticP& q = out.quadratic;
    q.a = pi.s + 3.0 * pi.lambda1;
    const double wp = pi.wplus_norm, wm = pi.wminus_norm;
    const double sqrt6 = std::sqrt(6.0);
    q.c2 = std::pow(wm, 2.0 * q.alpha0) * (q.a - 2.0 * sqrt6 * wm);
    q.c1 = -6.0 * pi.lambda1 * std::pow(wp, q.alpha0) * std::pow(wm, q.alpha0);
    q.c0 = std::pow(wp, 2.0 * q.alpha0) * (q.a - 2.0 * sqrt6 * wp);
    q.discriminant = q.c1 * q.c1 - 4.0 * q.c2 * q.c0;

    out.norm_sum_bound_holds =
        wp + wm <= sqrt6 * (pi.s / 6.0 - 2.0 * pi.k1perp) + 1e-12;
    const double thresh = pi.s * pi.s / (24.0 * (3.0 * pi.lambda1 + pi.s));
    out.pinching_holds = pi.k1perp >= thresh - 1e-12;
    out.discriminant_nonpositive = q.discriminant <= 1e-12;
    out.sharper_bound = -96.0 * std::pow(wp * wm, 2.0 * q.alpha0 + 1.0);
    return out;
}

PinchReport pinch_report(const MetricField& m, const Lambda1Choice& lambda1,
                         std::optional<double> rho_user, int grid) {
    if (grid < 2 || grid > 64) throw input_error("pinch grid must be in [2, 64]");
    PinchReport rep;
    rep.target = m.name;
    rep.grid = grid;
    rep.lambda1 = lambda1;
    rep.analyticity_note =
        "analyticity of g is assumed by the theorems and has no numerical counterpart; "
        "not verified";

    const int total = grid * grid * grid * grid;
    rep.rows.resize(total);
    std::array<double, 4> width{}, lo{};
    for (int i = 0; i < 4; ++i) {
        lo[i] = m.domain[i][0];
        width[i] = m.domain[i][1] - m.domain[i][0];
    }
    parallel_for(total, [&](int idx) {
        PinchReport::Row& row = rep.rows[idx];
        int rem = idx;
        std::array<int, 4> ind{};
        for (int i = 3; i >= 0; --i) {
            ind[i] = rem % grid;
            rem /= grid;
        }
        for (int i = 0; i < 4; ++i) row.p[i] = lo[i] + width[i] * (ind[i] + 0.5) / grid;
        try {
            const RiemannAtPoint rap = curvature_at(m, row.p);
            const WeylSpectrum ws = weyl_spectrum(curvature_blocks(rap));
            row.s = rap.s;
            row.k1perp = k1perp_closed(ws, rap.s);
            const Vec4 ric = sym4_eigenvalues(rap.Ric);
            row.ric_min = ric[0];
            row.ric_max = ric[3];
            row.div_w = std::sqrt(div_weyl(m, row.p).norm2);
            row.status = "ok";
        } catch (const error& e) {
            row.status = e.what();
        }
    });

    bool first = true;
    for (const auto& row : rep.rows) {
        if (row.status != "ok") {
            ++rep.failed_points;
            continue;
        }
        if (first) {
            rep.inf_s = rep.sup_s = row.s;
            rep.inf_k1perp = row.k1perp;
            rep.rho = row.ric_min;
            rep.max_div_w = row.div_w;
            first = false;
        } else {
            rep.inf_s = std::min(rep.inf_s, row.s);
            rep.sup_s = std::max(rep.sup_s, row.s);
            rep.inf_k1perp = std::min(rep.inf_k1perp, row.k1perp);
            rep.rho = std::min(rep.rho, row.ric_min);
            rep.max_div_w = std::max(rep.max_div_w, row.div_w);
        }
    }
    if (first) throw numeric_error("no usable points in the pinch grid");
    rep.harmonic_weyl = rep.max_div_w <= kHarmonicWeylTol;

    double rho = rep.rho;
    rep.rho_source = "sampled";
    if (rho_user) {
        rho = *rho_user;
        rep.rho_source = "user";
        rep.rho = rho;
    }

    std::vector<std::string> violations;
    if (!(rep.inf_s > 0.0)) violations.push_back("scalar curvature is not positive");
    if (!rep.harmonic_weyl) violations.push_back("Weyl tensor is not harmonic");

    if (rep.inf_s > 0.0 && lambda1.value > 0.0) {
        rep.threshold_set = thresholds(rep.sup_s, lambda1.value,
                                       rho > 0.0 ? std::optional<double>(rho) : std::nullopt);
        rep.margin_new_sup = rep.inf_k1perp - rep.threshold_set.new_threshold;
        bool first_pt = true;
        for (const auto& row : rep.rows) {
            if (row.status != "ok" || !(row.s > 0.0)) continue;
            const double th = row.s * row.s / (24.0 * (3.0 * lambda1.value + row.s));
            const double margin = row.k1perp - th;
            if (first_pt || margin < rep.margin_new_pointwise) rep.margin_new_pointwise = margin;
            first_pt = false;
        }
        if (rep.margin_new_sup < 0.0) violations.push_back("pinching margin is negative");
        if (rep.threshold_set.corollary_threshold)
            rep.margin_corollary = rep.inf_k1perp - *rep.threshold_set.corollary_threshold;
    } else {
        // Thresholds are undefined without positive s; constants still shown.
        rep.threshold_set.yang_constant = (std::sqrt(1249.0) - 23.0) / 120.0;
        rep.threshold_set.costa_constant = (2.0 - std::sqrt(2.0)) / 6.0;
    }

    if (violations.empty()) {
        rep.theorem_a_verdict = "hypotheses satisfied";
    } else {
        std::string msg = "hypotheses violated: ";
        for (std::size_t i = 0; i < violations.size(); ++i) {
            if (i) msg += "; ";
            msg += violations[i];
        }
        rep.theorem_a_verdict = msg;
    }

    if (rho > 0.0 && rep.margin_corollary && *rep.margin_corollary >= 0.0 &&
        rep.harmonic_weyl) {
        rep.corollary_verdict = "hypotheses satisfied";
    } else {
        rep.corollary_verdict = "hypotheses violated: ";
        if (!(rho > 0.0))
            rep.corollary_verdict += "Ricci lower bound is not positive";
        else if (!rep.harmonic_weyl)
            rep.corollary_verdict += "Weyl tensor is not harmonic";
        else
            rep.corollary_verdict += "corollary margin is negative";
    }
    return rep;
}

}  // namespace curv4
