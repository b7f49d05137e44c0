#include "curv4/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "curv4/duality.hpp"
#include "curv4/errors.hpp"
#include "curv4/numerics.hpp"
#include "curv4/pinch.hpp"
#include "curv4/weyl_fields.hpp"

namespace curv4 {

namespace {

std::string count_line(const std::string& what, long long n, long long bad) {
    std::ostringstream ss;
    ss << what << ": " << n << " samples, " << bad << " violations";
    return ss.str();
}

}  // namespace

VerifySummary verify_algebraic(long long spectra_samples, long long discriminant_samples,
                               std::uint64_t seed) {
    VerifySummary out;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::uniform_real_distribution<double> uni01(0.0, 1.0);

    long long det_bad = 0, eig_bad = 0;
    for (long long n = 0; n < spectra_samples; ++n) {
        Vec3 w{uni(rng), uni(rng), 0.0};
        w[2] = -w[0] - w[1];
        std::sort(w.begin(), w.end());
        const DetBoundCheck db = check_det_bound(w);
        if (db.margin < -1e-12) ++det_bad;
        if (eigenvalue_bound_margin(w) < -1e-12) ++eig_bad;
    }
    out.checked += 2 * spectra_samples;
    out.violations += det_bad + eig_bad;
    out.lines.push_back(count_line("det bound  det W <= (sqrt6/18)|W|^3", spectra_samples, det_bad));
    out.lines.push_back(count_line("eigenvalue bound  |W|^2 <= 6 w1^2", spectra_samples, eig_bad));

    // Equality family (-a,-a,2a): both margins vanish; the mirrored family
    // (-2a,a,a) saturates neither.
    long long fam_bad = 0;
    const long long fam_samples = 1000;
    for (long long n = 0; n < fam_samples; ++n) {
        const double a = uni01(rng) * 2.0;
        const Vec3 eq{-a, -a, 2.0 * a};
        const Vec3 mir{-2.0 * a, a, a};
        if (std::abs(check_det_bound(eq).margin) > 1e-10 * std::max(1.0, a * a * a)) ++fam_bad;
        if (std::abs(eigenvalue_bound_margin(eq)) > 1e-10 * std::max(1.0, a * a)) ++fam_bad;
        if (a > 1e-3) {
            if (check_det_bound(mir).margin < 1e-6 * a * a * a) ++fam_bad;
            if (eigenvalue_bound_margin(mir) < 1e-6 * a * a) ++fam_bad;
        }
    }
    out.checked += 4 * fam_samples;
    out.violations += fam_bad;
    out.lines.push_back(count_line("equality family (-a,-a,2a)", fam_samples, fam_bad));

    long long disc_bad = 0, sharper_bad = 0;
    std::uniform_real_distribution<double> pos(0.1, 10.0);
    for (long long n = 0; n < discriminant_samples; ++n) {
        PinchInputs pi;
        pi.s = pos(rng);
        pi.lambda1 = pos(rng);
        const double thresh = pi.s * pi.s / (24.0 * (3.0 * pi.lambda1 + pi.s));
        pi.k1perp = thresh + uni01(rng) * (pi.s / 12.0 - thresh);
        const double budget = std::sqrt(6.0) * (pi.s / 6.0 - 2.0 * pi.k1perp);
        pi.wplus_norm = uni01(rng) * budget;
        pi.wminus_norm = uni01(rng) * (budget - pi.wplus_norm);
        const DiscriminantVerdict v = discriminant_analysis(pi);
        if (!v.norm_sum_bound_holds || !v.pinching_holds) {
            ++disc_bad;  // sampler bug, count loudly
            continue;
        }
        if (v.quadratic.discriminant > 1e-12) ++disc_bad;
        if (v.quadratic.discriminant > v.sharper_bound + 1e-9) ++sharper_bad;
    }
    out.checked += 2 * discriminant_samples;
    out.violations += disc_bad + sharper_bad;
    out.lines.push_back(
        count_line("discriminant <= 0 under the hypotheses", discriminant_samples, disc_bad));
    out.lines.push_back(count_line("discriminant <= -96(|W+||W-|)^(5/3)", discriminant_samples,
                                   sharper_bad));
    return out;
}

namespace {

// Metric-compatibility residual with an independent finite-difference route
// for dg (the Christoffel symbols come from exact jets).
double nabla_g_residual(const MetricField& m, const Point4& p, double h_scale) {
    const Christoffel gamma = christoffel(m, p);
    const auto h = fd_steps(p, h_scale);
    double worst = 0.0;
    for (int k = 0; k < 4; ++k) {
        Point4 pp = p, pm = p, pp2 = p, pm2 = p;
        pp[k] += h[k];
        pm[k] -= h[k];
        pp2[k] += 2.0 * h[k];
        pm2[k] -= 2.0 * h[k];
        const Mat4 g1p = m.value(pp), g1m = m.value(pm);
        const Mat4 g2p = m.value(pp2), g2m = m.value(pm2);
        const Mat4 g0 = m.value(p);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                const double d1 = (g1p[i][j] - g1m[i][j]) / (2.0 * h[k]);
                const double d2 = (g2p[i][j] - g2m[i][j]) / (4.0 * h[k]);
                double res = (4.0 * d1 - d2) / 3.0;
                for (int l = 0; l < 4; ++l)
                    res -= gamma[l][k][i] * g0[l][j] + gamma[l][k][j] * g0[i][l];
                worst = std::max(worst, std::abs(res));
            }
    }
    return worst;
}

std::vector<Point4> interior_samples(const MetricField& m, int n, double h_scale) {
    static constexpr int bases[4] = {2, 3, 5, 7};
    std::vector<Point4> pts;
    int idx = 1;
    while (static_cast<int>(pts.size()) < n && idx < 50 * n) {
        Point4 p;
        for (int i = 0; i < 4; ++i) {
            const double t = halton(idx, bases[i]);
            p[i] = m.domain[i][0] + (m.domain[i][1] - m.domain[i][0]) * (0.1 + 0.8 * t);
        }
        ++idx;
        try {
            require_fd_margin(m, p, fd_steps(p, h_scale));
        } catch (const error&) {
            continue;
        }
        pts.push_back(p);
    }
    if (pts.empty()) throw numeric_error("no interior sample points available");
    return pts;
}

}  // namespace

VerifySummary verify_field(const CatalogEntry& entry, int sample_points, double h_scale) {
    VerifySummary out;
    const MetricField& m = entry.metric;
    const std::vector<Point4> pts = interior_samples(m, sample_points, h_scale);

    long long bianchi_bad = 0, nabla_g_bad = 0, split_bad = 0;
    double max_divw = 0.0;
    for (const Point4& p : pts) {
        const RiemannAtPoint rap = curvature_at(m, p);
        if (rap.bianchi_residual > 1e-9) ++bianchi_bad;
        if (nabla_g_residual(m, p, h_scale) > 1e-9) ++nabla_g_bad;
        const DivWeylReport dv = div_weyl(m, p, h_scale);
        if (dv.split_residual > 1e-8) ++split_bad;
        max_divw = std::max(max_divw, std::sqrt(dv.norm2));
    }
    const long long n = static_cast<long long>(pts.size());
    out.checked += 3 * n;
    out.violations += bianchi_bad + nabla_g_bad + split_bad;
    out.lines.push_back(count_line("first Bianchi identity", n, bianchi_bad));
    out.lines.push_back(count_line("metric compatibility (FD)", n, nabla_g_bad));
    out.lines.push_back(count_line("divergence split |dW|^2 = |dW+|^2 + |dW-|^2", n, split_bad));

    const bool harmonic = max_divw <= kHarmonicWeylTol;
    {
        std::ostringstream ss;
        ss << "max |delta W| over samples: " << max_divw
           << (harmonic ? " (harmonic)" : " (not harmonic)");
        out.lines.push_back(ss.str());
    }

    if (harmonic) {
        long long weitz_bad = 0;
        for (const Point4& p : pts) {
            const WeitzenbockCheck wc = check_weitzenbock(m, p, h_scale);
            if (!wc.pass()) ++weitz_bad;
        }
        out.checked += n;
        out.violations += weitz_bad;
        out.lines.push_back(count_line("Weitzenboeck identity", n, weitz_bad));

        try {
            const KatoCheck kc = check_refined_kato(m, pts, 0.01, h_scale);
            const bool bad = kc.worst_margin < -1e-6;
            out.checked += kc.used_points;
            out.violations += bad ? 1 : 0;
            std::ostringstream ss;
            ss << "refined Kato |d|W+|| <= sqrt(3/5)|dW+|: " << kc.used_points
               << " points, worst margin " << kc.worst_margin;
            out.lines.push_back(ss.str());
        } catch (const numeric_error&) {
            out.lines.push_back(
                "refined Kato skipped: |W+| inside the zero-locus guard at all samples");
        }
    } else {
        out.lines.push_back("warning: refined Kato skipped (Weyl tensor is not harmonic)");
        try {
            const KatoCheck kc = check_plain_kato(m, pts, 0.01, h_scale);
            const bool bad = kc.worst_margin < -1e-6;
            out.checked += kc.used_points;
            out.violations += bad ? 1 : 0;
            std::ostringstream ss;
            ss << "plain Kato |d|W|| <= |dW|: " << kc.used_points << " points, worst margin "
               << kc.worst_margin;
            out.lines.push_back(ss.str());
        } catch (const numeric_error&) {
            out.lines.push_back("plain Kato skipped: |W| inside the zero-locus guard at all samples");
        }
    }
    return out;
}

}  // namespace curv4
