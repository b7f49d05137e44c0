#include "curv4/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "curv4/duality.hpp"
#include "curv4/errors.hpp"
#include "curv4/numerics.hpp"
#include "curv4/version.hpp"
#include "curv4/weyl_fields.hpp"

namespace curv4 {

ToleranceProfile ToleranceProfile::get(const std::string& name) {
    if (name == "default") return {};
    if (name == "strict") {
        ToleranceProfile t;
        t.name = "strict";
        t.fd_h_scale = 5e-4;
        t.brute_grid = 24;
        t.quadrature_nodes = 48;
        return t;
    }
    throw input_error("unknown tolerance profile '" + name + "'");
}

OrderedJson ToleranceProfile::to_json() const {
    OrderedJson j;
    j["profile"] = name;
    j["fd_h_scale"] = fd_h_scale;
    j["brute_grid"] = brute_grid;
    j["quadrature_nodes"] = quadrature_nodes;
    return j;
}

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

static OrderedJson report_header(const ToleranceProfile& tol) {
    OrderedJson j;
    j["schema"] = kSchemaVersion;
    j["tool_version"] = kToolVersion;
    j["tolerances"] = tol.to_json();
    return j;
}

static OrderedJson point_json(const Point4& p) {
    return OrderedJson::array({p[0], p[1], p[2], p[3]});
}

AnalyzeRecord analyze_point(const CatalogEntry& entry, const Point4& p,
                            const ToleranceProfile& tol) {
    AnalyzeRecord rec;
    rec.target = entry.name;
    rec.point = p;
    const RiemannAtPoint rap = curvature_at(entry.metric, p);
    rec.s = rap.s;
    rec.ricci_eigenvalues = sym4_eigenvalues(rap.Ric);
    rec.einstein_residual = rap.einstein_residual();
    const CurvatureBlocks cb = curvature_blocks(rap);
    rec.spectrum = weyl_spectrum(cb);
    rec.bblock_norm = cb.bblock_norm();
    rec.biorthogonal = k1perp_bruteforce(rap, tol.brute_grid);
    rec.bianchi_residual = rap.bianchi_residual;
    rec.weyl_trace_residual = rap.weyl_trace_residual;
    try {
        rec.div_w_norm = std::sqrt(div_weyl(entry.metric, p, tol.fd_h_scale).norm2);
    } catch (const numeric_error&) {
        rec.div_w_norm = std::nan("");  // too close to the boundary
    }
    return rec;
}

OrderedJson analyze_to_json(const AnalyzeRecord& rec, const ToleranceProfile& tol) {
    OrderedJson j = report_header(tol);
    j["report"] = "analyze";
    j["target"] = rec.target;
    j["point"] = point_json(rec.point);
    j["scalar_curvature"] = rec.s;
    j["ricci_eigenvalues"] =
        OrderedJson::array({rec.ricci_eigenvalues[0], rec.ricci_eigenvalues[1],
                            rec.ricci_eigenvalues[2], rec.ricci_eigenvalues[3]});
    j["einstein_residual"] = rec.einstein_residual;

    OrderedJson w;
    w["wplus"] = OrderedJson::array(
        {rec.spectrum.wplus[0], rec.spectrum.wplus[1], rec.spectrum.wplus[2]});
    w["wminus"] = OrderedJson::array(
        {rec.spectrum.wminus[0], rec.spectrum.wminus[1], rec.spectrum.wminus[2]});
    // Block (operator) norms and the 4x larger (0,4)-tensor convention.
    w["norm2_plus_block"] = rec.spectrum.norm2_plus;
    w["norm2_minus_block"] = rec.spectrum.norm2_minus;
    w["norm2_plus_tensor"] = 4.0 * rec.spectrum.norm2_plus;
    w["norm2_minus_tensor"] = 4.0 * rec.spectrum.norm2_minus;
    w["det_plus"] = rec.spectrum.det_plus;
    w["det_minus"] = rec.spectrum.det_minus;
    w["trace_residual_plus"] = rec.spectrum.trace_residual_plus;
    w["trace_residual_minus"] = rec.spectrum.trace_residual_minus;
    j["weyl"] = w;
    j["bblock_norm"] = rec.bblock_norm;

    OrderedJson k;
    k["closed"] = rec.biorthogonal.k1perp_closed;
    k["bruteforce"] = rec.biorthogonal.k1perp_bruteforce;
    k["sectional_min"] = rec.biorthogonal.sectional_min;
    k["grid"] = rec.biorthogonal.grid;
    k["refine_iterations"] = rec.biorthogonal.refine_iterations;
    k["estimated_error"] = rec.biorthogonal.estimated_error;
    j["k1perp"] = k;

    if (std::isnan(rec.div_w_norm))
        j["div_weyl_norm"] = nullptr;
    else
        j["div_weyl_norm"] = rec.div_w_norm;
    j["bianchi_residual"] = rec.bianchi_residual;
    j["weyl_trace_residual"] = rec.weyl_trace_residual;
    return j;
}

ScanResult scan(const CatalogEntry& entry, int grid, const ToleranceProfile& tol) {
    if (grid < 2 || grid > 64) throw input_error("scan grid must be in [2, 64]");
    ScanResult sr;
    sr.target = entry.name;
    sr.grid = grid;
    const MetricField& m = entry.metric;
    const int total = grid * grid * grid * grid;
    sr.rows.resize(total);
    parallel_for(total, [&](int idx) {
        ScanResult::Row& row = sr.rows[idx];
        int rem = idx;
        std::array<int, 4> ind{};
        for (int i = 3; i >= 0; --i) {
            ind[i] = rem % grid;
            rem /= grid;
        }
        for (int i = 0; i < 4; ++i) {
            const double lo = m.domain[i][0], hi = m.domain[i][1];
            row.p[i] = lo + (hi - lo) * (ind[i] + 0.5) / grid;
        }
        try {
            const RiemannAtPoint rap = curvature_at(m, row.p);
            const WeylSpectrum ws = weyl_spectrum(curvature_blocks(rap));
            row.s = rap.s;
            row.k1perp = k1perp_closed(ws, rap.s);
            const Vec4 ric = sym4_eigenvalues(rap.Ric);
            row.ric_min = ric[0];
            row.ric_max = ric[3];
            row.wplus = std::sqrt(ws.norm2_plus);
            row.wminus = std::sqrt(ws.norm2_minus);
            row.div_w = std::sqrt(div_weyl(m, row.p, tol.fd_h_scale).norm2);
            row.status = "ok";
        } catch (const error& e) {
            row.status = e.what();
        }
    });
    bool first = true;
    for (const auto& row : sr.rows) {
        if (row.status != "ok") {
            ++sr.failed_points;
            continue;
        }
        if (first) {
            sr.min_s = sr.max_s = row.s;
            sr.min_k1perp = sr.max_k1perp = row.k1perp;
            sr.min_ric = row.ric_min;
            sr.max_ric = row.ric_max;
            sr.max_div_w = row.div_w;
            first = false;
        } else {
            sr.min_s = std::min(sr.min_s, row.s);
            sr.max_s = std::max(sr.max_s, row.s);
            sr.min_k1perp = std::min(sr.min_k1perp, row.k1perp);
            sr.max_k1perp = std::max(sr.max_k1perp, row.k1perp);
            sr.min_ric = std::min(sr.min_ric, row.ric_min);
            sr.max_ric = std::max(sr.max_ric, row.ric_max);
            sr.max_div_w = std::max(sr.max_div_w, row.div_w);
        }
    }
    return sr;
}

std::string scan_to_csv(const ScanResult& sr) {
    std::string out =
        "x0,x1,x2,x3,s,k1perp,ric_min,ric_max,wplus_norm,wminus_norm,divw_norm,status\n";
    for (const auto& r : sr.rows) {
        for (int i = 0; i < 4; ++i) {
            out += format_double(r.p[i]);
            out += ',';
        }
        if (r.status == "ok") {
            out += format_double(r.s);
            out += ',';
            out += format_double(r.k1perp);
            out += ',';
            out += format_double(r.ric_min);
            out += ',';
            out += format_double(r.ric_max);
            out += ',';
            out += format_double(r.wplus);
            out += ',';
            out += format_double(r.wminus);
            out += ',';
            out += format_double(r.div_w);
            out += ",ok\n";
        } else {
            std::string msg = r.status;
            for (char& c : msg)
                if (c == ',' || c == '\n') c = ';';
            out += ",,,,,,," + msg + "\n";
        }
    }
    return out;
}

OrderedJson scan_to_json(const ScanResult& sr, const ToleranceProfile& tol) {
    OrderedJson j = report_header(tol);
    j["report"] = "scan";
    j["target"] = sr.target;
    j["grid"] = sr.grid;
    j["failed_points"] = sr.failed_points;
    OrderedJson rows = OrderedJson::array();
    for (const auto& r : sr.rows) {
        OrderedJson row;
        row["point"] = point_json(r.p);
        row["status"] = r.status;
        if (r.status == "ok") {
            row["s"] = r.s;
            row["k1perp"] = r.k1perp;
            row["ric_min"] = r.ric_min;
            row["ric_max"] = r.ric_max;
            row["wplus_norm"] = r.wplus;
            row["wminus_norm"] = r.wminus;
            row["divw_norm"] = r.div_w;
        }
        rows.push_back(row);
    }
    j["rows"] = rows;
    OrderedJson ex;
    ex["min_s"] = sr.min_s;
    ex["max_s"] = sr.max_s;
    ex["min_k1perp"] = sr.min_k1perp;
    ex["max_k1perp"] = sr.max_k1perp;
    ex["min_ricci_eigenvalue"] = sr.min_ric;
    ex["max_ricci_eigenvalue"] = sr.max_ric;
    ex["max_divw_norm"] = sr.max_div_w;
    j["extrema"] = ex;
    return j;
}

// Small fixed colormap (dark blue -> teal -> yellow), linear interpolation.
static void colormap(double t, int& r, int& g, int& b) {
    static constexpr double stops[5][3] = {{68, 1, 84},
                                           {59, 82, 139},
                                           {33, 145, 140},
                                           {94, 201, 98},
                                           {253, 231, 37}};
    t = std::clamp(t, 0.0, 1.0) * 4.0;
    const int k = std::min(3, static_cast<int>(t));
    const double f = t - k;
    r = static_cast<int>(std::lround(stops[k][0] + f * (stops[k + 1][0] - stops[k][0])));
    g = static_cast<int>(std::lround(stops[k][1] + f * (stops[k + 1][1] - stops[k][1])));
    b = static_cast<int>(std::lround(stops[k][2] + f * (stops[k + 1][2] - stops[k][2])));
}

std::string svg_heatmap(const CatalogEntry& entry, int grid, int axis_x, int axis_y,
                        const ToleranceProfile& tol) {
    (void)tol;
    if (grid < 2 || grid > 64) throw input_error("heatmap grid must be in [2, 64]");
    if (axis_x < 0 || axis_x > 3 || axis_y < 0 || axis_y > 3 || axis_x == axis_y)
        throw input_error("heatmap slice needs two distinct axes in 0..3");
    const MetricField& m = entry.metric;
    Point4 base;
    for (int i = 0; i < 4; ++i) base[i] = 0.5 * (m.domain[i][0] + m.domain[i][1]);

    std::vector<double> values(grid * grid, std::nan(""));
    parallel_for(grid * grid, [&](int idx) {
        const int ix = idx % grid, iy = idx / grid;
        Point4 p = base;
        p[axis_x] = m.domain[axis_x][0] +
                    (m.domain[axis_x][1] - m.domain[axis_x][0]) * (ix + 0.5) / grid;
        p[axis_y] = m.domain[axis_y][0] +
                    (m.domain[axis_y][1] - m.domain[axis_y][0]) * (iy + 0.5) / grid;
        try {
            const RiemannAtPoint rap = curvature_at(m, p);
            values[idx] = k1perp_closed(weyl_spectrum(curvature_blocks(rap)), rap.s);
        } catch (const error&) {
        }
    });
    double vmin = std::numeric_limits<double>::infinity(), vmax = -vmin;
    for (double v : values)
        if (!std::isnan(v)) {
            vmin = std::min(vmin, v);
            vmax = std::max(vmax, v);
        }
    if (!(vmin <= vmax)) throw numeric_error("no valid points in the heatmap slice");
    const double span = (vmax > vmin) ? (vmax - vmin) : 1.0;

    const int cell = 560 / grid;
    const int plot = cell * grid;
    const int margin_l = 70, margin_t = 40, margin_b = 60, bar_w = 24, gap = 30;
    const int width = margin_l + plot + gap + bar_w + 90;
    const int height = margin_t + plot + margin_b;

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    svg << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    svg << "<text x=\"" << margin_l + plot / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"15\">min biorthogonal curvature, "
        << entry.name << " (x" << axis_x << ", x" << axis_y << " slice)</text>\n";
    for (int iy = 0; iy < grid; ++iy)
        for (int ix = 0; ix < grid; ++ix) {
            const double v = values[iy * grid + ix];
            int r = 200, g = 200, b = 200;
            if (!std::isnan(v)) colormap((v - vmin) / span, r, g, b);
            // SVG y axis points down; flip so the axis label reads upward.
            const int px = margin_l + ix * cell;
            const int py = margin_t + (grid - 1 - iy) * cell;
            svg << "<rect x=\"" << px << "\" y=\"" << py << "\" width=\"" << cell
                << "\" height=\"" << cell << "\" fill=\"rgb(" << r << ',' << g << ',' << b
                << ")\"/>\n";
        }
    svg << "<rect x=\"" << margin_l << "\" y=\"" << margin_t << "\" width=\"" << plot
        << "\" height=\"" << plot << "\" fill=\"none\" stroke=\"black\"/>\n";
    // Axis labels with domain endpoints.
    svg << "<text x=\"" << margin_l + plot / 2 << "\" y=\"" << margin_t + plot + 35
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">x" << axis_x
        << " in [" << format_double(m.domain[axis_x][0]) << ", "
        << format_double(m.domain[axis_x][1]) << "]</text>\n";
    svg << "<text x=\"20\" y=\"" << margin_t + plot / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
        << "transform=\"rotate(-90 20 " << margin_t + plot / 2 << ")\">x" << axis_y << " in ["
        << format_double(m.domain[axis_y][0]) << ", " << format_double(m.domain[axis_y][1])
        << "]</text>\n";
    // Color bar.
    const int bar_x = margin_l + plot + gap;
    const int steps = 64;
    for (int i = 0; i < steps; ++i) {
        int r, g, b;
        colormap(1.0 - static_cast<double>(i) / (steps - 1), r, g, b);
        const double y0 = margin_t + plot * static_cast<double>(i) / steps;
        svg << "<rect x=\"" << bar_x << "\" y=\"" << y0 << "\" width=\"" << bar_w
            << "\" height=\"" << (static_cast<double>(plot) / steps + 1) << "\" fill=\"rgb(" << r
            << ',' << g << ',' << b << ")\"/>\n";
    }
    svg << "<rect x=\"" << bar_x << "\" y=\"" << margin_t << "\" width=\"" << bar_w
        << "\" height=\"" << plot << "\" fill=\"none\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << bar_x + bar_w + 6 << "\" y=\"" << margin_t + 12
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << format_double(vmax)
        << "</text>\n";
    svg << "<text x=\"" << bar_x + bar_w + 6 << "\" y=\"" << margin_t + plot
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << format_double(vmin)
        << "</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

OrderedJson thresholds_to_json(const ThresholdSet& ts) {
    OrderedJson j;
    j["new_threshold"] = ts.new_threshold;
    j["old_threshold"] = ts.old_threshold;
    j["yang_constant"] = ts.yang_constant;
    j["costa_constant"] = ts.costa_constant;
    if (ts.corollary_threshold)
        j["corollary_threshold"] = *ts.corollary_threshold;
    else
        j["corollary_threshold"] = nullptr;
    return j;
}

OrderedJson pinch_to_json(const PinchReport& rep, const ToleranceProfile& tol) {
    OrderedJson j = report_header(tol);
    j["report"] = "pinch";
    j["target"] = rep.target;
    j["grid"] = rep.grid;
    j["failed_points"] = rep.failed_points;
    j["inf_s"] = rep.inf_s;
    j["sup_s"] = rep.sup_s;
    j["inf_k1perp"] = rep.inf_k1perp;
    j["rho"] = rep.rho;
    j["rho_source"] = rep.rho_source;
    j["max_divw_norm"] = rep.max_div_w;
    j["harmonic_weyl"] = rep.harmonic_weyl;
    OrderedJson lam;
    lam["value"] = rep.lambda1.value;
    lam["source"] = rep.lambda1.source;
    j["lambda1"] = lam;
    j["thresholds"] = thresholds_to_json(rep.threshold_set);
    j["margin_new_sup"] = rep.margin_new_sup;
    j["margin_new_pointwise"] = rep.margin_new_pointwise;
    if (rep.margin_corollary)
        j["margin_corollary"] = *rep.margin_corollary;
    else
        j["margin_corollary"] = nullptr;
    j["theorem_a_verdict"] = rep.theorem_a_verdict;
    j["corollary_verdict"] = rep.corollary_verdict;
    j["analyticity_note"] = rep.analyticity_note;
    OrderedJson rows = OrderedJson::array();
    for (const auto& r : rep.rows) {
        OrderedJson row;
        row["point"] = point_json(r.p);
        row["status"] = r.status;
        if (r.status == "ok") {
            row["s"] = r.s;
            row["k1perp"] = r.k1perp;
            row["ric_min"] = r.ric_min;
            row["ric_max"] = r.ric_max;
            row["divw_norm"] = r.div_w;
        }
        rows.push_back(row);
    }
    j["rows"] = rows;
    return j;
}

}  // namespace curv4
