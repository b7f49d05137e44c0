#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "curv4/biorthogonal.hpp"
#include "curv4/catalog.hpp"
#include "curv4/pinch.hpp"

namespace curv4 {

using OrderedJson = nlohmann::ordered_json;

/// Numerical policy knobs that accompany every report.
struct ToleranceProfile {
    std::string name = "default";
    double fd_h_scale = 1e-3;
    int brute_grid = 16;
    int quadrature_nodes = 40;

    static ToleranceProfile get(const std::string& name);  // "default" | "strict"
    OrderedJson to_json() const;
};

/// Shortest round-trip decimal formatting; reports are byte-stable.
std::string format_double(double v);

/// Full pointwise record: curvature, spectra in both norm conventions,
/// biorthogonal minima, and residual diagnostics.
struct AnalyzeRecord {
    std::string target;
    Point4 point{};
    double s = 0.0;
    Vec4 ricci_eigenvalues{};
    double einstein_residual = 0.0;
    WeylSpectrum spectrum;
    double bblock_norm = 0.0;
    BiorthogonalResult biorthogonal;
    double div_w_norm = 0.0;
    double bianchi_residual = 0.0;
    double weyl_trace_residual = 0.0;
};

AnalyzeRecord analyze_point(const CatalogEntry& entry, const Point4& p,
                            const ToleranceProfile& tol);
OrderedJson analyze_to_json(const AnalyzeRecord& rec, const ToleranceProfile& tol);

/// Grid scan over the chart (cell centers, lexicographic row order).
struct ScanResult {
    std::string target;
    int grid = 0;
    struct Row {
        Point4 p{};
        double s = 0.0, k1perp = 0.0, ric_min = 0.0, ric_max = 0.0;
        double wplus = 0.0, wminus = 0.0, div_w = 0.0;
        std::string status;
    };
    std::vector<Row> rows;
    int failed_points = 0;
    // Extrema over the ok rows, exact min/max of the stored values.
    double min_s = 0.0, max_s = 0.0, min_k1perp = 0.0, max_k1perp = 0.0;
    double min_ric = 0.0, max_ric = 0.0, max_div_w = 0.0;
};

ScanResult scan(const CatalogEntry& entry, int grid, const ToleranceProfile& tol);
std::string scan_to_csv(const ScanResult& sr);
OrderedJson scan_to_json(const ScanResult& sr, const ToleranceProfile& tol);

/// Self-contained SVG heatmap of K1perp over a 2-coordinate slice (the other
/// coordinates held at the domain midpoint), with axis labels and color bar.
std::string svg_heatmap(const CatalogEntry& entry, int grid, int axis_x, int axis_y,
                        const ToleranceProfile& tol);

OrderedJson pinch_to_json(const PinchReport& rep, const ToleranceProfile& tol);
OrderedJson thresholds_to_json(const ThresholdSet& ts);

}  // namespace curv4
