#include <doctest.h>

#include <cmath>
#include <limits>

#include "curv4/errors.hpp"
#include "curv4/manifest.hpp"
#include "curv4/report.hpp"

using namespace curv4;

namespace {

const char* kFlatManifest = R"({
  "name": "flat-box",
  "coordinates": ["x0", "x1", "x2", "x3"],
  "domain": [[-1, 1], [-1, 1], [-1, 1], [-1, 1]],
  "metric": {"g00": "1", "g11": "1", "g22": "1", "g33": "1"},
  "known": {"scalar": 0.0, "einstein": true}
})";

const char* kSphereManifest = R"({
  "name": "user-sphere",
  "domain": [[-2, 2], [-2, 2], [-2, 2], [-2, 2]],
  "metric": {
    "g00": "4*r^4/(r^2 + x0^2 + x1^2 + x2^2 + x3^2)^2",
    "g11": "4*r^4/(r^2 + x0^2 + x1^2 + x2^2 + x3^2)^2",
    "g22": "4*r^4/(r^2 + x0^2 + x1^2 + x2^2 + x3^2)^2",
    "g33": "4*r^4/(r^2 + x0^2 + x1^2 + x2^2 + x3^2)^2"
  },
  "params": {"r": 1.0}
})";

}  // namespace

TEST_CASE("manifest parsing and validation") {
    const CatalogEntry flat = parse_manifest(kFlatManifest, "test");
    CHECK(flat.name == "flat-box");
    CHECK(*flat.known.scalar == 0.0);

    const CatalogEntry sphere = parse_manifest(kSphereManifest, "test");
    const RiemannAtPoint rap = curvature_at(sphere.metric, {0.1, 0.2, 0.0, 0.0});
    CHECK(rap.s == doctest::Approx(12.0).epsilon(1e-9));

    CHECK_THROWS_AS(parse_manifest("{not json", "test"), input_error);
    CHECK_THROWS_AS(parse_manifest("[]", "test"), input_error);
    CHECK_THROWS_AS(parse_manifest(R"({"name": "x"})", "test"), input_error);
    // Missing domain interval order.
    CHECK_THROWS_AS(parse_manifest(R"({
        "name": "x", "domain": [[1, -1], [0,1], [0,1], [0,1]],
        "metric": {"g00": "1", "g11": "1", "g22": "1", "g33": "1"}
    })", "test"), input_error);
    // Lower-triangle key.
    CHECK_THROWS_AS(parse_manifest(R"({
        "name": "x", "domain": [[-1, 1], [-1,1], [-1,1], [-1,1]],
        "metric": {"g10": "1"}
    })", "test"), input_error);
    // Unknown identifier in an expression (no such parameter).
    CHECK_THROWS_AS(parse_manifest(R"({
        "name": "x", "domain": [[-1, 1], [-1,1], [-1,1], [-1,1]],
        "metric": {"g00": "q", "g11": "1", "g22": "1", "g33": "1"}
    })", "test"), input_error);
    // Not positive definite on the spot check.
    CHECK_THROWS_AS(parse_manifest(R"({
        "name": "x", "domain": [[-1, 1], [-1,1], [-1,1], [-1,1]],
        "metric": {"g00": "-1", "g11": "1", "g22": "1", "g33": "1"}
    })", "test"), input_error);
}

TEST_CASE("analyze record serializes with schema header") {
    const ToleranceProfile tol = ToleranceProfile::get("default");
    const CatalogEntry sphere = parse_manifest(kSphereManifest, "test");
    const AnalyzeRecord rec = analyze_point(sphere, {0.0, 0.0, 0.0, 0.0}, tol);
    CHECK(rec.s == doctest::Approx(12.0).epsilon(1e-9));
    CHECK(rec.biorthogonal.k1perp_closed == doctest::Approx(1.0).epsilon(1e-9));

    const OrderedJson j = analyze_to_json(rec, tol);
    CHECK(j["schema"] == 1);
    CHECK(j["tool_version"].is_string());
    CHECK(j["tolerances"]["profile"] == "default");
    CHECK(j["weyl"]["norm2_plus_tensor"].get<double>() ==
          doctest::Approx(4.0 * j["weyl"]["norm2_plus_block"].get<double>()));
    CHECK(j["k1perp"]["closed"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("scan: deterministic rows, recorded failures, exact extrema") {
    const ToleranceProfile tol = ToleranceProfile::get("default");

    // A metric that loses positivity on part of the box: failures are rows,
    // not exceptions.
    const CatalogEntry partial = [] {
        CatalogEntry e;
        e.name = "partial";
        e.metric.name = "partial";
        e.metric.domain = {{{-1.0, 1.0}, {-1.0, 1.0}, {-1.0, 1.0}, {-1.0, 1.0}}};
        e.metric.components[sym4_index(0, 0)] = parse("x0 + 0.5");
        e.metric.components[sym4_index(1, 1)] = parse("1");
        e.metric.components[sym4_index(2, 2)] = parse("1");
        e.metric.components[sym4_index(3, 3)] = parse("1");
        e.compact = false;
        return e;
    }();
    const ScanResult sr = scan(partial, 4, tol);
    CHECK(sr.rows.size() == 256);
    CHECK(sr.failed_points > 0);
    CHECK(sr.failed_points < 256);

    double min_s = std::numeric_limits<double>::infinity();
    double max_s = -min_s;
    for (const auto& row : sr.rows) {
        if (row.status != "ok") continue;
        min_s = std::min(min_s, row.s);
        max_s = std::max(max_s, row.s);
    }
    CHECK(sr.min_s == min_s);
    CHECK(sr.max_s == max_s);

    // Lexicographic cell-center order: the last axis varies fastest.
    CHECK(sr.rows[0].p[3] < sr.rows[1].p[3]);
    CHECK(sr.rows[0].p[0] == sr.rows[1].p[0]);

    const std::string csv1 = scan_to_csv(sr);
    const std::string csv2 = scan_to_csv(scan(partial, 4, tol));
    CHECK(csv1 == csv2);
    CHECK(csv1.substr(0, 3) == "x0,");
    const OrderedJson j1 = scan_to_json(sr, tol);
    CHECK(j1["rows"].size() == 256);
    CHECK(j1["extrema"]["min_s"].get<double>() == sr.min_s);

    CHECK_THROWS_AS(scan(partial, 1, tol), input_error);
    CHECK_THROWS_AS(scan(partial, 65, tol), input_error);
}

TEST_CASE("svg heatmap is self-contained and labeled") {
    const ToleranceProfile tol = ToleranceProfile::get("default");
    const CatalogEntry flat = parse_manifest(kFlatManifest, "test");
    const std::string svg = svg_heatmap(flat, 8, 0, 1, tol);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("x0 in [") != std::string::npos);
    CHECK(svg.find("x1 in [") != std::string::npos);
    CHECK(svg.find("rect") != std::string::npos);
    CHECK(svg == svg_heatmap(flat, 8, 0, 1, tol));
    CHECK_THROWS_AS(svg_heatmap(flat, 8, 0, 0, tol), input_error);
    CHECK_THROWS_AS(svg_heatmap(flat, 8, 0, 5, tol), input_error);
}

TEST_CASE("tolerance profiles") {
    const ToleranceProfile strict = ToleranceProfile::get("strict");
    CHECK(strict.brute_grid == 24);
    CHECK(strict.fd_h_scale < ToleranceProfile{}.fd_h_scale);
    CHECK_THROWS_AS(ToleranceProfile::get("loose"), input_error);
}

TEST_CASE("float formatting round-trips") {
    for (double v : {0.0, 1.0, -1.5, 1.0 / 3.0, 1e-17, 12345.6789, 2e300}) {
        const std::string s = format_double(v);
        CHECK(std::stod(s) == v);
    }
}
