// curv4: curvature decomposition, biorthogonal curvature, and pinching
// hypothesis checks for 4-manifold chart metrics.
//
// Exit codes: 0 ok, 2 input error, 3 numeric failure, 4 verification
// violations.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "curv4/catalog.hpp"
#include "curv4/errors.hpp"
#include "curv4/manifest.hpp"
#include "curv4/report.hpp"
#include "curv4/verify.hpp"
#include "curv4/version.hpp"

namespace {

using namespace curv4;

struct TargetOptions {
    std::string target;
    std::vector<std::string> params;  // name=value
    std::optional<double> radius, a, b, mass, scale, eps, length;
};

void add_target_options(CLI::App* cmd, TargetOptions& opts, bool required = true) {
    auto* pos = cmd->add_option("target", opts.target, "catalog entry name or manifest path");
    if (required) pos->required();
    cmd->add_option("--param", opts.params, "parameter override name=value (repeatable)");
    cmd->add_option("--radius", opts.radius, "alias for the sphere radius parameter r");
    cmd->add_option("--a", opts.a, "first factor radius (s2xs2)");
    cmd->add_option("--b", opts.b, "second factor radius (s2xs2)");
    cmd->add_option("--mass", opts.mass, "alias for the Schwarzschild mass parameter m");
    cmd->add_option("--scale", opts.scale, "metric scale parameter (cp2)");
    cmd->add_option("--eps", opts.eps, "perturbation amplitude (s4-perturbed)");
    cmd->add_option("--length", opts.length, "circle length parameter (s1xs3)");
}

ParamMap collect_params(const TargetOptions& opts) {
    ParamMap params;
    for (const auto& spec : opts.params) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos)
            throw input_error("--param expects name=value, got '" + spec + "'");
        const std::string name = spec.substr(0, eq);
        try {
            params[name] = std::stod(spec.substr(eq + 1));
        } catch (const std::exception&) {
            throw input_error("--param " + name + ": bad numeric value");
        }
    }
    if (opts.radius) params["r"] = *opts.radius;
    if (opts.a) params["a"] = *opts.a;
    if (opts.b) params["b"] = *opts.b;
    if (opts.mass) params["m"] = *opts.mass;
    if (opts.scale) params["scale"] = *opts.scale;
    if (opts.eps) params["eps"] = *opts.eps;
    if (opts.length) params["length"] = *opts.length;
    return params;
}

CatalogEntry resolve_target(const TargetOptions& opts) {
    const ParamMap params = collect_params(opts);
    const auto names = catalog_names();
    for (const auto& n : names)
        if (n == opts.target) return catalog_entry(n, params);
    if (std::filesystem::exists(opts.target)) {
        if (!params.empty())
            throw input_error("parameter overrides apply to catalog entries only");
        return load_manifest(opts.target);
    }
    throw input_error("unknown catalog entry or missing manifest file '" + opts.target + "'");
}

Point4 parse_point(const std::string& text) {
    Point4 p{};
    std::size_t pos = 0;
    for (int i = 0; i < 4; ++i) {
        std::size_t used = 0;
        try {
            p[i] = std::stod(text.substr(pos), &used);
        } catch (const std::exception&) {
            throw input_error("bad --point: expected 4 comma-separated numbers");
        }
        pos += used;
        if (i < 3) {
            if (pos >= text.size() || text[pos] != ',')
                throw input_error("bad --point: expected 4 comma-separated numbers");
            ++pos;
        }
    }
    if (pos != text.size()) throw input_error("bad --point: trailing characters");
    return p;
}

void emit(const std::string& payload, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << payload;
        if (!payload.empty() && payload.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw input_error("cannot open output file '" + out_path + "'");
    f << payload;
}

std::optional<double> parse_auto_value(const std::string& text, const char* what) {
    if (text == "auto") return std::nullopt;
    try {
        return std::stod(text);
    } catch (const std::exception&) {
        throw input_error(std::string("bad --") + what + ": expected a number or 'auto'");
    }
}

int run(int argc, char** argv) {
    CLI::App app{"curvature toolkit for oriented Riemannian 4-manifold charts"};
    app.set_version_flag("--version", std::string("curv4 ") + kToolVersion);
    app.require_subcommand(1);

    std::string tol_name = "default";
    app.add_option("--tol-profile", tol_name, "tolerance profile: default | strict")
        ->envname("CURV4_TOL_PROFILE");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "full curvature record at one point");
    TargetOptions an_target;
    add_target_options(analyze, an_target);
    std::string an_point = "0,0,0,0";
    std::string an_out;
    analyze->add_option("--point", an_point, "chart point a,b,c,d");
    analyze->add_option("--out", an_out, "write the report here instead of stdout");

    // scan
    auto* scan_cmd = app.add_subcommand("scan", "grid scan of curvature quantities");
    TargetOptions sc_target;
    add_target_options(scan_cmd, sc_target);
    int sc_grid = 8;
    std::string sc_format = "json", sc_out, sc_slice = "0,1";
    scan_cmd->add_option("--grid", sc_grid, "grid points per axis (2..64)");
    scan_cmd->add_option("--format", sc_format, "json | csv | svg");
    scan_cmd->add_option("--out", sc_out, "output path");
    scan_cmd->add_option("--slice", sc_slice, "axes for the svg heatmap, e.g. 0,1");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
    std::string suite;
    verify_cmd->add_option("suite", suite, "algebraic | field")->required();
    TargetOptions vf_target;
    add_target_options(verify_cmd, vf_target, false);
    verify_cmd->add_option("--target", vf_target.target, "target for the field suite");
    int vf_points = 20;
    verify_cmd->add_option("--points", vf_points, "sample points for the field suite");

    // pinch
    auto* pinch_cmd = app.add_subcommand("pinch", "pinching-hypothesis report");
    TargetOptions pn_target;
    add_target_options(pinch_cmd, pn_target);
    std::string pn_lambda1 = "auto", pn_rho = "auto", pn_out;
    int pn_grid = 6;
    pinch_cmd->add_option("--lambda1", pn_lambda1, "first Laplace eigenvalue or 'auto'");
    pinch_cmd->add_option("--rho", pn_rho, "Ricci lower bound or 'auto'");
    pinch_cmd->add_option("--grid", pn_grid, "grid points per axis");
    pinch_cmd->add_option("--out", pn_out, "output path");

    CLI11_PARSE(app, argc, argv);
    const ToleranceProfile tol = ToleranceProfile::get(tol_name);

    if (analyze->parsed()) {
        const CatalogEntry entry = resolve_target(an_target);
        const Point4 p = parse_point(an_point);
        if (!entry.metric.contains(p))
            throw input_error("point lies outside the chart domain");
        const AnalyzeRecord rec = analyze_point(entry, p, tol);
        emit(analyze_to_json(rec, tol).dump(2) + "\n", an_out);
        return 0;
    }

    if (scan_cmd->parsed()) {
        const CatalogEntry entry = resolve_target(sc_target);
        if (sc_format == "svg") {
            const auto comma = sc_slice.find(',');
            if (comma == std::string::npos) throw input_error("--slice expects i,j");
            int ax = 0, ay = 1;
            try {
                ax = std::stoi(sc_slice.substr(0, comma));
                ay = std::stoi(sc_slice.substr(comma + 1));
            } catch (const std::exception&) {
                throw input_error("--slice expects two axis indices like 0,1");
            }
            emit(svg_heatmap(entry, sc_grid, ax, ay, tol), sc_out);
            return 0;
        }
        const ScanResult sr = scan(entry, sc_grid, tol);
        if (sc_format == "csv")
            emit(scan_to_csv(sr), sc_out);
        else if (sc_format == "json")
            emit(scan_to_json(sr, tol).dump(2) + "\n", sc_out);
        else
            throw input_error("unknown --format '" + sc_format + "'");
        return 0;
    }

    if (verify_cmd->parsed()) {
        VerifySummary summary;
        if (suite == "algebraic") {
            summary = verify_algebraic();
        } else if (suite == "field") {
            if (vf_target.target.empty())
                throw input_error("the field suite needs --target");
            summary = verify_field(resolve_target(vf_target), vf_points, tol.fd_h_scale);
        } else {
            throw input_error("unknown suite '" + suite + "' (use algebraic or field)");
        }
        for (const auto& line : summary.lines) std::cout << line << "\n";
        std::cout << (summary.ok() ? "PASS" : "FAIL") << ": " << summary.checked
                  << " checks, " << summary.violations << " violations\n";
        return summary.ok() ? 0 : 4;
    }

    if (pinch_cmd->parsed()) {
        const CatalogEntry entry = resolve_target(pn_target);
        const auto user_lambda1 = parse_auto_value(pn_lambda1, "lambda1");
        const auto user_rho = parse_auto_value(pn_rho, "rho");

        Lambda1Choice lam{0.0, "unavailable"};
        try {
            lam = resolve_lambda1(entry, user_lambda1);
        } catch (const input_error&) {
            // No resolvable lambda1 (e.g. s <= 0 targets): the report will
            // state violated hypotheses instead of failing.
        }
        const PinchReport rep = pinch_report(entry.metric, lam, user_rho, pn_grid);
        const OrderedJson j = pinch_to_json(rep, tol);
        if (!pn_out.empty()) {
            emit(j.dump(2) + "\n", pn_out);
        } else {
            std::cout << j.dump(2) << "\n";
        }
        // Human-readable threshold table on stderr so stdout stays parseable.
        std::cerr << "thresholds:"
                  << "  yang " << format_double(rep.threshold_set.yang_constant)
                  << "  costa " << format_double(rep.threshold_set.costa_constant)
                  << "  new " << format_double(rep.threshold_set.new_threshold)
                  << "  corollary "
                  << (rep.threshold_set.corollary_threshold
                          ? format_double(*rep.threshold_set.corollary_threshold)
                          : std::string("n/a"))
                  << "\n"
                  << "theorem A: " << rep.theorem_a_verdict << "\n"
                  << "corollary: " << rep.corollary_verdict << "\n";
        return 0;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const curv4::input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const curv4::domain_error& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 3;
    } catch (const curv4::numeric_error& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
