#include "curv4/catalog.hpp"

#include <cmath>
#include <limits>

#include "curv4/biorthogonal.hpp"
#include "curv4/duality.hpp"
#include "curv4/errors.hpp"
#include "curv4/numerics.hpp"

namespace curv4 {

namespace {

double param_or(const ParamMap& overrides, const std::string& key, double fallback) {
    auto it = overrides.find(key);
    return it == overrides.end() ? fallback : it->second;
}

void reject_unknown_params(const ParamMap& overrides,
                           const std::vector<std::string>& allowed) {
    for (const auto& [k, v] : overrides) {
        (void)v;
        bool ok = false;
        for (const auto& a : allowed)
            if (k == a) ok = true;
        if (!ok) throw input_error("unknown parameter '" + k + "' for this catalog entry");
    }
}

ExprPtr parse_with(const std::string& src, const std::vector<std::string>& params) {
    ParseOptions po;
    po.param_whitelist = params;
    return parse(src, po);
}

CatalogEntry make_s4(const ParamMap& overrides) {
    reject_unknown_params(overrides, {"r"});
    const double r = param_or(overrides, "r", 1.0);
    if (!(r > 0.0)) throw input_error("s4 radius must be positive");
    CatalogEntry e;
    e.name = "s4";
    e.description = "round 4-sphere of radius r, stereographic chart";
    const std::vector<std::string> ps{"r"};
    const std::string conf = "4*r^4/(r^2 + x0^2 + x1^2 + x2^2 + x3^2)^2";
    for (int i = 0; i < 4; ++i) e.metric.components[sym4_index(i, i)] = parse_with(conf, ps);
    const double box = 3.0 * r;
    e.metric.domain = {{{-box, box}, {-box, box}, {-box, box}, {-box, box}}};
    e.metric.params["r"] = r;
    e.metric.name = e.name;
    e.known.scalar = 12.0 / (r * r);
    e.known.einstein = true;
    e.known.lambda1_exact = 4.0 / (r * r);
    e.known.locally_conformally_flat = true;
    e.known.harmonic_weyl = true;
    e.known.provenance = {
        {"scalar", "constant curvature 1/r^2: s = n(n-1)/r^2"},
        {"lambda1", "restriction of an ambient linear coordinate; verified by eigenfunction residual"},
        {"harmonic_weyl", "W = 0 identically"},
    };
    e.metric.declared.einstein = true;
    e.metric.declared.scalar = *e.known.scalar;
    e.metric.declared.lambda1 = *e.known.lambda1_exact;
    e.lambda1_eigenfunction = parse_with(
        "(x0^2 + x1^2 + x2^2 + x3^2 - r^2)/(x0^2 + x1^2 + x2^2 + x3^2 + r^2)", ps);
    e.lambda1_trials = {
        e.lambda1_eigenfunction,
        parse_with("2*r*x0/(r^2 + x0^2 + x1^2 + x2^2 + x3^2)", ps),
    };
    e.integration = IntegrationDomain{
        IntegrationAxis::real_line(r), IntegrationAxis::real_line(r),
        IntegrationAxis::real_line(r), IntegrationAxis::real_line(r)};
    e.volume_exact = 8.0 * M_PI * M_PI / 3.0 * r * r * r * r;
    return e;
}

CatalogEntry make_cp2(const ParamMap& overrides) {
    reject_unknown_params(overrides, {"scale"});
    const double t = param_or(overrides, "scale", 1.0);
    if (!(t > 0.0)) throw input_error("cp2 scale must be positive");
    CatalogEntry e;
    e.name = "cp2";
    e.description = "complex projective plane, affine chart (s = 24 at scale 1)";
    const std::vector<std::string> ps{"scale"};
    const std::string rho = "(1 + x0^2 + x1^2 + x2^2 + x3^2)";
    auto comp = [&](const std::string& numer) {
        return parse_with("scale*" + numer + "/" + rho + "^2", ps);
    };
    e.metric.components[sym4_index(0, 0)] = comp("(1 + x2^2 + x3^2)");
    e.metric.components[sym4_index(1, 1)] = comp("(1 + x2^2 + x3^2)");
    e.metric.components[sym4_index(2, 2)] = comp("(1 + x0^2 + x1^2)");
    e.metric.components[sym4_index(3, 3)] = comp("(1 + x0^2 + x1^2)");
    e.metric.components[sym4_index(0, 2)] = comp("(-(x0*x2 + x1*x3))");
    e.metric.components[sym4_index(1, 3)] = comp("(-(x0*x2 + x1*x3))");
    e.metric.components[sym4_index(0, 3)] = comp("(-(x0*x3 - x1*x2))");
    e.metric.components[sym4_index(1, 2)] = comp("(x0*x3 - x1*x2)");
    e.metric.domain = {{{-2, 2}, {-2, 2}, {-2, 2}, {-2, 2}}};
    e.metric.params["scale"] = t;
    e.metric.name = e.name;
    e.known.scalar = 24.0 / t;
    e.known.einstein = true;
    e.known.harmonic_weyl = true;
    e.known.provenance = {
        {"scalar", "Einstein constant 6/scale of the Fubini-Study normalization"},
        {"lambda1", "shipped as a bracket: Lichnerowicz lower bound and Rayleigh upper bound"},
        {"harmonic_weyl", "Einstein metrics have divergence-free Weyl tensor"},
    };
    e.metric.declared.einstein = true;
    e.metric.declared.scalar = *e.known.scalar;
    e.lambda1_trials = {
        parse_with("(x0^2 + x1^2 + x2^2 + x3^2 - 2)/" + rho, ps),
        parse_with("2*x0/" + rho, ps),
    };
    e.integration = IntegrationDomain{
        IntegrationAxis::real_line(1.0), IntegrationAxis::real_line(1.0),
        IntegrationAxis::real_line(1.0), IntegrationAxis::real_line(1.0)};
    e.volume_exact = M_PI * M_PI / 2.0 * t * t;
    return e;
}

CatalogEntry make_s2xs2(const ParamMap& overrides) {
    reject_unknown_params(overrides, {"a", "b"});
    const double a = param_or(overrides, "a", 1.0);
    const double b = param_or(overrides, "b", 1.0);
    if (!(a > 0.0) || !(b > 0.0)) throw input_error("s2xs2 radii must be positive");
    CatalogEntry e;
    e.name = "s2xs2";
    e.description = "product of round 2-spheres of radii a and b";
    const std::vector<std::string> ps{"a", "b"};
    e.metric.components[sym4_index(0, 0)] =
        parse_with("4*a^4/(a^2 + x0^2 + x1^2)^2", ps);
    e.metric.components[sym4_index(1, 1)] = e.metric.components[sym4_index(0, 0)];
    e.metric.components[sym4_index(2, 2)] =
        parse_with("4*b^4/(b^2 + x2^2 + x3^2)^2", ps);
    e.metric.components[sym4_index(3, 3)] = e.metric.components[sym4_index(2, 2)];
    e.metric.domain = {{{-2.5 * a, 2.5 * a},
                        {-2.5 * a, 2.5 * a},
                        {-2.5 * b, 2.5 * b},
                        {-2.5 * b, 2.5 * b}}};
    e.metric.params["a"] = a;
    e.metric.params["b"] = b;
    e.metric.name = e.name;
    e.known.scalar = 2.0 / (a * a) + 2.0 / (b * b);
    e.known.einstein = (a == b);
    e.known.lambda1_exact = 2.0 / std::max(a, b) / std::max(a, b);
    e.known.harmonic_weyl = true;
    e.known.provenance = {
        {"scalar", "sum of the factor scalar curvatures 2/a^2 + 2/b^2"},
        {"lambda1", "first harmonic of the larger factor sphere"},
        {"harmonic_weyl", "locally symmetric: parallel curvature"},
    };
    e.metric.declared.einstein = e.known.einstein;
    e.metric.declared.scalar = *e.known.scalar;
    e.metric.declared.lambda1 = *e.known.lambda1_exact;
    const std::string ha = "(x0^2 + x1^2 - a^2)/(x0^2 + x1^2 + a^2)";
    const std::string hb = "(x2^2 + x3^2 - b^2)/(x2^2 + x3^2 + b^2)";
    e.lambda1_eigenfunction = parse_with(a >= b ? ha : hb, ps);
    e.lambda1_trials = {parse_with(ha, ps), parse_with(hb, ps)};
    e.integration = IntegrationDomain{
        IntegrationAxis::real_line(a), IntegrationAxis::real_line(a),
        IntegrationAxis::real_line(b), IntegrationAxis::real_line(b)};
    e.volume_exact = 16.0 * M_PI * M_PI * a * a * b * b;
    return e;
}

CatalogEntry make_s1xs3(const ParamMap& overrides) {
    reject_unknown_params(overrides, {"length", "r"});
    const double L = param_or(overrides, "length", 1.0);
    const double r = param_or(overrides, "r", 1.0);
    if (!(L > 0.0) || !(r > 0.0)) throw input_error("s1xs3 sizes must be positive");
    CatalogEntry e;
    e.name = "s1xs3";
    e.description = "flat circle (circumference 2 pi length) times round 3-sphere";
    const std::vector<std::string> ps{"length", "r"};
    e.metric.components[sym4_index(0, 0)] = parse_with("length^2", ps);
    const std::string conf = "4*r^4/(r^2 + x1^2 + x2^2 + x3^2)^2";
    for (int i = 1; i < 4; ++i) e.metric.components[sym4_index(i, i)] = parse_with(conf, ps);
    e.metric.domain = {{{0.0, 2.0 * M_PI},
                        {-2.5 * r, 2.5 * r},
                        {-2.5 * r, 2.5 * r},
                        {-2.5 * r, 2.5 * r}}};
    e.metric.params["length"] = L;
    e.metric.params["r"] = r;
    e.metric.name = e.name;
    e.known.scalar = 6.0 / (r * r);
    e.known.einstein = false;
    e.known.locally_conformally_flat = true;
    e.known.harmonic_weyl = true;
    const double lam_circle = 1.0 / (L * L);
    const double lam_sphere = 3.0 / (r * r);
    e.known.lambda1_exact = std::min(lam_circle, lam_sphere);
    e.known.provenance = {
        {"scalar", "flat factor contributes nothing: s = 6/r^2"},
        {"lambda1", "min of the circle mode 1/length^2 and the 3-sphere harmonic 3/r^2"},
        {"harmonic_weyl", "W = 0 identically (conformally flat product)"},
    };
    e.metric.declared.einstein = false;
    e.metric.declared.scalar = *e.known.scalar;
    e.metric.declared.lambda1 = *e.known.lambda1_exact;
    const std::string circle_trial = "sin(x0)";
    const std::string sphere_trial =
        "(x1^2 + x2^2 + x3^2 - r^2)/(x1^2 + x2^2 + x3^2 + r^2)";
    e.lambda1_eigenfunction =
        parse_with(lam_circle <= lam_sphere ? circle_trial : sphere_trial, ps);
    e.lambda1_trials = {parse_with(circle_trial, ps), parse_with(sphere_trial, ps)};
    e.integration = IntegrationDomain{
        IntegrationAxis::interval(0.0, 2.0 * M_PI), IntegrationAxis::real_line(r),
        IntegrationAxis::real_line(r), IntegrationAxis::real_line(r)};
    e.volume_exact = 2.0 * M_PI * L * 2.0 * M_PI * M_PI * r * r * r;
    return e;
}

CatalogEntry make_t4(const ParamMap& overrides) {
    reject_unknown_params(overrides, {});
    CatalogEntry e;
    e.name = "t4";
    e.description = "flat torus, box of side 2 pi";
    for (int i = 0; i < 4; ++i) e.metric.components[sym4_index(i, i)] = parse("1");
    e.metric.domain = {{{0.0, 2.0 * M_PI},
                        {0.0, 2.0 * M_PI},
                        {0.0, 2.0 * M_PI},
                        {0.0, 2.0 * M_PI}}};
    e.metric.name = e.name;
    e.known.scalar = 0.0;
    e.known.einstein = true;
    e.known.lambda1_exact = 1.0;
    e.known.locally_conformally_flat = true;
    e.known.harmonic_weyl = true;
    e.known.provenance = {
        {"scalar", "flat metric"},
        {"lambda1", "first Fourier mode sin(x0)"},
        {"harmonic_weyl", "flat metric"},
    };
    e.metric.declared.einstein = true;
    e.metric.declared.scalar = 0.0;
    e.metric.declared.lambda1 = 1.0;
    e.lambda1_eigenfunction = parse("sin(x0)");
    e.lambda1_trials = {parse("sin(x0)"), parse("sin(x1)")};
    e.integration = IntegrationDomain{
        IntegrationAxis::interval(0.0, 2.0 * M_PI), IntegrationAxis::interval(0.0, 2.0 * M_PI),
        IntegrationAxis::interval(0.0, 2.0 * M_PI), IntegrationAxis::interval(0.0, 2.0 * M_PI)};
    e.volume_exact = std::pow(2.0 * M_PI, 4);
    return e;
}

CatalogEntry make_schwarzschild(const ParamMap& overrides) {
    reject_unknown_params(overrides, {"m"});
    const double mass = param_or(overrides, "m", 1.0);
    if (!(mass > 0.0)) throw input_error("schwarzschild mass must be positive");
    CatalogEntry e;
    e.name = "schwarzschild";
    e.description = "Euclidean Schwarzschild metric, chart r > 2m";
    const std::vector<std::string> ps{"m"};
    e.metric.components[sym4_index(0, 0)] = parse_with("1 - 2*m/x1", ps);
    e.metric.components[sym4_index(1, 1)] = parse_with("1/(1 - 2*m/x1)", ps);
    e.metric.components[sym4_index(2, 2)] = parse_with("x1^2", ps);
    e.metric.components[sym4_index(3, 3)] = parse_with("x1^2*sin(x2)^2", ps);
    e.metric.domain = {{{0.0, 8.0},
                        {2.2 * mass, 8.0 * mass},
                        {0.4, M_PI - 0.4},
                        {0.0, 2.0 * M_PI}}};
    e.metric.params["m"] = mass;
    e.metric.name = e.name;
    e.known.scalar = 0.0;
    e.known.einstein = true;  // Ricci-flat
    e.known.harmonic_weyl = true;
    e.known.provenance = {
        {"scalar", "Ricci-flat"},
        {"harmonic_weyl", "Einstein (Ricci-flat) metrics have divergence-free Weyl tensor"},
    };
    e.metric.declared.einstein = true;
    e.metric.declared.scalar = 0.0;
    e.compact = false;
    return e;
}

CatalogEntry make_s4_perturbed(const ParamMap& overrides) {
    reject_unknown_params(overrides, {"eps"});
    const double eps = param_or(overrides, "eps", 0.4);
    if (!(eps > -1.0 && eps < 1.0))
        throw input_error("s4-perturbed amplitude must keep the metric positive");
    CatalogEntry e;
    e.name = "s4-perturbed";
    e.description = "anisotropic perturbation of the round chart metric (non-harmonic Weyl)";
    const std::vector<std::string> ps{"eps"};
    const std::string conf = "4/(1 + x0^2 + x1^2 + x2^2 + x3^2)^2";
    e.metric.components[sym4_index(0, 0)] =
        parse_with("(1 + eps*sin(x1))*" + conf, ps);
    for (int i = 1; i < 4; ++i) e.metric.components[sym4_index(i, i)] = parse_with(conf, ps);
    e.metric.domain = {{{-1.5, 1.5}, {-1.5, 1.5}, {-1.5, 1.5}, {-1.5, 1.5}}};
    e.metric.params["eps"] = eps;
    e.metric.name = e.name;
    e.known.einstein = false;
    e.known.harmonic_weyl = false;
    e.known.provenance = {
        {"harmonic_weyl", "generic anisotropic perturbation; divergence checked non-zero"},
    };
    e.metric.declared.einstein = false;
    e.compact = false;  // chart metric only; no spectral machinery
    return e;
}

}  // namespace

std::vector<std::string> catalog_names() {
    return {"s4", "cp2", "s2xs2", "s1xs3", "t4", "schwarzschild", "s4-perturbed"};
}

CatalogEntry catalog_entry(const std::string& name, const ParamMap& overrides) {
    CatalogEntry e;
    if (name == "s4") e = make_s4(overrides);
    else if (name == "cp2") e = make_cp2(overrides);
    else if (name == "s2xs2") e = make_s2xs2(overrides);
    else if (name == "s1xs3") e = make_s1xs3(overrides);
    else if (name == "t4") e = make_t4(overrides);
    else if (name == "schwarzschild") e = make_schwarzschild(overrides);
    else if (name == "s4-perturbed") e = make_s4_perturbed(overrides);
    else throw input_error("unknown catalog entry '" + name + "'");
    verify_entry(e);
    return e;
}

std::vector<CatalogEntry> catalog() {
    std::vector<CatalogEntry> out;
    for (const auto& n : catalog_names()) out.push_back(catalog_entry(n));
    return out;
}

static Point4 halton_point(const MetricField& m, int idx) {
    static constexpr int bases[4] = {2, 3, 5, 7};
    Point4 p;
    for (int i = 0; i < 4; ++i) {
        const double t = halton(idx + 1, bases[i]);
        // Keep samples off the boundary.
        p[i] = m.domain[i][0] + (m.domain[i][1] - m.domain[i][0]) * (0.05 + 0.9 * t);
    }
    return p;
}

void verify_entry(const CatalogEntry& entry) {
    const int samples = 16;
    for (int k = 0; k < samples; ++k) {
        const Point4 p = halton_point(entry.metric, k);
        const RiemannAtPoint rap = curvature_at(entry.metric, p);
        if (entry.known.scalar) {
            const double want = *entry.known.scalar;
            if (std::abs(rap.s - want) > 1e-6 * std::max(1.0, std::abs(want)))
                throw numeric_error("catalog verification failed: scalar curvature of " +
                                    entry.name);
        }
        if (entry.known.einstein) {
            const double res = rap.einstein_residual();
            const bool is_einstein = res <= 1e-6;
            if (is_einstein != *entry.known.einstein)
                throw numeric_error("catalog verification failed: Einstein flag of " +
                                    entry.name);
        }
        if (entry.known.lambda1_exact && entry.lambda1_eigenfunction) {
            const double lam = *entry.known.lambda1_exact;
            const double f = eval_value(entry.lambda1_eigenfunction, p, entry.metric.params);
            const double lap = laplace_beltrami(entry.metric, entry.lambda1_eigenfunction, p);
            if (std::abs(lap + lam * f) > 1e-6 * std::max(1.0, lam))
                throw numeric_error("catalog verification failed: lambda1 eigenfunction of " +
                                    entry.name);
        }
    }
}

double sampled_ricci_minimum(const MetricField& m, int samples) {
    double rho = std::numeric_limits<double>::infinity();
    for (int k = 0; k < samples; ++k) {
        const Point4 p = halton_point(m, k);
        const RiemannAtPoint rap = curvature_at(m, p);
        rho = std::min(rho, sym4_eigenvalues(rap.Ric)[0]);
    }
    return rho;
}

Lambda1Estimate lambda1_estimate(const CatalogEntry& entry, int nodes_per_axis) {
    if (!entry.compact || !entry.integration)
        throw input_error("lambda1 estimation requires a compact catalog model");
    if (entry.lambda1_trials.empty())
        throw input_error("catalog entry has no trial functions");

    Lambda1Estimate est;
    est.sampled_rho = sampled_ricci_minimum(entry.metric);
    const double lich = 4.0 * std::max(est.sampled_rho, 0.0) / 3.0;
    if (entry.known.lambda1_exact) {
        est.lower = std::max(lich, *entry.known.lambda1_exact);
        est.lower_source = "exact";
    } else {
        est.lower = lich;
        est.lower_source = "lichnerowicz";
    }

    // One pass computes volume and, per trial, integrals of f, f^2, |grad f|^2.
    const auto& trials = entry.lambda1_trials;
    const std::size_t nt = trials.size();
    std::vector<double> acc(1 + 3 * nt, 0.0);
    const MetricField& m = entry.metric;
    integrate_product(
        *entry.integration, nodes_per_axis,
        [&](const Point4& p, double w, std::vector<double>& out) {
            Mat4 g{};
            for (int i = 0; i < 4; ++i)
                for (int j = i; j < 4; ++j) {
                    const ExprPtr& c = m.components[sym4_index(i, j)];
                    const double v = c ? eval_value(c, p, m.params) : 0.0;
                    g[i][j] = v;
                    g[j][i] = v;
                }
            const double dg = det4(g);
            if (!(dg > 0.0)) return;  // outside the chart's good region
            const double vol = std::sqrt(dg) * w;
            const Mat4 ginv = inverse4(g);
            out[0] += vol;
            for (std::size_t t = 0; t < nt; ++t) {
                const Jet1 jf = eval_jet1(trials[t], p, m.params);
                double grad2 = 0.0;
                for (int i = 0; i < 4; ++i)
                    for (int j = 0; j < 4; ++j) grad2 += ginv[i][j] * jf.g[i] * jf.g[j];
                out[1 + 3 * t] += vol * jf.v;
                out[2 + 3 * t] += vol * jf.v * jf.v;
                out[3 + 3 * t] += vol * grad2;
            }
        },
        acc);

    est.quadrature_volume = acc[0];
    est.volume_exact = entry.volume_exact;
    if (entry.volume_exact)
        est.volume_rel_error = std::abs(acc[0] - *entry.volume_exact) / *entry.volume_exact;
    if (!(acc[0] > 0.0)) throw numeric_error("quadrature produced a non-positive volume");
    if (est.volume_rel_error > 1e-2)
        throw numeric_error("quadrature did not converge (volume error " +
                            std::to_string(est.volume_rel_error) + ")");

    double best = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < nt; ++t) {
        const double mean = acc[1 + 3 * t] / acc[0];
        const double denom = acc[2 + 3 * t] - mean * mean * acc[0];
        if (!(denom > 0.0)) continue;
        best = std::min(best, acc[3 + 3 * t] / denom);
    }
    if (!std::isfinite(best)) throw numeric_error("no usable Rayleigh trial function");
    est.upper_source = "rayleigh";
    // A Rayleigh quotient cannot undercut lambda1; below-lower values are
    // quadrature noise, so clamp.
    est.upper = std::max(best, est.lower);
    return est;
}

Lambda1Choice resolve_lambda1(const CatalogEntry& entry, std::optional<double> user_value) {
    if (user_value) {
        if (!(*user_value > 0.0)) throw input_error("lambda1 must be positive");
        return {*user_value, "user"};
    }
    if (entry.known.lambda1_exact) return {*entry.known.lambda1_exact, "catalog"};
    if (entry.compact && entry.integration && !entry.lambda1_trials.empty()) {
        const Lambda1Estimate est = lambda1_estimate(entry, 32);
        return {est.lower, "bracket"};
    }
    const double rho = sampled_ricci_minimum(entry.metric);
    if (!(rho > 0.0))
        throw input_error(
            "cannot resolve lambda1 automatically: no exact value, no bracket, and the "
            "sampled Ricci minimum is not positive");
    return {4.0 * rho / 3.0, "lichnerowicz"};
}

}  // namespace curv4
