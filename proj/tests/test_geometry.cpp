#include <doctest.h>

#include <cmath>

#include "curv4/catalog.hpp"
#include "curv4/duality.hpp"
#include "curv4/errors.hpp"
#include "curv4/geometry.hpp"
#include "curv4/weyl_fields.hpp"
#include "oracles.hpp"

using namespace curv4;

namespace {

MetricField flat_metric() {
    MetricField m;
    for (int i = 0; i < 4; ++i) m.components[sym4_index(i, i)] = parse("1");
    m.domain = {{{-5, 5}, {-5, 5}, {-5, 5}, {-5, 5}}};
    m.name = "flat";
    return m;
}

double max_christoffel_diff(const Christoffel& a, const Christoffel& b) {
    double worst = 0.0;
    for (int k = 0; k < 4; ++k)
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                worst = std::max(worst, std::abs(a[k][i][j] - b[k][i][j]));
    return worst;
}

double weyl_frobenius(const Ten4& w) {
    double s = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) s += w[a][b][c][d] * w[a][b][c][d];
    return std::sqrt(s);
}

}  // namespace

TEST_CASE("christoffel: flat metric gives zero symbols") {
    const Christoffel gamma = christoffel(flat_metric(), {0.3, -1.0, 2.0, 0.1});
    for (int k = 0; k < 4; ++k)
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) CHECK(gamma[k][i][j] == 0.0);
}

TEST_CASE("christoffel: round sphere chart matches the FD oracle") {
    const CatalogEntry s4 = catalog_entry("s4");
    const Point4 p{1.0, 0.0, 0.0, 0.0};
    const Christoffel jets = christoffel(s4.metric, p);
    const Christoffel fd = curv4::testing::fd_christoffel(s4.metric, p);
    CHECK(max_christoffel_diff(jets, fd) <= 1e-8);
}

TEST_CASE("christoffel: hand values for diag(1, x0^2, 1, 1)") {
    MetricField m = flat_metric();
    m.components[sym4_index(1, 1)] = parse("x0^2");
    const Point4 p{2.0, 0.0, 0.0, 0.0};
    const Christoffel gamma = christoffel(m, p);
    CHECK(gamma[0][1][1] == doctest::Approx(-2.0));
    CHECK(gamma[1][0][1] == doctest::Approx(0.5));
    CHECK(gamma[1][1][0] == doctest::Approx(0.5));
    CHECK(max_christoffel_diff(gamma, curv4::testing::fd_christoffel(m, p)) <= 1e-8);
}

TEST_CASE("christoffel: non-SPD metric raises a numeric error") {
    MetricField m = flat_metric();
    m.components[sym4_index(0, 0)] = parse("-1");
    CHECK_THROWS_AS(christoffel(m, {0, 0, 0, 0}), numeric_error);
    MetricField out_of_domain = flat_metric();
    CHECK_THROWS_AS(christoffel(out_of_domain, {99, 0, 0, 0}), input_error);
}

TEST_CASE("curvature: unit round sphere has constant-curvature components") {
    const CatalogEntry s4 = catalog_entry("s4");
    std::mt19937_64 rng(3);
    for (int n = 0; n < 5; ++n) {
        const Point4 p = curv4::testing::random_point_in(s4.metric, rng);
        const RiemannAtPoint rap = curvature_at(s4.metric, p);
        CHECK(rap.s == doctest::Approx(12.0).epsilon(1e-9));
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                for (int c = 0; c < 4; ++c)
                    for (int d = 0; d < 4; ++d) {
                        const double want =
                            (a == c && b == d ? 1.0 : 0.0) - (a == d && b == c ? 1.0 : 0.0);
                        CHECK(rap.R[a][b][c][d] == doctest::Approx(want).epsilon(1e-9));
                    }
        CHECK(weyl_frobenius(rap.W) <= 1e-9);
        CHECK(rap.einstein_residual() <= 1e-10);
        CHECK(rap.bianchi_residual <= 1e-9);
        CHECK(rap.weyl_trace_residual <= 1e-9);
        CHECK(rap.b_trace_residual <= 1e-10);
    }
}

TEST_CASE("curvature: flat torus is flat") {
    const CatalogEntry t4 = catalog_entry("t4");
    const RiemannAtPoint rap = curvature_at(t4.metric, {1.0, 2.0, 3.0, 4.0});
    CHECK(rap.s == doctest::Approx(0.0).epsilon(1e-14));
    double max_r = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) max_r = std::max(max_r, std::abs(rap.R[a][b][c][d]));
    CHECK(max_r <= 1e-14);
}

TEST_CASE("curvature: unequal product of spheres") {
    const CatalogEntry s2 = catalog_entry("s2xs2", {{"a", 1.0}, {"b", 2.0}});
    std::mt19937_64 rng(5);
    const Point4 p = curv4::testing::random_point_in(s2.metric, rng);
    const RiemannAtPoint rap = curvature_at(s2.metric, p);
    CHECK(rap.s == doctest::Approx(2.5).epsilon(1e-9));
    const Vec4 b_eig = sym4_eigenvalues(rap.B);
    CHECK(b_eig[0] == doctest::Approx(-0.375).epsilon(1e-8));
    CHECK(b_eig[1] == doctest::Approx(-0.375).epsilon(1e-8));
    CHECK(b_eig[2] == doctest::Approx(0.375).epsilon(1e-8));
    CHECK(b_eig[3] == doctest::Approx(0.375).epsilon(1e-8));
    CHECK(rap.einstein_residual() == doctest::Approx(0.75).epsilon(1e-8));
}

TEST_CASE("frame: orthonormality, orientation, and frame independence") {
    for (const char* name : {"cp2", "s2xs2", "schwarzschild"}) {
        const CatalogEntry entry = catalog_entry(name);
        std::mt19937_64 rng(11);
        const Point4 p = curv4::testing::random_point_in(entry.metric, rng);
        const Mat4 g = entry.metric.value(p);

        for (const std::array<int, 4> seed :
             {std::array<int, 4>{0, 1, 2, 3}, std::array<int, 4>{2, 0, 3, 1}}) {
            const Frame fr = orthonormal_frame(g, seed);
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) {
                    double ip = 0.0;
                    for (int i = 0; i < 4; ++i)
                        for (int j = 0; j < 4; ++j) ip += fr.e[a][i] * g[i][j] * fr.e[b][j];
                    CHECK(std::abs(ip - (a == b ? 1.0 : 0.0)) <= 1e-10);
                }
            Mat4 c{};
            for (int i = 0; i < 4; ++i)
                for (int a = 0; a < 4; ++a) c[i][a] = fr.e[a][i];
            CHECK(det4(c) > 0.0);
        }

        // Frame-independence of the scalar invariants.
        const RiemannAtPoint r1 = curvature_at(entry.metric, p, {0, 1, 2, 3});
        const RiemannAtPoint r2 = curvature_at(entry.metric, p, {2, 0, 3, 1});
        CHECK(std::abs(r1.s - r2.s) <= 1e-9);
        CHECK(std::abs(r1.einstein_residual() - r2.einstein_residual()) <= 1e-9);
        const WeylSpectrum w1 = weyl_spectrum(curvature_blocks(r1));
        const WeylSpectrum w2 = weyl_spectrum(curvature_blocks(r2));
        for (int i = 0; i < 3; ++i) {
            CHECK(std::abs(w1.wplus[i] - w2.wplus[i]) <= 1e-9);
            CHECK(std::abs(w1.wminus[i] - w2.wminus[i]) <= 1e-9);
        }
    }
}

TEST_CASE("catalog metrics satisfy Bianchi and metric-compatibility residuals") {
    // 100 random points per entry, FD route for the compatibility check.
    std::mt19937_64 rng(17);
    for (const char* name : {"s4", "cp2", "s2xs2", "s1xs3", "t4", "schwarzschild",
                             "s4-perturbed"}) {
        const CatalogEntry entry = catalog_entry(name);
        for (int n = 0; n < 100; ++n) {
            const Point4 p = curv4::testing::random_point_in(entry.metric, rng);
            const RiemannAtPoint rap = curvature_at(entry.metric, p);
            CHECK(rap.bianchi_residual <= 1e-9);
        }
        for (int n = 0; n < 5; ++n) {
            const Point4 p = curv4::testing::random_point_in(entry.metric, rng, 0.2);
            const Christoffel gamma = christoffel(entry.metric, p);
            const auto h = fd_steps(p, 1e-4);
            double worst = 0.0;
            const Mat4 g0 = entry.metric.value(p);
            for (int k = 0; k < 4; ++k) {
                auto gk = [&](double step) {
                    Point4 q = p;
                    q[k] += step;
                    return entry.metric.value(q);
                };
                const Mat4 gp = gk(h[k]), gm = gk(-h[k]);
                const Mat4 gp2 = gk(2 * h[k]), gm2 = gk(-2 * h[k]);
                for (int i = 0; i < 4; ++i)
                    for (int j = 0; j < 4; ++j) {
                        const double d1 = (gp[i][j] - gm[i][j]) / (2.0 * h[k]);
                        const double d2 = (gp2[i][j] - gm2[i][j]) / (4.0 * h[k]);
                        double res = (4.0 * d1 - d2) / 3.0;
                        for (int l = 0; l < 4; ++l)
                            res -= gamma[l][k][i] * g0[l][j] + gamma[l][k][j] * g0[i][l];
                        worst = std::max(worst, std::abs(res));
                    }
            }
            CHECK(worst <= 1e-9);
        }
    }
}

TEST_CASE("scaling law: c*g divides s and K1perp by c, Einstein verdict unchanged") {
    for (const char* name : {"s4", "s2xs2"}) {
        const CatalogEntry entry =
            (std::string(name) == "s2xs2")
                ? catalog_entry(name, {{"a", 1.0}, {"b", 2.0}})
                : catalog_entry(name);
        std::mt19937_64 rng(23);
        const Point4 p = curv4::testing::random_point_in(entry.metric, rng);
        const RiemannAtPoint base = curvature_at(entry.metric, p);
        const WeylSpectrum base_ws = weyl_spectrum(curvature_blocks(base));
        const double base_k1 = 0.5 * (base_ws.wplus[0] + base_ws.wminus[0]) + base.s / 12.0;
        for (double c : {0.5, 2.0}) {
            const MetricField scaled = entry.metric.scaled(c);
            const RiemannAtPoint rap = curvature_at(scaled, p);
            CHECK(rap.s == doctest::Approx(base.s / c).epsilon(1e-9));
            const WeylSpectrum ws = weyl_spectrum(curvature_blocks(rap));
            const double k1 = 0.5 * (ws.wplus[0] + ws.wminus[0]) + rap.s / 12.0;
            CHECK(k1 == doctest::Approx(base_k1 / c).epsilon(1e-9));
            const bool base_einstein = base.einstein_residual() <= 1e-9;
            const bool scaled_einstein = rap.einstein_residual() <= 1e-9 * (1.0 / c);
            CHECK(base_einstein == scaled_einstein);
        }
    }
}

TEST_CASE("covariant derivative of W vanishes on locally symmetric models") {
    for (const char* name : {"s4", "cp2", "s2xs2", "t4"}) {
        const CatalogEntry entry = catalog_entry(name);
        std::mt19937_64 rng(29);
        const Point4 p = curv4::testing::random_point_in(entry.metric, rng, 0.25);
        const WeylDerivativeReport wd = covariant_derivative_W(entry.metric, p);
        CHECK(std::sqrt(wd.grad_w_norm2) <= 1e-4);
    }
}

TEST_CASE("Euclidean Schwarzschild Weyl derivatives match the closed radial form") {
    const CatalogEntry schw = catalog_entry("schwarzschild");
    const Point4 p{0.5, 3.0, M_PI / 2.0, 1.0};
    const WeylDerivativeReport wd = covariant_derivative_W(schw.metric, p);
    // |nabla W+|^2 = 90 m^2 r^-8 (1 - 2m/r), |nabla|W+||^2 = (3/5) of it:
    // the radial Laplacian of |W+|^2 = 6 m^2 r^-6 pins both.
    const double f = 1.0 - 2.0 / 3.0;
    const double want_grad = 90.0 / std::pow(3.0, 8) * f;
    CHECK(wd.grad_wplus_norm2 == doctest::Approx(want_grad).epsilon(1e-6));
    CHECK(wd.grad_abs_wplus_norm2 == doctest::Approx(0.6 * want_grad).epsilon(1e-6));
    CHECK(wd.grad_wplus_norm2 > 0.0);
    CHECK(std::sqrt(wd.grad_abs_wplus_norm2) <=
          std::sqrt(3.0 / 5.0 * wd.grad_wplus_norm2) + 1e-6);
    CHECK(wd.fd_error <= 1e-4);
}

TEST_CASE("divergence of W: zero on harmonic models, split identity everywhere") {
    std::mt19937_64 rng(31);
    const CatalogEntry s4 = catalog_entry("s4");
    const DivWeylReport dv_s4 =
        div_weyl(s4.metric, curv4::testing::random_point_in(s4.metric, rng, 0.25));
    CHECK(std::sqrt(dv_s4.norm2) <= 1e-8);

    const CatalogEntry cp2 = catalog_entry("cp2");
    const DivWeylReport dv_cp2 =
        div_weyl(cp2.metric, curv4::testing::random_point_in(cp2.metric, rng, 0.25));
    CHECK(std::sqrt(dv_cp2.norm2) <= 1e-4);
    CHECK(dv_cp2.split_residual <= 1e-8);

    const CatalogEntry pert = catalog_entry("s4-perturbed");
    int nonharmonic = 0;
    for (int n = 0; n < 5; ++n) {
        const Point4 p = curv4::testing::random_point_in(pert.metric, rng, 0.25);
        const DivWeylReport dv = div_weyl(pert.metric, p);
        if (std::sqrt(dv.norm2) > 1e-3) ++nonharmonic;
        CHECK(dv.split_residual <= 1e-8);
    }
    CHECK(nonharmonic >= 4);  // generic points are not harmonic-Weyl
}

TEST_CASE("FD boundary margin is enforced") {
    const CatalogEntry s4 = catalog_entry("s4");
    Point4 edge = {s4.metric.domain[0][1] - 1e-5, 0, 0, 0};
    CHECK_THROWS_AS(covariant_derivative_W(s4.metric, edge), numeric_error);
    CHECK_THROWS_AS(div_weyl(s4.metric, edge), numeric_error);
}

TEST_CASE("Laplace-Beltrami from exact jets") {
    const MetricField flat = flat_metric();
    CHECK(laplace_beltrami(flat, parse("x0^2"), {0.7, 0, 0, 0}) == doctest::Approx(2.0));
    CHECK(laplace_beltrami(flat, parse("3"), {0.7, 0, 0, 0}) ==
          doctest::Approx(0.0).epsilon(1e-15));

    // First spherical harmonic on the round sphere: an eigenfunction with
    // eigenvalue -4 of the trace-Hessian Laplacian.
    const CatalogEntry s4 = catalog_entry("s4");
    std::mt19937_64 rng(37);
    for (int n = 0; n < 5; ++n) {
        const Point4 p = curv4::testing::random_point_in(s4.metric, rng);
        const double f = eval_value(s4.lambda1_eigenfunction, p, s4.metric.params);
        const double lap = laplace_beltrami(s4.metric, s4.lambda1_eigenfunction, p);
        CHECK(std::abs(lap + 4.0 * f) <= 1e-8);
    }
}
