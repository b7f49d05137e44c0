#include "curv4/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "curv4/errors.hpp"
#include "curv4/numerics.hpp"

namespace curv4 {

static GaussLegendre compute_gauss_legendre(int n) {
    // Newton iteration on the Legendre polynomial from the Chebyshev guess.
    GaussLegendre gl;
    gl.nodes.resize(n);
    gl.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        gl.nodes[i] = -x;
        gl.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        gl.weights[i] = w;
        gl.weights[n - 1 - i] = w;
    }
    return gl;
}

const GaussLegendre& gauss_legendre(int n) {
    static std::map<int, GaussLegendre> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
    return it->second;
}

void integrate_product(const IntegrationDomain& dom, int n,
                       const std::function<void(const Point4&, double, std::vector<double>&)>& fn,
                       std::vector<double>& out) {
    if (n < 2 || n > 128) throw input_error("quadrature nodes per axis must be in [2, 128]");
    const GaussLegendre& gl = gauss_legendre(n);

    // Per-axis chart nodes and weights after the change of variables.
    std::array<std::vector<double>, 4> xs, ws;
    for (int axis = 0; axis < 4; ++axis) {
        xs[axis].resize(n);
        ws[axis].resize(n);
        const IntegrationAxis& a = dom[axis];
        for (int i = 0; i < n; ++i) {
            if (a.kind == IntegrationAxis::Kind::Interval) {
                const double half = 0.5 * (a.hi - a.lo);
                xs[axis][i] = a.lo + half * (gl.nodes[i] + 1.0);
                ws[axis][i] = gl.weights[i] * half;
            } else {
                const double u = 0.5 * M_PI * gl.nodes[i];
                const double c = std::cos(u);
                xs[axis][i] = a.scale * std::tan(u);
                ws[axis][i] = gl.weights[i] * 0.5 * M_PI * a.scale / (c * c);
            }
        }
    }

    // Parallel over the outermost axis; per-thread accumulators are reduced
    // in index order so the result does not depend on the thread count.
    const std::size_t k = out.size();
    std::vector<std::vector<double>> partial(n, std::vector<double>(k, 0.0));
    parallel_for(n, [&](int i0) {
        std::vector<double>& acc = partial[i0];
        Point4 p;
        p[0] = xs[0][i0];
        const double w0 = ws[0][i0];
        for (int i1 = 0; i1 < n; ++i1) {
            p[1] = xs[1][i1];
            const double w01 = w0 * ws[1][i1];
            for (int i2 = 0; i2 < n; ++i2) {
                p[2] = xs[2][i2];
                const double w012 = w01 * ws[2][i2];
                for (int i3 = 0; i3 < n; ++i3) {
                    p[3] = xs[3][i3];
                    fn(p, w012 * ws[3][i3], acc);
                }
            }
        }
    });
    for (int i = 0; i < n; ++i)
        for (std::size_t j = 0; j < k; ++j) out[j] += partial[i][j];
}

}  // namespace curv4
