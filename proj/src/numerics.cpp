#include "curv4/numerics.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>

namespace curv4 {

SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                          const std::vector<double>& start, double step,
                          int max_iter, double tol) {
    const int n = static_cast<int>(start.size());
    std::vector<std::vector<double>> pts(n + 1, start);
    for (int i = 0; i < n; ++i) pts[i + 1][i] += step;
    std::vector<double> vals(n + 1);
    for (int i = 0; i <= n; ++i) vals[i] = f(pts[i]);

    auto order = [&] {
        for (int i = 0; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j)
                if (vals[j] < vals[i]) {
                    std::swap(vals[i], vals[j]);
                    std::swap(pts[i], pts[j]);
                }
    };

    int iter = 0;
    for (; iter < max_iter; ++iter) {
        order();
        if (vals[n] - vals[0] < tol) break;

        std::vector<double> centroid(n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) centroid[k] += pts[i][k] / n;

        auto blend = [&](double t) {
            std::vector<double> x(n);
            for (int k = 0; k < n; ++k) x[k] = centroid[k] + t * (pts[n][k] - centroid[k]);
            return x;
        };

        const auto refl = blend(-1.0);
        const double fr = f(refl);
        if (fr < vals[0]) {
            const auto exp_pt = blend(-2.0);
            const double fe = f(exp_pt);
            if (fe < fr) { pts[n] = exp_pt; vals[n] = fe; }
            else { pts[n] = refl; vals[n] = fr; }
        } else if (fr < vals[n - 1]) {
            pts[n] = refl;
            vals[n] = fr;
        } else {
            const auto con = blend(0.5);
            const double fc = f(con);
            if (fc < vals[n]) { pts[n] = con; vals[n] = fc; }
            else {
                for (int i = 1; i <= n; ++i) {
                    for (int k = 0; k < n; ++k)
                        pts[i][k] = pts[0][k] + 0.5 * (pts[i][k] - pts[0][k]);
                    vals[i] = f(pts[i]);
                }
            }
        }
    }
    order();
    return {pts[0], vals[0], iter};
}

static int thread_cap() {
    if (const char* env = std::getenv("CURV4_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

void parallel_for(int n, const std::function<void(int)>& fn) {
    const int workers = std::min(thread_cap(), n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (int i = w; i < n; i += workers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

double halton(int index, int base) {
    double f = 1.0, r = 0.0;
    int i = index;
    while (i > 0) {
        f /= base;
        r += f * (i % base);
        i /= base;
    }
    return r;
}

}  // namespace curv4
