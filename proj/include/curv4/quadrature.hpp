#pragma once

#include <functional>
#include <vector>

#include "curv4/geometry.hpp"

namespace curv4 {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
    std::vector<double> nodes, weights;
};
const GaussLegendre& gauss_legendre(int n);

/// One chart axis of an integration domain. Finite axes map Gauss-Legendre
/// nodes linearly; real-line axes substitute x = scale * tan(u) so the
/// product rule covers charts that reach all but a measure-zero set.
struct IntegrationAxis {
    enum class Kind { Interval, RealLine } kind = Kind::Interval;
    double lo = 0.0, hi = 1.0;  // Interval
    double scale = 1.0;         // RealLine

    static IntegrationAxis interval(double lo, double hi) {
        return {Kind::Interval, lo, hi, 1.0};
    }
    static IntegrationAxis real_line(double scale) {
        return {Kind::RealLine, 0.0, 0.0, scale};
    }
};

using IntegrationDomain = std::array<IntegrationAxis, 4>;

/// Integrates several scalar integrands simultaneously over the product
/// domain with n Gauss-Legendre nodes per axis. The integrand receives the
/// chart point and accumulates into the output slots (multiplied by the
/// node weight by the caller-provided lambda contract below):
/// fn(p, w, out) must do out[k] += w * integrand_k(p).
void integrate_product(const IntegrationDomain& dom, int nodes_per_axis,
                       const std::function<void(const Point4&, double, std::vector<double>&)>& fn,
                       std::vector<double>& out);

}  // namespace curv4
