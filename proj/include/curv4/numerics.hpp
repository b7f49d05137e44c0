#pragma once

#include <functional>
#include <vector>

namespace curv4 {

/// Downhill-simplex minimizer (fixed policy for cross-platform determinism).
/// Runs at most `max_iter` iterations or until the simplex value spread
/// drops below `tol`.
struct SimplexResult {
    std::vector<double> x;
    double value = 0.0;
    int iterations = 0;
};

SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                          const std::vector<double>& start, double step,
                          int max_iter = 200, double tol = 1e-10);

/// Runs fn(i) for i in [0, n); results must be written by index. Thread
/// count is capped by the CURV4_THREADS environment variable.
void parallel_for(int n, const std::function<void(int)>& fn);

/// Halton low-discrepancy sequence point (bases 2,3,5,7), component in [0,1).
double halton(int index, int base);

}  // namespace curv4
