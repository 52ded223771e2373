#pragma once

#include <functional>
#include <vector>

namespace rwns {

struct SimplexOptions {
    int max_iters = 2000;
    double tol_rel = 1e-9;      // relative simplex diameter for convergence
    double init_step_rel = 0.1; // initial vertex displacement per coordinate
};

struct SimplexResult {
    std::vector<double> x;
    double fx = 0.0;
    bool converged = false;
    int iters = 0;
};

/// Bounded Nelder–Mead: candidate vertices are clipped into [lo, hi]
/// componentwise. lo/hi may be ±inf for unbounded coordinates.
SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                          std::vector<double> x0, const std::vector<double>& lo,
                          const std::vector<double>& hi, const SimplexOptions& options = {});

} // namespace rwns
