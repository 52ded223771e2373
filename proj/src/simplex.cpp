#include "rwns/simplex.hpp"

#include <algorithm>
#include <cmath>

namespace rwns {

namespace {

void clip(std::vector<double>& x, const std::vector<double>& lo, const std::vector<double>& hi) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], lo[i], hi[i]);
}

} // namespace

SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                          std::vector<double> x0, const std::vector<double>& lo,
                          const std::vector<double>& hi, const SimplexOptions& options) {
    const std::size_t n = x0.size();
    clip(x0, lo, hi);

    std::vector<std::vector<double>> verts(n + 1, x0);
    std::vector<double> fvals(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        double step = options.init_step_rel * std::max(1.0, std::abs(x0[i]));
        if (verts[i + 1][i] + step > hi[i]) step = -step;
        verts[i + 1][i] += step;
        clip(verts[i + 1], lo, hi);
    }
    for (std::size_t i = 0; i <= n; ++i) fvals[i] = objective(verts[i]);

    SimplexResult result;
    const auto order = [&] {
        std::vector<std::size_t> idx(n + 1);
        for (std::size_t i = 0; i <= n; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(),
                  [&](std::size_t a, std::size_t b) { return fvals[a] < fvals[b]; });
        std::vector<std::vector<double>> v2(n + 1);
        std::vector<double> f2(n + 1);
        for (std::size_t i = 0; i <= n; ++i) {
            v2[i] = verts[idx[i]];
            f2[i] = fvals[idx[i]];
        }
        verts.swap(v2);
        fvals.swap(f2);
    };

    int iter = 0;
    for (; iter < options.max_iters; ++iter) {
        order();

        // Convergence: relative diameter of the simplex.
        double diameter = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double span = 0.0;
            for (std::size_t v = 1; v <= n; ++v)
                span = std::max(span, std::abs(verts[v][i] - verts[0][i]));
            diameter = std::max(diameter, span);
            scale = std::max(scale, std::abs(verts[0][i]));
        }
        if (diameter <= options.tol_rel * std::max(1.0, scale)) {
            result.converged = true;
            break;
        }

        std::vector<double> centroid(n, 0.0);
        for (std::size_t v = 0; v < n; ++v)
            for (std::size_t i = 0; i < n; ++i) centroid[i] += verts[v][i] / static_cast<double>(n);

        const auto blend = [&](double t) {
            std::vector<double> x(n);
            for (std::size_t i = 0; i < n; ++i)
                x[i] = centroid[i] + t * (verts[n][i] - centroid[i]);
            clip(x, lo, hi);
            return x;
        };

        const std::vector<double> reflected = blend(-1.0);
        const double fr = objective(reflected);
        if (fr < fvals[0]) {
            const std::vector<double> expanded = blend(-2.0);
            const double fe = objective(expanded);
            if (fe < fr) {
                verts[n] = expanded;
                fvals[n] = fe;
            } else {
                verts[n] = reflected;
                fvals[n] = fr;
            }
            continue;
        }
        if (fr < fvals[n - 1]) {
            verts[n] = reflected;
            fvals[n] = fr;
            continue;
        }
        const std::vector<double> contracted = blend(fr < fvals[n] ? -0.5 : 0.5);
        const double fc = objective(contracted);
        if (fc < std::min(fr, fvals[n])) {
            verts[n] = contracted;
            fvals[n] = fc;
            continue;
        }
        // Shrink toward the best vertex.
        for (std::size_t v = 1; v <= n; ++v) {
            for (std::size_t i = 0; i < n; ++i)
                verts[v][i] = verts[0][i] + 0.5 * (verts[v][i] - verts[0][i]);
            clip(verts[v], lo, hi);
            fvals[v] = objective(verts[v]);
        }
    }

    order();
    result.x = verts[0];
    result.fx = fvals[0];
    result.iters = iter;
    return result;
}

} // namespace rwns
