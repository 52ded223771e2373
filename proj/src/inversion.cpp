#include "rwns/inversion.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "rwns/simplex.hpp"
#include "rwns/util.hpp"

namespace rwns {

namespace {

struct Percentiles {
    double lo;
    double hi;
};

Percentiles percentile_68(std::vector<double> samples) {
    std::sort(samples.begin(), samples.end());
    const auto pick = [&](double p) {
        const double pos = p * (static_cast<double>(samples.size()) - 1.0);
        const std::size_t lo = static_cast<std::size_t>(pos);
        const std::size_t hi = std::min(lo + 1, samples.size() - 1);
        const double frac = pos - static_cast<double>(lo);
        return samples[lo] * (1.0 - frac) + samples[hi] * frac;
    };
    return {pick(0.16), pick(0.84)};
}

ParamCI make_ci(std::vector<double> samples, double point) {
    const Percentiles p = percentile_68(std::move(samples));
    ParamCI ci;
    ci.lo = std::min(p.lo, point);
    ci.hi = std::max(p.hi, point);
    return ci;
}

// Unit-mass family transform difference g(k; s) = K̂₁(k; s) − 1 (≤ 0).
double model_g(KernelFamily family, double shape, double k, int dim) {
    const KernelSpec spec(family, shape, 1.0);
    return spec.fourier(k, dim) - 1.0;
}

struct KernelData {
    std::vector<double> k;
    std::vector<double> y; // Δω
    int dim = 1;
};

// Closed-form optimal κ at fixed shape (the model is linear in κ).
double best_kappa(const KernelData& data, KernelFamily family, double shape) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < data.k.size(); ++i) {
        const double g = model_g(family, shape, data.k[i], data.dim);
        num += g * data.y[i];
        den += g * g;
    }
    return den > 0.0 ? num / den : 0.0;
}

double kernel_cost(const KernelData& data, KernelFamily family, double kappa, double shape) {
    double cost = 0.0;
    for (std::size_t i = 0; i < data.k.size(); ++i) {
        const double r = data.y[i] - kappa * model_g(family, shape, data.k[i], data.dim);
        cost += r * r;
    }
    return cost;
}

struct KernelPoint {
    double kappa;
    double shape;
    double cost;
    bool converged;
};

KernelPoint solve_kernel(const KernelData& data, KernelFamily family, double kappa0,
                         double shape0, double shape_lo, double shape_hi,
                         const FitOptions& options, int max_iters) {
    // Optimize (κ, ln s); bounded in ln s, generous box in κ.
    const auto objective = [&](const std::vector<double>& x) {
        return kernel_cost(data, family, x[0], std::exp(x[1]));
    };
    double y_scale = 0.0;
    for (double y : data.y) y_scale = std::max(y_scale, std::abs(y));
    const double kappa_bound = std::max(1.0, 1e4 * y_scale);
    SimplexOptions nm;
    nm.max_iters = max_iters;
    nm.tol_rel = options.tol_rel;
    const SimplexResult res =
        nelder_mead(objective, {kappa0, std::log(shape0)}, {-kappa_bound, std::log(shape_lo)},
                    {kappa_bound, std::log(shape_hi)}, nm);
    return {res.x[0], std::exp(res.x[1]), res.fx, res.converged};
}

struct DriveData {
    std::vector<double> delta_plus;
    std::vector<double> delta_minus;
    std::vector<double> r;
};

double drive_model(const DriveData& data, std::size_t i, double g2, double eta) {
    const double e2 = eta * eta;
    return 0.5 * g2 *
           (1.0 / (data.delta_plus[i] * data.delta_plus[i] + e2) +
            1.0 / (data.delta_minus[i] * data.delta_minus[i] + e2));
}

double drive_cost(const DriveData& data, double g2, double eta) {
    double cost = 0.0;
    for (std::size_t i = 0; i < data.r.size(); ++i) {
        const double r = data.r[i] - drive_model(data, i, g2, eta);
        cost += r * r;
    }
    return cost;
}

struct DrivePoint {
    double g; // |γεΦ_q|
    double eta;
    double cost;
    bool converged;
};

DrivePoint solve_drive(const DriveData& data, double g0, double eta0, double eta_hi,
                       const FitOptions& options, int max_iters) {
    // Parameterize (u, v) with g = u², η = v² so both stay nonnegative;
    // drive_cost wants g² = |γεΦ|².
    const auto objective = [&](const std::vector<double>& x) {
        const double g = x[0] * x[0];
        return drive_cost(data, g * g, x[1] * x[1]);
    };
    const double u0 = std::sqrt(std::max(g0, 1e-12));
    const double v0 = std::sqrt(std::max(eta0, 1e-12));
    SimplexOptions nm;
    nm.max_iters = max_iters;
    nm.tol_rel = options.tol_rel;
    const SimplexResult res = nelder_mead(objective, {u0, v0}, {0.0, 0.0},
                                          {1e6, std::sqrt(eta_hi)}, nm);
    return {res.x[0] * res.x[0], res.x[1] * res.x[1], res.fx, res.converged};
}

} // namespace

KernelFit fit_kernel(const DispersionCurve& curve, KernelFamily family,
                     const FitOptions& options) {
    KernelData data;
    data.dim = 1;
    for (std::size_t i = 0; i < curve.k.size(); ++i) {
        if (curve.k[i] == 0.0) continue;
        data.k.push_back(std::abs(curve.k[i]));
        data.y.push_back(curve.residual[i]);
    }
    if (data.k.size() < 8)
        throw InsufficientData("fit_kernel: need >= 8 retained k points, have " +
                               std::to_string(data.k.size()));
    const auto [kmin_it, kmax_it] = std::minmax_element(data.k.begin(), data.k.end());
    const double k_min = *kmin_it, k_max = *kmax_it;
    if (k_max < 4.0 * k_min)
        throw InsufficientData("fit_kernel: k range must span a factor >= 4");

    const double shape_lo = 0.05 / k_max;
    const double shape_hi = 50.0 / k_min;

    // Initialization: coarse log-spaced shape scan with closed-form κ(s),
    // seeded conceptually by the small-k plateau (the scan contains it).
    double best_cost = std::numeric_limits<double>::infinity();
    double shape0 = std::sqrt(shape_lo * shape_hi), kappa0 = 0.0;
    const int scan = 64;
    for (int i = 0; i < scan; ++i) {
        const double s = shape_lo * std::pow(shape_hi / shape_lo,
                                             static_cast<double>(i) / (scan - 1));
        const double kap = best_kappa(data, family, s);
        const double cost = kernel_cost(data, family, kap, s);
        if (cost < best_cost) {
            best_cost = cost;
            shape0 = s;
            kappa0 = kap;
        }
    }

    // Multi-start Nelder–Mead, best converged restart wins.
    std::vector<KernelPoint> solutions;
    const double perturb[4][2] = {{1.0, 1.0}, {1.3, 0.7}, {0.7, 1.4}, {1.5, 1.2}};
    for (int r = 0; r < std::max(1, options.restarts) + 1 && r < 4; ++r) {
        const double k0 = (kappa0 == 0.0) ? 0.0 : kappa0 * perturb[r][0];
        const double s0 = std::clamp(shape0 * perturb[r][1], shape_lo, shape_hi);
        solutions.push_back(
            solve_kernel(data, family, k0, s0, shape_lo, shape_hi, options, options.max_iters));
    }
    std::sort(solutions.begin(), solutions.end(),
              [](const KernelPoint& a, const KernelPoint& b) { return a.cost < b.cost; });
    const auto best_converged = std::find_if(solutions.begin(), solutions.end(),
                                             [](const KernelPoint& p) { return p.converged; });
    if (best_converged == solutions.end())
        throw NoConvergence("fit_kernel: no restart converged within " +
                            std::to_string(options.max_iters) + " iterations");
    const KernelPoint best = *best_converged; // lowest-cost converged restart

    KernelFit fit;
    fit.kappa = best.kappa;
    fit.shape = best.shape;
    fit.converged = true;
    fit.residual_norm = std::sqrt(best.cost / static_cast<double>(data.k.size())) /
                        options.weight_sigma;

    // Residual bootstrap (fixed-design) for the 0.68 CIs.
    std::vector<double> fitted(data.k.size()), residuals(data.k.size());
    for (std::size_t i = 0; i < data.k.size(); ++i) {
        fitted[i] = best.kappa * model_g(family, best.shape, data.k[i], data.dim);
        residuals[i] = data.y[i] - fitted[i];
    }
    const std::size_t resamples = static_cast<std::size_t>(options.bootstrap_resamples);
    std::vector<double> boot_kappa(resamples), boot_shape(resamples);
    parallel_for(resamples, [&](std::size_t b) {
        std::mt19937_64 rng(options.seed + 0x9e3779b97f4a7c15ULL * (b + 1));
        std::uniform_int_distribution<std::size_t> pick(0, residuals.size() - 1);
        KernelData resampled = data;
        for (std::size_t i = 0; i < resampled.y.size(); ++i)
            resampled.y[i] = fitted[i] + residuals[pick(rng)];
        const KernelPoint p = solve_kernel(resampled, family, best.kappa, best.shape, shape_lo,
                                           shape_hi, options, 600);
        boot_kappa[b] = p.kappa;
        boot_shape[b] = p.shape;
    });
    fit.kappa_ci = make_ci(std::move(boot_kappa), fit.kappa);
    fit.shape_ci = make_ci(std::move(boot_shape), fit.shape);

    // κ consistent with zero ⟹ the shape scale is not identified.
    const double kappa_halfwidth = 0.5 * (fit.kappa_ci.hi - fit.kappa_ci.lo);
    if (std::abs(fit.kappa) <= 2.0 * kappa_halfwidth || fit.kappa == 0.0) {
        fit.shape_ci.identifiable = false;
        fit.shape_ci.lo = shape_lo;
        fit.shape_ci.hi = shape_hi;
    }
    return fit;
}

DriveFit fit_drive(const std::vector<SidebandPoint>& points, double kappa, double shape,
                   KernelFamily family, double w0, double u0, int dim, double eta0,
                   const FitOptions& options) {
    if (points.size() < 4)
        throw InsufficientData("fit_drive: need >= 4 (k,q) points, have " +
                               std::to_string(points.size()));

    const ModelParams frozen = ModelParams::homogeneous(
        dim, w0, u0, 0.0, kappa, 0.0, Nonlinearity::off(), KernelSpec(family, shape, 1.0));

    DriveData data;
    for (const SidebandPoint& p : points) {
        const double w = omega0(frozen, std::abs(p.k));
        const double dp = w - omega0(frozen, std::abs(p.k + p.q));
        const double dm = w - omega0(frozen, std::abs(p.k - p.q));
        if (dp == 0.0 || dm == 0.0)
            throw DegenerateDetuning("fit_drive: point at exact resonance (k = " +
                                     std::to_string(p.k) + ")");
        data.delta_plus.push_back(dp);
        data.delta_minus.push_back(dm);
        data.r.push_back(p.ratio);
    }
    {
        // "Distinct detunings": at least two different detuning magnitudes.
        std::vector<double> mags;
        for (std::size_t i = 0; i < data.r.size(); ++i)
            mags.push_back(std::min(std::abs(data.delta_plus[i]), std::abs(data.delta_minus[i])));
        std::sort(mags.begin(), mags.end());
        if (mags.back() - mags.front() < 1e-12)
            throw InsufficientData("fit_drive: all points share one detuning");
    }

    // Initial |γεΦ|² from the largest-R point with η = 0.
    std::size_t imax = 0;
    for (std::size_t i = 1; i < data.r.size(); ++i)
        if (data.r[i] > data.r[imax]) imax = i;
    const double denom0 = drive_model(data, imax, 1.0, 0.0);
    const double g2_init = denom0 > 0.0 ? std::max(data.r[imax], 0.0) / denom0 : 0.0;

    double delta_scale = 0.0;
    for (std::size_t i = 0; i < data.r.size(); ++i)
        delta_scale = std::max({delta_scale, std::abs(data.delta_plus[i]),
                                std::abs(data.delta_minus[i])});
    const double eta_hi = 100.0 * std::max(delta_scale, eta0);

    std::vector<DrivePoint> solutions;
    const double perturb[4][2] = {{1.0, 1.0}, {2.0, 0.3}, {0.5, 3.0}, {1.0, 0.1}};
    for (int r = 0; r < std::max(1, options.restarts) + 1 && r < 4; ++r)
        solutions.push_back(solve_drive(data, std::sqrt(g2_init) * perturb[r][0],
                                        eta0 * perturb[r][1], eta_hi, options,
                                        options.max_iters));
    std::sort(solutions.begin(), solutions.end(),
              [](const DrivePoint& a, const DrivePoint& b) { return a.cost < b.cost; });
    const auto best_it = std::find_if(solutions.begin(), solutions.end(),
                                      [](const DrivePoint& p) { return p.converged; });
    if (best_it == solutions.end())
        throw NoConvergence("fit_drive: no restart converged");
    const DrivePoint best = *best_it;

    DriveFit fit;
    fit.gamma_phi_abs = best.g;
    fit.eta = best.eta;
    fit.converged = true;
    fit.residual_norm =
        std::sqrt(best.cost / static_cast<double>(data.r.size())) / options.weight_sigma;

    std::vector<double> fitted(data.r.size()), residuals(data.r.size());
    for (std::size_t i = 0; i < data.r.size(); ++i) {
        fitted[i] = drive_model(data, i, best.g * best.g, best.eta);
        residuals[i] = data.r[i] - fitted[i];
    }
    const std::size_t resamples = static_cast<std::size_t>(options.bootstrap_resamples);
    std::vector<double> boot_g(resamples), boot_eta(resamples);
    parallel_for(resamples, [&](std::size_t b) {
        std::mt19937_64 rng(options.seed + 0x9e3779b97f4a7c15ULL * (b + 1));
        std::uniform_int_distribution<std::size_t> pick(0, residuals.size() - 1);
        DriveData resampled = data;
        for (std::size_t i = 0; i < resampled.r.size(); ++i)
            resampled.r[i] = fitted[i] + residuals[pick(rng)];
        const DrivePoint p =
            solve_drive(resampled, fit.gamma_phi_abs, std::max(best.eta, 0.1 * eta0), eta_hi,
                        options, 600);
        boot_g[b] = p.g;
        boot_eta[b] = p.eta;
    });
    fit.gamma_phi_ci = make_ci(std::move(boot_g), fit.gamma_phi_abs);
    fit.eta_ci = make_ci(std::move(boot_eta), fit.eta);

    const double g_halfwidth = 0.5 * (fit.gamma_phi_ci.hi - fit.gamma_phi_ci.lo);
    if (fit.gamma_phi_abs <= 2.0 * g_halfwidth || fit.gamma_phi_abs == 0.0) {
        fit.eta_ci.identifiable = false;
        fit.eta_ci.lo = 0.0;
        fit.eta_ci.hi = eta_hi;
    }
    return fit;
}

double consistency_check(const FitResult& fit, const Trajectory& traj) {
    const ContrastSeries measured = contrast_series(traj);
    const ModelParams predicted_params =
        traj.params.with_kernel(KernelSpec(fit.kernel_family, fit.kernel_shape, 1.0));
    double sum = 0.0;
    for (const ComplexField& snap : traj.snapshots)
        sum += kernel_contrast(snap, predicted_params);
    const double predicted = sum / static_cast<double>(traj.snapshots.size());
    if (measured.mean == 0.0) return predicted == 0.0 ? 0.0 : 1.0;
    return std::abs(predicted - measured.mean) / std::abs(measured.mean);
}

} // namespace rwns
