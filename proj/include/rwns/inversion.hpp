#pragma once

#include <cstdint>

#include "rwns/observables.hpp"

namespace rwns {

/// Bootstrap confidence interval at level 0.68 (16th/84th percentiles of the
/// residual-bootstrap distribution, widened to contain the point estimate).
struct ParamCI {
    double lo = 0.0;
    double hi = 0.0;
    bool identifiable = true;
};

struct FitOptions {
    int restarts = 3;
    int max_iters = 2000;
    double tol_rel = 1e-9;
    int bootstrap_resamples = 200;
    std::uint64_t seed = 1;
    double weight_sigma = 1.0; // per-point measurement scale (e.g. ω resolution)
};

struct KernelFit {
    double kappa = 0.0;
    double shape = 0.0;
    double residual_norm = 0.0; // RMS residual / weight_sigma
    ParamCI kappa_ci;
    ParamCI shape_ci;
    bool converged = false;
};

/// Stage 1: weighted least squares of Δω(k) against κ·(K̂(k;s) − K̂(0;s))
/// with mass fixed to 1. Initialized from a small-k plateau / coarse shape
/// scan, refined by a bounded Nelder–Mead restarted from perturbed seeds.
/// Preconditions: ≥ 8 points spanning a factor ≥ 4 in |k|.
KernelFit fit_kernel(const DispersionCurve& curve, KernelFamily family,
                     const FitOptions& options = {});

struct SidebandPoint {
    double k = 0.0;
    double q = 0.0;
    double ratio = 0.0; // measured R(q,k)
};

struct DriveFit {
    double gamma_phi_abs = 0.0; // |γ ε Φ_q|
    double eta = 0.0;
    double residual_norm = 0.0;
    ParamCI gamma_phi_ci;
    ParamCI eta_ci;
    bool converged = false;
};

/// Stage 2: least squares of measured R against the first-order ratio law
/// with detunings from the frozen stage-1 dispersion. eta0 seeds the
/// linewidth search (default convention: 2π/T_window).
DriveFit fit_drive(const std::vector<SidebandPoint>& points, double kappa, double shape,
                   KernelFamily family, double w0, double u0, int dim, double eta0,
                   const FitOptions& options = {});

/// Joint inversion output.
struct FitResult {
    double kappa = 0.0;
    double kernel_shape = 0.0;
    KernelFamily kernel_family = KernelFamily::Gaussian;
    double gamma_phi_abs = 0.0;
    double eta = 0.0;
    double residual_norm_o1 = 0.0;
    double residual_norm_o3 = 0.0;
    double o2_consistency = 0.0; // relative ⟨Ξ⟩ deviation, filled by consistency_check
    ParamCI kappa_ci;
    ParamCI shape_ci;
    ParamCI gamma_phi_ci;
    ParamCI eta_ci;
    bool converged = false;
};

/// O2 validator: predicted ⟨Ξ⟩ from the fitted unit-mass kernel on the
/// trajectory's modal content versus the measured contrast mean; returns the
/// relative deviation.
double consistency_check(const FitResult& fit, const Trajectory& traj);

} // namespace rwns
