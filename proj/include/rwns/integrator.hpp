#pragma once

#include <vector>

#include "rwns/operators.hpp"

namespace rwns {

enum class Scheme { StrangSplit, RK4 };

std::string to_string(Scheme scheme);
Scheme scheme_from_string(const std::string& name);

/// Time-stepping configuration. The CFL bound for RK4 and the homogeneity
/// requirement for StrangSplit are checked against the actual grid/params
/// when stepping starts (the config alone does not know them).
struct StepperConfig {
    Scheme scheme = Scheme::StrangSplit;
    double dt = 1e-3;
    double t_end = 1.0;
    int snapshot_stride = 1;
    int monitor_stride = 1;

    void validate() const;
    long long step_count() const;
};

/// RK4 stability bound: dt ≤ cfl_safety · dx² / max(w).
constexpr double kCflSafety = 0.2;
double rk4_dt_limit(const PeriodicGrid& grid, const ModelParams& params);

/// Default StrangSplit step 1e-3·(2π/ω_max), ω_max the largest linear
/// lattice frequency magnitude.
double default_strang_dt(const PeriodicGrid& grid, const ModelParams& params);

struct MonitorSample {
    double t = 0.0;
    ConservedSet values;
};

/// A finished run: time-stamped snapshots (uniformly spaced at
/// dt·snapshot_stride starting from t = 0) plus the conserved-quantity
/// monitor series.
struct Trajectory {
    std::vector<ComplexField> snapshots;
    std::vector<MonitorSample> monitors;
    ModelParams params;
    StepperConfig config;

    double snapshot_spacing() const { return config.dt * config.snapshot_stride; }
};

/// One palindromic split step: half pointwise phase exp(−i·dt/2·(U₀+βg(ρ))),
/// half drive substep, full Fourier step exp(−i·dt·(w₀|k|²+κ(K̂(k)−K̂(0))))
/// at exact lattice K̂ values, half drive substep, half pointwise phase.
/// Every substep is an exact sub-flow, so the step is second order and
/// conserves mass exactly per substep. Requires homogeneous w and U.
ComplexField step_strang(const ComplexField& psi, const ModelParams& params, double dt);

/// Exact centered-drive sub-flow: ψ ← e^{γφ·dt}ψ·s with the unique global
/// scalar s = sqrt(M_before/M_raw_after) > 0 that preserves the discrete
/// mass exactly (the discrete analogue of subtracting ⟨φ⟩).
ComplexField drive_substep(const ComplexField& psi, const RealField& phi, double gamma,
                           double dt);

/// Classical four-stage step on rhs(); fourth order. Throws CflViolation
/// above the stability bound.
ComplexField step_rk4(const ComplexField& psi, const ModelParams& params, double dt);

/// Advance psi0 to t_end recording snapshots and monitors. Aborts with
/// NumericalBlowup (carrying the last finite time) if any sample leaves the
/// finite range.
Trajectory evolve(const ComplexField& psi0, const ModelParams& params,
                  const StepperConfig& config);

} // namespace rwns
