#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "rwns/integrator.hpp"
#include "rwns/linear_analysis.hpp"

namespace rwns {

/// Space-time power spectrum of a 1D trajectory: per-snapshot spatial FFT,
/// then per-k Hann-windowed temporal FFT (zero-padded 4× for peak
/// interpolation; omega_resolution stays the physical 2π/T_window).
/// power is normalized so that the total equals the Hann-weighted
/// time-averaged Parseval mass.
struct KOmegaSpectrum {
    std::vector<double> k;     // sorted ascending (full lattice)
    std::vector<double> omega; // sorted ascending (padded bin grid)
    std::vector<double> power; // k.size() × omega.size(), row-major in k
    double t_window = 0.0;
    double omega_resolution = 0.0; // 2π/t_window

    double at(std::size_t ik, std::size_t iw) const { return power[ik * omega.size() + iw]; }
    double column_total(std::size_t ik) const;
};

KOmegaSpectrum k_omega_spectrum(const Trajectory& traj);

/// Peak-based dispersion readout. Columns whose peak is not at least 5× the
/// column's median power are dropped; the k = 0 column is always dropped
/// (its residual is identically zero and carries no kernel signature).
/// When no baseline is given, (w₀, U₀) are fitted by least squares on the
/// top-quartile |k| columns. Throws NoPeak when nothing survives.
DispersionCurve extract_dispersion(const KOmegaSpectrum& spec,
                                   std::optional<std::pair<double, double>> baseline);

/// Kernel-contrast functional Ξ[ψ] = Q_K[ψ] / ∫w₀|∇ψ|², with Ξ := 0 when
/// the gradient energy is below 1e-14·M. Depends only on ψ, the kernel, and
/// w₀ — never on φ or γ.
double kernel_contrast(const ComplexField& psi, const ModelParams& params);

struct ContrastSeries {
    double mean = 0.0;
    std::pair<double, double> iqr{0.0, 0.0}; // 25th / 75th percentiles
    std::vector<double> times;
    std::vector<double> values;
};

/// Per-snapshot Ξ with time mean and interquartile range (≥ 4 snapshots).
ContrastSeries contrast_series(const Trajectory& traj);

struct SidebandMeasurement {
    double carrier_power = 0.0;
    double plus_power = 0.0;
    double minus_power = 0.0;
    double ratio = 0.0;     // R(q,k)
    double asymmetry = 0.0; // 𝒮(k)
};

/// Time-averaged mode powers over the second half of the run (discarding the
/// switch-on transient). k and k±q must be lattice wavenumbers; the carrier
/// must exceed 1e6× the numerical noise floor (median mode power).
SidebandMeasurement sideband_powers(const Trajectory& traj, double k, double q);

/// Additive complex Gaussian pixel noise at the given SNR (dB relative to
/// the snapshot's mean |ψ|²); measurement noise only, never applied inside
/// the integrator.
ComplexField add_measurement_noise(const ComplexField& psi, double snr_db, std::uint64_t seed);

/// Post-hoc noisy copy of every snapshot (monitors left untouched).
Trajectory with_measurement_noise(const Trajectory& traj, double snr_db, std::uint64_t seed);

} // namespace rwns
