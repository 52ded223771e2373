#pragma once

#include <vector>

#include "rwns/params.hpp"

namespace rwns {

/// A dispersion curve ω₀(k) with its Euclidean baseline w₀|k|² + U₀ and the
/// kernel residual Δω(k) = ω₀(k) − baseline.
struct DispersionCurve {
    std::vector<double> k;
    std::vector<double> omega;
    std::vector<double> residual;
    double w0 = 0.0;
    double u0 = 0.0;
};

/// Analytic single-mode frequency with the sign convention derived from the
/// evolution equation: ω₀(k) = w₀|k|² + U₀ + κ(K̂(k) − K̂(0)).
double omega0(const ModelParams& params, double k_mag);

/// Analytic dispersion curve over the given |k| values (linear g ≡ 0 regime;
/// requires homogeneous w, U).
DispersionCurve dispersion_analytic(const ModelParams& params, std::vector<double> k);

/// lim_{k→0} Δω(k)/k² = −κ·μ₂/(2d).
double small_k_plateau(const ModelParams& params);

/// First-order sideband prediction for a carrier at k under the phase drive
/// φ = ε·Φ_q·cos(q·x): detunings Δ± = ω₀(k) − ω₀(k±q), amplitude ratios
/// |A_{k±q}|/|A_k| = |γ|ε|Φ_q| / (2√(Δ±² + η²)), and the time-averaged power
/// ratio R(q,k) = (|γεΦ_q|²/2)·Σ± 1/(Δ±² + η²).
struct SidebandPrediction {
    double k = 0.0;
    double q = 0.0;
    double detuning_plus = 0.0;  // ω₀(k) − ω₀(k+q)
    double detuning_minus = 0.0; // ω₀(k) − ω₀(k−q)
    double amp_ratio_plus = 0.0;
    double amp_ratio_minus = 0.0;
    double power_ratio = 0.0;
    double eta = 0.0;
};

SidebandPrediction sideband_predict(const ModelParams& params, double k, double q, double eps,
                                    double phi_q, double eta);

/// 𝒮 = (P₊ − P₋)/(P₊ + P₋) from the prediction's sideband powers; throws
/// ZeroSidebandPower when the drive is off.
double asymmetry_index(const SidebandPrediction& pred);

} // namespace rwns
