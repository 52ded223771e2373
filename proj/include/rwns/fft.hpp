#pragma once

#include <vector>

#include "rwns/field.hpp"

namespace rwns {

/// Low-level unnormalized DFTs (FFTW behind a synchronized plan cache — the
/// only shared mutable state in the library).
namespace fft {

/// out_l = Σ_j in_j e^{−2πi j·l/n} per axis (FFTW forward).
void forward(const PeriodicGrid& grid, const std::vector<cplx>& in, std::vector<cplx>& out);
/// out_j = Σ_l in_l e^{+2πi j·l/n} per axis (FFTW backward, unnormalized).
void inverse(const PeriodicGrid& grid, const std::vector<cplx>& in, std::vector<cplx>& out);

/// 1D transforms of arbitrary length (time-series analysis).
std::vector<cplx> forward_1d(const std::vector<cplx>& in);
std::vector<cplx> inverse_1d(const std::vector<cplx>& in);

} // namespace fft

/// Quadrature-weighted spectrum ψ̂_l = dx^d Σ_j ψ_j e^{−i k_l·x_j}
/// (the discrete stand-in for ∫ ψ e^{−ik·x} dx).
std::vector<cplx> to_spectrum(const ComplexField& psi);
std::vector<cplx> to_spectrum(const PeriodicGrid& grid, const std::vector<cplx>& values);
std::vector<cplx> to_spectrum(const PeriodicGrid& grid, const std::vector<double>& values);

/// Inverse of to_spectrum: ψ_j = (1/L^d) Σ_l ψ̂_l e^{+i k_l·x_j}.
std::vector<cplx> from_spectrum(const PeriodicGrid& grid, const std::vector<cplx>& spectrum);

} // namespace rwns
