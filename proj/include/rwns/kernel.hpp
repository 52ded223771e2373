#pragma once

#include <string>

#include "rwns/field.hpp"

namespace rwns {

enum class KernelFamily { Gaussian, Exponential, TopHat };

std::string to_string(KernelFamily family);
KernelFamily kernel_family_from_string(const std::string& name);

/// Parametric translation-invariant kernel 𝓚 with closed-form Fourier
/// transform K̂(k) = ∫ e^{−ik·z} 𝓚(z) dz and second moment μ₂ = ∫|z|²𝓚.
///
/// shape is σ (Gaussian), the decay length a (Exponential), or the radius R
/// (TopHat); mass = ∫𝓚 = K̂(0). All densities are isotropic, so K̂ depends
/// on |k| only.
class KernelSpec {
public:
    KernelSpec(KernelFamily family, double shape, double mass);

    KernelFamily family() const { return family_; }
    double shape() const { return shape_; }
    double mass() const { return mass_; }

    /// Closed-form K̂(|k|); even in k, K̂(0) = mass, |K̂| ≤ mass.
    double fourier(double k_mag, int dim = 1) const;

    /// Closed-form μ₂ = ∫|z|²𝓚(z)dz.
    double second_moment(int dim = 1) const;

    /// Real-space density 𝓚(z) at radius r = |z|.
    double density(double r, int dim = 1) const;

    /// Mass beyond radius r: ∫_{|z|>r} 𝓚(z)dz (periodization tail bound).
    double tail_mass(double r, int dim = 1) const;

private:
    KernelFamily family_;
    double shape_;
    double mass_;
};

/// Periodization of 𝓚 onto the torus, sampled so that its discrete Fourier
/// transform equals the closed-form K̂ at every lattice wavenumber (and hence
/// sum·dx^d = mass exactly). For smooth kernels this coincides with the
/// pointwise image sum Σ_m 𝓚(z + m·L) to rounding.
///
/// Throws PeriodizationError when the tail mass beyond length/2 exceeds
/// 1e-6·mass (box too small for the kernel).
RealField sample_kernel(const KernelSpec& spec, const PeriodicGrid& grid);

/// Closed-form K̂(|k_l|) tabulated over the grid's wavenumber lattice,
/// indexed like field storage.
std::vector<double> kernel_lattice_fourier(const KernelSpec& spec, const PeriodicGrid& grid);

} // namespace rwns
