#pragma once

#include <array>

#include "rwns/params.hpp"

namespace rwns {

/// The right-hand side ∂_tψ split by mechanism. Each part is that
/// mechanism's contribution to ∂_tψ (the Hamiltonian pieces already carry
/// their −i factor, the drive is the real rate γ(φ−⟨φ⟩)ψ), so
/// total = diffusion + potential + nonlinear + exchange + drive exactly.
struct RhsBreakdown {
    ComplexField diffusion;
    ComplexField potential;
    ComplexField nonlinear;
    ComplexField exchange;
    ComplexField drive;
    ComplexField total;
};

/// The conserved functionals of one field sample.
struct ConservedSet {
    double mass = 0.0;          // M[ψ] = ∫|ψ|²
    double energy = 0.0;        // 𝓔[ψ] (the γ=0 Hamiltonian)
    std::array<double, 2> momentum{0.0, 0.0}; // P[ψ] = Im ∫ ψ̄∇ψ
    double qk = 0.0;            // Q_K[ψ] = ½∬K|ψ(x)−ψ(y)|² ≥ 0
    double mean_phi = 0.0;      // ⟨φ⟩_{|ψ|²}
};

/// L_w ψ = −∇·(w∇ψ). Homogeneous w: exact spectral w₀|k|². Heterogeneous w:
/// conservative second-order differences −D⁻(w_{j+1/2} D⁺ψ) with arithmetic
/// face averages, self-adjoint on the discrete inner product.
ComplexField weighted_laplacian(const ComplexField& psi, const Coefficient& w);

/// (𝓚 ∗ ψ)(x) − Λψ(x) with Λ = mass, convolution via FFT with quadrature
/// weight dx^d. On a plane wave the eigenvalue is K̂(k) − K̂(0).
ComplexField exchange_apply(const ComplexField& psi, const RealField& kernel, double mass);

/// Pointwise β g(|ψ|²) ψ.
ComplexField nonlinear_term(const ComplexField& psi, double beta, const Nonlinearity& nl);

/// Density-weighted mean ⟨φ⟩_{|ψ|²} = ∫φ|ψ|² / ∫|ψ|²; 0 for zero mass.
double centered_mean(const ComplexField& psi, const RealField& phi);

/// iγ(φ − ⟨φ⟩_{|ψ|²})ψ as it appears in the evolution equation; pure gain/
/// loss modulation once the global −i is applied.
ComplexField drive_term(const ComplexField& psi, const RealField& phi, double gamma);

/// δ𝓔/δψ̄ = L_wψ + Uψ + βg(|ψ|²)ψ + κ(𝓚∗ψ − Λψ): the Hamiltonian applied
/// to ψ. ∂_tψ = −i·H[ψ] + γ(φ−⟨φ⟩)ψ.
ComplexField variational_derivative(const ComplexField& psi, const ModelParams& params);

/// Full mechanism breakdown of ∂_tψ.
RhsBreakdown rhs(const ComplexField& psi, const ModelParams& params);

/// Mass, energy, momentum, Q_K, ⟨φ⟩ in mutually consistent discretizations:
/// the energy is the exact discrete functional whose gradient is
/// variational_derivative (Q_K via the FFT identity K̂(0)M − Re⟨ψ,𝓚∗ψ⟩).
ConservedSet conserved(const ComplexField& psi, const ModelParams& params);

/// LHS − RHS of the coercivity inequality
/// ∫w|∇ψ|² − (κ/2)∬K|ψ(y)−ψ(x)|² ≥ α‖∇ψ‖² − C‖ψ‖².
double coercivity_margin(const ComplexField& psi, const ModelParams& params, double alpha,
                         double c);

/// w-weighted Dirichlet energy ∫w|∇ψ|² in the discretization matching
/// weighted_laplacian (spectral for uniform w, face differences otherwise).
double dirichlet_energy(const ComplexField& psi, const Coefficient& w);

/// Nonlocal quadratic form Q_K[ψ] ≥ 0 via the spectral identity
/// (1/L^d)Σ_l (K̂(0)−K̂(k_l))|ψ̂_l|².
double qk_form(const ComplexField& psi, const KernelSpec& kernel);

} // namespace rwns
