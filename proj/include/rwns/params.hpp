#pragma once

#include <optional>
#include <variant>

#include "rwns/field.hpp"
#include "rwns/kernel.hpp"

namespace rwns {

/// A model coefficient that is either a homogeneous scalar or a spatial
/// profile (w and U of the evolution equation).
class Coefficient {
public:
    static Coefficient uniform(double value) { return Coefficient(value); }
    static Coefficient profile(RealField field) { return Coefficient(std::move(field)); }

    bool is_uniform() const { return std::holds_alternative<double>(value_); }
    double uniform_value() const;
    const RealField& field() const;

    double min() const;
    double max() const;

private:
    explicit Coefficient(double v) : value_(v) {}
    explicit Coefficient(RealField f) : value_(std::move(f)) {}
    std::variant<double, RealField> value_;
};

/// Local nonlinearity g(ρ) = f'(ρ) with f(0) = 0: either off or the power
/// law g(ρ) = ρ^σ, f(ρ) = ρ^{σ+1}/(σ+1).
struct Nonlinearity {
    enum class Kind { Off, PowerLaw };

    Kind kind = Kind::Off;
    double exponent = 1.0; // σ

    static Nonlinearity off() { return {}; }
    static Nonlinearity power_law(double sigma);

    double g(double rho) const;
    double f(double rho) const;
};

/// All coefficients of the evolution equation: weight w, potential U, phase
/// field φ (absent means φ ≡ 0), the couplings β, κ, γ, the nonlinearity,
/// and the exchange kernel. dim fixes the spatial dimension for kernel
/// transforms even when no field is attached.
class ModelParams {
public:
    ModelParams(int dim, Coefficient w, Coefficient u, std::optional<RealField> phi,
                double beta, double kappa, double gamma, Nonlinearity nonlinearity,
                KernelSpec kernel);

    /// Homogeneous background shorthand (w ≡ w0, U ≡ u0, φ ≡ 0).
    static ModelParams homogeneous(int dim, double w0, double u0, double beta, double kappa,
                                   double gamma, Nonlinearity nonlinearity, KernelSpec kernel);

    int dim() const { return dim_; }
    const Coefficient& w() const { return w_; }
    const Coefficient& u() const { return u_; }
    const std::optional<RealField>& phi() const { return phi_; }
    double beta() const { return beta_; }
    double kappa() const { return kappa_; }
    double gamma() const { return gamma_; }
    const Nonlinearity& nonlinearity() const { return nonlinearity_; }
    const KernelSpec& kernel() const { return kernel_; }

    bool homogeneous_background() const { return w_.is_uniform() && u_.is_uniform(); }
    /// Uniform w0, u0 of a homogeneous background; throws HeterogeneousParams.
    double w0() const;
    double u0() const;

    /// Copy with a different kernel (inversion prediction plumbing).
    ModelParams with_kernel(KernelSpec kernel) const;
    /// Copy with different φ and γ.
    ModelParams with_drive(std::optional<RealField> phi, double gamma) const;

    /// Checks that every attached field lives on `grid` and that the kernel
    /// periodizes onto it.
    void validate_against_grid(const PeriodicGrid& grid) const;

private:
    int dim_;
    Coefficient w_;
    Coefficient u_;
    std::optional<RealField> phi_;
    double beta_;
    double kappa_;
    double gamma_;
    Nonlinearity nonlinearity_;
    KernelSpec kernel_;
};

} // namespace rwns
