#include "rwns/params.hpp"

#include <cmath>
#include <string>

namespace rwns {

double Coefficient::uniform_value() const {
    if (!is_uniform()) throw HeterogeneousParams("coefficient is a spatial profile");
    return std::get<double>(value_);
}

const RealField& Coefficient::field() const {
    if (is_uniform()) throw Error("coefficient is uniform; no profile attached");
    return std::get<RealField>(value_);
}

double Coefficient::min() const {
    return is_uniform() ? std::get<double>(value_) : std::get<RealField>(value_).min();
}

double Coefficient::max() const {
    return is_uniform() ? std::get<double>(value_) : std::get<RealField>(value_).max();
}

Nonlinearity Nonlinearity::power_law(double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw ConfigError("Nonlinearity: power-law exponent must be > 0");
    Nonlinearity nl;
    nl.kind = Kind::PowerLaw;
    nl.exponent = sigma;
    return nl;
}

double Nonlinearity::g(double rho) const {
    if (kind == Kind::Off) return 0.0;
    return std::pow(rho, exponent);
}

double Nonlinearity::f(double rho) const {
    if (kind == Kind::Off) return 0.0;
    return std::pow(rho, exponent + 1.0) / (exponent + 1.0);
}

ModelParams::ModelParams(int dim, Coefficient w, Coefficient u, std::optional<RealField> phi,
                         double beta, double kappa, double gamma, Nonlinearity nonlinearity,
                         KernelSpec kernel)
    : dim_(dim), w_(std::move(w)), u_(std::move(u)), phi_(std::move(phi)), beta_(beta),
      kappa_(kappa), gamma_(gamma), nonlinearity_(nonlinearity), kernel_(kernel) {
    if (dim != 1 && dim != 2) throw ConfigError("ModelParams: dim must be 1 or 2");
    if (!(w_.min() > 0.0))
        throw ConfigError("ModelParams: w must be bounded away from zero (min(w) > 0)");
    for (double v : {beta_, kappa_, gamma_})
        if (!std::isfinite(v)) throw ConfigError("ModelParams: non-finite coupling");
    // Subcriticality σ < 2/(d−2) is vacuous for d ≤ 2; positivity is enforced
    // in Nonlinearity::power_law.
}

ModelParams ModelParams::homogeneous(int dim, double w0, double u0, double beta, double kappa,
                                     double gamma, Nonlinearity nonlinearity,
                                     KernelSpec kernel) {
    return ModelParams(dim, Coefficient::uniform(w0), Coefficient::uniform(u0), std::nullopt,
                       beta, kappa, gamma, nonlinearity, kernel);
}

double ModelParams::w0() const { return w_.uniform_value(); }

double ModelParams::u0() const { return u_.uniform_value(); }

ModelParams ModelParams::with_kernel(KernelSpec kernel) const {
    ModelParams copy = *this;
    copy.kernel_ = kernel;
    return copy;
}

ModelParams ModelParams::with_drive(std::optional<RealField> phi, double gamma) const {
    ModelParams copy = *this;
    copy.phi_ = std::move(phi);
    copy.gamma_ = gamma;
    return copy;
}

void ModelParams::validate_against_grid(const PeriodicGrid& grid) const {
    if (grid.dim() != dim_) throw GridMismatch("ModelParams: grid dimension mismatch");
    if (!w_.is_uniform()) require_same_grid(w_.field().grid(), grid, "ModelParams.w");
    if (!u_.is_uniform()) require_same_grid(u_.field().grid(), grid, "ModelParams.u");
    if (phi_) require_same_grid(phi_->grid(), grid, "ModelParams.phi");
    // Throws PeriodizationError if the kernel does not fit the box.
    if (kernel_.mass() > 0.0) {
        const double tail = kernel_.tail_mass(0.5 * grid.length(), dim_);
        if (tail > 1e-6 * kernel_.mass())
            throw PeriodizationError("ModelParams: kernel tail exceeds 1e-6 of mass on this box");
    }
}

} // namespace rwns
