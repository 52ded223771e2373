#include "rwns/kernel.hpp"

#include <cmath>
#include <numbers>

#include "rwns/fft.hpp"

namespace rwns {

namespace {

constexpr double kPi = std::numbers::pi;

// sin(x)/x with the removable singularity handled by its Taylor series.
double sinc(double x) {
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

// 2·J₁(x)/x, the 2D top-hat transform profile.
double jinc(double x) {
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 8.0 + x2 * x2 / 192.0;
    }
    return 2.0 * std::cyl_bessel_j(1, x) / x;
}

} // namespace

std::string to_string(KernelFamily family) {
    switch (family) {
    case KernelFamily::Gaussian: return "gaussian";
    case KernelFamily::Exponential: return "exponential";
    case KernelFamily::TopHat: return "tophat";
    }
    return "?";
}

KernelFamily kernel_family_from_string(const std::string& name) {
    if (name == "gaussian") return KernelFamily::Gaussian;
    if (name == "exponential") return KernelFamily::Exponential;
    if (name == "tophat") return KernelFamily::TopHat;
    throw ConfigError("unknown kernel family '" + name + "'");
}

KernelSpec::KernelSpec(KernelFamily family, double shape, double mass)
    : family_(family), shape_(shape), mass_(mass) {
    if (!(shape > 0.0) || !std::isfinite(shape))
        throw ConfigError("KernelSpec: shape must be > 0");
    if (!(mass >= 0.0) || !std::isfinite(mass))
        throw ConfigError("KernelSpec: mass must be >= 0");
}

double KernelSpec::fourier(double k_mag, int dim) const {
    const double k = std::abs(k_mag);
    switch (family_) {
    case KernelFamily::Gaussian:
        // isotropic in any dimension
        return mass_ * std::exp(-0.5 * shape_ * shape_ * k * k);
    case KernelFamily::Exponential: {
        const double a2k2 = shape_ * shape_ * k * k;
        if (dim == 1) return mass_ / (1.0 + a2k2);
        return mass_ / std::pow(1.0 + a2k2, 1.5);
    }
    case KernelFamily::TopHat:
        if (dim == 1) return mass_ * sinc(k * shape_);
        return mass_ * jinc(k * shape_);
    }
    return 0.0;
}

double KernelSpec::second_moment(int dim) const {
    switch (family_) {
    case KernelFamily::Gaussian:
        return mass_ * dim * shape_ * shape_;
    case KernelFamily::Exponential:
        return mass_ * (dim == 1 ? 2.0 : 6.0) * shape_ * shape_;
    case KernelFamily::TopHat:
        return mass_ * shape_ * shape_ / (dim == 1 ? 3.0 : 2.0);
    }
    return 0.0;
}

double KernelSpec::density(double r, int dim) const {
    const double x = std::abs(r);
    switch (family_) {
    case KernelFamily::Gaussian: {
        const double s2 = shape_ * shape_;
        const double norm = (dim == 1) ? shape_ * std::sqrt(2.0 * kPi) : 2.0 * kPi * s2;
        return mass_ * std::exp(-0.5 * x * x / s2) / norm;
    }
    case KernelFamily::Exponential: {
        const double norm = (dim == 1) ? 2.0 * shape_ : 2.0 * kPi * shape_ * shape_;
        return mass_ * std::exp(-x / shape_) / norm;
    }
    case KernelFamily::TopHat: {
        if (x > shape_) return 0.0;
        const double norm = (dim == 1) ? 2.0 * shape_ : kPi * shape_ * shape_;
        return mass_ / norm;
    }
    }
    return 0.0;
}

double KernelSpec::tail_mass(double r, int dim) const {
    if (r <= 0.0) return mass_;
    switch (family_) {
    case KernelFamily::Gaussian:
        if (dim == 1) return mass_ * std::erfc(r / (shape_ * std::sqrt(2.0)));
        return mass_ * std::exp(-0.5 * r * r / (shape_ * shape_));
    case KernelFamily::Exponential:
        if (dim == 1) return mass_ * std::exp(-r / shape_);
        return mass_ * (1.0 + r / shape_) * std::exp(-r / shape_);
    case KernelFamily::TopHat: {
        if (r >= shape_) return 0.0;
        if (dim == 1) return mass_ * (1.0 - r / shape_);
        return mass_ * (1.0 - r * r / (shape_ * shape_));
    }
    }
    return 0.0;
}

RealField sample_kernel(const KernelSpec& spec, const PeriodicGrid& grid) {
    if (spec.mass() == 0.0)
        return RealField::constant(grid, 0.0);

    const double tail = spec.tail_mass(0.5 * grid.length(), grid.dim());
    if (tail > 1e-6 * spec.mass())
        throw PeriodizationError("sample_kernel: tail beyond length/2 is " +
                                 std::to_string(tail / spec.mass()) +
                                 " of mass (box too small for the kernel)");

    const std::vector<double> khat = kernel_lattice_fourier(spec, grid);
    std::vector<cplx> spectrum(khat.begin(), khat.end());
    const std::vector<cplx> values = from_spectrum(grid, spectrum);
    // K̂ is real and even on the lattice, so the synthesized samples are real
    // up to rounding.
    std::vector<double> real_values(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) real_values[i] = values[i].real();
    return RealField(grid, std::move(real_values));
}

std::vector<double> kernel_lattice_fourier(const KernelSpec& spec, const PeriodicGrid& grid) {
    std::vector<double> khat(grid.size());
    for (std::size_t i = 0; i < khat.size(); ++i)
        khat[i] = spec.fourier(std::sqrt(grid.k_squared(i)), grid.dim());
    return khat;
}

} // namespace rwns
