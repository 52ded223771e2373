#pragma once

#include <complex>
#include <vector>

#include "rwns/grid.hpp"

namespace rwns {

using cplx = std::complex<double>;

/// Real-valued samples on a periodic grid (the w, U, φ coefficient fields).
/// Immutable after construction; construction rejects NaN/Inf samples.
class RealField {
public:
    RealField(PeriodicGrid grid, std::vector<double> values);

    static RealField constant(const PeriodicGrid& grid, double value);

    const PeriodicGrid& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }

    double min() const;
    double max() const;

private:
    PeriodicGrid grid_;
    std::vector<double> values_;
};

/// Discretized ψ on a periodic grid, stamped with its simulation time.
/// Immutable after construction; construction rejects NaN/Inf samples.
class ComplexField {
public:
    ComplexField(PeriodicGrid grid, std::vector<cplx> values, double time = 0.0);

    static ComplexField zero(const PeriodicGrid& grid, double time = 0.0);

    const PeriodicGrid& grid() const { return grid_; }
    const std::vector<cplx>& values() const { return values_; }
    cplx operator[](std::size_t i) const { return values_[i]; }
    double time() const { return time_; }

    /// Same samples, new timestamp.
    ComplexField at_time(double t) const { return ComplexField(grid_, values_, t); }

private:
    PeriodicGrid grid_;
    std::vector<cplx> values_;
    double time_;
};

/// Discrete L² inner product ⟨a,b⟩ = dx^d Σ conj(a_j)·b_j.
cplx inner_product(const ComplexField& a, const ComplexField& b);

/// Discrete mass M[ψ] = dx^d Σ |ψ_j|² (compensated summation).
double field_mass(const ComplexField& psi);

/// Max pointwise |a_j − b_j|.
double max_abs_difference(const ComplexField& a, const ComplexField& b);

} // namespace rwns
