#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "rwns/errors.hpp"

namespace rwns {

/// Uniform periodic grid in d ∈ {1,2} dimensions together with its dual
/// wavenumber lattice k_j = 2π·j/L, j ∈ {−n/2, …, n/2−1} per axis.
///
/// n must be a power of two (≥ 8) and is the same on every axis, as is the
/// box length. Linear storage order is row-major with x fastest:
/// idx = iy·n + ix in 2D.
class PeriodicGrid {
public:
    PeriodicGrid(int dim, int n, double length);

    int dim() const { return dim_; }
    int n() const { return n_; }
    double length() const { return length_; }
    double dx() const { return length_ / n_; }
    std::size_t size() const { return size_; }
    /// Quadrature weight dx^dim of one cell.
    double cell_volume() const;

    /// Coordinate of sample j on one axis, x_j = j·dx.
    double coordinate(int j) const { return j * dx(); }

    /// Signed lattice wavenumber of axis index j ∈ [0, n): 2π·wrap(j)/L
    /// where wrap maps to {−n/2, …, n/2−1}.
    double wavenumber(int j) const;

    /// Smallest positive lattice wavenumber 2π/L.
    double k_fundamental() const;
    /// Nyquist magnitude π/dx.
    double k_nyquist() const;

    /// Axis indices (ix, iy) of a linear index; iy = 0 in 1D.
    std::array<int, 2> axis_indices(std::size_t idx) const;
    /// Wavenumber vector (k_x, k_y) of a linear index; k_y = 0 in 1D.
    std::array<double, 2> k_vector(std::size_t idx) const;
    /// |k|² of a linear index.
    double k_squared(std::size_t idx) const;

    /// Linear index of the mode with per-axis integer indices in
    /// {−n/2, …, n/2−1} (1D: pass iy = 0).
    std::size_t mode_index(int jx, int jy = 0) const;

    bool operator==(const PeriodicGrid& other) const = default;

private:
    int dim_;
    int n_;
    double length_;
    std::size_t size_;
};

/// Throws GridMismatch unless the two grids are identical.
void require_same_grid(const PeriodicGrid& a, const PeriodicGrid& b,
                       const char* where);

} // namespace rwns
