#include "rwns/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace rwns {

namespace {

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

} // namespace

PeriodicGrid::PeriodicGrid(int dim, int n, double length)
    : dim_(dim), n_(n), length_(length) {
    if (dim != 1 && dim != 2)
        throw ConfigError("PeriodicGrid: dim must be 1 or 2, got " + std::to_string(dim));
    if (n < 8 || !power_of_two(n))
        throw ConfigError("PeriodicGrid: n must be a power of two >= 8, got " + std::to_string(n));
    if (!(length > 0.0) || !std::isfinite(length))
        throw ConfigError("PeriodicGrid: length must be positive and finite");
    size_ = 1;
    for (int d = 0; d < dim; ++d) size_ *= static_cast<std::size_t>(n);
}

double PeriodicGrid::cell_volume() const {
    double v = 1.0;
    for (int d = 0; d < dim_; ++d) v *= dx();
    return v;
}

double PeriodicGrid::wavenumber(int j) const {
    const int wrapped = (j < n_ / 2) ? j : j - n_;
    return 2.0 * std::numbers::pi * wrapped / length_;
}

double PeriodicGrid::k_fundamental() const { return 2.0 * std::numbers::pi / length_; }

double PeriodicGrid::k_nyquist() const { return std::numbers::pi / dx(); }

std::array<int, 2> PeriodicGrid::axis_indices(std::size_t idx) const {
    if (dim_ == 1) return {static_cast<int>(idx), 0};
    return {static_cast<int>(idx % static_cast<std::size_t>(n_)),
            static_cast<int>(idx / static_cast<std::size_t>(n_))};
}

std::array<double, 2> PeriodicGrid::k_vector(std::size_t idx) const {
    const auto [ix, iy] = axis_indices(idx);
    if (dim_ == 1) return {wavenumber(ix), 0.0};
    return {wavenumber(ix), wavenumber(iy)};
}

double PeriodicGrid::k_squared(std::size_t idx) const {
    const auto kv = k_vector(idx);
    return kv[0] * kv[0] + kv[1] * kv[1];
}

std::size_t PeriodicGrid::mode_index(int jx, int jy) const {
    auto fold = [this](int j) {
        if (j < -n_ / 2 || j >= n_ / 2)
            throw ConfigError("PeriodicGrid: mode index " + std::to_string(j) +
                              " outside [-n/2, n/2)");
        return j >= 0 ? j : j + n_;
    };
    const std::size_t ix = static_cast<std::size_t>(fold(jx));
    if (dim_ == 1) {
        if (jy != 0) throw ConfigError("PeriodicGrid: 1D grid has no y mode index");
        return ix;
    }
    return static_cast<std::size_t>(fold(jy)) * static_cast<std::size_t>(n_) + ix;
}

void require_same_grid(const PeriodicGrid& a, const PeriodicGrid& b, const char* where) {
    if (!(a == b)) throw GridMismatch(std::string(where) + ": fields live on different grids");
}

} // namespace rwns
