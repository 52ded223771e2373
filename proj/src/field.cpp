#include "rwns/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace rwns {

namespace {

void check_size(std::size_t expected, std::size_t got, const char* what) {
    if (expected != got)
        throw ConfigError(std::string(what) + ": expected " + std::to_string(expected) +
                          " samples, got " + std::to_string(got));
}

} // namespace

RealField::RealField(PeriodicGrid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    check_size(grid_.size(), values_.size(), "RealField");
    for (double v : values_)
        if (!std::isfinite(v)) throw NonFiniteField("RealField: non-finite sample");
}

RealField RealField::constant(const PeriodicGrid& grid, double value) {
    return RealField(grid, std::vector<double>(grid.size(), value));
}

double RealField::min() const { return *std::min_element(values_.begin(), values_.end()); }

double RealField::max() const { return *std::max_element(values_.begin(), values_.end()); }

ComplexField::ComplexField(PeriodicGrid grid, std::vector<cplx> values, double time)
    : grid_(grid), values_(std::move(values)), time_(time) {
    check_size(grid_.size(), values_.size(), "ComplexField");
    for (const cplx& v : values_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw NonFiniteField("ComplexField: non-finite sample");
    if (!std::isfinite(time_)) throw NonFiniteField("ComplexField: non-finite timestamp");
}

ComplexField ComplexField::zero(const PeriodicGrid& grid, double time) {
    return ComplexField(grid, std::vector<cplx>(grid.size(), cplx(0.0, 0.0)), time);
}

cplx inner_product(const ComplexField& a, const ComplexField& b) {
    require_same_grid(a.grid(), b.grid(), "inner_product");
    // Kahan-compensated accumulation keeps invariants testable at 1e-13.
    double sr = 0.0, cr = 0.0, si = 0.0, ci = 0.0;
    const auto& av = a.values();
    const auto& bv = b.values();
    for (std::size_t i = 0; i < av.size(); ++i) {
        const cplx p = std::conj(av[i]) * bv[i];
        double y = p.real() - cr;
        double t = sr + y;
        cr = (t - sr) - y;
        sr = t;
        y = p.imag() - ci;
        t = si + y;
        ci = (t - si) - y;
        si = t;
    }
    return a.grid().cell_volume() * cplx(sr, si);
}

double field_mass(const ComplexField& psi) {
    double s = 0.0, c = 0.0;
    for (const cplx& v : psi.values()) {
        const double p = std::norm(v);
        const double y = p - c;
        const double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    return psi.grid().cell_volume() * s;
}

double max_abs_difference(const ComplexField& a, const ComplexField& b) {
    require_same_grid(a.grid(), b.grid(), "max_abs_difference");
    double m = 0.0;
    for (std::size_t i = 0; i < a.values().size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

} // namespace rwns
