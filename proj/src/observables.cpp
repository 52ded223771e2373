#include "rwns/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "rwns/fft.hpp"

namespace rwns {

namespace {

constexpr int kPadFactor = 4;

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

double percentile(std::vector<double> sorted, double p) {
    if (sorted.empty()) return 0.0;
    const double pos = p * (static_cast<double>(sorted.size()) - 1.0);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

// Sorted-lattice ordering: FFT index j ↦ signed index, ascending.
std::vector<std::size_t> sorted_lattice_order(int n) {
    std::vector<std::size_t> order(n);
    for (int i = 0; i < n; ++i) order[i] = static_cast<std::size_t>((i + n / 2) % n);
    return order;
}

std::size_t lattice_index_of(const PeriodicGrid& grid, double k, const char* what) {
    const double j_real = k * grid.length() / (2.0 * std::numbers::pi);
    const long j = std::lround(j_real);
    if (std::abs(j_real - static_cast<double>(j)) > 1e-9 * std::max(1.0, std::abs(j_real)) ||
        j < -grid.n() / 2 || j >= grid.n() / 2)
        throw OffLattice(std::string(what) + ": wavenumber " + std::to_string(k) +
                         " is not on the lattice");
    return grid.mode_index(static_cast<int>(j));
}

} // namespace

double KOmegaSpectrum::column_total(std::size_t ik) const {
    double s = 0.0;
    for (std::size_t iw = 0; iw < omega.size(); ++iw) s += at(ik, iw);
    return s;
}

KOmegaSpectrum k_omega_spectrum(const Trajectory& traj) {
    if (traj.snapshots.empty() || traj.snapshots.front().grid().dim() != 1)
        throw ConfigError("k_omega_spectrum: 1D trajectories only");
    const std::size_t m = traj.snapshots.size();
    if (m < 64)
        throw InsufficientSnapshots("k_omega_spectrum: need >= 64 snapshots, have " +
                                    std::to_string(m));

    const PeriodicGrid& grid = traj.snapshots.front().grid();
    const int n = grid.n();
    const double dt_snap = traj.snapshot_spacing();
    const double t_window = static_cast<double>(m) * dt_snap;

    // Column signals c_l(t) = ψ̂_l(t)/√L, so Σ_l |c_l(t)|² = M[ψ(t)].
    const double inv_sqrt_l = 1.0 / std::sqrt(grid.length());
    std::vector<std::vector<cplx>> columns(static_cast<std::size_t>(n));
    for (auto& col : columns) col.resize(m);
    for (std::size_t im = 0; im < m; ++im) {
        const std::vector<cplx> spec = to_spectrum(traj.snapshots[im]);
        for (int l = 0; l < n; ++l)
            columns[static_cast<std::size_t>(l)][im] = spec[static_cast<std::size_t>(l)] * inv_sqrt_l;
    }

    std::vector<double> hann(m);
    double hann2 = 0.0;
    for (std::size_t im = 0; im < m; ++im) {
        hann[im] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(im) /
                                         static_cast<double>(m)));
        hann2 += hann[im] * hann[im];
    }

    const std::size_t padded = next_pow2(m * kPadFactor);
    const double norm = 1.0 / (static_cast<double>(padded) * hann2);

    KOmegaSpectrum out;
    out.t_window = t_window;
    out.omega_resolution = 2.0 * std::numbers::pi / t_window;
    const auto k_order = sorted_lattice_order(n);
    out.k.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        out.k[static_cast<std::size_t>(i)] =
            grid.wavenumber(static_cast<int>(k_order[static_cast<std::size_t>(i)]));

    // ω grid of the padded transform, sorted ascending. A mode e^{−iωt}
    // peaks at +ω under the e^{+iωt} analysis convention used here.
    const double dw = 2.0 * std::numbers::pi / (static_cast<double>(padded) * dt_snap);
    const auto w_order = sorted_lattice_order(static_cast<int>(padded));
    out.omega.resize(padded);
    for (std::size_t i = 0; i < padded; ++i) {
        const std::size_t j = w_order[i];
        const long signed_j = (j < padded / 2) ? static_cast<long>(j)
                                               : static_cast<long>(j) - static_cast<long>(padded);
        out.omega[i] = dw * static_cast<double>(signed_j);
    }

    out.power.assign(static_cast<std::size_t>(n) * padded, 0.0);
    std::vector<cplx> series(padded);
    for (int ik = 0; ik < n; ++ik) {
        const auto& col = columns[k_order[static_cast<std::size_t>(ik)]];
        std::fill(series.begin(), series.end(), cplx(0.0, 0.0));
        for (std::size_t im = 0; im < m; ++im) series[im] = col[im] * hann[im];
        const std::vector<cplx> spec = fft::inverse_1d(series);
        double* row = &out.power[static_cast<std::size_t>(ik) * padded];
        for (std::size_t i = 0; i < padded; ++i) row[i] = norm * std::norm(spec[w_order[i]]);
    }
    return out;
}

DispersionCurve extract_dispersion(const KOmegaSpectrum& spec,
                                   std::optional<std::pair<double, double>> baseline) {
    const std::size_t nw = spec.omega.size();
    struct Point {
        double k;
        double omega;
    };
    std::vector<Point> points;

    for (std::size_t ik = 0; ik < spec.k.size(); ++ik) {
        if (spec.k[ik] == 0.0) continue;
        const double* row = &spec.power[ik * nw];
        std::size_t peak = 0;
        for (std::size_t iw = 1; iw < nw; ++iw)
            if (row[iw] > row[peak]) peak = iw;
        if (row[peak] <= 0.0) continue;

        std::vector<double> sorted(row, row + nw);
        std::sort(sorted.begin(), sorted.end());
        const double median = percentile(std::move(sorted), 0.5);
        if (median > 0.0 && row[peak] < 5.0 * median) continue;

        // Parabolic interpolation of log power around the peak bin.
        double omega_hat = spec.omega[peak];
        const std::size_t prev = (peak + nw - 1) % nw;
        const std::size_t next = (peak + 1) % nw;
        if (row[prev] > 0.0 && row[next] > 0.0) {
            const double lm = std::log(row[prev]);
            const double l0 = std::log(row[peak]);
            const double lp = std::log(row[next]);
            const double denom = lm - 2.0 * l0 + lp;
            if (denom != 0.0) {
                const double delta = 0.5 * (lm - lp) / denom;
                const double dw = spec.omega[1] - spec.omega[0];
                omega_hat += delta * dw;
            }
        }
        points.push_back({spec.k[ik], omega_hat});
    }

    if (points.empty()) throw NoPeak("extract_dispersion: no column passed the prominence gate");

    double w0, u0;
    if (baseline) {
        w0 = baseline->first;
        u0 = baseline->second;
    } else {
        // High-|k| slope/intercept: least squares of ω against k² on the
        // top-quartile |k| columns.
        std::vector<Point> by_absk = points;
        std::sort(by_absk.begin(), by_absk.end(),
                  [](const Point& a, const Point& b) { return std::abs(a.k) < std::abs(b.k); });
        const std::size_t start = (by_absk.size() * 3) / 4;
        const std::size_t count = by_absk.size() - start;
        if (count < 2) throw InsufficientData("extract_dispersion: too few columns for baseline fit");
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = start; i < by_absk.size(); ++i) {
            const double x = by_absk[i].k * by_absk[i].k;
            const double y = by_absk[i].omega;
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        const double nn = static_cast<double>(count);
        const double det = nn * sxx - sx * sx;
        if (det == 0.0) throw InsufficientData("extract_dispersion: degenerate baseline fit");
        w0 = (nn * sxy - sx * sy) / det;
        u0 = (sy * sxx - sx * sxy) / det;
    }

    DispersionCurve curve;
    curve.w0 = w0;
    curve.u0 = u0;
    std::sort(points.begin(), points.end(),
              [](const Point& a, const Point& b) { return a.k < b.k; });
    for (const Point& p : points) {
        curve.k.push_back(p.k);
        curve.omega.push_back(p.omega);
        curve.residual.push_back(p.omega - (w0 * p.k * p.k + u0));
    }
    return curve;
}

double kernel_contrast(const ComplexField& psi, const ModelParams& params) {
    const double w0 = params.w0();
    const double numerator = qk_form(psi, params.kernel());
    const double grad2 = dirichlet_energy(psi, Coefficient::uniform(1.0));
    const double denominator = w0 * grad2;
    if (denominator < 1e-14 * field_mass(psi)) return 0.0; // ∇ψ ≡ 0 convention
    return numerator / denominator;
}

ContrastSeries contrast_series(const Trajectory& traj) {
    if (traj.snapshots.size() < 4)
        throw InsufficientSnapshots("contrast_series: need >= 4 snapshots");
    ContrastSeries out;
    out.times.reserve(traj.snapshots.size());
    out.values.reserve(traj.snapshots.size());
    for (const ComplexField& snap : traj.snapshots) {
        out.times.push_back(snap.time());
        out.values.push_back(kernel_contrast(snap, traj.params));
    }
    double sum = 0.0;
    for (double v : out.values) sum += v;
    out.mean = sum / static_cast<double>(out.values.size());
    std::vector<double> sorted = out.values;
    std::sort(sorted.begin(), sorted.end());
    out.iqr = {percentile(sorted, 0.25), percentile(sorted, 0.75)};
    return out;
}

SidebandMeasurement sideband_powers(const Trajectory& traj, double k, double q) {
    if (traj.snapshots.empty() || traj.snapshots.front().grid().dim() != 1)
        throw ConfigError("sideband_powers: 1D trajectories only");
    const PeriodicGrid& grid = traj.snapshots.front().grid();
    const std::size_t idx_c = lattice_index_of(grid, k, "sideband_powers");
    const std::size_t idx_p = lattice_index_of(grid, k + q, "sideband_powers");
    const std::size_t idx_m = lattice_index_of(grid, k - q, "sideband_powers");

    const double t_end = traj.snapshots.back().time();
    const double t_start = 0.5 * t_end;

    // Time-averaged per-mode powers |ψ̂|²/L over the second half of the run.
    std::vector<double> mean_power(grid.size(), 0.0);
    std::size_t count = 0;
    for (const ComplexField& snap : traj.snapshots) {
        if (snap.time() < t_start) continue;
        const std::vector<cplx> spec = to_spectrum(snap);
        for (std::size_t i = 0; i < spec.size(); ++i)
            mean_power[i] += std::norm(spec[i]) / grid.length();
        ++count;
    }
    if (count == 0) throw InsufficientSnapshots("sideband_powers: empty averaging window");
    for (double& p : mean_power) p /= static_cast<double>(count);

    std::vector<double> sorted = mean_power;
    std::sort(sorted.begin(), sorted.end());
    const double noise_floor = percentile(std::move(sorted), 0.5);

    SidebandMeasurement out;
    out.carrier_power = mean_power[idx_c];
    out.plus_power = mean_power[idx_p];
    out.minus_power = mean_power[idx_m];
    if (out.carrier_power <= 1e6 * noise_floor)
        throw WeakCarrier("sideband_powers: carrier at k = " + std::to_string(k) +
                          " is within 1e6x of the noise floor");
    if (out.carrier_power <= 0.0)
        throw WeakCarrier("sideband_powers: zero carrier power");
    out.ratio = (out.plus_power + out.minus_power) / out.carrier_power;
    const double total = out.plus_power + out.minus_power;
    out.asymmetry = total > 0.0 ? (out.plus_power - out.minus_power) / total : 0.0;
    return out;
}

ComplexField add_measurement_noise(const ComplexField& psi, double snr_db, std::uint64_t seed) {
    double mean_rho = 0.0;
    for (const cplx& v : psi.values()) mean_rho += std::norm(v);
    mean_rho /= static_cast<double>(psi.values().size());
    const double noise_var = mean_rho * std::pow(10.0, -snr_db / 10.0);
    const double sigma = std::sqrt(0.5 * noise_var);

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<cplx> out = psi.values();
    for (cplx& v : out) v += cplx(sigma * gauss(rng), sigma * gauss(rng));
    return ComplexField(psi.grid(), std::move(out), psi.time());
}

Trajectory with_measurement_noise(const Trajectory& traj, double snr_db, std::uint64_t seed) {
    Trajectory out = traj;
    for (std::size_t i = 0; i < out.snapshots.size(); ++i)
        out.snapshots[i] =
            add_measurement_noise(out.snapshots[i], snr_db, seed + 0x9e3779b97f4a7c15ULL * (i + 1));
    return out;
}

} // namespace rwns
