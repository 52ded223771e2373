#include "rwns/integrator.hpp"

#include <cmath>
#include <numbers>

#include "rwns/fft.hpp"

namespace rwns {

namespace {

double kahan_norm2(const std::vector<cplx>& v) {
    double s = 0.0, c = 0.0;
    for (const cplx& z : v) {
        const double p = std::norm(z);
        const double y = p - c;
        const double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    return s;
}

// Pointwise half phase exp(−i·h·(U₀ + βg(|ψ|²))): exact sub-flow (|ψ| is
// invariant along it).
void apply_phase(std::vector<cplx>& v, double u0, double beta, const Nonlinearity& nl,
                 double h) {
    if (nl.kind == Nonlinearity::Kind::Off || beta == 0.0) {
        const cplx factor = std::polar(1.0, -h * u0);
        for (cplx& z : v) z *= factor;
        return;
    }
    for (cplx& z : v) {
        const double theta = h * (u0 + beta * nl.g(std::norm(z)));
        z *= std::polar(1.0, -theta);
    }
}

void apply_drive(std::vector<cplx>& v, const RealField* phi, double gamma, double h) {
    if (gamma == 0.0 || phi == nullptr || h == 0.0) return;
    const double before = kahan_norm2(v);
    if (before == 0.0) return;
    const std::vector<double>& ph = phi->values();
    for (std::size_t i = 0; i < v.size(); ++i) v[i] *= std::exp(gamma * ph[i] * h);
    const double after = kahan_norm2(v);
    const double s = std::sqrt(before / after);
    for (cplx& z : v) z *= s;
}

struct StrangWorkspace {
    std::vector<cplx> fourier_phase; // exp(−i·dt·(w₀|k|² + κ(K̂(k)−K̂(0)))) per mode
    double u0 = 0.0;
    double beta = 0.0;
    Nonlinearity nl;
    const RealField* phi = nullptr;
    double gamma = 0.0;
    double dt = 0.0;

    StrangWorkspace(const PeriodicGrid& grid, const ModelParams& params, double dt_in) {
        if (!params.homogeneous_background())
            throw ConfigError("StrangSplit requires homogeneous (scalar) w and U");
        dt = dt_in;
        u0 = params.u0();
        beta = params.beta();
        nl = params.nonlinearity();
        phi = params.phi() ? &*params.phi() : nullptr;
        gamma = params.gamma();
        const double w0 = params.w0();
        const double mass = params.kernel().mass();
        fourier_phase.resize(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double khat = params.kernel().fourier(std::sqrt(grid.k_squared(i)), grid.dim());
            const double omega = w0 * grid.k_squared(i) + params.kappa() * (khat - mass);
            fourier_phase[i] = std::polar(1.0, -dt * omega);
        }
    }

    void step(const PeriodicGrid& grid, std::vector<cplx>& v, std::vector<cplx>& scratch) const {
        apply_phase(v, u0, beta, nl, 0.5 * dt);
        apply_drive(v, phi, gamma, 0.5 * dt);
        fft::forward(grid, v, scratch);
        for (std::size_t i = 0; i < scratch.size(); ++i) scratch[i] *= fourier_phase[i];
        fft::inverse(grid, scratch, v);
        const double inv_n = 1.0 / static_cast<double>(grid.size());
        for (cplx& z : v) z *= inv_n;
        apply_drive(v, phi, gamma, 0.5 * dt);
        apply_phase(v, u0, beta, nl, 0.5 * dt);
    }
};

std::vector<cplx> rk4_raw(const ComplexField& psi, const ModelParams& params, double dt) {
    const auto f = [&](const ComplexField& y) { return rhs(y, params).total; };
    const PeriodicGrid& grid = psi.grid();
    const std::size_t m = grid.size();

    const ComplexField k1 = f(psi);
    std::vector<cplx> tmp(m);
    for (std::size_t i = 0; i < m; ++i) tmp[i] = psi[i] + 0.5 * dt * k1[i];
    const ComplexField k2 = f(ComplexField(grid, std::move(tmp), psi.time()));
    tmp.resize(m);
    for (std::size_t i = 0; i < m; ++i) tmp[i] = psi[i] + 0.5 * dt * k2[i];
    const ComplexField k3 = f(ComplexField(grid, std::move(tmp), psi.time()));
    tmp.resize(m);
    for (std::size_t i = 0; i < m; ++i) tmp[i] = psi[i] + dt * k3[i];
    const ComplexField k4 = f(ComplexField(grid, std::move(tmp), psi.time()));

    std::vector<cplx> out(m);
    const double sixth = dt / 6.0;
    for (std::size_t i = 0; i < m; ++i)
        out[i] = psi[i] + sixth * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
}

} // namespace

std::string to_string(Scheme scheme) {
    return scheme == Scheme::StrangSplit ? "strang" : "rk4";
}

Scheme scheme_from_string(const std::string& name) {
    if (name == "strang") return Scheme::StrangSplit;
    if (name == "rk4") return Scheme::RK4;
    throw ConfigError("unknown scheme '" + name + "'");
}

void StepperConfig::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("StepperConfig: dt must be > 0");
    if (!(t_end > 0.0) || !std::isfinite(t_end))
        throw ConfigError("StepperConfig: t_end must be > 0");
    if (snapshot_stride < 1 || monitor_stride < 1)
        throw ConfigError("StepperConfig: strides must be >= 1");
    const double steps = t_end / dt;
    if (steps > 2e9) throw ConfigError("StepperConfig: too many steps");
    if (std::abs(steps - std::llround(steps)) > 1e-6)
        throw ConfigError("StepperConfig: t_end must be an integer multiple of dt");
}

long long StepperConfig::step_count() const { return std::llround(t_end / dt); }

double rk4_dt_limit(const PeriodicGrid& grid, const ModelParams& params) {
    return kCflSafety * grid.dx() * grid.dx() / params.w().max();
}

double default_strang_dt(const PeriodicGrid& grid, const ModelParams& params) {
    double omega_max = 0.0;
    const double w0 = params.w().max();
    const double u0 = params.u().max();
    const double mass = params.kernel().mass();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double khat = params.kernel().fourier(std::sqrt(grid.k_squared(i)), grid.dim());
        const double omega =
            std::abs(w0 * grid.k_squared(i) + u0 + params.kappa() * (khat - mass));
        omega_max = std::max(omega_max, omega);
    }
    if (omega_max == 0.0) return 1e-3;
    return 1e-3 * (2.0 * std::numbers::pi / omega_max);
}

ComplexField step_strang(const ComplexField& psi, const ModelParams& params, double dt) {
    const PeriodicGrid& grid = psi.grid();
    const StrangWorkspace ws(grid, params, dt);
    std::vector<cplx> v = psi.values();
    std::vector<cplx> scratch(grid.size());
    ws.step(grid, v, scratch);
    return ComplexField(grid, std::move(v), psi.time() + dt);
}

ComplexField drive_substep(const ComplexField& psi, const RealField& phi, double gamma,
                           double dt) {
    require_same_grid(phi.grid(), psi.grid(), "drive_substep");
    if (gamma == 0.0) return psi;
    std::vector<cplx> v = psi.values();
    apply_drive(v, &phi, gamma, dt);
    return ComplexField(psi.grid(), std::move(v), psi.time());
}

ComplexField step_rk4(const ComplexField& psi, const ModelParams& params, double dt) {
    const double limit = rk4_dt_limit(psi.grid(), params);
    if (dt > limit)
        throw CflViolation("step_rk4: dt = " + std::to_string(dt) + " exceeds " +
                           std::to_string(limit) + " = " + std::to_string(kCflSafety) +
                           "·dx²/max(w)");
    return ComplexField(psi.grid(), rk4_raw(psi, params, dt), psi.time() + dt);
}

Trajectory evolve(const ComplexField& psi0, const ModelParams& params,
                  const StepperConfig& config) {
    config.validate();
    const PeriodicGrid& grid = psi0.grid();
    params.validate_against_grid(grid);

    const long long steps = config.step_count();
    Trajectory traj{{}, {}, params, config};
    traj.snapshots.reserve(static_cast<std::size_t>(steps / config.snapshot_stride) + 1);

    const auto record = [&](const ComplexField& psi) {
        traj.snapshots.push_back(psi);
    };
    const auto monitor = [&](const ComplexField& psi) {
        traj.monitors.push_back({psi.time(), conserved(psi, params)});
    };

    ComplexField psi = psi0.at_time(0.0);
    record(psi);
    monitor(psi);

    if (config.scheme == Scheme::StrangSplit) {
        const StrangWorkspace ws(grid, params, config.dt);
        std::vector<cplx> v = psi.values();
        std::vector<cplx> scratch(grid.size());
        const auto all_finite = [](const std::vector<cplx>& values) {
            for (const cplx& z : values)
                if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
            return true;
        };
        for (long long m = 1; m <= steps; ++m) {
            ws.step(grid, v, scratch);
            const double t = static_cast<double>(m) * config.dt;
            if (!all_finite(v))
                throw NumericalBlowup("evolve: non-finite sample at t = " + std::to_string(t),
                                      t - config.dt);
            const bool snap = (m % config.snapshot_stride) == 0;
            const bool mon = (m % config.monitor_stride) == 0;
            if (snap || mon) {
                const ComplexField current(grid, v, t);
                if (snap) record(current);
                if (mon) monitor(current);
            }
        }
    } else {
        const double limit = rk4_dt_limit(grid, params);
        if (config.dt > limit)
            throw CflViolation("evolve: dt exceeds RK4 bound " + std::to_string(limit));
        for (long long m = 1; m <= steps; ++m) {
            const double t = static_cast<double>(m) * config.dt;
            try {
                psi = ComplexField(grid, rk4_raw(psi, params, config.dt), t);
            } catch (const NonFiniteField&) {
                throw NumericalBlowup("evolve: non-finite sample at t = " + std::to_string(t),
                                      t - config.dt);
            }
            if ((m % config.snapshot_stride) == 0) record(psi);
            if ((m % config.monitor_stride) == 0) monitor(psi);
        }
    }
    return traj;
}

} // namespace rwns
