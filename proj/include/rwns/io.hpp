#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "rwns/integrator.hpp"

namespace rwns {

enum class Experiment { Dispersion, Contrast, Sidebands, Invert, Validate };

std::string to_string(Experiment e);
Experiment experiment_from_string(const std::string& name);

/// Optional cosine modulation of a scalar coefficient:
/// c(x) = base + amplitude·cos(2π·mode_index·x/L) (along x).
struct CoefficientConfig {
    double base = 0.0;
    double cosine_amplitude = 0.0;
    int mode_index = 1;

    bool uniform() const { return cosine_amplitude == 0.0; }
};

/// φ(x) = amplitude·cos(q·x) + offset with q = 2π·mode_index/L.
struct PhiConfig {
    double amplitude = 0.0;
    int mode_index = 1;
    double offset = 0.0;
};

struct InitialConfig {
    enum class Type { Zero, PlaneWave, Packet, Broadband, Carriers };
    Type type = Type::Zero;
    std::array<int, 2> mode_index{0, 0}; // PlaneWave / Packet carrier
    double amplitude = 1.0;
    double center_fraction = 0.5; // Packet
    double width_fraction = 0.1;  // Packet
    double band_fraction = 0.5;   // Broadband: band = fraction·k_nyquist
    std::vector<int> mode_indices; // Carriers
};

struct NoiseConfig {
    double snr_db = 40.0;
};

struct DispersionConfig {
    bool baseline_known = true;
};

struct SidebandsConfig {
    std::vector<int> carrier_mode_indices;
};

struct InvertConfig {
    int validation_mode_index = 6;
};

/// One experiment run, loadable from a strict JSON file (unknown keys are
/// rejected) and serializable losslessly.
struct RunConfig {
    int dim = 1;
    int n = 256;
    double length = 40.0;

    CoefficientConfig w{1.0, 0.0, 1};
    CoefficientConfig u{0.0, 0.0, 1};
    std::optional<PhiConfig> phi;
    double beta = 0.0;
    double kappa = 0.0;
    double gamma = 0.0;
    std::string nonlinearity = "off"; // "off" or power-law exponent
    double power_law_exponent = 1.0;
    KernelFamily kernel_family = KernelFamily::Gaussian;
    double kernel_shape = 1.0;
    double kernel_mass = 1.0;

    Scheme scheme = Scheme::StrangSplit;
    std::optional<double> dt; // default: default_strang_dt / RK4 limit
    double t_end = 50.0;
    int snapshot_stride = 1;
    int monitor_stride = 1;

    InitialConfig initial;
    Experiment experiment = Experiment::Dispersion;
    std::uint64_t seed = 1;
    std::string output_dir = "out";

    std::optional<NoiseConfig> noise;
    DispersionConfig dispersion;
    SidebandsConfig sidebands;
    InvertConfig invert;
};

RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::filesystem::path& file);
std::string serialize_config(const RunConfig& config);

/// Grid/params/initial-state/stepper assembled from a config (the stepper's
/// dt defaults to the scheme's certified step when unset).
PeriodicGrid make_grid(const RunConfig& config);
ModelParams make_params(const RunConfig& config, const PeriodicGrid& grid);
ComplexField make_initial(const RunConfig& config, const PeriodicGrid& grid);
StepperConfig make_stepper(const RunConfig& config, const PeriodicGrid& grid,
                           const ModelParams& params);

/// Binary snapshot file: magic "RWNS1\0", endianness tag, dim, n, length,
/// time, CRC32 of the header bytes, then n^dim interleaved (re, im) little-
/// endian doubles in row-major order. Writes are atomic (temp + rename).
void write_snapshot(const std::filesystem::path& file, const ComplexField& psi);
ComplexField read_snapshot(const std::filesystem::path& file);

/// Monitor CSV: t, mass, energy, momentum[, momentum_y], qk, mean_phi.
void write_monitor_csv(const std::filesystem::path& file, const Trajectory& traj);

/// Provenance JSON: config echo, code version, seed.
void write_provenance(const std::filesystem::path& file, const RunConfig& config);

/// Atomic text-file write (temp + rename).
void write_text_atomic(const std::filesystem::path& file, const std::string& content);

/// CRC32 (reflected 0xEDB88320, zlib-compatible).
std::uint32_t crc32(const void* data, std::size_t size);

/// Round-trip double formatting used by every CSV/report writer.
std::string format_double(double v);

} // namespace rwns
