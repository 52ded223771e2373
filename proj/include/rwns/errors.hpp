#pragma once

#include <stdexcept>
#include <string>

namespace rwns {

/// Base class for all rwns failures.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Two fields (or a field and an operator) live on different grids.
class GridMismatch : public Error {
public:
    using Error::Error;
};

/// A field was constructed with NaN/Inf samples.
class NonFiniteField : public Error {
public:
    using Error::Error;
};

/// Kernel tail wraps around the periodic box beyond tolerance.
class PeriodizationError : public Error {
public:
    using Error::Error;
};

/// Invalid run/stepper configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// RK4 time step exceeds the diffusive stability bound.
class CflViolation : public Error {
public:
    using Error::Error;
};

/// Evolution produced non-finite samples; carries the last finite time.
class NumericalBlowup : public Error {
public:
    NumericalBlowup(const std::string& what, double last_good_time)
        : Error(what), last_good_time_(last_good_time) {}
    double last_good_time() const { return last_good_time_; }

private:
    double last_good_time_;
};

/// An analysis routine needed homogeneous (scalar) w and U.
class HeterogeneousParams : public Error {
public:
    using Error::Error;
};

/// Exact resonance with zero linewidth: first-order theory breaks down.
class DegenerateDetuning : public Error {
public:
    using Error::Error;
};

/// Asymmetry index requested with zero total sideband power.
class ZeroSidebandPower : public Error {
public:
    using Error::Error;
};

/// Too few snapshots for the requested spectral analysis.
class InsufficientSnapshots : public Error {
public:
    using Error::Error;
};

/// Too few data points for a fit.
class InsufficientData : public Error {
public:
    using Error::Error;
};

/// No spectral column passed the peak-prominence gate.
class NoPeak : public Error {
public:
    using Error::Error;
};

/// Requested wavenumber is not on the grid's lattice.
class OffLattice : public Error {
public:
    using Error::Error;
};

/// Carrier power too close to the numerical noise floor.
class WeakCarrier : public Error {
public:
    using Error::Error;
};

/// Optimizer failed to converge in all restarts.
class NoConvergence : public Error {
public:
    using Error::Error;
};

/// Filesystem / serialization failure.
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace rwns
