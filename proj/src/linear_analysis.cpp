#include "rwns/linear_analysis.hpp"

#include <cmath>
#include <iostream>

namespace rwns {

double omega0(const ModelParams& params, double k_mag) {
    const double w0 = params.w0();
    const double u0 = params.u0();
    const KernelSpec& kernel = params.kernel();
    const double khat = kernel.fourier(k_mag, params.dim());
    return w0 * k_mag * k_mag + u0 + params.kappa() * (khat - kernel.mass());
}

DispersionCurve dispersion_analytic(const ModelParams& params, std::vector<double> k) {
    if (!params.homogeneous_background())
        throw HeterogeneousParams("dispersion_analytic requires scalar w and U");
    DispersionCurve curve;
    curve.w0 = params.w0();
    curve.u0 = params.u0();
    curve.k = std::move(k);
    curve.omega.resize(curve.k.size());
    curve.residual.resize(curve.k.size());
    for (std::size_t i = 0; i < curve.k.size(); ++i) {
        const double km = curve.k[i];
        const double khat = params.kernel().fourier(km, params.dim());
        const double delta = params.kappa() * (khat - params.kernel().mass());
        curve.omega[i] = curve.w0 * km * km + curve.u0 + delta;
        curve.residual[i] = delta; // residual(0) = 0 exactly: K̂(0) − K̂(0)
    }
    return curve;
}

double small_k_plateau(const ModelParams& params) {
    const double mu2 = params.kernel().second_moment(params.dim());
    return -params.kappa() * mu2 / (2.0 * params.dim());
}

SidebandPrediction sideband_predict(const ModelParams& params, double k, double q, double eps,
                                    double phi_q, double eta) {
    if (q == 0.0) throw DegenerateDetuning("sideband_predict: drive wavenumber q must be nonzero");
    if (!(eta >= 0.0)) throw ConfigError("sideband_predict: eta must be >= 0");
    if (eps > 0.1)
        std::cerr << "sideband_predict: eps = " << eps
                  << " is outside the first-order regime (eps << 1)\n";

    SidebandPrediction pred;
    pred.k = k;
    pred.q = q;
    pred.eta = eta;
    const double w = omega0(params, k);
    pred.detuning_plus = w - omega0(params, std::abs(k + q));
    pred.detuning_minus = w - omega0(params, std::abs(k - q));

    const double coupling = std::abs(params.gamma()) * std::abs(eps) * std::abs(phi_q);
    if (coupling > 0.0 && eta == 0.0 &&
        (pred.detuning_plus == 0.0 || pred.detuning_minus == 0.0))
        throw DegenerateDetuning("sideband_predict: exact resonance with eta = 0");

    const auto lorentz = [&](double delta) { return delta * delta + eta * eta; };
    if (coupling == 0.0) {
        pred.amp_ratio_plus = pred.amp_ratio_minus = pred.power_ratio = 0.0;
        return pred;
    }
    pred.amp_ratio_plus = coupling / (2.0 * std::sqrt(lorentz(pred.detuning_plus)));
    pred.amp_ratio_minus = coupling / (2.0 * std::sqrt(lorentz(pred.detuning_minus)));
    // Time-averaged power ratio: the factor 2 over the squared amplitude
    // ratios is the mean of |e^{iΔt}−1|² over the averaging window.
    pred.power_ratio = 0.5 * coupling * coupling *
                       (1.0 / lorentz(pred.detuning_plus) + 1.0 / lorentz(pred.detuning_minus));
    return pred;
}

double asymmetry_index(const SidebandPrediction& pred) {
    const double p_plus = pred.amp_ratio_plus * pred.amp_ratio_plus;
    const double p_minus = pred.amp_ratio_minus * pred.amp_ratio_minus;
    const double total = p_plus + p_minus;
    if (total <= 0.0)
        throw ZeroSidebandPower("asymmetry_index: zero sideband power (drive off?)");
    return (p_plus - p_minus) / total;
}

} // namespace rwns
