#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "starnoma/rng.hpp"
#include "starnoma/special.hpp"

namespace starnoma {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

enum class PhaseNoiseKind { None, VonMises, Uniform };

/**
 * @brief RIS phase-noise model: zero-mean i.i.d. perturbations of the
 *        configured element phases, wrapped on (-pi, pi].
 *
 * `power` is the noise power sigma_p^2 in radians^2. Von Mises noise has
 * concentration 1/sigma_p^2; uniform noise is supported on
 * (-sqrt(3 sigma_p^2), +sqrt(3 sigma_p^2)). Zero power collapses either
 * kind to None (the von Mises concentration would be undefined).
 */
struct PhaseNoiseModel {
    PhaseNoiseKind kind = PhaseNoiseKind::None;
    double power = 0.0;  // sigma_p^2 [rad^2]

    static PhaseNoiseModel none() { return {PhaseNoiseKind::None, 0.0}; }

    static PhaseNoiseModel von_mises(double sigma_p2) {
        if (sigma_p2 == 0.0) return none();
        return {PhaseNoiseKind::VonMises, sigma_p2};
    }

    static PhaseNoiseModel uniform(double sigma_p2) {
        if (sigma_p2 == 0.0) return none();
        return {PhaseNoiseKind::Uniform, sigma_p2};
    }

    /// Von Mises concentration parameter 1/sigma_p^2.
    double concentration() const { return 1.0 / power; }

    /// Uniform support half-width sqrt(3 sigma_p^2).
    double half_width() const { return std::sqrt(3.0 * power); }

    void validate() const {
        if (!(power >= 0.0) || !std::isfinite(power))
            throw std::domain_error("PhaseNoiseModel: power must be finite and >= 0");
        if (kind != PhaseNoiseKind::None && power == 0.0)
            throw std::domain_error("PhaseNoiseModel: zero power must use kind None");
    }
};

/**
 * @brief Mean of exp(j*theta) under the phase-noise distribution.
 *
 * None -> 1. Von Mises -> I1(1/sigma_p^2)/I0(1/sigma_p^2).
 * Uniform -> sin(iota)/iota with the removable singularity at iota = 0
 * returning exactly 1.
 */
inline double xi_factor(const PhaseNoiseModel& model) {
    model.validate();
    switch (model.kind) {
        case PhaseNoiseKind::None:
            return 1.0;
        case PhaseNoiseKind::VonMises:
            return bessel_i_ratio(model.concentration());
        case PhaseNoiseKind::Uniform: {
            const double iota = model.half_width();
            if (iota == 0.0) return 1.0;
            return std::sin(iota) / iota;
        }
    }
    return 1.0;
}

namespace detail {

/// One zero-mean von Mises draw via the Best-Fisher wrapped-Cauchy
/// rejection scheme, wrapped on (-pi, pi]. Exact for all concentrations;
/// very large kappa falls back to the wrapped-normal limit.
inline double sample_von_mises(double kappa, RngStream& rng) {
    if (kappa > 1e14) {
        double theta = rng.normal() / std::sqrt(kappa);
        theta = std::remainder(theta, kTwoPi);
        return theta;
    }
    double s;
    if (kappa < 1e-5) {
        // rho underflows in double; second-order expansion around kappa = 0
        s = 1.0 / kappa + kappa;
    } else {
        const double r = 1.0 + std::sqrt(1.0 + 4.0 * kappa * kappa);
        const double rho = (r - std::sqrt(2.0 * r)) / (2.0 * kappa);
        s = (1.0 + rho * rho) / (2.0 * rho);
    }
    for (;;) {
        const double z = std::cos(kPi * rng.uniform01());
        const double w = (1.0 + s * z) / (s + z);
        const double y = kappa * (s - w);
        const double v = rng.uniform_pos();
        if (y * (2.0 - y) - v >= 0.0 || std::log(y / v) + 1.0 - y >= 0.0) {
            const double theta = std::acos(w);
            return rng.uniform01() < 0.5 ? -theta : theta;
        }
    }
}

}  // namespace detail

/// n i.i.d. phase-noise samples in radians.
inline std::vector<double> sample_phase_noise(const PhaseNoiseModel& model, std::size_t n,
                                              RngStream& rng) {
    model.validate();
    std::vector<double> out(n, 0.0);
    switch (model.kind) {
        case PhaseNoiseKind::None:
            break;
        case PhaseNoiseKind::VonMises: {
            const double kappa = model.concentration();
            for (auto& x : out) x = detail::sample_von_mises(kappa, rng);
            break;
        }
        case PhaseNoiseKind::Uniform: {
            const double iota = model.half_width();
            for (auto& x : out) x = rng.uniform(-iota, iota);
            break;
        }
    }
    return out;
}

/// n circularly symmetric complex Gaussian draws around a common mean.
inline std::vector<std::complex<double>> sample_cscg(std::complex<double> mean, double variance,
                                                     std::size_t n, RngStream& rng) {
    if (!(variance >= 0.0) || !std::isfinite(variance))
        throw std::domain_error("sample_cscg: variance must be finite and >= 0");
    std::vector<std::complex<double>> out(n);
    for (auto& x : out) x = mean + rng.cscg(variance);
    return out;
}

/// Entrywise means, shared variance.
inline std::vector<std::complex<double>> sample_cscg(const std::vector<std::complex<double>>& mean,
                                                     double variance, RngStream& rng) {
    if (!(variance >= 0.0) || !std::isfinite(variance))
        throw std::domain_error("sample_cscg: variance must be finite and >= 0");
    std::vector<std::complex<double>> out(mean.size());
    for (std::size_t i = 0; i < mean.size(); ++i) out[i] = mean[i] + rng.cscg(variance);
    return out;
}

}  // namespace starnoma
