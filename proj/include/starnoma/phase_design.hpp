#pragma once

#include <cmath>
#include <vector>

#include "starnoma/rng.hpp"
#include "starnoma/scene.hpp"

namespace starnoma {

/// Wrap an angle to [0, 2*pi).
inline double wrap_two_pi(double x) {
    double y = x - kTwoPi * std::floor(x / kTwoPi);
    if (y >= kTwoPi) y = 0.0;  // guard against rounding at the seam
    return y;
}

/**
 * @brief Expected phase shifts of the two STAR-RIS panels, one entry per
 *        element in row-major (ny, nx) order, each wrapped to [0, 2*pi).
 */
struct PhaseDesign {
    std::vector<double> theta_t;
    std::vector<double> theta_r;

    const std::vector<double>& panel(Side s) const {
        return s == Side::Transmit ? theta_t : theta_r;
    }
};

/**
 * @brief Statistical-CSI optimal phase design.
 *
 * Per element, the phase cancels the LoS arrival/departure phase
 * difference, (2*pi/lambda) * (dx*nx*(sin(el_a)cos(az_a) - sin(el_d)cos(az_d))
 * + dy*ny*(cos(el_a) - cos(el_d))), which co-phases every term of the
 * coherent LoS sum so that it attains its maximum value N per panel. The
 * design depends only on angles, never on instantaneous fading.
 */
inline PhaseDesign optimal_phases(const LinkGeometry& geom, const SceneConfig& scene) {
    PhaseDesign d;
    for (Side side : {Side::Transmit, Side::Reflect}) {
        const PanelDims& p = scene.panel(side);
        const SteeringAngles& arr = geom.aoa(side);
        const SteeringAngles& dep = geom.aod(side);
        const double cx = (kTwoPi / scene.wavelength) * scene.spacing_x *
                          (std::sin(arr.elevation) * std::cos(arr.azimuth) -
                           std::sin(dep.elevation) * std::cos(dep.azimuth));
        const double cy = (kTwoPi / scene.wavelength) * scene.spacing_y *
                          (std::cos(arr.elevation) - std::cos(dep.elevation));
        auto& theta = side == Side::Transmit ? d.theta_t : d.theta_r;
        theta.resize(static_cast<std::size_t>(p.count()));
        for (int ny = 0; ny < p.ny; ++ny)
            for (int nx = 0; nx < p.nx; ++nx)
                theta[static_cast<std::size_t>(ny) * p.nx + nx] =
                    wrap_two_pi(cx * nx + cy * ny);
    }
    return d;
}

/// Baseline design: i.i.d. uniform phases on [0, 2*pi).
inline PhaseDesign random_phases(const SceneConfig& scene, RngStream& rng) {
    PhaseDesign d;
    d.theta_t.resize(static_cast<std::size_t>(scene.panel_t.count()));
    d.theta_r.resize(static_cast<std::size_t>(scene.panel_r.count()));
    for (auto& x : d.theta_t) x = rng.uniform(0.0, kTwoPi);
    for (auto& x : d.theta_r) x = rng.uniform(0.0, kTwoPi);
    return d;
}

}  // namespace starnoma
