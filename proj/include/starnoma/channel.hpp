#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "starnoma/phase_design.hpp"
#include "starnoma/phase_noise.hpp"
#include "starnoma/rng.hpp"
#include "starnoma/scene.hpp"

namespace starnoma {

using CVec = std::vector<std::complex<double>>;

/**
 * @brief One draw of all fading vectors plus the RIS phase-noise vectors.
 *
 * g_t/g_r are the UE-to-panel links, a_t/a_r the panel-to-AP links, and
 * noise_t/noise_r the per-element phase perturbations. Dimensions match
 * the scene's panel sizes. Immutable value; safe to share across threads.
 */
struct ChannelRealization {
    CVec g_t, g_r;
    CVec a_t, a_r;
    std::vector<double> noise_t, noise_r;

    const CVec& g(Side s) const { return s == Side::Transmit ? g_t : g_r; }
    const CVec& a(Side s) const { return s == Side::Transmit ? a_t : a_r; }
    const std::vector<double>& noise(Side s) const {
        return s == Side::Transmit ? noise_t : noise_r;
    }
};

/**
 * @brief LoS steering vector of one panel for the given arrival/departure
 *        angles.
 *
 * Entry for element (nx, ny) is exp(-j*(2*pi/lambda) * (dx*nx*sin(el)*cos(az)
 * + dy*ny*cos(el))), with elements indexed row-major over (ny, nx) and
 * indices starting at 0. All entries have unit modulus.
 */
inline CVec los_vector(const SceneConfig& scene, Side side, const SteeringAngles& angles) {
    const PanelDims& p = scene.panel(side);
    const double cx = (kTwoPi / scene.wavelength) * scene.spacing_x *
                      std::sin(angles.elevation) * std::cos(angles.azimuth);
    const double cy = (kTwoPi / scene.wavelength) * scene.spacing_y * std::cos(angles.elevation);
    CVec v(static_cast<std::size_t>(p.count()));
    for (int ny = 0; ny < p.ny; ++ny)
        for (int nx = 0; nx < p.nx; ++nx) {
            const double phase = cx * nx + cy * ny;
            v[static_cast<std::size_t>(ny) * p.nx + nx] = {std::cos(phase), -std::sin(phase)};
        }
    return v;
}

/// UE-side LoS vector (arrival angles) of a panel.
inline CVec los_vector_ue(const SceneConfig& scene, const LinkGeometry& geom, Side side) {
    return los_vector(scene, side, geom.aoa(side));
}

/// AP-side LoS vector (departure angles) of a panel.
inline CVec los_vector_ap(const SceneConfig& scene, const LinkGeometry& geom, Side side) {
    return los_vector(scene, side, geom.aod(side));
}

/**
 * @brief Draw one Rician channel realization plus RIS phase noise.
 *
 * Each link vector is sqrt(kappa/(1+kappa)) times its LoS vector plus an
 * i.i.d. CSCG diffuse component of per-entry variance 1/(1+kappa).
 */
inline ChannelRealization draw_channels(const SceneConfig& scene, const LinkGeometry& geom,
                                        RngStream& rng) {
    ChannelRealization out;
    for (Side side : {Side::Transmit, Side::Reflect}) {
        const double ku = scene.kappa_ue(side);
        const double ka = scene.kappa_a;
        const CVec g_bar = los_vector_ue(scene, geom, side);
        const CVec a_bar = los_vector_ap(scene, geom, side);
        const double g_los = std::sqrt(ku / (1.0 + ku));
        const double a_los = std::sqrt(ka / (1.0 + ka));

        CVec g(g_bar.size()), a(a_bar.size());
        for (std::size_t n = 0; n < g.size(); ++n)
            g[n] = g_los * g_bar[n] + rng.cscg(1.0 / (1.0 + ku));
        for (std::size_t n = 0; n < a.size(); ++n)
            a[n] = a_los * a_bar[n] + rng.cscg(1.0 / (1.0 + ka));

        auto noise = sample_phase_noise(scene.phase_noise, g.size(), rng);
        if (side == Side::Transmit) {
            out.g_t = std::move(g);
            out.a_t = std::move(a);
            out.noise_t = std::move(noise);
        } else {
            out.g_r = std::move(g);
            out.a_r = std::move(a);
            out.noise_r = std::move(noise);
        }
    }
    return out;
}

/**
 * @brief Equivalent scalar UE-to-AP channel through one panel:
 *        sqrt(rho_i * rho_a) * sum_n a*_n exp(j(theta_n + noise_n)) g_n.
 */
inline std::complex<double> equivalent_channel(const ChannelRealization& real,
                                               const PhaseDesign& design,
                                               const LinkGeometry& geom, Side side) {
    const CVec& g = real.g(side);
    const CVec& a = real.a(side);
    const std::vector<double>& noise = real.noise(side);
    const std::vector<double>& theta = design.panel(side);
    if (g.size() != a.size() || g.size() != theta.size() || g.size() != noise.size())
        throw std::invalid_argument("equivalent_channel: dimension mismatch");

    std::complex<double> sum{0.0, 0.0};
    for (std::size_t n = 0; n < g.size(); ++n) {
        const double phase = theta[n] + noise[n];
        sum += std::conj(a[n]) * std::polar(1.0, phase) * g[n];
    }
    return std::sqrt(geom.rho_ue(side) * geom.rho_a) * sum;
}

}  // namespace starnoma
