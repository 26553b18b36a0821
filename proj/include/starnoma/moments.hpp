#pragma once

#include <complex>

#include "starnoma/channel.hpp"
#include "starnoma/phase_design.hpp"
#include "starnoma/scene.hpp"

namespace starnoma {

/**
 * @brief Closed-form first and second moments of an equivalent channel.
 *
 * The variance equals second_moment - |mean|^2 and is independent of the
 * phase design and of the phase-noise power.
 */
struct ChannelMoments {
    std::complex<double> mean{0.0, 0.0};
    double second_moment = 0.0;
    double variance = 0.0;
};

/**
 * @brief Design-dependent LoS combining term sum_n conj(a_bar_n) * g_bar_n
 *        * exp(j*theta_n); maximized (to N) by the optimal design.
 */
inline std::complex<double> coherent_sum(const PhaseDesign& design, const LinkGeometry& geom,
                                         const SceneConfig& scene, Side side) {
    const CVec g_bar = los_vector_ue(scene, geom, side);
    const CVec a_bar = los_vector_ap(scene, geom, side);
    const std::vector<double>& theta = design.panel(side);
    if (g_bar.size() != theta.size())
        throw std::invalid_argument("coherent_sum: design does not match panel size");
    std::complex<double> sum{0.0, 0.0};
    for (std::size_t n = 0; n < g_bar.size(); ++n)
        sum += std::conj(a_bar[n]) * g_bar[n] * std::polar(1.0, theta[n]);
    return sum;
}

/**
 * @brief Closed-form mean, second moment and variance of the equivalent
 *        channel through one panel.
 *
 * mean   = sqrt(rho_i rho_a k_i k_a / ((1+k_i)(1+k_a))) * xi * S
 * E|h|^2 = rho_i rho_a (k_i k_a xi^2 |S|^2 + (k_i+k_a+1) N) / ((1+k_i)(1+k_a))
 * var    = rho_i rho_a (k_i+k_a+1) N / ((1+k_i)(1+k_a))
 *
 * with S the coherent sum and xi the phase-noise attenuation factor. The
 * xi^2 factor multiplies the full |S|^2 term exactly as the closed form
 * states it; the Monte Carlo cross-checks in the test suite report any
 * measured deviation rather than adjusting the expression.
 */
inline ChannelMoments channel_moments(const PhaseDesign& design, const LinkGeometry& geom,
                                      const SceneConfig& scene, Side side) {
    const double ku = scene.kappa_ue(side);
    const double ka = scene.kappa_a;
    const double n_elems = static_cast<double>(scene.panel(side).count());
    const double rho_prod = geom.rho_ue(side) * geom.rho_a;
    const double denom = (1.0 + ku) * (1.0 + ka);
    const double xi = xi_factor(scene.phase_noise);
    const std::complex<double> s = coherent_sum(design, geom, scene, side);

    ChannelMoments m;
    m.mean = std::sqrt(rho_prod * ku * ka / denom) * xi * s;
    m.second_moment =
        rho_prod * (ku * ka * xi * xi * std::norm(s) + (ku + ka + 1.0) * n_elems) / denom;
    m.variance = rho_prod * (ku + ka + 1.0) * n_elems / denom;
    return m;
}

}  // namespace starnoma
