#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "starnoma/phase_noise.hpp"

namespace starnoma {

using Vec3 = std::array<double, 3>;

/// Which STAR-RIS panel (and therefore which UE) a quantity belongs to.
enum class Side { Transmit, Reflect };

struct PanelDims {
    int nx = 1;
    int ny = 1;
    int count() const { return nx * ny; }
};

/// Elevation measured from the global +z axis, azimuth in the x-y plane;
/// only (sin(el)*cos(az), cos(el)) enter the steering phases.
struct SteeringAngles {
    double elevation = 0.0;  // [rad]
    double azimuth = 0.0;    // [rad]
};

/**
 * @brief Full parameter set for one system instance: node geometry,
 *        panel layout, fading and path-loss constants, hardware quality
 *        factors and the RIS phase-noise model.
 *
 * Everything is stored in natural linear units (meters, watts, linear
 * power ratios); dB conversion happens only at the I/O boundary.
 * Defaults reproduce the reference simulation setup.
 */
struct SceneConfig {
    Vec3 ap_pos{0.0, -80.0, 20.0};
    Vec3 uet_pos{0.0, 20.0, 5.0};
    Vec3 uer_pos{0.0, -20.0, 5.0};
    Vec3 ris_pos{0.0, 0.0, 15.0};

    PanelDims panel_t{20, 20};
    PanelDims panel_r{20, 20};

    double wavelength = 0.1;   // [m]; only spacing/wavelength matters
    double spacing_x = 0.05;   // [m], horizontal element pitch
    double spacing_y = 0.05;   // [m], vertical element pitch

    double kappa_t = 1.0;  // Rician factors, linear
    double kappa_r = 1.0;
    double kappa_a = 1.0;

    double alpha_t = 2.542;  // path-loss exponents
    double alpha_r = 2.542;
    double alpha_a = 2.4;

    double rho0 = 1e-3;       // path loss at 1 m, linear
    double sigma_w2 = 1e-13;  // noise power [W]

    double eps_v = 1.0;   // AP hardware quality
    double eps_ut = 1.0;  // UE-T hardware quality
    double eps_ur = 1.0;  // UE-R hardware quality

    PhaseNoiseModel phase_noise = PhaseNoiseModel::none();

    // Explicit angles override the geometry-derived ones when set.
    std::optional<SteeringAngles> aoa_t_override;  // UE-T -> transmit panel
    std::optional<SteeringAngles> aoa_r_override;  // UE-R -> reflect panel
    std::optional<SteeringAngles> aod_t_override;  // transmit panel -> AP
    std::optional<SteeringAngles> aod_r_override;  // reflect panel -> AP

    const PanelDims& panel(Side s) const { return s == Side::Transmit ? panel_t : panel_r; }
    double kappa_ue(Side s) const { return s == Side::Transmit ? kappa_t : kappa_r; }
    double eps_u(Side s) const { return s == Side::Transmit ? eps_ut : eps_ur; }

    void validate() const {
        auto require = [](bool ok, const char* what) {
            if (!ok) throw std::domain_error(std::string("SceneConfig: ") + what);
        };
        require(panel_t.nx >= 1 && panel_t.ny >= 1, "transmit panel counts must be >= 1");
        require(panel_r.nx >= 1 && panel_r.ny >= 1, "reflect panel counts must be >= 1");
        require(spacing_x > 0.0 && spacing_y > 0.0, "element spacings must be > 0");
        require(wavelength > 0.0, "wavelength must be > 0");
        require(kappa_t >= 0.0 && kappa_r >= 0.0 && kappa_a >= 0.0,
                "Rician factors must be >= 0");
        require(alpha_t > 0.0 && alpha_r > 0.0 && alpha_a > 0.0,
                "path-loss exponents must be > 0");
        require(rho0 > 0.0, "reference path loss must be > 0");
        require(sigma_w2 > 0.0, "noise power must be > 0");
        require(eps_v >= 0.0 && eps_v <= 1.0, "eps_v must be in [0,1]");
        require(eps_ut >= 0.0 && eps_ut <= 1.0, "eps_ut must be in [0,1]");
        require(eps_ur >= 0.0 && eps_ur <= 1.0, "eps_ur must be in [0,1]");
        phase_noise.validate();
    }
};

/// Derived per-link quantities: distances, linear path losses, and the
/// four elevation/azimuth pairs seen from the RIS panels.
struct LinkGeometry {
    double d_t = 0.0, d_r = 0.0, d_a = 0.0;        // [m]
    double rho_t = 0.0, rho_r = 0.0, rho_a = 0.0;  // linear path losses
    SteeringAngles aoa_t, aoa_r;                   // UE -> panel arrivals
    SteeringAngles aod_t, aod_r;                   // panel -> AP departures

    double rho_ue(Side s) const { return s == Side::Transmit ? rho_t : rho_r; }
    const SteeringAngles& aoa(Side s) const { return s == Side::Transmit ? aoa_t : aoa_r; }
    const SteeringAngles& aod(Side s) const { return s == Side::Transmit ? aod_t : aod_r; }
};

namespace detail {

inline double distance(const Vec3& a, const Vec3& b) {
    const double dx = a[0] - b[0];
    const double dy = a[1] - b[1];
    const double dz = a[2] - b[2];
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

/// Angles of the unit direction from the RIS towards `target` in the RIS
/// local frame: the panel lies in the global x-z plane, so elevation comes
/// from u_z and the azimuth from the x-y components.
inline SteeringAngles direction_angles(const Vec3& ris, const Vec3& target) {
    const double d = distance(ris, target);
    const double ux = (target[0] - ris[0]) / d;
    const double uy = (target[1] - ris[1]) / d;
    const double uz = (target[2] - ris[2]) / d;
    SteeringAngles a;
    a.elevation = std::acos(std::clamp(uz, -1.0, 1.0));
    a.azimuth = std::atan2(uy, ux);
    return a;
}

}  // namespace detail

/**
 * @brief Distances, path losses rho_i = rho0 * d_i^(-alpha_i), and
 *        steering angles for the three links of a scene.
 *
 * Throws if the RIS is colocated with any other node (the direction, and
 * with it every steering phase, would be undefined).
 */
inline LinkGeometry derive_geometry(const SceneConfig& scene) {
    scene.validate();
    LinkGeometry g;
    g.d_t = detail::distance(scene.ris_pos, scene.uet_pos);
    g.d_r = detail::distance(scene.ris_pos, scene.uer_pos);
    g.d_a = detail::distance(scene.ris_pos, scene.ap_pos);
    if (g.d_t <= 0.0 || g.d_r <= 0.0 || g.d_a <= 0.0)
        throw std::domain_error("derive_geometry: RIS colocated with another node");

    g.rho_t = scene.rho0 * std::pow(g.d_t, -scene.alpha_t);
    g.rho_r = scene.rho0 * std::pow(g.d_r, -scene.alpha_r);
    g.rho_a = scene.rho0 * std::pow(g.d_a, -scene.alpha_a);

    g.aoa_t = scene.aoa_t_override ? *scene.aoa_t_override
                                   : detail::direction_angles(scene.ris_pos, scene.uet_pos);
    g.aoa_r = scene.aoa_r_override ? *scene.aoa_r_override
                                   : detail::direction_angles(scene.ris_pos, scene.uer_pos);
    g.aod_t = scene.aod_t_override ? *scene.aod_t_override
                                   : detail::direction_angles(scene.ris_pos, scene.ap_pos);
    g.aod_r = scene.aod_r_override ? *scene.aod_r_override
                                   : detail::direction_angles(scene.ris_pos, scene.ap_pos);
    return g;
}

}  // namespace starnoma
