#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "starnoma/channel.hpp"
#include "starnoma/moments.hpp"
#include "starnoma/phase_design.hpp"
#include "starnoma/rng.hpp"
#include "starnoma/scene.hpp"

namespace starnoma {

/// Pilot length and per-UE pilot powers. K >= 2 keeps the two sequences
/// orthogonal; a zero power degenerates that UE's pilot to silence.
struct PilotConfig {
    int length = 2;        // K
    double power_t = 1.0;  // [W]
    double power_r = 1.0;  // [W]

    double power(Side s) const { return s == Side::Transmit ? power_t : power_r; }

    void validate() const {
        if (length < 2) throw std::domain_error("PilotConfig: length must be >= 2");
        if (!(power_t >= 0.0) || !(power_r >= 0.0))
            throw std::domain_error("PilotConfig: powers must be >= 0");
    }
};

/// The two orthogonal unit-modulus pilot sequences.
struct PilotPair {
    CVec tau_t;
    CVec tau_r;

    const CVec& tau(Side s) const { return s == Side::Transmit ? tau_t : tau_r; }
};

namespace detail {

/// exp(-j 2 pi k / K), with quarter-turn arguments returning exact axis
/// values so short sequences are exactly orthogonal.
inline std::complex<double> unit_root(int k, int K) {
    const int r = ((k % K) + K) % K;
    if ((4 * r) % K == 0) {
        switch ((4 * r) / K) {
            case 0: return {1.0, 0.0};
            case 1: return {0.0, -1.0};
            case 2: return {-1.0, 0.0};
            case 3: return {0.0, 1.0};
        }
    }
    return std::polar(1.0, -kTwoPi * r / K);
}

}  // namespace detail

/**
 * @brief Orthogonal pilot pair of length K: the first two rows of the
 *        K-point DFT matrix.
 *
 * Unit-modulus entries with sum_k tau^(k) conj(tau^(k)) = K exactly and
 * zero cross-correlation, which keeps the sqrt(K) combining gain exact.
 */
inline PilotPair pilot_sequences(int K) {
    if (K < 2) throw std::domain_error("pilot_sequences: K must be >= 2");
    PilotPair p;
    p.tau_t.assign(static_cast<std::size_t>(K), {1.0, 0.0});
    p.tau_r.resize(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k) p.tau_r[static_cast<std::size_t>(k)] = detail::unit_root(k, K);
    return p;
}

/**
 * @brief Received pilot observations at the AP over one coherence block.
 *
 * Each of the K observations is the six-term superposition of the two
 * desired pilots scaled by sqrt(P eps_v eps_u), the AP distortion terms
 * scaled by sqrt(P (1-eps_v)), the UE distortion terms scaled by
 * sqrt(P eps_v (1-eps_u)), and additive noise CN(0, sigma_w^2). All
 * distortion variates are fresh i.i.d. per symbol slot.
 */
inline CVec simulate_pilot_rx(const ChannelRealization& real, const PhaseDesign& design,
                              const LinkGeometry& geom, const SceneConfig& scene,
                              const PilotConfig& pilots, RngStream& rng) {
    pilots.validate();
    const PilotPair seq = pilot_sequences(pilots.length);
    const std::complex<double> h_t = equivalent_channel(real, design, geom, Side::Transmit);
    const std::complex<double> h_r = equivalent_channel(real, design, geom, Side::Reflect);

    const double desired_t = std::sqrt(pilots.power_t * scene.eps_v * scene.eps_ut);
    const double desired_r = std::sqrt(pilots.power_r * scene.eps_v * scene.eps_ur);
    const double ap_hwi_t = std::sqrt(pilots.power_t * (1.0 - scene.eps_v));
    const double ap_hwi_r = std::sqrt(pilots.power_r * (1.0 - scene.eps_v));
    const double ue_hwi_t = std::sqrt(pilots.power_t * scene.eps_v * (1.0 - scene.eps_ut));
    const double ue_hwi_r = std::sqrt(pilots.power_r * scene.eps_v * (1.0 - scene.eps_ur));

    CVec x(static_cast<std::size_t>(pilots.length));
    for (std::size_t k = 0; k < x.size(); ++k) {
        x[k] = desired_t * h_t * seq.tau_t[k] + desired_r * h_r * seq.tau_r[k] +
               ap_hwi_t * h_t * rng.cscg(1.0) + ap_hwi_r * h_r * rng.cscg(1.0) +
               ue_hwi_t * h_t * rng.cscg(1.0) + ue_hwi_r * h_r * rng.cscg(1.0) +
               rng.cscg(scene.sigma_w2);
    }
    return x;
}

/// Pilot combining: (1/sqrt(K)) * sum_k x^(k) * conj(tau^(k)).
inline std::complex<double> combine(const CVec& observations, const CVec& pilot) {
    if (observations.size() != pilot.size())
        throw std::invalid_argument("combine: observation/pilot length mismatch");
    std::complex<double> sum{0.0, 0.0};
    for (std::size_t k = 0; k < observations.size(); ++k)
        sum += observations[k] * std::conj(pilot[k]);
    return sum / std::sqrt(static_cast<double>(observations.size()));
}

/// Closed-form statistics of one side's combined observation.
struct SideEstimationStats {
    std::complex<double> channel_mean{0.0, 0.0};
    double channel_variance = 0.0;  // C_hh
    double second_moment = 0.0;     // E|h|^2
    double gain = 0.0;              // sqrt(K P eps_v eps_u)
    double obs_variance = 0.0;      // C_xx
    double est_variance = 0.0;      // C_{h_hat h_hat}
    double err_variance = 0.0;      // C_{h_check h_check}
};

/// Everything the LMMSE estimator needs, precomputed once per scene,
/// design and pilot configuration.
struct EstimationModel {
    SideEstimationStats t, r;
    double zeta = 0.0;  // distortion power seen by the combiner

    const SideEstimationStats& side(Side s) const { return s == Side::Transmit ? t : r; }
};

/**
 * @brief Build the closed-form LMMSE statistics for both sides.
 *
 * zeta aggregates the pilot-power-scaled distortion second moments,
 * sum_i P_i (1 - eps_v eps_u_i) E|h_i|^2; the combined-observation
 * variance per side is then K P eps_v eps_u C_hh + zeta + sigma_w^2.
 */
inline EstimationModel estimation_model(const PhaseDesign& design, const LinkGeometry& geom,
                                        const SceneConfig& scene, const PilotConfig& pilots) {
    pilots.validate();
    EstimationModel m;
    double zeta = 0.0;
    for (Side side : {Side::Transmit, Side::Reflect}) {
        const ChannelMoments cm = channel_moments(design, geom, scene, side);
        SideEstimationStats& s = side == Side::Transmit ? m.t : m.r;
        s.channel_mean = cm.mean;
        s.channel_variance = cm.variance;
        s.second_moment = cm.second_moment;
        s.gain =
            std::sqrt(pilots.length * pilots.power(side) * scene.eps_v * scene.eps_u(side));
        zeta += pilots.power(side) * (1.0 - scene.eps_v * scene.eps_u(side)) * cm.second_moment;
    }
    m.zeta = zeta;
    for (SideEstimationStats* s : {&m.t, &m.r}) {
        s->obs_variance = s->gain * s->gain * s->channel_variance + zeta + scene.sigma_w2;
        if (!(s->obs_variance > 0.0))
            throw std::logic_error("estimation_model: non-positive observation variance");
        const double c_hx = s->gain * s->channel_variance;
        s->est_variance = c_hx * c_hx / s->obs_variance;
        s->err_variance = s->channel_variance * (zeta + scene.sigma_w2) / s->obs_variance;
    }
    return m;
}

/// LMMSE estimate plus its closed-form estimator and error variances.
struct LmmseResult {
    std::complex<double> estimate{0.0, 0.0};
    double est_variance = 0.0;
    double err_variance = 0.0;
};

/**
 * @brief LMMSE estimator of one side's equivalent channel from the
 *        combined observation.
 *
 * h_hat = E[h] + (C_hx / C_xx) (x - E[x]) with all statistics taken from
 * the closed forms; the two-timescale protocol treats them as known.
 */
inline LmmseResult lmmse_estimate(std::complex<double> combined, const EstimationModel& model,
                                  Side side) {
    const SideEstimationStats& s = model.side(side);
    const double weight = s.gain * s.channel_variance / s.obs_variance;
    LmmseResult r;
    r.estimate = s.channel_mean + weight * (combined - s.gain * s.channel_mean);
    r.est_variance = s.est_variance;
    r.err_variance = s.err_variance;
    return r;
}

inline LmmseResult lmmse_estimate(std::complex<double> combined, const PhaseDesign& design,
                                  const LinkGeometry& geom, const SceneConfig& scene,
                                  const PilotConfig& pilots, Side side) {
    return lmmse_estimate(combined, estimation_model(design, geom, scene, pilots), side);
}

/// Statistics-free least-squares estimate: combined / sqrt(K P eps_v eps_u).
inline std::complex<double> ls_estimate(std::complex<double> combined,
                                        const PilotConfig& pilots, const SceneConfig& scene,
                                        Side side) {
    const double gain =
        std::sqrt(pilots.length * pilots.power(side) * scene.eps_v * scene.eps_u(side));
    return combined / gain;
}

/// Residual error power of the LS estimate, (zeta + sigma_w^2)/(K P eps_v eps_u).
inline double ls_error_variance(const EstimationModel& model, const SceneConfig& scene,
                                Side side) {
    const SideEstimationStats& s = model.side(side);
    return (model.zeta + scene.sigma_w2) / (s.gain * s.gain);
}

/// LMMSE/LS estimates and closed-form variances for both sides.
struct EstimationOutcome {
    std::complex<double> h_hat_t{0.0, 0.0}, h_hat_r{0.0, 0.0};
    double est_variance_t = 0.0, est_variance_r = 0.0;
    double err_variance_t = 0.0, err_variance_r = 0.0;
    double nmse_closed = 0.0;
};

/// Normalized MSE of the estimated channel links, averaged over the two
/// UEs: (C_err_t/C_hh_t + C_err_r/C_hh_r) / 2.
inline double nmse_closed_form(const EstimationModel& model) {
    return 0.5 * (model.t.err_variance / model.t.channel_variance +
                  model.r.err_variance / model.r.channel_variance);
}

inline double nmse_closed_form(const PhaseDesign& design, const LinkGeometry& geom,
                               const SceneConfig& scene, const PilotConfig& pilots) {
    return nmse_closed_form(estimation_model(design, geom, scene, pilots));
}

enum class FloorVariant { Exact, LargeK };

/**
 * @brief High-power N-MSE floor, reached as both pilot powers grow.
 *
 * Exact: (1/2) sum_i zeta' / (K eps_v eps_u_i C_hh_i + zeta') with
 * zeta' = sum_i (1 - eps_v eps_u_i) E|h_i|^2 (the power-normalized
 * distortion). LargeK additionally drops zeta' from the denominator,
 * the K >> 1 limit of the exact floor.
 */
inline double nmse_floor(const PhaseDesign& design, const LinkGeometry& geom,
                         const SceneConfig& scene, const PilotConfig& pilots,
                         FloorVariant variant) {
    pilots.validate();
    double zeta_prime = 0.0;
    double c_hh[2];
    double eps_u[2];
    int i = 0;
    for (Side side : {Side::Transmit, Side::Reflect}) {
        const ChannelMoments cm = channel_moments(design, geom, scene, side);
        zeta_prime += (1.0 - scene.eps_v * scene.eps_u(side)) * cm.second_moment;
        c_hh[i] = cm.variance;
        eps_u[i] = scene.eps_u(side);
        ++i;
    }
    double floor = 0.0;
    for (i = 0; i < 2; ++i) {
        const double gain = pilots.length * scene.eps_v * eps_u[i] * c_hh[i];
        if (zeta_prime == 0.0) continue;  // ideal hardware: floor is 0
        floor += (variant == FloorVariant::Exact) ? zeta_prime / (gain + zeta_prime)
                                                  : zeta_prime / gain;
    }
    return 0.5 * floor;
}

}  // namespace starnoma
