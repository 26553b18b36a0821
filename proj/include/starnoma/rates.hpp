#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "starnoma/estimation.hpp"

namespace starnoma {

/**
 * @brief Everything the instantaneous rate expressions consume: estimated
 *        channels with their error variances, transmit powers, hardware
 *        qualities, noise power, and the SIC/time-sharing knobs.
 *
 * eta is the SIC imperfection coefficient (0 = perfect cancellation),
 * beta the time fraction spent in the t->r decoding order, fraction_b
 * the OMA time/frequency split.
 */
struct RateInputs {
    std::complex<double> h_hat_t{0.0, 0.0};
    std::complex<double> h_hat_r{0.0, 0.0};
    double err_variance_t = 0.0;
    double err_variance_r = 0.0;
    double rho_t = 0.0;  // [W]
    double rho_r = 0.0;  // [W]
    double eps_v = 1.0;
    double eps_ut = 1.0;
    double eps_ur = 1.0;
    double sigma_w2 = 0.0;  // [W]
    double eta = 0.0;
    double beta = 0.5;
    double fraction_b = 0.5;

    /// Post-SIC desired signal power of one UE.
    double signal_power(Side s) const {
        return s == Side::Transmit ? rho_t * eps_v * eps_ut * std::norm(h_hat_t)
                                   : rho_r * eps_v * eps_ur * std::norm(h_hat_r);
    }

    void validate() const {
        auto require = [](bool ok, const char* what) {
            if (!ok) throw std::domain_error(std::string("RateInputs: ") + what);
        };
        require(rho_t >= 0.0 && rho_r >= 0.0, "powers must be >= 0");
        require(err_variance_t >= 0.0 && err_variance_r >= 0.0,
                "error variances must be >= 0");
        require(eps_v >= 0.0 && eps_v <= 1.0 && eps_ut >= 0.0 && eps_ut <= 1.0 &&
                    eps_ur >= 0.0 && eps_ur <= 1.0,
                "hardware qualities must be in [0,1]");
        require(eta >= 0.0 && eta <= 1.0, "eta must be in [0,1]");
        require(beta >= 0.0 && beta <= 1.0, "beta must be in [0,1]");
        require(sigma_w2 >= 0.0, "noise power must be >= 0");
    }
};

/// Instantaneous per-user rates for both SIC orders [bit/s/Hz].
struct PerOrderRates {
    double t_first_t = 0.0;  // R_t under t->r
    double t_first_r = 0.0;  // R_r under t->r
    double r_first_t = 0.0;  // R_t under r->t
    double r_first_r = 0.0;  // R_r under r->t
};

/// Time-shared per-user rates and their sum [bit/s/Hz].
struct TimeSharedRates {
    double rate_t = 0.0;
    double rate_r = 0.0;
    double sum = 0.0;
};

/// OMA per-user rates and their sum [bit/s/Hz].
struct OmaRates {
    double rate_t = 0.0;
    double rate_r = 0.0;
    double sum = 0.0;
};

/**
 * @brief Equivalent noise power seen by the SIC detector: the HWI and
 *        channel-estimation contributions of both users plus thermal
 *        noise, rho_t eps_t + rho_r eps_r + sigma_w^2 with
 *        eps_i = (1 - eps_v eps_u_i) |h_hat_i|^2 + C_err_i.
 */
inline double effective_noise(const RateInputs& in) {
    const double eps_t =
        (1.0 - in.eps_v * in.eps_ut) * std::norm(in.h_hat_t) + in.err_variance_t;
    const double eps_r =
        (1.0 - in.eps_v * in.eps_ur) * std::norm(in.h_hat_r) + in.err_variance_r;
    return in.rho_t * eps_t + in.rho_r * eps_r + in.sigma_w2;
}

/// Per-user rates under perfect SIC for both decoding orders.
inline PerOrderRates noma_rates_perfect(const RateInputs& in) {
    in.validate();
    const double s_t = in.signal_power(Side::Transmit);
    const double s_r = in.signal_power(Side::Reflect);
    const double noise = effective_noise(in);
    PerOrderRates r;
    r.t_first_t = std::log2(1.0 + s_t / (s_r + noise));
    r.t_first_r = std::log2(1.0 + s_r / noise);
    r.r_first_t = std::log2(1.0 + s_t / noise);
    r.r_first_r = std::log2(1.0 + s_r / (s_t + noise));
    return r;
}

/**
 * @brief Per-user rates under imperfect SIC: the later-decoded user sees a
 *        residual eta fraction of the first-decoded user's signal power.
 *        eta = 0 reduces exactly to the perfect-SIC rates.
 */
inline PerOrderRates noma_rates_imperfect(const RateInputs& in) {
    in.validate();
    const double s_t = in.signal_power(Side::Transmit);
    const double s_r = in.signal_power(Side::Reflect);
    const double noise = effective_noise(in);
    PerOrderRates r;
    r.t_first_t = std::log2(1.0 + s_t / (s_r + noise));
    r.t_first_r = std::log2(1.0 + s_r / (in.eta * s_t + noise));
    r.r_first_t = std::log2(1.0 + s_t / (in.eta * s_r + noise));
    r.r_first_r = std::log2(1.0 + s_r / (s_t + noise));
    return r;
}

/// Convex combination of the two SIC orders: beta of the time in t->r,
/// (1-beta) in r->t.
inline TimeSharedRates time_share(const PerOrderRates& rates, double beta) {
    if (!(beta >= 0.0 && beta <= 1.0))
        throw std::domain_error("time_share: beta must be in [0,1]");
    TimeSharedRates out;
    out.rate_t = beta * rates.t_first_t + (1.0 - beta) * rates.r_first_t;
    out.rate_r = beta * rates.t_first_r + (1.0 - beta) * rates.r_first_r;
    out.sum = out.rate_t + out.rate_r;
    return out;
}

/// Single-log closed form of the perfect-SIC sum-rate; independent of beta.
inline double noma_sum_rate_perfect(const RateInputs& in) {
    const double s_t = in.signal_power(Side::Transmit);
    const double s_r = in.signal_power(Side::Reflect);
    return std::log2(1.0 + (s_t + s_r) / effective_noise(in));
}

/**
 * @brief Sum-rate degradation of imperfect SIC relative to the perfect-SIC
 *        single-log sum, as a function of the decoding-order fraction.
 */
inline double sum_rate_degradation(const RateInputs& in) {
    in.validate();
    const double s_t = in.signal_power(Side::Transmit);
    const double s_r = in.signal_power(Side::Reflect);
    const double noise = effective_noise(in);
    const double loss_tr = std::log2(1.0 + in.eta * s_t / noise) -
                           std::log2(1.0 + in.eta * s_t / (s_r + noise));
    const double loss_rt = std::log2(1.0 + in.eta * s_r / noise) -
                           std::log2(1.0 + in.eta * s_r / (s_t + noise));
    return in.beta * loss_tr + (1.0 - in.beta) * loss_rt;
}

/// Imperfect-SIC sum-rate at the inputs' beta.
inline double noma_sum_rate_imperfect(const RateInputs& in) {
    return time_share(noma_rates_imperfect(in), in.beta).sum;
}

/**
 * @brief Sum-rate-optimal decoding-order fraction under imperfect SIC:
 *        decode the weaker user first. Returns 0 (pure r->t order) when
 *        rho_t eps_ut |h_t|^2 > rho_r eps_ur |h_r|^2, 1 for the reverse;
 *        ties return 0 (both endpoints give the same sum-rate).
 */
inline double optimal_decoding_fraction(const RateInputs& in) {
    const double p_t = in.rho_t * in.eps_ut * std::norm(in.h_hat_t);
    const double p_r = in.rho_r * in.eps_ur * std::norm(in.h_hat_r);
    return p_t >= p_r ? 0.0 : 1.0;
}

/**
 * @brief OMA rates with fraction B of the time/frequency for UE-T. Only
 *        the thermal noise scales with the fraction; the HWI and
 *        estimation-error terms ride on the full-band signal.
 */
inline OmaRates oma_rates(const RateInputs& in) {
    in.validate();
    const double b = in.fraction_b;
    if (!(b > 0.0 && b < 1.0))
        throw std::domain_error("oma_rates: fraction_b must be in (0,1)");
    const double s_t = in.signal_power(Side::Transmit);
    const double s_r = in.signal_power(Side::Reflect);
    const double eps_t =
        (1.0 - in.eps_v * in.eps_ut) * std::norm(in.h_hat_t) + in.err_variance_t;
    const double eps_r =
        (1.0 - in.eps_v * in.eps_ur) * std::norm(in.h_hat_r) + in.err_variance_r;
    OmaRates out;
    out.rate_t = b * std::log2(1.0 + s_t / (in.rho_t * eps_t + b * in.sigma_w2));
    out.rate_r =
        (1.0 - b) * std::log2(1.0 + s_r / (in.rho_r * eps_r + (1.0 - b) * in.sigma_w2));
    out.sum = out.rate_t + out.rate_r;
    return out;
}

/**
 * @brief Sum-rate-maximizing OMA fraction,
 *        rho_t |h_t|^2 / (rho_t |h_t|^2 + rho_r |h_r|^2).
 *
 * At this fraction — in the zero-error-variance, equal-UE-quality regime —
 * the OMA sum-rate equals the NOMA sum-rate; elsewhere it is the
 * stationary point of the OMA sum in B.
 */
inline double oma_optimal_fraction(const RateInputs& in) {
    const double p_t = in.rho_t * std::norm(in.h_hat_t);
    const double p_r = in.rho_r * std::norm(in.h_hat_r);
    return p_t / (p_t + p_r);
}

/// Per-user and sum rates for NOMA (both SIC orders, time-shared) and OMA.
struct RateReport {
    double r_t_tr = 0.0, r_r_tr = 0.0;  // t->r order
    double r_t_rt = 0.0, r_r_rt = 0.0;  // r->t order
    double r_t_noma = 0.0, r_r_noma = 0.0, r_sum_noma = 0.0;
    double r_t_oma = 0.0, r_r_oma = 0.0, r_sum_oma = 0.0;
};

/// Full instantaneous report at the inputs' beta, fraction and eta.
inline RateReport rate_report(const RateInputs& in) {
    const PerOrderRates orders =
        in.eta > 0.0 ? noma_rates_imperfect(in) : noma_rates_perfect(in);
    const TimeSharedRates ts = time_share(orders, in.beta);
    const OmaRates oma = oma_rates(in);
    RateReport rep;
    rep.r_t_tr = orders.t_first_t;
    rep.r_r_tr = orders.t_first_r;
    rep.r_t_rt = orders.r_first_t;
    rep.r_r_rt = orders.r_first_r;
    rep.r_t_noma = ts.rate_t;
    rep.r_r_noma = ts.rate_r;
    rep.r_sum_noma = ts.sum;
    rep.r_t_oma = oma.rate_t;
    rep.r_r_oma = oma.rate_r;
    rep.r_sum_oma = oma.sum;
    return rep;
}

/**
 * @brief Closed-form upper bound on the ergodic perfect-SIC sum-rate,
 *        obtained by moving the expectation inside the log.
 *
 * Uses E|h_hat_i|^2 = |E h_i|^2 + C_hat_i and replaces the per-realization
 * equivalent noise by its mean. The bound is evaluated from the LMMSE
 * closed-form statistics of the given design/scene/pilot configuration.
 */
inline double ergodic_sum_upper_bound(const EstimationModel& model, const SceneConfig& scene,
                                      double rho_t, double rho_r) {
    double desired = 0.0;
    double noise = scene.sigma_w2;
    for (Side side : {Side::Transmit, Side::Reflect}) {
        const SideEstimationStats& s = model.side(side);
        const double rho = side == Side::Transmit ? rho_t : rho_r;
        const double eps_u = scene.eps_u(side);
        const double est_power = std::norm(s.channel_mean) + s.est_variance;
        desired += rho * scene.eps_v * eps_u * est_power;
        noise += rho * ((1.0 - scene.eps_v * eps_u) * est_power + s.err_variance);
    }
    return std::log2(1.0 + desired / noise);
}

inline double ergodic_sum_upper_bound(const PhaseDesign& design, const LinkGeometry& geom,
                                      const SceneConfig& scene, const PilotConfig& pilots,
                                      double rho_t, double rho_r) {
    return ergodic_sum_upper_bound(estimation_model(design, geom, scene, pilots), scene, rho_t,
                                   rho_r);
}

}  // namespace starnoma
