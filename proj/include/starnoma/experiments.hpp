#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <future>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "starnoma/estimation.hpp"
#include "starnoma/rates.hpp"

namespace starnoma {

enum class SweepAxis { SnrDb, NumElements, PilotLenK, FractionBOrBeta, Eta };
enum class Estimator { Lmmse, Ls, Genie };
enum class DesignKind { Optimal, Random };
enum class MetricKind { Nmse, SumRate, RatePair };

inline const char* axis_name(SweepAxis a) {
    switch (a) {
        case SweepAxis::SnrDb: return "snr_db";
        case SweepAxis::NumElements: return "n_elements";
        case SweepAxis::PilotLenK: return "pilot_len_K";
        case SweepAxis::FractionBOrBeta: return "fraction";
        case SweepAxis::Eta: return "eta";
    }
    return "?";
}

/**
 * @brief One Monte Carlo sweep: a scene, an axis with its values, and the
 *        estimator/SIC/design/metric configuration shared by all points.
 *
 * Average received SNR is defined per link as gamma = P rho_a rho_ue /
 * sigma_w^2; transmit and pilot powers are solved from the gamma targets
 * at every point. gamma_t_db/gamma_r_db hold the targets when the axis is
 * not the SNR itself (asymmetric setups keep them distinct). `genie`
 * estimation means h_hat = h with zero error variance.
 */
struct SweepSpec {
    SceneConfig scene;
    int pilot_len = 50;
    SweepAxis axis = SweepAxis::SnrDb;
    std::vector<double> values;
    long trials = 10000;
    std::uint64_t seed = 1;
    Estimator estimator = Estimator::Lmmse;
    double sic_eta = 0.0;  // 0 = perfect SIC
    DesignKind design = DesignKind::Optimal;
    MetricKind metric = MetricKind::SumRate;
    double gamma_t_db = 0.0;
    double gamma_r_db = 0.0;
    double beta = 0.5;
    double fraction_b = 0.5;
    std::string label;             // series tag used in CSV metric names
    std::uint32_t stream_salt = 0; // keeps concurrent series statistically apart

    void validate() const {
        scene.validate();
        if (trials < 1) throw std::domain_error("SweepSpec: trials must be >= 1");
        if (values.empty()) throw std::domain_error("SweepSpec: no axis values");
        for (std::size_t i = 1; i < values.size(); ++i)
            if (!(values[i] > values[i - 1]))
                throw std::domain_error("SweepSpec: axis values must be strictly increasing");
        if (pilot_len < 2) throw std::domain_error("SweepSpec: pilot_len must be >= 2");
        if (!(sic_eta >= 0.0 && sic_eta <= 1.0))
            throw std::domain_error("SweepSpec: eta must be in [0,1]");
    }
};

/// One aggregated metric at one axis value. mc_stderr is the sample
/// standard deviation over trials divided by sqrt(trials).
struct SeriesResult {
    std::string metric;
    double axis_value = 0.0;
    double mc_mean = 0.0;
    double mc_stderr = 0.0;
    std::optional<double> closed_form;
    long trials = 0;
};

namespace detail {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

constexpr int kMaxMetrics = 6;
constexpr long kTrialBlock = 4096;  // aggregation granularity; fixed so that
                                    // results do not depend on thread count

inline std::vector<std::string> metric_names(MetricKind kind) {
    switch (kind) {
        case MetricKind::Nmse: return {"nmse"};
        case MetricKind::SumRate: return {"sum_rate"};
        case MetricKind::RatePair:
            return {"rate_t_noma", "rate_r_noma", "sum_noma",
                    "rate_t_oma",  "rate_r_oma",  "sum_oma"};
    }
    return {};
}

/// Everything fixed across the trials of one sweep point.
struct PointContext {
    SceneConfig scene;
    LinkGeometry geom;
    PilotConfig pilots;
    PilotPair seq;
    double rho_t = 0.0, rho_r = 0.0;
    double beta = 0.5, fraction_b = 0.5, eta = 0.0;
    Estimator estimator = Estimator::Lmmse;
    DesignKind design_kind = DesignKind::Optimal;
    MetricKind metric = MetricKind::SumRate;
    PhaseDesign design;      // valid when design_kind == Optimal
    EstimationModel model;   // matches `design`
};

inline PointContext make_point(const SweepSpec& spec, double value) {
    PointContext ctx;
    ctx.scene = spec.scene;
    ctx.pilots.length = spec.pilot_len;
    ctx.estimator = spec.estimator;
    ctx.design_kind = spec.design;
    ctx.metric = spec.metric;
    ctx.beta = spec.beta;
    ctx.fraction_b = spec.fraction_b;
    ctx.eta = spec.sic_eta;
    double gamma_t_db = spec.gamma_t_db;
    double gamma_r_db = spec.gamma_r_db;

    switch (spec.axis) {
        case SweepAxis::SnrDb:
            gamma_t_db = gamma_r_db = value;
            break;
        case SweepAxis::NumElements: {
            const int n = static_cast<int>(std::llround(value));
            if (n < 1 || std::abs(value - n) > 1e-9)
                throw std::domain_error("run_sweep: n_elements values must be positive integers");
            int nx = static_cast<int>(std::llround(std::sqrt(static_cast<double>(n))));
            nx = std::max(nx, 1);
            while (n % nx != 0) --nx;
            ctx.scene.panel_t = {nx, n / nx};
            ctx.scene.panel_r = {nx, n / nx};
            break;
        }
        case SweepAxis::PilotLenK: {
            const int k = static_cast<int>(std::llround(value));
            if (k < 2 || std::abs(value - k) > 1e-9)
                throw std::domain_error("run_sweep: pilot_len_K values must be integers >= 2");
            ctx.pilots.length = k;
            break;
        }
        case SweepAxis::FractionBOrBeta:
            ctx.beta = value;
            ctx.fraction_b = value;
            break;
        case SweepAxis::Eta:
            ctx.eta = value;
            break;
    }

    ctx.geom = derive_geometry(ctx.scene);
    ctx.seq = pilot_sequences(ctx.pilots.length);
    // Solve the per-link powers from the received-SNR targets.
    ctx.rho_t = db_to_linear(gamma_t_db) * ctx.scene.sigma_w2 / (ctx.geom.rho_a * ctx.geom.rho_t);
    ctx.rho_r = db_to_linear(gamma_r_db) * ctx.scene.sigma_w2 / (ctx.geom.rho_a * ctx.geom.rho_r);
    ctx.pilots.power_t = ctx.rho_t;
    ctx.pilots.power_r = ctx.rho_r;

    if (ctx.design_kind == DesignKind::Optimal) {
        ctx.design = optimal_phases(ctx.geom, ctx.scene);
        ctx.model = estimation_model(ctx.design, ctx.geom, ctx.scene, ctx.pilots);
    }
    return ctx;
}

/// Lower-level pilot receiver used by the trial kernel: equivalent
/// channels and pilot sequences are already known.
inline CVec pilot_rx(std::complex<double> h_t, std::complex<double> h_r, const PilotPair& seq,
                     const SceneConfig& scene, const PilotConfig& pilots, RngStream& rng) {
    const double desired_t = std::sqrt(pilots.power_t * scene.eps_v * scene.eps_ut);
    const double desired_r = std::sqrt(pilots.power_r * scene.eps_v * scene.eps_ur);
    const double ap_hwi_t = std::sqrt(pilots.power_t * (1.0 - scene.eps_v));
    const double ap_hwi_r = std::sqrt(pilots.power_r * (1.0 - scene.eps_v));
    const double ue_hwi_t = std::sqrt(pilots.power_t * scene.eps_v * (1.0 - scene.eps_ut));
    const double ue_hwi_r = std::sqrt(pilots.power_r * scene.eps_v * (1.0 - scene.eps_ur));
    CVec x(seq.tau_t.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
        x[k] = desired_t * h_t * seq.tau_t[k] + desired_r * h_r * seq.tau_r[k] +
               ap_hwi_t * h_t * rng.cscg(1.0) + ap_hwi_r * h_r * rng.cscg(1.0) +
               ue_hwi_t * h_t * rng.cscg(1.0) + ue_hwi_r * h_r * rng.cscg(1.0) +
               rng.cscg(scene.sigma_w2);
    }
    return x;
}

inline void run_trial(const PointContext& ctx, RngStream& rng,
                      std::array<double, kMaxMetrics>& vals) {
    const PhaseDesign* design = &ctx.design;
    const EstimationModel* model = &ctx.model;
    PhaseDesign local_design;
    EstimationModel local_model;
    if (ctx.design_kind == DesignKind::Random) {
        local_design = random_phases(ctx.scene, rng);
        design = &local_design;
        local_model = estimation_model(*design, ctx.geom, ctx.scene, ctx.pilots);
        model = &local_model;
    }

    const ChannelRealization real = draw_channels(ctx.scene, ctx.geom, rng);
    const std::complex<double> h_t = equivalent_channel(real, *design, ctx.geom, Side::Transmit);
    const std::complex<double> h_r = equivalent_channel(real, *design, ctx.geom, Side::Reflect);

    std::complex<double> h_hat_t = h_t, h_hat_r = h_r;
    double err_t = 0.0, err_r = 0.0;
    if (ctx.estimator != Estimator::Genie) {
        const CVec obs = pilot_rx(h_t, h_r, ctx.seq, ctx.scene, ctx.pilots, rng);
        const std::complex<double> comb_t = combine(obs, ctx.seq.tau_t);
        const std::complex<double> comb_r = combine(obs, ctx.seq.tau_r);
        if (ctx.estimator == Estimator::Lmmse) {
            const LmmseResult lt = lmmse_estimate(comb_t, *model, Side::Transmit);
            const LmmseResult lr = lmmse_estimate(comb_r, *model, Side::Reflect);
            h_hat_t = lt.estimate;
            h_hat_r = lr.estimate;
            err_t = lt.err_variance;
            err_r = lr.err_variance;
        } else {
            h_hat_t = ls_estimate(comb_t, ctx.pilots, ctx.scene, Side::Transmit);
            h_hat_r = ls_estimate(comb_r, ctx.pilots, ctx.scene, Side::Reflect);
            err_t = ls_error_variance(*model, ctx.scene, Side::Transmit);
            err_r = ls_error_variance(*model, ctx.scene, Side::Reflect);
        }
    }

    if (ctx.metric == MetricKind::Nmse) {
        vals[0] = 0.5 * (std::norm(h_t - h_hat_t) / model->t.channel_variance +
                         std::norm(h_r - h_hat_r) / model->r.channel_variance);
        return;
    }

    RateInputs in;
    in.h_hat_t = h_hat_t;
    in.h_hat_r = h_hat_r;
    in.err_variance_t = err_t;
    in.err_variance_r = err_r;
    in.rho_t = ctx.rho_t;
    in.rho_r = ctx.rho_r;
    in.eps_v = ctx.scene.eps_v;
    in.eps_ut = ctx.scene.eps_ut;
    in.eps_ur = ctx.scene.eps_ur;
    in.sigma_w2 = ctx.scene.sigma_w2;
    in.eta = ctx.eta;
    in.beta = ctx.beta;
    in.fraction_b = ctx.fraction_b;

    if (ctx.metric == MetricKind::SumRate) {
        if (ctx.eta > 0.0) {
            // Imperfect SIC: the sum depends on the order fraction, so use
            // the sum-rate-optimal endpoint.
            in.beta = optimal_decoding_fraction(in);
            vals[0] = noma_sum_rate_imperfect(in);
        } else {
            vals[0] = noma_sum_rate_perfect(in);
        }
        return;
    }

    const TimeSharedRates ts = time_share(noma_rates_perfect(in), in.beta);
    const OmaRates oma = oma_rates(in);
    vals[0] = ts.rate_t;
    vals[1] = ts.rate_r;
    vals[2] = ts.sum;
    vals[3] = oma.rate_t;
    vals[4] = oma.rate_r;
    vals[5] = oma.sum;
}

/// Stream id for one trial; series salt and point index keep independent
/// series and points on disjoint streams under a shared seed.
inline std::uint64_t trial_stream(std::uint32_t salt, std::size_t point, long trial) {
    return (static_cast<std::uint64_t>(salt) << 52) ^
           (static_cast<std::uint64_t>(point) << 36) ^ static_cast<std::uint64_t>(trial);
}

inline std::optional<double> closed_form_overlay(const SweepSpec& spec, const PointContext& ctx,
                                                 const std::string& metric) {
    if (ctx.design_kind != DesignKind::Optimal) return std::nullopt;
    if (ctx.metric == MetricKind::Nmse) {
        if (ctx.estimator == Estimator::Lmmse) return nmse_closed_form(ctx.model);
        if (ctx.estimator == Estimator::Ls)
            return 0.5 * (ls_error_variance(ctx.model, ctx.scene, Side::Transmit) /
                              ctx.model.t.channel_variance +
                          ls_error_variance(ctx.model, ctx.scene, Side::Reflect) /
                              ctx.model.r.channel_variance);
        return std::nullopt;
    }
    const bool is_sum = (ctx.metric == MetricKind::SumRate && metric == "sum_rate") ||
                        (ctx.metric == MetricKind::RatePair && metric == "sum_noma");
    if (!is_sum || ctx.eta > 0.0) return std::nullopt;
    (void)spec;
    if (ctx.estimator == Estimator::Genie) {
        // Perfect-CSI bound: estimator variance equals the channel variance.
        EstimationModel genie = ctx.model;
        for (SideEstimationStats* s : {&genie.t, &genie.r}) {
            s->est_variance = s->channel_variance;
            s->err_variance = 0.0;
        }
        return ergodic_sum_upper_bound(genie, ctx.scene, ctx.rho_t, ctx.rho_r);
    }
    if (ctx.estimator == Estimator::Lmmse)
        return ergodic_sum_upper_bound(ctx.model, ctx.scene, ctx.rho_t, ctx.rho_r);
    return std::nullopt;
}

}  // namespace detail

/**
 * @brief Run one sweep: per axis value, `trials` independent trials
 *        (channel draw -> pilot simulation -> estimation -> rates),
 *        aggregated to mean and standard error per metric.
 *
 * Deterministic given the spec, including under parallel execution:
 * every trial owns an RngStream keyed by (seed, salt, point, trial), and
 * aggregation sums fixed-size trial blocks in index order, so thread
 * scheduling cannot change a single bit of the output.
 */
inline std::vector<SeriesResult> run_sweep(const SweepSpec& spec) {
    using namespace detail;
    spec.validate();
    const std::vector<std::string> names = metric_names(spec.metric);
    const int n_metrics = static_cast<int>(names.size());
    std::vector<SeriesResult> out;
    out.reserve(spec.values.size() * names.size());

    for (std::size_t point = 0; point < spec.values.size(); ++point) {
        const double value = spec.values[point];
        const PointContext ctx = make_point(spec, value);

        const long n = spec.trials;
        const long n_blocks = (n + kTrialBlock - 1) / kTrialBlock;
        std::vector<std::array<double, kMaxMetrics>> block_sum(
            static_cast<std::size_t>(n_blocks), std::array<double, kMaxMetrics>{});
        std::vector<std::array<double, kMaxMetrics>> block_sum2(
            static_cast<std::size_t>(n_blocks), std::array<double, kMaxMetrics>{});

        auto run_block = [&](long b) {
            std::array<double, kMaxMetrics> vals{};
            auto& s1 = block_sum[static_cast<std::size_t>(b)];
            auto& s2 = block_sum2[static_cast<std::size_t>(b)];
            const long lo = b * kTrialBlock;
            const long hi = std::min(n, lo + kTrialBlock);
            for (long t = lo; t < hi; ++t) {
                RngStream rng(spec.seed, trial_stream(spec.stream_salt, point, t));
                run_trial(ctx, rng, vals);
                for (int m = 0; m < n_metrics; ++m) {
                    s1[static_cast<std::size_t>(m)] += vals[static_cast<std::size_t>(m)];
                    s2[static_cast<std::size_t>(m)] +=
                        vals[static_cast<std::size_t>(m)] * vals[static_cast<std::size_t>(m)];
                }
            }
        };

        const long hw = std::max(1u, std::thread::hardware_concurrency());
        if (hw > 1 && n_blocks > 1) {
            std::atomic<long> next{0};
            std::vector<std::future<void>> workers;
            const long n_workers = std::min<long>(hw, n_blocks);
            workers.reserve(static_cast<std::size_t>(n_workers));
            for (long w = 0; w < n_workers; ++w)
                workers.push_back(std::async(std::launch::async, [&] {
                    for (long b = next.fetch_add(1); b < n_blocks; b = next.fetch_add(1))
                        run_block(b);
                }));
            for (auto& f : workers) f.get();
        } else {
            for (long b = 0; b < n_blocks; ++b) run_block(b);
        }

        for (int m = 0; m < n_metrics; ++m) {
            double s1 = 0.0, s2 = 0.0;
            for (long b = 0; b < n_blocks; ++b) {  // fixed order: deterministic
                s1 += block_sum[static_cast<std::size_t>(b)][static_cast<std::size_t>(m)];
                s2 += block_sum2[static_cast<std::size_t>(b)][static_cast<std::size_t>(m)];
            }
            SeriesResult r;
            r.metric = spec.label.empty() ? names[static_cast<std::size_t>(m)]
                                          : spec.label + ":" + names[static_cast<std::size_t>(m)];
            r.axis_value = value;
            r.trials = n;
            r.mc_mean = s1 / static_cast<double>(n);
            if (n > 1) {
                const double var =
                    std::max(0.0, (s2 - static_cast<double>(n) * r.mc_mean * r.mc_mean) /
                                      static_cast<double>(n - 1));
                r.mc_stderr = std::sqrt(var / static_cast<double>(n));
            }
            r.closed_form = closed_form_overlay(spec, ctx, names[static_cast<std::size_t>(m)]);
            out.push_back(std::move(r));
        }
    }
    return out;
}

/// A named figure preset: one shared axis, one SweepSpec per series.
struct Recipe {
    std::string name;
    std::string axis;
    std::vector<SweepSpec> series;
};

inline std::vector<std::string> recipe_names() {
    return {"fig3",  "fig3b", "fig4a", "fig4b", "fig4c", "fig5",
            "fig6a", "fig6b", "fig6c", "fig7",  "fig8",  "fig9"};
}

namespace detail {

inline std::vector<double> linspace_db(double lo, double hi, double step) {
    std::vector<double> v;
    for (double x = lo; x <= hi + 1e-9; x += step) v.push_back(x);
    return v;
}

inline SceneConfig with_eps(SceneConfig s, double eps) {
    s.eps_v = s.eps_ut = s.eps_ur = eps;
    return s;
}

inline std::string eps_tag(double eps) {
    if (eps == 1.0) return "eps1";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "eps%g", eps);
    return buf;
}

}  // namespace detail

/**
 * @brief Pre-built sweep presets reproducing the reference experiments at
 *        desk scale.
 *
 * `base` supplies geometry, panel sizes and any parameters a preset does
 * not pin; each preset overrides the hardware quality, phase-noise model,
 * pilot length and SNR targets it studies. Throws std::invalid_argument
 * for unknown names (the message lists the valid ones).
 */
inline Recipe figure_recipe(const std::string& name, const SceneConfig& base, long trials = 10000,
                            std::uint64_t seed = 1) {
    using namespace detail;
    Recipe rec;
    rec.name = name;

    auto add = [&rec, trials, seed](SweepSpec s, const std::string& label) {
        s.trials = trials;
        s.seed = seed;
        s.label = label;
        s.stream_salt = static_cast<std::uint32_t>(rec.series.size());
        rec.series.push_back(std::move(s));
    };

    if (name == "fig3" || name == "fig3b") {
        // Channel-estimation accuracy in the von Mises / uniform phase-noise
        // setting, across hardware qualities and pilot lengths.
        if (name == "fig3") {
            rec.axis = axis_name(SweepAxis::SnrDb);
            for (double eps : {1.0, 1.0 - 1e-2})
                for (int k : {2, 50})
                    for (Estimator est : {Estimator::Lmmse, Estimator::Ls}) {
                        SweepSpec s;
                        s.scene = with_eps(base, eps);
                        s.scene.phase_noise = PhaseNoiseModel::von_mises(0.1);
                        s.pilot_len = k;
                        s.axis = SweepAxis::SnrDb;
                        s.values = linspace_db(-10, 60, 10);
                        s.metric = MetricKind::Nmse;
                        s.estimator = est;
                        add(std::move(s), (est == Estimator::Lmmse ? "lmmse_" : "ls_") +
                                              std::string("K") + std::to_string(k) + "_" +
                                              eps_tag(eps));
                    }
        } else {
            rec.axis = axis_name(SweepAxis::PilotLenK);
            for (double eps : {1.0, 1.0 - 1e-1, 1.0 - 1e-2}) {
                SweepSpec s;
                s.scene = with_eps(base, eps);
                s.scene.phase_noise = PhaseNoiseModel::uniform(0.1);
                s.axis = SweepAxis::PilotLenK;
                s.values = {2, 5, 10, 20, 50, 100, 200, 500, 1000};
                s.metric = MetricKind::Nmse;
                s.gamma_t_db = s.gamma_r_db = 0.0;
                add(std::move(s), eps_tag(eps));
            }
        }
        return rec;
    }

    if (name == "fig4a" || name == "fig4b" || name == "fig4c") {
        // Ergodic sum-rate under RIS phase noise, ideal transceivers.
        auto noise_grid = [](SweepSpec s, auto&& push) {
            push(s, PhaseNoiseModel::none(), "sigma0");
            push(s, PhaseNoiseModel::von_mises(0.1), "vm0.1");
            push(s, PhaseNoiseModel::von_mises(0.8), "vm0.8");
            push(s, PhaseNoiseModel::uniform(0.1), "uf0.1");
            push(s, PhaseNoiseModel::uniform(0.8), "uf0.8");
        };
        SweepSpec proto;
        proto.scene = with_eps(base, 1.0);
        proto.pilot_len = 50;
        proto.metric = MetricKind::SumRate;
        if (name == "fig4a") {
            proto.axis = SweepAxis::SnrDb;
            proto.values = linspace_db(-10, 30, 5);
        } else if (name == "fig4b") {
            proto.axis = SweepAxis::NumElements;
            proto.values = {64, 100, 196, 400, 784};
            proto.gamma_t_db = proto.gamma_r_db = 0.0;
        } else {
            proto.axis = SweepAxis::PilotLenK;
            proto.values = {2, 5, 10, 20, 30, 50, 100};
            proto.gamma_t_db = proto.gamma_r_db = 0.0;
        }
        rec.axis = axis_name(proto.axis);
        noise_grid(proto, [&](SweepSpec s, PhaseNoiseModel m, const std::string& tag) {
            s.scene.phase_noise = m;
            add(std::move(s), tag);
        });
        return rec;
    }

    if (name == "fig5") {
        // Optimal vs random phase design, two panel sizes, no phase noise.
        rec.axis = axis_name(SweepAxis::SnrDb);
        for (DesignKind d : {DesignKind::Optimal, DesignKind::Random})
            for (int n : {400, 800}) {
                SweepSpec s;
                s.scene = with_eps(base, 1.0);
                s.scene.phase_noise = PhaseNoiseModel::none();
                s.scene.panel_t = n == 400 ? PanelDims{20, 20} : PanelDims{40, 20};
                s.scene.panel_r = s.scene.panel_t;
                s.pilot_len = 50;
                s.axis = SweepAxis::SnrDb;
                s.values = linspace_db(-10, 30, 5);
                s.metric = MetricKind::SumRate;
                s.design = d;
                add(std::move(s), std::string(d == DesignKind::Optimal ? "opt" : "rand") +
                                      "_N" + std::to_string(n));
            }
        return rec;
    }

    if (name == "fig6a" || name == "fig6b" || name == "fig6c") {
        // NOMA/OMA rate pair vs the order fraction beta / OMA fraction B.
        rec.axis = axis_name(SweepAxis::FractionBOrBeta);
        SweepSpec s;
        s.scene = with_eps(base, 1.0);
        s.scene.phase_noise = PhaseNoiseModel::uniform(0.1);
        s.pilot_len = 2;
        s.axis = SweepAxis::FractionBOrBeta;
        s.values = {0.01, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5,
                    0.55, 0.6,  0.65, 0.7, 0.75, 0.8, 0.85, 0.9, 0.95, 0.99};
        s.metric = MetricKind::RatePair;
        const double gamma = name == "fig6a" ? 0.0 : name == "fig6b" ? 10.0 : 20.0;
        s.gamma_t_db = gamma;
        s.gamma_r_db = -gamma;
        add(std::move(s), "ideal");
        return rec;
    }

    if (name == "fig7" || name == "fig8") {
        // Rate pair with perfect channel knowledge, hardware-quality grid.
        rec.axis = axis_name(SweepAxis::FractionBOrBeta);
        for (double eps : {1.0, 1.0 - 1e-4, 1.0 - 1e-3}) {
            SweepSpec s;
            s.scene = with_eps(base, eps);
            s.scene.phase_noise = PhaseNoiseModel::uniform(0.1);
            s.axis = SweepAxis::FractionBOrBeta;
            s.values = {0.01, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5,
                        0.55, 0.6,  0.65, 0.7, 0.75, 0.8, 0.85, 0.9, 0.95, 0.99};
            s.metric = MetricKind::RatePair;
            s.estimator = Estimator::Genie;
            s.gamma_t_db = name == "fig7" ? 0.0 : 20.0;
            s.gamma_r_db = name == "fig7" ? 0.0 : -20.0;
            add(std::move(s), eps_tag(eps));
        }
        return rec;
    }

    if (name == "fig9") {
        // Imperfect-SIC sum-rate; the order fraction follows the
        // sum-rate-optimal endpoint rule per realization.
        rec.axis = axis_name(SweepAxis::SnrDb);
        for (double eps : {1.0, 1.0 - 1e-2})
            for (double eta : {0.0, 0.1, 1.0}) {
                SweepSpec s;
                s.scene = with_eps(base, eps);
                s.scene.phase_noise = PhaseNoiseModel::uniform(0.1);
                s.pilot_len = 2;
                s.axis = SweepAxis::SnrDb;
                s.values = linspace_db(0, 50, 5);
                s.metric = MetricKind::SumRate;
                s.sic_eta = eta;
                char tag[48];
                std::snprintf(tag, sizeof(tag), "%s_eta%g", eps_tag(eps).c_str(), eta);
                add(std::move(s), tag);
            }
        return rec;
    }

    std::string msg = "unknown recipe '" + name + "'; available:";
    for (const auto& n : recipe_names()) msg += " " + n;
    throw std::invalid_argument(msg);
}

}  // namespace starnoma
