#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "starnoma/experiments.hpp"

namespace starnoma {

inline constexpr const char* kArtifactVersion = "1.0.0";

/// Config-file problem: carries the offending key and 1-based line number.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& msg, const std::string& key, int line)
        : std::runtime_error("config error at line " + std::to_string(line) + " (key '" + key +
                             "'): " + msg),
          key_(key),
          line_(line) {}

    const std::string& key() const { return key_; }
    int line() const { return line_; }

private:
    std::string key_;
    int line_;
};

/// Scene plus the scalar run parameters a config file can set.
struct LoadedConfig {
    SceneConfig scene;
    int pilot_len_K = 50;
    double eta = 0.0;
    double beta = 0.5;
    double fraction_b = 0.5;
};

namespace detail {

inline double db_to_lin(double db) { return std::pow(10.0, db / 10.0); }
inline double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double lin_to_db(double lin) { return 10.0 * std::log10(lin); }

inline std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

inline double parse_double(const std::string& v, const std::string& key, int line) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (trim(v.substr(pos)).empty() && std::isfinite(x)) return x;
    } catch (const std::exception&) {
    }
    throw ConfigError("malformed numeric value '" + v + "'", key, line);
}

inline int parse_int(const std::string& v, const std::string& key, int line) {
    const double x = parse_double(v, key, line);
    const int n = static_cast<int>(std::llround(x));
    if (std::abs(x - n) > 1e-9) throw ConfigError("expected an integer, got '" + v + "'", key, line);
    return n;
}

inline Vec3 parse_vec3(const std::string& v, const std::string& key, int line) {
    std::stringstream ss(v);
    std::string part;
    Vec3 out{};
    for (int i = 0; i < 3; ++i) {
        if (!std::getline(ss, part, ','))
            throw ConfigError("expected three comma-separated values", key, line);
        out[static_cast<std::size_t>(i)] = parse_double(trim(part), key, line);
    }
    if (std::getline(ss, part, ','))
        throw ConfigError("expected exactly three comma-separated values", key, line);
    return out;
}

}  // namespace detail

/**
 * @brief Parse a flat `key = value` config file into a scene.
 *
 * Lines are `key = value` with `#` comments; every key is optional and
 * missing keys keep the built-in defaults. dB-valued keys are converted
 * to linear here; nothing downstream ever sees a dB. Unknown keys,
 * malformed values and out-of-range values all raise ConfigError with
 * the key name and line number.
 */
inline LoadedConfig load_config(std::istream& in) {
    using detail::parse_double;
    using detail::parse_int;
    using detail::parse_vec3;
    using detail::trim;

    LoadedConfig cfg;
    double spacing_over_lambda = 0.5;
    std::string phase_kind = "none";
    double phase_power = 0.0;
    int phase_kind_line = 0;

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected 'key = value'", line, lineno);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (value.empty()) throw ConfigError("missing value", key, lineno);

        auto in_unit = [&](double x, const char* what) {
            if (!(x >= 0.0 && x <= 1.0))
                throw ConfigError(std::string(what) + " must be in [0,1]", key, lineno);
            return x;
        };
        auto positive = [&](double x, const char* what) {
            if (!(x > 0.0))
                throw ConfigError(std::string(what) + " must be > 0", key, lineno);
            return x;
        };
        auto count = [&](int n) {
            if (n < 1) throw ConfigError("element count must be >= 1", key, lineno);
            return n;
        };

        SceneConfig& sc = cfg.scene;
        if (key == "ap_pos") sc.ap_pos = parse_vec3(value, key, lineno);
        else if (key == "uet_pos") sc.uet_pos = parse_vec3(value, key, lineno);
        else if (key == "uer_pos") sc.uer_pos = parse_vec3(value, key, lineno);
        else if (key == "ris_pos") sc.ris_pos = parse_vec3(value, key, lineno);
        else if (key == "n_t_x") sc.panel_t.nx = count(parse_int(value, key, lineno));
        else if (key == "n_t_y") sc.panel_t.ny = count(parse_int(value, key, lineno));
        else if (key == "n_r_x") sc.panel_r.nx = count(parse_int(value, key, lineno));
        else if (key == "n_r_y") sc.panel_r.ny = count(parse_int(value, key, lineno));
        else if (key == "spacing_over_lambda")
            spacing_over_lambda = positive(parse_double(value, key, lineno), "spacing");
        else if (key == "wavelength_m")
            sc.wavelength = positive(parse_double(value, key, lineno), "wavelength");
        else if (key == "kappa_t_db") sc.kappa_t = detail::db_to_lin(parse_double(value, key, lineno));
        else if (key == "kappa_r_db") sc.kappa_r = detail::db_to_lin(parse_double(value, key, lineno));
        else if (key == "kappa_a_db") sc.kappa_a = detail::db_to_lin(parse_double(value, key, lineno));
        else if (key == "alpha_t") sc.alpha_t = positive(parse_double(value, key, lineno), "alpha_t");
        else if (key == "alpha_r") sc.alpha_r = positive(parse_double(value, key, lineno), "alpha_r");
        else if (key == "alpha_a") sc.alpha_a = positive(parse_double(value, key, lineno), "alpha_a");
        else if (key == "rho0_db") sc.rho0 = detail::db_to_lin(parse_double(value, key, lineno));
        else if (key == "noise_dbm")
            sc.sigma_w2 = detail::dbm_to_watt(parse_double(value, key, lineno));
        else if (key == "eps_v") sc.eps_v = in_unit(parse_double(value, key, lineno), "eps_v");
        else if (key == "eps_ut") sc.eps_ut = in_unit(parse_double(value, key, lineno), "eps_ut");
        else if (key == "eps_ur") sc.eps_ur = in_unit(parse_double(value, key, lineno), "eps_ur");
        else if (key == "phase_noise_kind") {
            phase_kind = value;
            phase_kind_line = lineno;
            if (value != "none" && value != "vonmises" && value != "uniform")
                throw ConfigError("expected none|vonmises|uniform", key, lineno);
        } else if (key == "phase_noise_power") {
            phase_power = parse_double(value, key, lineno);
            if (!(phase_power >= 0.0))
                throw ConfigError("phase-noise power must be >= 0", key, lineno);
        } else if (key == "pilot_len_K") {
            cfg.pilot_len_K = parse_int(value, key, lineno);
            if (cfg.pilot_len_K < 2) throw ConfigError("pilot length must be >= 2", key, lineno);
        } else if (key == "eta") {
            cfg.eta = in_unit(parse_double(value, key, lineno), "eta");
        } else if (key == "beta") {
            cfg.beta = in_unit(parse_double(value, key, lineno), "beta");
        } else if (key == "fraction_B") {
            cfg.fraction_b = parse_double(value, key, lineno);
            if (!(cfg.fraction_b > 0.0 && cfg.fraction_b < 1.0))
                throw ConfigError("fraction_B must be in (0,1)", key, lineno);
        } else {
            throw ConfigError("unknown key", key, lineno);
        }
    }

    cfg.scene.spacing_x = cfg.scene.spacing_y = spacing_over_lambda * cfg.scene.wavelength;
    if (phase_kind == "vonmises")
        cfg.scene.phase_noise = PhaseNoiseModel::von_mises(phase_power);
    else if (phase_kind == "uniform")
        cfg.scene.phase_noise = PhaseNoiseModel::uniform(phase_power);
    else if (phase_power != 0.0 && phase_kind == "none")
        throw ConfigError("phase_noise_power set but phase_noise_kind is none",
                          "phase_noise_kind", phase_kind_line);
    return cfg;
}

inline LoadedConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    return load_config(in);
}

/// Shortest decimal form that round-trips a double exactly.
inline std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

/// Long-format CSV: one row per (axis value, metric).
inline void write_series_csv(std::ostream& out, const std::string& axis,
                             const std::vector<SeriesResult>& rows, std::uint64_t seed) {
    out << "axis_name,axis_value,metric_name,mc_mean,mc_stderr,closed_form,trials,seed\n";
    for (const SeriesResult& r : rows) {
        out << axis << ',' << format_g17(r.axis_value) << ',' << r.metric << ','
            << format_g17(r.mc_mean) << ',' << format_g17(r.mc_stderr) << ',';
        if (r.closed_form) out << format_g17(*r.closed_form);
        out << ',' << r.trials << ',' << seed << '\n';
    }
}

/**
 * @brief One CLI invocation: where the config lives, which recipe (or
 *        inline sweep) to run, where to write, plus seed/trial overrides.
 *
 * Exactly one of `recipe` and `inline_spec` must be set.
 */
struct RunManifest {
    std::string config_path;  // empty = built-in defaults
    std::string recipe;
    std::optional<SweepSpec> inline_spec;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::optional<long> trials;

    void validate() const {
        if (recipe.empty() == !inline_spec.has_value())
            throw std::invalid_argument("RunManifest: exactly one of recipe/inline spec");
    }
};

namespace detail {

inline void write_meta(std::ostream& out, const std::string& name, const Recipe& rec,
                       long trials, std::uint64_t seed) {
    out << "artifact_version = " << kArtifactVersion << "\n";
    out << "recipe = " << name << "\n";
    out << "axis = " << rec.axis << "\n";
    out << "trials = " << trials << "\n";
    out << "seed = " << seed << "\n";
    out << "series_count = " << rec.series.size() << "\n";
    int i = 0;
    for (const SweepSpec& s : rec.series) {
        const std::string p = "series" + std::to_string(i++) + ".";
        const SceneConfig& sc = s.scene;
        out << p << "label = " << s.label << "\n";
        out << p << "estimator = "
            << (s.estimator == Estimator::Lmmse ? "lmmse"
                                                : s.estimator == Estimator::Ls ? "ls" : "genie")
            << "\n";
        out << p << "design = " << (s.design == DesignKind::Optimal ? "optimal" : "random")
            << "\n";
        out << p << "metric = "
            << (s.metric == MetricKind::Nmse ? "nmse"
                                             : s.metric == MetricKind::SumRate ? "sum_rate"
                                                                               : "rate_pair")
            << "\n";
        out << p << "pilot_len_K = " << s.pilot_len << "\n";
        out << p << "eta = " << format_g17(s.sic_eta) << "\n";
        out << p << "beta = " << format_g17(s.beta) << "\n";
        out << p << "fraction_B = " << format_g17(s.fraction_b) << "\n";
        out << p << "gamma_t_db = " << format_g17(s.gamma_t_db) << "\n";
        out << p << "gamma_r_db = " << format_g17(s.gamma_r_db) << "\n";
        out << p << "values =";
        for (double v : s.values) out << ' ' << format_g17(v);
        out << "\n";
        out << p << "panel_t = " << sc.panel_t.nx << "x" << sc.panel_t.ny << "\n";
        out << p << "panel_r = " << sc.panel_r.nx << "x" << sc.panel_r.ny << "\n";
        out << p << "eps_v = " << format_g17(sc.eps_v) << "\n";
        out << p << "eps_ut = " << format_g17(sc.eps_ut) << "\n";
        out << p << "eps_ur = " << format_g17(sc.eps_ur) << "\n";
        out << p << "phase_noise_kind = "
            << (sc.phase_noise.kind == PhaseNoiseKind::None
                    ? "none"
                    : sc.phase_noise.kind == PhaseNoiseKind::VonMises ? "vonmises" : "uniform")
            << "\n";
        out << p << "phase_noise_power = " << format_g17(sc.phase_noise.power) << "\n";
        out << p << "kappa_t = " << format_g17(sc.kappa_t) << "\n";
        out << p << "kappa_r = " << format_g17(sc.kappa_r) << "\n";
        out << p << "kappa_a = " << format_g17(sc.kappa_a) << "\n";
        out << p << "rho0 = " << format_g17(sc.rho0) << "\n";
        out << p << "sigma_w2 = " << format_g17(sc.sigma_w2) << "\n";
    }
}

}  // namespace detail

/**
 * @brief Resolve a manifest, run the sweep(s), and write `<name>.csv` and
 *        `<name>.meta` into the output directory.
 *
 * Prints a per-series summary of the maximum relative deviation from the
 * closed-form overlay (where one exists). Returns the rows written.
 */
inline std::vector<SeriesResult> run_manifest(const RunManifest& manifest,
                                              std::ostream& log = std::cout) {
    manifest.validate();
    const LoadedConfig cfg =
        manifest.config_path.empty() ? LoadedConfig{} : load_config(manifest.config_path);

    const long trials = manifest.trials.value_or(10000);
    const std::uint64_t seed = manifest.seed.value_or(1);

    Recipe rec;
    std::string name;
    if (!manifest.recipe.empty()) {
        rec = figure_recipe(manifest.recipe, cfg.scene, trials, seed);
        name = manifest.recipe;
    } else {
        SweepSpec s = *manifest.inline_spec;
        s.trials = manifest.trials.value_or(s.trials);
        s.seed = manifest.seed.value_or(s.seed);
        rec.name = name = s.label.empty() ? "sweep" : s.label;
        rec.axis = axis_name(s.axis);
        rec.series.push_back(std::move(s));
    }

    std::vector<SeriesResult> all;
    struct Deviation {
        std::string label;
        double max_rel = -1.0;
    };
    std::vector<Deviation> summary;
    for (const SweepSpec& s : rec.series) {
        std::vector<SeriesResult> rows = run_sweep(s);
        Deviation dev{s.label.empty() ? std::string("series") : s.label, -1.0};
        for (const SeriesResult& r : rows)
            if (r.closed_form && *r.closed_form != 0.0)
                dev.max_rel = std::max(dev.max_rel,
                                       std::abs(r.mc_mean - *r.closed_form) /
                                           std::abs(*r.closed_form));
        summary.push_back(std::move(dev));
        all.insert(all.end(), std::make_move_iterator(rows.begin()),
                   std::make_move_iterator(rows.end()));
    }

    namespace fs = std::filesystem;
    fs::create_directories(manifest.out_dir);
    const fs::path csv_path = fs::path(manifest.out_dir) / (name + ".csv");
    const fs::path meta_path = fs::path(manifest.out_dir) / (name + ".meta");
    {
        std::ofstream csv(csv_path, std::ios::binary);
        if (!csv) throw std::runtime_error("cannot write " + csv_path.string());
        write_series_csv(csv, rec.axis, all, seed);
    }
    {
        std::ofstream meta(meta_path, std::ios::binary);
        if (!meta) throw std::runtime_error("cannot write " + meta_path.string());
        detail::write_meta(meta, name, rec, trials, seed);
    }

    log << "wrote " << csv_path.string() << " (" << all.size() << " rows)\n";
    log << "series                         max |mc-cf|/|cf|\n";
    for (const Deviation& d : summary) {
        char buf[96];
        if (d.max_rel >= 0.0)
            std::snprintf(buf, sizeof(buf), "%-30s %.3e", d.label.c_str(), d.max_rel);
        else
            std::snprintf(buf, sizeof(buf), "%-30s (no closed form)", d.label.c_str());
        log << buf << "\n";
    }
    return all;
}

/**
 * @brief Dry run: resolve the config and print the derived quantities
 *        (distances, path losses in dB, steering angles, xi) without
 *        simulating anything.
 */
inline void validate_manifest(const RunManifest& manifest, std::ostream& log = std::cout) {
    const LoadedConfig cfg =
        manifest.config_path.empty() ? LoadedConfig{} : load_config(manifest.config_path);
    const SceneConfig& sc = cfg.scene;
    const LinkGeometry g = derive_geometry(sc);

    log << "artifact version " << kArtifactVersion << "\n";
    log << "panels: transmit " << sc.panel_t.nx << "x" << sc.panel_t.ny << ", reflect "
        << sc.panel_r.nx << "x" << sc.panel_r.ny << "\n";
    char buf[160];
    std::snprintf(buf, sizeof(buf), "distances [m]: d_t=%.6g d_r=%.6g d_a=%.6g", g.d_t, g.d_r,
                  g.d_a);
    log << buf << "\n";
    std::snprintf(buf, sizeof(buf), "path losses [dB]: rho_t=%.6g rho_r=%.6g rho_a=%.6g",
                  detail::lin_to_db(g.rho_t), detail::lin_to_db(g.rho_r),
                  detail::lin_to_db(g.rho_a));
    log << buf << "\n";
    auto angles = [&](const char* tag, const SteeringAngles& a) {
        std::snprintf(buf, sizeof(buf), "%s: elevation=%.6g rad, azimuth=%.6g rad", tag,
                      a.elevation, a.azimuth);
        log << buf << "\n";
    };
    angles("aoa_t", g.aoa_t);
    angles("aoa_r", g.aoa_r);
    angles("aod_t", g.aod_t);
    angles("aod_r", g.aod_r);
    std::snprintf(buf, sizeof(buf), "xi = %.12g", xi_factor(sc.phase_noise));
    log << buf << "\n";
    std::snprintf(buf, sizeof(buf),
                  "pilot_len_K=%d eta=%g beta=%g fraction_B=%g sigma_w2=%.6g W",
                  cfg.pilot_len_K, cfg.eta, cfg.beta, cfg.fraction_b, sc.sigma_w2);
    log << buf << "\n";
}

}  // namespace starnoma
