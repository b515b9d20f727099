// SPDX-License-Identifier: Apache-2.0
//
// nftaper - near-field amplitude tapers and sidelobe metrics for uniform linear arrays
// Copyright (C) 2026 nftaper contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef NFTAPER_EXPERIMENT_HPP
#define NFTAPER_EXPERIMENT_HPP

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "array.hpp"
#include "fresnel.hpp"
#include "metrics.hpp"
#include "pattern.hpp"
#include "slepian.hpp"
#include "windows.hpp"

namespace nftaper
{

using ordered_json = nlohmann::ordered_json;

inline double deg2rad(double deg) { return deg * M_PI / 180.0; }
inline double rad2deg(double rad) { return rad * 180.0 / M_PI; }

// Config problems carry the offending field path; the CLI maps these to
// exit code 2 (everything else numerical is exit code 3).
struct ConfigError : std::runtime_error
{
    std::string field;
    ConfigError(std::string f, const std::string &msg)
        : std::runtime_error("config error at '" + f + "': " + msg), field(std::move(f))
    {
    }
};

enum class WindowKind
{
    uniform,
    hamming,
    nf_hamming,
    slepian
};

struct WindowSpec
{
    WindowKind kind = WindowKind::uniform;
    double k_angle = 1.0;
    double k_range = 1.0;
    GridSpec grid_a = GridSpec::default_mainlobe();
    GridSpec grid_b = GridSpec::default_total();

    std::string label() const
    {
        switch (kind)
        {
        case WindowKind::uniform:
            return "uniform";
        case WindowKind::hamming:
            return "hamming";
        case WindowKind::nf_hamming:
            return "nf-hamming";
        default:
            break;
        }
        char buf[64];
        std::snprintf(buf, sizeof(buf), "slepian-%g-%g", k_angle, k_range);
        return buf;
    }
};

struct ExperimentConfig
{
    ArrayConfig array = ArrayConfig::half_wavelength(128, 15.0e9);
    FocusPoint focus{0.0, 1.0};
    double r_f_fraction = 0.01; // NaN when the range was given in meters
    std::vector<WindowSpec> windows;
    int angle_samples = 8192;
    int range_samples = 65536;
    std::string out_dir = ".";
    bool strict_paper = false;
    bool exact_steering = false;
    bool ring_cut = false;
    bool isll_squared = false;
    std::uint64_t seed = 1;

    SteeringModel steering() const
    {
        return exact_steering ? SteeringModel::exact : SteeringModel::fresnel;
    }
    AngleCutMode cut_mode() const
    {
        return ring_cut ? AngleCutMode::distance_ring : AngleCutMode::fixed_range;
    }
    IsllIntegrand integrand() const
    {
        return isll_squared ? IsllIntegrand::squared : IsllIntegrand::power;
    }
    RegionPolicy policy() const
    {
        return strict_paper ? RegionPolicy::strict_paper : RegionPolicy::subset_adjusted;
    }
};

// The six windows of the reference comparison, in table order.
inline std::vector<WindowSpec> reference_windows()
{
    std::vector<WindowSpec> w(6);
    w[0].kind = WindowKind::uniform;
    w[1].kind = WindowKind::hamming;
    w[2].kind = WindowKind::nf_hamming;
    w[3] = WindowSpec{WindowKind::slepian, 1.0, 1.0};
    w[4] = WindowSpec{WindowKind::slepian, 5.0, 50.0};
    w[5] = WindowSpec{WindowKind::slepian, 10.0, 100.0};
    return w;
}

inline ExperimentConfig default_experiment_config()
{
    ExperimentConfig cfg;
    cfg.focus = FocusPoint{0.0, cfg.r_f_fraction * cfg.array.rayleigh_distance()};
    cfg.windows = reference_windows();
    return cfg;
}

namespace detail
{

inline void reject_unknown_keys(const ordered_json &obj, const std::string &where,
                                std::initializer_list<const char *> known)
{
    for (auto it = obj.begin(); it != obj.end(); ++it)
    {
        bool ok = false;
        for (const char *k : known)
            if (it.key() == k)
            {
                ok = true;
                break;
            }
        if (!ok)
            throw ConfigError(where.empty() ? it.key() : where + "." + it.key(), "unknown key");
    }
}

inline double get_number(const ordered_json &obj, const std::string &where, const char *key,
                         double fallback, bool required = false)
{
    if (!obj.contains(key))
    {
        if (required)
            throw ConfigError(where + "." + key, "missing required field");
        return fallback;
    }
    const auto &v = obj.at(key);
    if (!v.is_number())
        throw ConfigError(where + "." + key, "expected a number");
    return v.get<double>();
}

inline int get_int(const ordered_json &obj, const std::string &where, const char *key,
                   int fallback)
{
    if (!obj.contains(key))
        return fallback;
    const auto &v = obj.at(key);
    if (!v.is_number_integer())
        throw ConfigError(where + "." + key, "expected an integer");
    return v.get<int>();
}

inline bool get_bool(const ordered_json &obj, const std::string &where, const char *key,
                     bool fallback)
{
    if (!obj.contains(key))
        return fallback;
    const auto &v = obj.at(key);
    if (!v.is_boolean())
        throw ConfigError(where + "." + key, "expected a boolean");
    return v.get<bool>();
}

inline GridSpec parse_grid_pair(const ordered_json &arr, const std::string &where,
                                RangeSpacing spacing, const GridSpec &fallback)
{
    if (!arr.is_array() || arr.size() != 2 || !arr[0].is_number_integer() ||
        !arr[1].is_number_integer())
        throw ConfigError(where, "expected [n_omega, n_r] integer pair");
    try
    {
        return GridSpec(arr[0].get<int>(), arr[1].get<int>(), spacing);
    }
    catch (const std::invalid_argument &e)
    {
        throw ConfigError(where, e.what());
    }
    return fallback; // unreachable
}

inline WindowSpec parse_window(const ordered_json &item, const std::string &where)
{
    WindowSpec spec;
    std::string kind;
    if (item.is_string())
        kind = item.get<std::string>();
    else if (item.is_object())
    {
        reject_unknown_keys(item, where, {"kind", "k_angle", "k_range", "grid"});
        if (!item.contains("kind") || !item.at("kind").is_string())
            throw ConfigError(where + ".kind", "missing window kind");
        kind = item.at("kind").get<std::string>();
    }
    else
        throw ConfigError(where, "expected a string or an object");

    if (kind == "uniform")
        spec.kind = WindowKind::uniform;
    else if (kind == "hamming")
        spec.kind = WindowKind::hamming;
    else if (kind == "nf-hamming")
        spec.kind = WindowKind::nf_hamming;
    else if (kind == "slepian")
        spec.kind = WindowKind::slepian;
    else
        throw ConfigError(where + ".kind", "unknown window kind '" + kind + "'");

    if (item.is_object())
    {
        spec.k_angle = get_number(item, where, "k_angle", spec.k_angle);
        spec.k_range = get_number(item, where, "k_range", spec.k_range);
        if (spec.kind != WindowKind::slepian && (item.contains("k_angle") || item.contains("k_range")))
            throw ConfigError(where, "scale factors apply to slepian windows only");
        if (item.contains("grid"))
        {
            const auto &g = item.at("grid");
            if (!g.is_object())
                throw ConfigError(where + ".grid", "expected an object");
            reject_unknown_keys(g, where + ".grid", {"mainlobe", "total"});
            if (g.contains("mainlobe"))
                spec.grid_a = parse_grid_pair(g.at("mainlobe"), where + ".grid.mainlobe",
                                              RangeSpacing::linear, spec.grid_a);
            if (g.contains("total"))
                spec.grid_b = parse_grid_pair(g.at("total"), where + ".grid.total",
                                              RangeSpacing::logarithmic, spec.grid_b);
        }
    }
    return spec;
}

} // namespace detail

inline ExperimentConfig parse_config(const ordered_json &j)
{
    if (!j.is_object())
        throw ConfigError("", "top level must be an object");
    detail::reject_unknown_keys(
        j, "", {"array", "focus", "grids", "windows", "output_dir", "flags", "seed"});

    ExperimentConfig cfg;

    int N = 128;
    double freq = 15.0e9;
    std::optional<double> spacing;
    IndexConvention indexing = IndexConvention::centered;
    if (j.contains("array"))
    {
        const auto &a = j.at("array");
        if (!a.is_object())
            throw ConfigError("array", "expected an object");
        detail::reject_unknown_keys(a, "array", {"elements", "frequency_hz", "spacing_m", "indexing"});
        N = detail::get_int(a, "array", "elements", N);
        freq = detail::get_number(a, "array", "frequency_hz", freq);
        if (a.contains("spacing_m"))
            spacing = detail::get_number(a, "array", "spacing_m", 0.0, true);
        if (a.contains("indexing"))
        {
            const auto &v = a.at("indexing");
            if (!v.is_string())
                throw ConfigError("array.indexing", "expected a string");
            const std::string s = v.get<std::string>();
            if (s == "centered")
                indexing = IndexConvention::centered;
            else if (s == "zero-based")
                indexing = IndexConvention::zero_based;
            else
                throw ConfigError("array.indexing", "expected 'centered' or 'zero-based'");
        }
    }
    try
    {
        cfg.array = spacing ? ArrayConfig(N, *spacing, freq, indexing)
                            : ArrayConfig::half_wavelength(N, freq, indexing);
    }
    catch (const std::invalid_argument &e)
    {
        throw ConfigError("array", e.what());
    }

    double theta_deg = 0.0;
    std::optional<double> range_m, range_frac;
    if (j.contains("focus"))
    {
        const auto &f = j.at("focus");
        if (!f.is_object())
            throw ConfigError("focus", "expected an object");
        detail::reject_unknown_keys(f, "focus", {"theta_deg", "range_m", "range_fraction"});
        theta_deg = detail::get_number(f, "focus", "theta_deg", 0.0);
        if (f.contains("range_m"))
            range_m = detail::get_number(f, "focus", "range_m", 0.0, true);
        if (f.contains("range_fraction"))
            range_frac = detail::get_number(f, "focus", "range_fraction", 0.0, true);
        if (range_m && range_frac)
            throw ConfigError("focus", "give range_m or range_fraction, not both");
    }
    if (range_frac)
    {
        if (!(*range_frac > 0.0) || *range_frac > 1.0)
            throw ConfigError("focus.range_fraction", "must lie in (0, 1]");
        cfg.r_f_fraction = *range_frac;
    }
    double r_f;
    if (range_m)
    {
        r_f = *range_m;
        cfg.r_f_fraction = std::nan("");
    }
    else
        r_f = cfg.r_f_fraction * cfg.array.rayleigh_distance();
    try
    {
        cfg.focus = FocusPoint{deg2rad(theta_deg), r_f};
    }
    catch (const std::invalid_argument &e)
    {
        throw ConfigError("focus", e.what());
    }

    if (j.contains("grids"))
    {
        const auto &g = j.at("grids");
        if (!g.is_object())
            throw ConfigError("grids", "expected an object");
        detail::reject_unknown_keys(g, "grids", {"angle_samples", "range_samples"});
        cfg.angle_samples = detail::get_int(g, "grids", "angle_samples", cfg.angle_samples);
        cfg.range_samples = detail::get_int(g, "grids", "range_samples", cfg.range_samples);
    }
    if (cfg.angle_samples < 2)
        throw ConfigError("grids.angle_samples", "need at least 2 samples");
    if (cfg.range_samples < 2)
        throw ConfigError("grids.range_samples", "need at least 2 samples");

    if (j.contains("windows"))
    {
        const auto &w = j.at("windows");
        if (!w.is_array())
            throw ConfigError("windows", "expected an array");
        if (w.empty())
            throw ConfigError("windows", "empty window list");
        for (std::size_t i = 0; i < w.size(); ++i)
            cfg.windows.push_back(detail::parse_window(w[i], "windows[" + std::to_string(i) + "]"));
    }
    else
        cfg.windows = reference_windows();

    if (j.contains("output_dir"))
    {
        if (!j.at("output_dir").is_string())
            throw ConfigError("output_dir", "expected a string");
        cfg.out_dir = j.at("output_dir").get<std::string>();
    }

    if (j.contains("flags"))
    {
        const auto &f = j.at("flags");
        if (!f.is_object())
            throw ConfigError("flags", "expected an object");
        detail::reject_unknown_keys(f, "flags",
                                    {"strict_paper", "exact_steering", "ring_cut", "isll_squared"});
        cfg.strict_paper = detail::get_bool(f, "flags", "strict_paper", false);
        cfg.exact_steering = detail::get_bool(f, "flags", "exact_steering", false);
        cfg.ring_cut = detail::get_bool(f, "flags", "ring_cut", false);
        cfg.isll_squared = detail::get_bool(f, "flags", "isll_squared", false);
    }

    if (j.contains("seed"))
    {
        const auto &v = j.at("seed");
        if (!v.is_number_unsigned() && !v.is_number_integer())
            throw ConfigError("seed", "expected an integer");
        cfg.seed = v.get<std::uint64_t>();
    }
    return cfg;
}

inline ExperimentConfig load_config(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError(path, "cannot open config file");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    try
    {
        return parse_config(ordered_json::parse(text));
    }
    catch (const nlohmann::json::parse_error &e)
    {
        std::size_t line = 1;
        for (std::size_t i = 0; i < std::min<std::size_t>(e.byte, text.size()); ++i)
            if (text[i] == '\n')
                ++line;
        throw ConfigError(path + ":" + std::to_string(line), e.what());
    }
}

// Every resolved default goes into the report so a run is auditable from its
// output alone.
inline ordered_json config_echo(const ExperimentConfig &cfg)
{
    const ArrayConfig &a = cfg.array;
    ordered_json windows = ordered_json::array();
    for (const auto &w : cfg.windows)
    {
        ordered_json jw{{"kind", w.label()}};
        if (w.kind == WindowKind::slepian)
        {
            jw["k_angle"] = w.k_angle;
            jw["k_range"] = w.k_range;
            jw["grid"] = {{"mainlobe", {w.grid_a.n_omega, w.grid_a.n_r}},
                          {"total", {w.grid_b.n_omega, w.grid_b.n_r}}};
        }
        windows.push_back(jw);
    }
    const auto r_grid = range_grid(a, cfg.focus, cfg.range_samples);
    ordered_json j{
        {"array",
         {{"elements", a.N},
          {"frequency_hz", a.carrier_frequency},
          {"spacing_m", a.d},
          {"wavelength_m", a.wavelength()},
          {"aperture_m", a.aperture_length()},
          {"rayleigh_distance_m", a.rayleigh_distance()},
          {"fresnel_inner_m", a.fresnel_inner()},
          {"indexing", a.indexing == IndexConvention::centered ? "centered" : "zero-based"}}},
        {"focus",
         {{"theta_deg", rad2deg(cfg.focus.theta_u)},
          {"range_m", cfg.focus.r_f},
          {"range_fraction",
           std::isnan(cfg.r_f_fraction) ? ordered_json(nullptr) : ordered_json(cfg.r_f_fraction)}}},
        {"grids",
         {{"angle_samples", cfg.angle_samples},
          {"angle_span_deg", {-90.0, 90.0}},
          {"range_samples", cfg.range_samples},
          {"range_span_m", {r_grid.front(), r_grid.back()}},
          {"range_spacing", "logarithmic"}}},
        {"windows", windows},
        {"flags",
         {{"strict_paper", cfg.strict_paper},
          {"exact_steering", cfg.exact_steering},
          {"ring_cut", cfg.ring_cut},
          {"isll_squared", cfg.isll_squared}}},
        {"seed", cfg.seed},
        {"resolved",
         {{"steering_model", cfg.exact_steering ? "exact" : "fresnel"},
          {"angle_cut_mode", cfg.ring_cut ? "distance-ring" : "fixed-range"},
          {"isll_integrand", cfg.isll_squared ? "squared-gain" : "gain"},
          {"region_policy", cfg.strict_paper ? "strict" : "subset-adjusted"},
          {"alpha_3db", alpha_3db()},
          {"null_prominence_db", default_prominence_db}}}};
    return j;
}

// Per-window result row. Metric optionals are empty when the row errored or
// the metric is undefined; +inf inside bd_m encodes a missing far crossing.
struct WindowRow
{
    std::string name;
    Taper taper;
    std::optional<double> psll_range_db, psll_angle_db;
    std::optional<double> isll_range_db, isll_angle_db;
    std::optional<double> bd_m, bw_deg;
    ordered_json taper_stats = ordered_json::object();
    ordered_json diagnostics = ordered_json::object();
    std::string error; // empty on success
};

struct Table2Report
{
    ordered_json config_echo;
    std::vector<WindowRow> rows;
};

// The total-region Gram depends only on its bounds and grid, so windows that
// share them (the wide slepian variants) reuse one matrix.
class BMatrixCache
{
  public:
    std::shared_ptr<const MatXcd> get(const ArrayConfig &cfg, const TotalRegion &region,
                                      const GridSpec &grid)
    {
        char key[160];
        std::snprintf(key, sizeof(key), "%.17g|%.17g|%.17g|%.17g|%d|%d|%d", region.omega_min,
                      region.omega_max, region.r_lo, region.r_hi, grid.n_omega, grid.n_r,
                      int(grid.r_spacing));
        auto it = store_.find(key);
        if (it != store_.end())
            return it->second;
        auto mat = std::make_shared<const MatXcd>(build_B(cfg, region, grid));
        store_.emplace(key, mat);
        return mat;
    }

  private:
    std::map<std::string, std::shared_ptr<const MatXcd>> store_;
};

namespace detail
{

inline ordered_json segment_json(const MainlobeSegment &seg, const PatternCut &cut, bool degrees)
{
    if (!seg.found)
        return {{"found", false}};
    const double scale = degrees ? 180.0 / M_PI : 1.0;
    return {{"found", true},
            {"peak", cut.coordinate[seg.peak] * scale},
            {"lower", cut.coordinate[seg.lower] * scale},
            {"upper", cut.coordinate[seg.upper] * scale}};
}

inline ordered_json taper_stats_json(const Taper &t)
{
    const int N = int(t.w.size());
    double sym = 0.0;
    for (int k = 0; k < N; ++k)
        sym = std::max(sym, std::abs(t.w(k) - t.w(N - 1 - k)));
    return {{"min", t.w.minCoeff()},   {"max", t.w.maxCoeff()},
            {"sum", t.w.sum()},        {"first", t.w(0)},
            {"center", t.w(N / 2)},    {"symmetry_error", sym}};
}

} // namespace detail

// A taper ready to evaluate, with the build diagnostics that the report and
// the slepian sidecar both need.
struct BuiltWindow
{
    Taper taper;
    ordered_json diagnostics = ordered_json::object();
};

inline BuiltWindow build_window(const ExperimentConfig &cfg, const WindowSpec &spec,
                                BMatrixCache &cache)
{
    BuiltWindow out;
    const int N = cfg.array.N;
    switch (spec.kind)
    {
    case WindowKind::uniform:
        out.taper = uniform_window(N);
        break;
    case WindowKind::hamming:
        out.taper = hamming_window(N).peak_one();
        break;
    case WindowKind::nf_hamming:
        out.taper = nf_hamming_window(N);
        break;
    case WindowKind::slepian:
    {
        const MainlobeRegion ml = mainlobe_region(cfg.array, cfg.focus, spec.k_angle, spec.k_range);
        const TotalRegion tot = total_region(cfg.array, ml, cfg.policy());
        ConcentrationPair pair{build_A(cfg.array, ml, spec.grid_a),
                               *cache.get(cfg.array, tot, spec.grid_b),
                               ml,
                               tot,
                               spec.grid_a,
                               spec.grid_b};
        regularize_B(pair);
        const SlepianTaper st = slepian_taper(cfg.array, cfg.focus, pair);
        out.taper = st.taper;
        out.diagnostics["lambda_max"] = st.lambda_max;
        out.diagnostics["J"] = st.J;
        out.diagnostics["phase_rms_rad"] = st.phase_rms;
        out.diagnostics["regularized"] = pair.regularized;
        out.diagnostics["epsilon_applied"] = pair.epsilon_applied;
        out.diagnostics["mainlobe_region"] = {{"omega", {ml.omega_min, ml.omega_max}},
                                              {"r_m", {ml.r_lo, ml.r_hi}},
                                              {"r_lo_clamped", ml.clamped_lo},
                                              {"r_hi_clamped", ml.clamped_hi}};
        out.diagnostics["total_region"] = {{"omega", {tot.omega_min, tot.omega_max}},
                                           {"r_m", {tot.r_lo, tot.r_hi}}};
        out.diagnostics["grid"] = {{"mainlobe", {spec.grid_a.n_omega, spec.grid_a.n_r}},
                                   {"total", {spec.grid_b.n_omega, spec.grid_b.n_r}}};
        break;
    }
    }
    return out;
}

inline WindowRow evaluate_window(const ExperimentConfig &cfg, const WindowSpec &spec,
                                 BMatrixCache &cache)
{
    WindowRow row;
    row.name = spec.label();
    try
    {
        BuiltWindow built = build_window(cfg, spec, cache);
        row.taper = built.taper;
        row.diagnostics = built.diagnostics;
        row.taper_stats = detail::taper_stats_json(row.taper);

        const PatternCut acut = angle_cut(cfg.array, row.taper.w, cfg.focus,
                                          angle_grid(cfg.angle_samples), cfg.steering(),
                                          cfg.cut_mode());
        const PatternCut rcut = range_cut(cfg.array, row.taper.w, cfg.focus,
                                          range_grid(cfg.array, cfg.focus, cfg.range_samples),
                                          cfg.steering());
        const SidelobeReport arep = analyze_cut(acut, cfg.integrand());
        const SidelobeReport rrep = analyze_cut(rcut, cfg.integrand());

        row.psll_angle_db = arep.psll_db;
        row.isll_angle_db = arep.isll_db;
        row.psll_range_db = rrep.psll_db;
        row.isll_range_db = rrep.isll_db;
        if (arep.width)
            row.bw_deg = rad2deg(*arep.width);
        row.bd_m = rrep.width;
        row.diagnostics["mainlobe_angle"] = detail::segment_json(arep.mainlobe, acut, true);
        row.diagnostics["mainlobe_range"] = detail::segment_json(rrep.mainlobe, rcut, false);
    }
    catch (const std::exception &e)
    {
        row.error = e.what();
    }
    return row;
}

inline Table2Report run_table2(const ExperimentConfig &cfg)
{
    if (cfg.windows.empty())
        throw ConfigError("windows", "empty window list");
    Table2Report rep;
    rep.config_echo = config_echo(cfg);
    BMatrixCache cache;
    for (const auto &spec : cfg.windows)
        rep.rows.push_back(evaluate_window(cfg, spec, cache));
    return rep;
}

namespace detail
{

// NA for undefined metrics; a missing far crossing renders as inf.
inline ordered_json metric_json(const std::optional<double> &v, bool inf_allowed = false)
{
    if (!v)
        return nullptr;
    if (std::isinf(*v))
        return inf_allowed ? ordered_json("inf") : ordered_json(nullptr);
    if (!std::isfinite(*v))
        return nullptr;
    return *v;
}

inline std::string metric_text(const std::optional<double> &v, const char *fmt)
{
    if (!v || std::isnan(*v))
        return "NA";
    if (std::isinf(*v))
        return *v > 0 ? "inf" : "NA";
    char buf[48];
    std::snprintf(buf, sizeof(buf), fmt, *v);
    return buf;
}

} // namespace detail

inline ordered_json report_json(const Table2Report &rep)
{
    ordered_json rows = ordered_json::array();
    for (const auto &row : rep.rows)
    {
        ordered_json jr{{"window", row.name}};
        if (!row.error.empty())
            jr["error"] = row.error;
        jr["taper_stats"] = row.taper_stats;
        jr["metrics"] = {{"psll_range_db", detail::metric_json(row.psll_range_db)},
                         {"psll_angle_db", detail::metric_json(row.psll_angle_db)},
                         {"isll_range_db", detail::metric_json(row.isll_range_db)},
                         {"isll_angle_db", detail::metric_json(row.isll_angle_db)},
                         {"bd_m", detail::metric_json(row.bd_m, true)},
                         {"bw_deg", detail::metric_json(row.bw_deg)}};
        jr["diagnostics"] = row.diagnostics;
        rows.push_back(jr);
    }
    return ordered_json{{"config_echo", rep.config_echo}, {"per_window", rows}};
}

inline std::string report_text(const Table2Report &rep)
{
    std::string out;
    char line[256];
    std::snprintf(line, sizeof(line), "%-16s %10s %10s %10s %10s %8s %8s\n", "window",
                  "PSLL_r[dB]", "PSLL_a[dB]", "ISLL_r[dB]", "ISLL_a[dB]", "BD[m]", "BW[deg]");
    out += line;
    out += std::string(78, '-') + "\n";
    for (const auto &row : rep.rows)
    {
        if (!row.error.empty())
        {
            std::snprintf(line, sizeof(line), "%-16s failed: %s\n", row.name.c_str(),
                          row.error.c_str());
            out += line;
            continue;
        }
        std::snprintf(line, sizeof(line), "%-16s %10s %10s %10s %10s %8s %8s\n", row.name.c_str(),
                      detail::metric_text(row.psll_range_db, "%.2f").c_str(),
                      detail::metric_text(row.psll_angle_db, "%.2f").c_str(),
                      detail::metric_text(row.isll_range_db, "%.2f").c_str(),
                      detail::metric_text(row.isll_angle_db, "%.2f").c_str(),
                      detail::metric_text(row.bd_m, "%.3f").c_str(),
                      detail::metric_text(row.bw_deg, "%.3f").c_str());
        out += line;
    }
    return out;
}

// ---------------------------------------------------------------------------
// file export

inline void write_atomic(const std::filesystem::path &path, const std::string &content)
{
    namespace fs = std::filesystem;
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot open for writing: " + tmp.string());
        out << content;
        if (!out)
            throw std::runtime_error("write failed: " + tmp.string());
    }
    fs::rename(tmp, path);
}

namespace detail
{

inline std::string num17(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace detail

// Angle coordinates leave the library in degrees; everything else as stored.
inline std::string cut_csv(const PatternCut &cut)
{
    std::string out = "coordinate,gain_linear,gain_db\n";
    const bool deg = cut.domain == CutDomain::angle;
    for (std::size_t i = 0; i < cut.size(); ++i)
    {
        out += detail::num17(deg ? rad2deg(cut.coordinate[i]) : cut.coordinate[i]);
        out += ',';
        out += detail::num17(cut.gain_linear[i]);
        out += ',';
        out += detail::num17(cut.gain_db[i]);
        out += '\n';
    }
    return out;
}

inline std::string taper_csv(const Taper &taper)
{
    const Taper t = taper.peak_one();
    std::string out = "index,weight\n";
    for (int k = 0; k < t.w.size(); ++k)
        out += std::to_string(k) + ',' + detail::num17(t.w(k)) + '\n';
    return out;
}

} // namespace nftaper

#endif // NFTAPER_EXPERIMENT_HPP
