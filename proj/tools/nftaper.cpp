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

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "nftaper/experiment.hpp"

namespace
{

namespace fs = std::filesystem;
using namespace nftaper;

struct CommonOpts
{
    std::string config_path;
    std::string out_dir;
    bool strict_paper = false;
    bool exact_steering = false;
    bool ring_cut = false;
    std::uint64_t seed = 0;
    CLI::Option *seed_opt = nullptr;
};

void add_common(CLI::App *sub, CommonOpts &opts)
{
    sub->add_option("--config", opts.config_path, "experiment config (JSON); built-in defaults when omitted");
    sub->add_option("--out", opts.out_dir, "output directory (overrides the config)");
    sub->add_flag("--strict-paper", opts.strict_paper,
                  "use the literal inner Fresnel bound for the total concentration region");
    sub->add_flag("--exact-steering", opts.exact_steering,
                  "evaluate cuts with the exact spherical-wave model");
    sub->add_flag("--ring-cut", opts.ring_cut,
                  "angle cuts follow the equal-phase-curvature ring instead of fixed range");
    opts.seed_opt = sub->add_option("--seed", opts.seed, "seed for random-vector property checks");
}

ExperimentConfig resolve_config(const CommonOpts &opts)
{
    ExperimentConfig cfg =
        opts.config_path.empty() ? default_experiment_config() : load_config(opts.config_path);
    if (!opts.out_dir.empty())
        cfg.out_dir = opts.out_dir;
    if (opts.strict_paper)
        cfg.strict_paper = true;
    if (opts.exact_steering)
        cfg.exact_steering = true;
    if (opts.ring_cut)
        cfg.ring_cut = true;
    if (opts.seed_opt && opts.seed_opt->count() > 0)
        cfg.seed = opts.seed;
    return cfg;
}

const WindowSpec &find_window(const ExperimentConfig &cfg, const std::string &label)
{
    for (const auto &spec : cfg.windows)
        if (spec.label() == label)
            return spec;
    throw ConfigError("windows", "no window labelled '" + label + "' in the config");
}

int run_taper(const ExperimentConfig &cfg, const std::string &label)
{
    const WindowSpec &spec = find_window(cfg, label);
    BMatrixCache cache;
    const BuiltWindow built = build_window(cfg, spec, cache);

    const fs::path csv = fs::path(cfg.out_dir) / ("taper_" + label + ".csv");
    write_atomic(csv, taper_csv(built.taper));
    std::cout << csv.string() << "\n";

    if (spec.kind == WindowKind::slepian)
    {
        ordered_json sidecar{{"window", label}};
        for (auto it = built.diagnostics.begin(); it != built.diagnostics.end(); ++it)
            sidecar[it.key()] = it.value();
        const fs::path side = fs::path(cfg.out_dir) / ("taper_" + label + ".json");
        write_atomic(side, sidecar.dump(2) + "\n");
        std::cout << side.string() << "\n";
    }
    return 0;
}

int run_cut(const ExperimentConfig &cfg, const std::string &label, const std::string &domain)
{
    const WindowSpec &spec = find_window(cfg, label);
    BMatrixCache cache;
    const BuiltWindow built = build_window(cfg, spec, cache);

    PatternCut cut =
        domain == "angle"
            ? angle_cut(cfg.array, built.taper.w, cfg.focus, angle_grid(cfg.angle_samples),
                        cfg.steering(), cfg.cut_mode())
            : range_cut(cfg.array, built.taper.w, cfg.focus,
                        range_grid(cfg.array, cfg.focus, cfg.range_samples), cfg.steering());

    const fs::path csv = fs::path(cfg.out_dir) / ("cut_" + label + "_" + domain + ".csv");
    write_atomic(csv, cut_csv(cut));
    std::cout << csv.string() << "\n";
    return 0;
}

int run_metrics(const ExperimentConfig &cfg, const std::string &label)
{
    const WindowSpec &spec = find_window(cfg, label);
    BMatrixCache cache;
    const WindowRow row = evaluate_window(cfg, spec, cache);

    Table2Report rep;
    rep.config_echo = config_echo(cfg);
    rep.rows.push_back(row);

    const fs::path out = fs::path(cfg.out_dir) / ("metrics_" + label + ".json");
    write_atomic(out, report_json(rep).dump(2) + "\n");
    std::cout << report_text(rep);
    std::cerr << out.string() << "\n";
    return row.error.empty() ? 0 : 3;
}

int run_table2_verb(const ExperimentConfig &cfg)
{
    const auto t0 = std::chrono::steady_clock::now();
    const Table2Report rep = run_table2(cfg);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const fs::path jpath = fs::path(cfg.out_dir) / "table2_report.json";
    const fs::path tpath = fs::path(cfg.out_dir) / "table2.txt";
    const std::string text = report_text(rep);
    write_atomic(jpath, report_json(rep).dump(2) + "\n");
    write_atomic(tpath, text);

    std::cout << text;
    std::cerr << jpath.string() << "\n" << tpath.string() << "\n";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "table2 wall time: %.1f s\n", secs);
    std::cerr << buf;

    for (const auto &row : rep.rows)
        if (!row.error.empty())
            return 3;
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"near-field taper design and beam-pattern metrics for focused ULAs"};
    app.require_subcommand(1);

    CommonOpts taper_opts, cut_opts, metrics_opts, table2_opts;
    std::string taper_window, cut_window, metrics_window;
    std::string cut_domain = "angle";

    CLI::App *sub_taper = app.add_subcommand("taper", "export one taper as CSV (slepian adds a JSON sidecar)");
    add_common(sub_taper, taper_opts);
    sub_taper->add_option("--window", taper_window, "window label from the config")->required();

    CLI::App *sub_cut = app.add_subcommand("cut", "export one beam-pattern cut as CSV");
    add_common(sub_cut, cut_opts);
    sub_cut->add_option("--window", cut_window, "window label from the config")->required();
    sub_cut->add_option("--domain", cut_domain, "angle | range")
        ->check(CLI::IsMember({"angle", "range"}));

    CLI::App *sub_metrics = app.add_subcommand("metrics", "sidelobe metrics for one window");
    add_common(sub_metrics, metrics_opts);
    sub_metrics->add_option("--window", metrics_window, "window label from the config")->required();

    CLI::App *sub_table2 = app.add_subcommand("table2", "full window comparison table");
    add_common(sub_table2, table2_opts);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try
    {
        if (sub_taper->parsed())
            return run_taper(resolve_config(taper_opts), taper_window);
        if (sub_cut->parsed())
            return run_cut(resolve_config(cut_opts), cut_window, cut_domain);
        if (sub_metrics->parsed())
            return run_metrics(resolve_config(metrics_opts), metrics_window);
        return run_table2_verb(resolve_config(table2_opts));
    }
    catch (const nftaper::ConfigError &e)
    {
        std::cerr << e.what() << "\n";
        return 2;
    }
    catch (const std::exception &e)
    {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
}
