// Copyright 2026 The qndsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qnd/commands.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <system_error>

#include "qnd/errors.hpp"
#include "qnd/output.hpp"
#include "qnd/parallel.hpp"
#include "qnd/record.hpp"
#include "qnd/record_io.hpp"

namespace qnd {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Separate stream namespaces keep the ensembles of one run independent.
constexpr std::uint64_t kStreamSpacing = std::uint64_t{1} << 40;

SeedPlan seeds_for(const RunConfig& config, std::uint64_t ensemble) {
    return {config.seed, ensemble * kStreamSpacing};
}

class OutputDir {
   public:
    explicit OutputDir(const RunConfig& config) : root_(config.out_dir) {
        std::error_code ec;
        std::filesystem::create_directories(root_, ec);
        if (ec || !std::filesystem::is_directory(root_))
            throw IoError("cannot create output directory '" + root_.string() + "'");
    }

    void write(const std::string& name, std::string_view content) {
        const auto path = root_ / name;
        write_file_atomic(path, content);
        report_.files.push_back(path);
    }

    CommandReport finish(std::string_view command, const RunConfig& config, std::string summary) {
        std::string manifest = "# qndsim ";
        manifest += command;
        manifest += "\n";
        manifest += format_config(config);
        write("manifest.txt", manifest);
        report_.summary = std::move(summary);
        return std::move(report_);
    }

   private:
    std::filesystem::path root_;
    CommandReport report_;
};

std::string index_name(std::string_view stem, std::size_t k, std::string_view ext) {
    return std::string(stem) + "_" + std::to_string(k) + std::string(ext);
}

}  // namespace

CommandReport cmd_strong_readout(const RunConfig& config) {
    config.validate();
    OutputDir out(config);
    const auto params = config.strong_readout();

    CsvWriter summary({"theta", "trials", "separation", "fidelity", "p_e_given_g", "p_g_given_e", "weight_g",
                       "weight_e", "mean_g", "mean_e", "sigma_g", "sigma_e", "mixture_converged"});
    std::ostringstream digest;
    for (std::size_t k = 0; k < config.thetas.size(); ++k) {
        const double theta = config.thetas[k];
        const auto res = strong_histograms(theta, config.trials, params, seeds_for(config, k), config.threads);

        CsvWriter hist({"i", "count"});
        for (std::size_t b = 0; b < res.histogram.counts.size(); ++b)
            hist.cell(res.histogram.center(b)).cell(static_cast<long long>(res.histogram.counts[b])).end_row();
        out.write(index_name("strong_hist_theta", k, ".csv"), hist.str());

        const bool fitted = res.mixture.weight.size() == 2 && !std::isnan(res.separation);
        auto comp = [&](const Eigen::Vector2d& v, int c) { return fitted ? v(c) : kNaN; };
        summary.cell(theta).cell(static_cast<long long>(config.trials)).cell(res.separation).cell(res.fidelity);
        summary.cell(res.p_e_given_g).cell(res.p_g_given_e);
        summary.cell(comp(res.mixture.weight, 0)).cell(comp(res.mixture.weight, 1));
        summary.cell(comp(res.mixture.mean, 0)).cell(comp(res.mixture.mean, 1));
        summary.cell(comp(res.mixture.sigma, 0)).cell(comp(res.mixture.sigma, 1));
        summary.cell(static_cast<long long>(res.mixture_valid)).end_row();

        digest << "theta=" << format_double(theta) << " separation=" << format_double(res.separation)
               << " fidelity=" << format_double(res.fidelity) << "\n";
    }
    out.write("strong_readout_summary.csv", summary.str());
    return out.finish("strong-readout", config, digest.str());
}

CommandReport cmd_jumps(const RunConfig& config) {
    config.validate();
    if (config.traces == 0) throw InvalidParameter("jumps.traces must be positive");
    const long order = config.drive.samples_per_window();
    if (order % 2 != 0) throw InvalidParameter("drive.t_m / drive.dt must be even for the binomial filter");
    OutputDir out(config);

    const StrengthParams sp{config.strong_s, 0.0};
    const std::uint64_t n = config.traces;
    const std::uint64_t n_export = std::min(config.export_records, n);
    const SeedPlan thermal_seeds = seeds_for(config, 0);
    const SeedPlan excited_seeds = seeds_for(config, 1);

    std::vector<JumpReport> reports(n);
    std::vector<Record> exported(n_export);
    parallel_for(
        n, config.threads,
        [&](std::uint64_t k) {
            auto rec = generate_record(sp, config.qubit, config.record_duration, config.drive, config.qubit.z_eq(),
                                       {thermal_seeds.master_seed, thermal_seeds.stream_id + k});
            const auto filtered = trim_edges(binomial_filter(rec, config.drive.t_m, 1.0), order / 2);
            reports[k] = detect_jumps(filtered, config.strong_s, config.jump_threshold);
            reports[k].segments.clear();
            if (k < n_export) exported[k] = std::move(rec);
        },
        256);

    std::vector<Record> excited(n);
    parallel_for(
        n, config.threads,
        [&](std::uint64_t k) {
            excited[k] = generate_record(sp, config.qubit, config.record_duration, config.drive, 1.0,
                                         {excited_seeds.master_seed, excited_seeds.stream_id + k});
            excited[k].truth.labels = {};
        },
        256);
    const FitResult fit = estimate_t1_fit(excited, config.drive.t_m);
    excited = {};

    // Without downward transitions there is no counting bound; the dwell
    // fraction is still reported.
    CountingEstimate counting;
    try {
        counting = estimate_t1_counting(reports);
    } catch (const InsufficientStatistics&) {
        for (const auto& r : reports) {
            counting.up += r.count(1);
            counting.excited_time += r.excited_time;
            counting.total_time += r.duration;
        }
        counting.t1_bound = kNaN;
        counting.p_eq = counting.excited_time / counting.total_time;
    }

    CsvWriter summary({"quantity", "value"});
    auto row = [&](std::string_view key, double v) { summary.cell(key).cell(v).end_row(); };
    row("traces", static_cast<double>(n));
    row("duration", config.record_duration);
    row("up_jumps", static_cast<double>(counting.up));
    row("down_jumps", static_cast<double>(counting.down));
    row("excited_time", counting.excited_time);
    row("total_time", counting.total_time);
    row("p_eq", counting.p_eq);
    row("t1_counting", counting.t1_bound);
    row("t1_fit", fit.parameters(1));
    row("t1_fit_se", fit.standard_errors(1));
    row("fit_amplitude", fit.parameters(0));
    row("fit_offset", fit.parameters(2));
    out.write("jumps_summary.csv", summary.str());

    std::ostringstream records;
    if (config.format == OutputFormat::ndjson) {
        write_records_ndjson(records, exported);
        out.write("records.ndjson", records.str());
    } else {
        write_records_binary(records, exported);
        out.write("records.qndr", records.str());
    }

    std::ostringstream digest;
    digest << "p_eq=" << format_double(counting.p_eq) << " t1_counting=" << format_double(counting.t1_bound)
           << " t1_fit=" << format_double(fit.parameters(1)) << "\n";
    return out.finish("jumps", config, digest.str());
}

CommandReport cmd_backaction_map(const RunConfig& config) {
    config.validate();
    OutputDir out(config);
    const MapGrid grid = config.grid();

    CsvWriter summary({"nbar", "s", "qbar", "trials", "retained", "retention", "meanX", "meanY", "meanZ"});
    std::ostringstream digest;
    for (std::size_t k = 0; k < config.map_nbar.size(); ++k) {
        const double nbar = config.map_nbar[k];
        const auto params = config.protocol(nbar);
        const auto res = accumulate_protocol(params, config.trials, seeds_for(config, k),
                                             config.post_select_threshold, grid, config.threads);
        if (res.trials > 0 && res.retention() < 0.01)
            throw InsufficientStatistics("post-selection kept fewer than 1% of trials at nbar=" +
                                         format_double(nbar));

        out.write(index_name("backaction_map", k, ".csv"), conditional_map_csv(res.map));
        if (config.format == OutputFormat::svg) {
            const std::string tag = "nbar=" + format_double(nbar);
            out.write(index_name("backaction_counts", k, ".svg"),
                      render_heatmap_svg(res.map.counts().cast<double>(), grid, ColorScale::log_counts,
                                         tag + " outcome counts"));
            const std::pair<Axis, const char*> axes[] = {{Axis::X, "X"}, {Axis::Y, "Y"}, {Axis::Z, "Z"}};
            for (const auto& [axis, label] : axes)
                out.write(index_name(std::string("backaction_") + label, k, ".svg"),
                          render_heatmap_svg(res.map.means(axis), grid, ColorScale::diverging,
                                             tag + " conditional <" + label + ">"));
        }

        summary.cell(nbar).cell(params.weak.s).cell(params.weak.qbar);
        summary.cell(static_cast<long long>(res.trials)).cell(static_cast<long long>(res.retained));
        summary.cell(res.retention());
        summary.cell(res.map.overall_mean(Axis::X)).cell(res.map.overall_mean(Axis::Y));
        summary.cell(res.map.overall_mean(Axis::Z)).end_row();
        digest << "nbar=" << format_double(nbar) << " s=" << format_double(params.weak.s)
               << " retained=" << res.retained << "\n";
    }
    out.write("backaction_summary.csv", summary.str());
    return out.finish("backaction-map", config, digest.str());
}

CommandReport cmd_figure4(const RunConfig& config) {
    config.validate();
    OutputDir out(config);
    const MapGrid grid = config.grid();
    const auto sweep = config.sweep_nbar();

    CsvWriter csv({"s", "z_slope_sim", "z_slope_theory", "x_slope_sim", "x_slope_theory", "y_sim", "y_theory",
                   "nbar", "qbar", "z_slope_se", "x_slope_se", "y_se", "retained"});
    std::ostringstream digest;
    for (std::size_t k = 0; k < sweep.size(); ++k) {
        const auto params = config.protocol(sweep[k]);
        const double s = params.weak.s;
        const double qbar = params.weak.qbar;
        const auto res = accumulate_protocol(params, config.trials, seeds_for(config, k),
                                             config.post_select_threshold, grid, config.threads);

        GradientEstimate gz{kNaN, kNaN}, gx{kNaN, kNaN};
        try {
            gz = gradient_at_origin(res.map, Axis::Z, Coordinate::I);
            gx = gradient_at_origin(res.map, Axis::X, Coordinate::Q);
        } catch (const InsufficientStatistics&) {
            // Too few trials near the origin; the row keeps its theory columns.
        } catch (const DegenerateFit&) {
        }

        csv.cell(s).cell(gz.slope).cell(theory_slope_z(s, config.qubit));
        csv.cell(gx.slope).cell(theory_slope_x(s, qbar, config.amp.eta, config.qubit));
        csv.cell(res.map.overall_mean(Axis::Y)).cell(theory_y(s, qbar, config.amp.eta, config.qubit));
        csv.cell(sweep[k]).cell(qbar).cell(gz.standard_error).cell(gx.standard_error);
        csv.cell(res.map.overall_standard_error(Axis::Y)).cell(static_cast<long long>(res.retained));
        csv.end_row();
        digest << "s=" << format_double(s) << " z_slope=" << format_double(gz.slope)
               << " x_slope=" << format_double(gx.slope) << "\n";
    }
    out.write("figure4_sweep.csv", csv.str());
    return out.finish("figure4", config, digest.str());
}

CommandReport run_command(std::string_view name, const RunConfig& config) {
    if (name == "strong-readout") return cmd_strong_readout(config);
    if (name == "jumps") return cmd_jumps(config);
    if (name == "backaction-map") return cmd_backaction_map(config);
    if (name == "figure4") return cmd_figure4(config);
    throw InvalidParameter("unknown command '" + std::string(name) + "'");
}

}  // namespace qnd
