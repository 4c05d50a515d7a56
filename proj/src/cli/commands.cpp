#include <sagnac/cli/commands.hpp>

#include <sagnac/cli/config.hpp>
#include <sagnac/cli/csv.hpp>
#include <sagnac/cli/svg_plot.hpp>
#include <sagnac/experiments.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <numbers>
#include <thread>

namespace sagnac::cli
{

namespace
{

using nlohmann::json;
namespace fs = std::filesystem;

constexpr const char *kBlue = "#1f77b4";
constexpr const char *kOrange = "#ff7f0e";

std::string timestamp_utc()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

class Run
{
public:
    Run(const CommandOptions &options, RunSettings settings)
        : options_(options), settings_(std::move(settings)), stem_(options.command)
    {
        std::replace(stem_.begin(), stem_.end(), '-', '_');
        std::error_code ec;
        fs::create_directories(options_.out_dir, ec);
        if (ec || !fs::is_directory(options_.out_dir))
            throw Error(ErrorKind::IoError, "cannot create output directory '" + options_.out_dir.string() + "'");
        settings_.scenario.threads = options_.threads;
    }

    const RunSettings &settings() const { return settings_; }
    json &summary() { return summary_; }

    void write_csv(const CsvTable &table)
    {
        const fs::path path = options_.out_dir / (stem_ + ".csv");
        write_text_atomic(path, table.render());
        outputs_.push_back(path);
    }

    // Best effort: a failed plot is noted in the manifest only.
    template <typename Build>
    void write_plot(Build &&build)
    {
        try {
            const fs::path path = options_.out_dir / (stem_ + ".svg");
            write_text_atomic(path, build().render());
            outputs_.push_back(path);
            plot_status_ = "ok";
        } catch (const std::exception &e) {
            plot_status_ = std::string("failed: ") + e.what();
        }
    }

    CommandResult finish()
    {
        const fs::path path = options_.out_dir / (stem_ + ".manifest.json");
        json manifest;
        manifest["command"] = options_.command;
        manifest["tool_version"] = kToolVersion;
        manifest["timestamp_utc"] = timestamp_utc();
        manifest["seed"] = settings_.scenario.seed;
        json config = json::object();
        for (const auto &[key, value] : materialize(settings_))
            config[key] = value;
        manifest["config"] = config;
        json outputs = json::array();
        for (const fs::path &p : outputs_)
            outputs.push_back(p.filename().string());
        outputs.push_back(path.filename().string());
        manifest["outputs"] = outputs;
        manifest["plot"] = plot_status_;
        manifest["summary"] = summary_;
        write_text_atomic(path, manifest.dump(2) + "\n");
        outputs_.push_back(path);
        return {outputs_, manifest};
    }

private:
    CommandOptions options_;
    RunSettings settings_;
    std::string stem_;
    std::vector<fs::path> outputs_;
    json summary_ = json::object();
    std::string plot_status_ = "skipped";
};

CommandResult cmd_darkport(Run &run)
{
    const RunSettings &s = run.settings();
    const ScenarioConfig &scenario = s.scenario;
    const GaussianBeam &beam = scenario.beam;
    const InterferometerSetting &setting = s.setting;
    const GridSpec grid = scenario.grid();

    const SampledProfile dark = sample_dark_profile(beam, setting, grid);
    const SampledProfile input = sample_input_profile(beam, grid);
    const bool has_approx = setting.k() != 0.0;

    CsvTable table({"x_m", "intensity", "intensity_approx", "input_intensity"});
    for (std::size_t i = 0; i < dark.size(); ++i) {
        const double x = dark.x(i);
        table.add_row({format_value(x), format_value(dark[i]),
                       has_approx ? format_value(dark_intensity(beam, setting, x)) : std::string(),
                       format_value(input[i])});
    }
    run.write_csv(table);

    json &summary = run.summary();
    const double sigma = beam.sigma();
    summary["k_sigma"] = setting.k_sigma(sigma);
    summary["phi_rad"] = setting.phi();
    const double p_dark = integrate_power(dark);
    summary["dark_fraction_quadrature"] = p_dark / integrate_power(input);
    if (std::abs(setting.k_sigma(sigma)) <= 1.0)
        summary["postselection_probability"] = postselection_probability(setting, sigma);
    if (p_dark >= kDefaultZeroPowerEpsilon) {
        summary["mean_position_m"] = mean_position(dark);
        summary["split_signal"] = split_detect(dark);
    }
    if (has_approx) {
        const WeakValueReport wv = weak_value_report(setting, sigma);
        summary["node_m"] = node_position(setting);
        summary["inverse_weak_value_shift_m"] = wv.inverse_shift;
        summary["inverse_regime"] = wv.inverse_regime;
        summary["split_signal_analytic"] = split_signal_analytic(setting, sigma);
        try {
            summary["asymmetry_ratio"] = two_lobe_profile(scenario, setting).asymmetry_ratio;
        } catch (const Error &) {
            summary["asymmetry_ratio"] = nullptr;
        }
    }

    run.write_plot([&] {
        SvgPlot plot("Post-selected dark-port intensity", "x (mm)", "intensity / peak");
        const double input_peak = *std::max_element(input.values().begin(), input.values().end());
        const double dark_peak = *std::max_element(dark.values().begin(), dark.values().end());
        PlotSeries in{.label = "input", .colour = kBlue, .style = LineStyle::Dotted};
        PlotSeries lobes{.label = "dark port", .colour = "#000000", .style = LineStyle::Solid};
        for (std::size_t i = 0; i < dark.size(); i += 4) {
            in.x.push_back(dark.x(i) * 1e3);
            in.y.push_back(input[i] / input_peak);
            lobes.x.push_back(dark.x(i) * 1e3);
            lobes.y.push_back(dark_peak > 0.0 ? dark[i] / dark_peak : 0.0);
        }
        plot.add(std::move(in));
        plot.add(std::move(lobes));
        return plot;
    });
    return run.finish();
}

CommandResult cmd_sweep_k(Run &run)
{
    const RunSettings &s = run.settings();
    const double phi = s.setting.phi();
    const std::vector<SweepRecord> records = sweep_k(s.scenario, phi);
    const bool with_mc = s.scenario.mc_samples > 0;

    std::vector<std::string> header = {"k_rad_per_m", "x_mean_analytic_m", "x_mean_numeric_m",
                                       "split_signal", "n_detected", "snr"};
    if (with_mc) {
        header.emplace_back("mc_estimate");
        header.emplace_back("mc_std_error");
    }
    CsvTable table(header);
    double worst = 0.0;
    for (const SweepRecord &r : records) {
        std::vector<std::string> row = {format_value(r.k), format_value(r.x_mean_analytic),
                                        format_value(r.x_mean_numeric), format_value(r.numeric_signal),
                                        format_value(r.n_detected), format_value(r.snr_analytic)};
        if (with_mc) {
            row.push_back(format_value(r.mc_estimate));
            row.push_back(format_value(r.mc_standard_error));
        }
        table.add_row(std::move(row));
        if (r.x_mean_analytic && r.x_mean_numeric && *r.x_mean_analytic != 0.0)
            worst = std::max(worst, std::abs(*r.x_mean_numeric / *r.x_mean_analytic - 1.0));
    }
    run.write_csv(table);

    run.summary()["phi_rad"] = phi;
    run.summary()["points"] = records.size();
    run.summary()["max_relative_deviation_from_inverse_weak_value"] = worst;

    run.write_plot([&] {
        SvgPlot plot("Mean position vs transverse momentum", "k (rad/m)", "<x> (um)");
        PlotSeries numeric{.label = "exact profile", .colour = kBlue, .style = LineStyle::None, .markers = true};
        for (const SweepRecord &r : records) {
            numeric.x.push_back(r.k);
            numeric.y.push_back(r.x_mean_numeric ? *r.x_mean_numeric * 1e6 : std::nan(""));
        }
        PlotSeries theory{.label = "-phi/k", .colour = "#000000", .style = LineStyle::Solid};
        const SweepRange dense{s.scenario.k_range.min, s.scenario.k_range.max, 200};
        const double kmax = std::max(std::abs(dense.min), std::abs(dense.max));
        for (double k : dense.values()) {
            if (std::abs(k) < 1e-3 * kmax)
                continue;
            theory.x.push_back(k);
            theory.y.push_back(-phi / k * 1e6);
        }
        plot.add(std::move(theory));
        plot.add(std::move(numeric));
        return plot;
    });
    return run.finish();
}

CommandResult cmd_snr(Run &run)
{
    const RunSettings &s = run.settings();
    ScenarioConfig split_cfg = s.scenario;
    split_cfg.noise_penalty = s.noise_penalty_split;
    ScenarioConfig homodyne_cfg = s.scenario;
    homodyne_cfg.noise_penalty = s.noise_penalty_homodyne;
    homodyne_cfg.mc_samples = 0;

    const auto split = sweep_phase_snr(split_cfg, s.calibration, DetectionMethod::Split, s.setting.k());
    const auto homodyne = sweep_phase_snr(homodyne_cfg, s.calibration, DetectionMethod::Homodyne);
    const bool with_mc = s.scenario.mc_samples > 0;

    std::vector<std::string> header = {"drive_V",  "phi_rad",   "method",       "signal",
                                       "n_detected", "snr_ideal", "snr_effective"};
    if (with_mc) {
        header.emplace_back("mc_estimate");
        header.emplace_back("mc_std_error");
    }
    CsvTable table(header);
    for (const auto *records : {&split, &homodyne}) {
        for (const SweepRecord &r : *records) {
            std::vector<std::string> row = {format_value(r.independent), format_value(r.phi),
                                            std::string(to_string(r.method)), format_value(r.analytic_signal),
                                            format_value(r.n_detected), format_value(r.snr_analytic),
                                            format_value(r.snr_effective)};
            if (with_mc) {
                row.push_back(format_value(r.mc_estimate));
                row.push_back(format_value(r.mc_standard_error));
            }
            table.add_row(std::move(row));
        }
    }
    run.write_csv(table);

    const SnrComparison cmp = compare_snr(split, homodyne);
    const double headroom = headroom_factor(s.fraction_incident);
    json &summary = run.summary();
    summary["slope_split_ideal_per_v"] = cmp.slope_split;
    summary["slope_homodyne_ideal_per_v"] = cmp.slope_homodyne;
    summary["slope_ratio_split_to_homodyne"] = cmp.slope_ratio;
    summary["slope_ratio_expected"] = std::sqrt(2.0 / std::numbers::pi);
    summary["max_linear_fit_residual"] = cmp.max_residual;
    summary["slope_split_effective_per_v"] = cmp.slope_split / s.noise_penalty_split;
    summary["slope_homodyne_effective_per_v"] = cmp.slope_homodyne / s.noise_penalty_homodyne;
    summary["fraction_incident"] = s.fraction_incident;
    summary["headroom_factor"] = headroom;

    run.write_plot([&] {
        SvgPlot plot("SNR: split detection vs balanced homodyne", "drive (V)", "SNR");
        const SweepRange line_range{0.0, std::max(std::abs(s.scenario.drive_range.min),
                                                  std::abs(s.scenario.drive_range.max)), 2};
        auto line = [&](std::string label, double slope, const char *colour, LineStyle style) {
            PlotSeries series{.label = std::move(label), .colour = colour, .style = style};
            for (double v : line_range.values()) {
                series.x.push_back(v);
                series.y.push_back(slope * v);
            }
            return series;
        };
        auto points = [&](std::string label, const std::vector<SweepRecord> &records, const char *colour) {
            PlotSeries series{.label = std::move(label), .colour = colour, .style = LineStyle::None, .markers = true};
            for (const SweepRecord &r : records) {
                series.x.push_back(std::abs(r.independent));
                series.y.push_back(r.snr_effective);
            }
            return series;
        };
        const double split_eff = cmp.slope_split / s.noise_penalty_split;
        const double homodyne_eff = cmp.slope_homodyne / s.noise_penalty_homodyne;
        plot.add(points("split (effective)", split, kBlue));
        plot.add(points("homodyne (effective)", homodyne, kOrange));
        plot.add(line("split fit", split_eff, kBlue, LineStyle::Solid));
        plot.add(line("homodyne fit", homodyne_eff, kOrange, LineStyle::Solid));
        plot.add(line("split ideal", cmp.slope_split, kBlue, LineStyle::Dashed));
        plot.add(line("homodyne ideal", cmp.slope_homodyne, kOrange, LineStyle::Dashed));
        plot.add(line("split, equal incident flux", split_eff * headroom, "#000000", LineStyle::Dashed));
        return plot;
    });
    return run.finish();
}

CommandResult cmd_montecarlo(Run &run)
{
    const RunSettings &s = run.settings();
    const SampledProfile profile = sample_dark_profile(s.scenario.beam, s.setting, s.scenario.grid());
    const double quadrature = split_detect(profile);
    const auto results = monte_carlo_batch(profile, s.mc_photons, s.scenario.seed,
                                           static_cast<std::size_t>(s.mc_runs), s.scenario.threads);

    CsvTable table({"seed", "n_samples", "estimate", "std_error", "analytic", "z_score"});
    std::size_t within = 0;
    double sum = 0.0;
    double sum_sq = 0.0;
    double sum_se = 0.0;
    for (const MonteCarloResult &r : results) {
        const double z = (r.signal_estimate - quadrature) / r.standard_error;
        if (std::abs(z) < 3.0)
            ++within;
        sum += r.signal_estimate;
        sum_sq += r.signal_estimate * r.signal_estimate;
        sum_se += r.standard_error;
        table.add_row({std::to_string(r.seed), std::to_string(r.n_samples), format_value(r.signal_estimate),
                       format_value(r.standard_error), format_value(quadrature), format_value(z)});
    }
    run.write_csv(table);

    const double n = static_cast<double>(results.size());
    const double mean = sum / n;
    const double spread = n > 1 ? std::sqrt(std::max(sum_sq - n * mean * mean, 0.0) / (n - 1.0)) : 0.0;
    json &summary = run.summary();
    summary["runs"] = results.size();
    summary["photons_per_run"] = s.mc_photons;
    summary["quadrature_signal"] = quadrature;
    summary["mean_estimate"] = mean;
    summary["estimate_spread"] = spread;
    summary["mean_std_error"] = sum_se / n;
    summary["within_3_std_error"] = within;
    summary["snr_analytic"] = snr_analytic(quadrature, static_cast<double>(s.mc_photons));
    summary["snr_monte_carlo"] = std::abs(quadrature) / (sum_se / n);
    return run.finish();
}

} // namespace

const std::vector<std::string> &command_names()
{
    static const std::vector<std::string> names = {"darkport", "sweep-k", "snr", "montecarlo"};
    return names;
}

CommandResult run_command(const CommandOptions &options)
{
    Config config = Config::load(options.config_path);
    for (const std::string &assignment : options.overrides)
        config.set(assignment);
    Run run(options, resolve(config, options.seed));

    if (options.command == "darkport")
        return cmd_darkport(run);
    if (options.command == "sweep-k")
        return cmd_sweep_k(run);
    if (options.command == "snr")
        return cmd_snr(run);
    if (options.command == "montecarlo")
        return cmd_montecarlo(run);
    throw Error(ErrorKind::InvalidArgument, "unknown command '" + options.command + "'");
}

int exit_code(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::ConfigError: return 2;
    case ErrorKind::IoError: return 3;
    default: return 4;
    }
}

unsigned threads_from_environment()
{
    const unsigned available = std::max(1u, std::thread::hardware_concurrency());
    if (const char *env = std::getenv("SAGNAC_AMP_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap > 0)
            return std::min(available, static_cast<unsigned>(cap));
    }
    return available;
}

} // namespace sagnac::cli
