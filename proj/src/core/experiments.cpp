#include <sagnac/experiments.hpp>

#include <sagnac/error.hpp>
#include <sagnac/parallel.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sagnac
{

namespace
{

constexpr double kBeamRadius = 775e-6;
constexpr double kWavelength = 795e-9;

std::optional<double> try_measure(double (*measure)(const SampledProfile &, double),
                                  const SampledProfile &profile)
{
    try {
        return measure(profile, kDefaultZeroPowerEpsilon);
    } catch (const Error &e) {
        if (e.kind() != ErrorKind::ZeroPower)
            throw;
        return std::nullopt;
    }
}

void finish_snr(SweepRecord &record, const ScenarioConfig &config)
{
    const double signal = record.analytic_signal.value_or(record.numeric_signal.value_or(0.0));
    record.snr_analytic = snr_analytic(signal, record.n_detected);
    record.snr_effective = record.snr_analytic / config.noise_penalty;
}

void add_monte_carlo(SweepRecord &record,
                     const ScenarioConfig &config,
                     const SampledProfile &profile,
                     std::size_t index)
{
    if (config.mc_samples == 0 || !record.numeric_signal)
        return;
    const MonteCarloResult mc = monte_carlo_split(profile, config.mc_samples, config.seed ^ index);
    record.mc_estimate = mc.signal_estimate;
    record.mc_standard_error = mc.standard_error;
}

} // namespace

void SbcCalibration::validate() const
{
    if (!(phase_per_volt > 0.0) || !std::isfinite(phase_per_volt))
        throw Error(ErrorKind::InvalidArgument, "SBC phase per volt must be positive");
    if (!(uncertainty >= 0.0))
        throw Error(ErrorKind::InvalidArgument, "SBC calibration uncertainty must be non-negative");
}

double sbc_phase(double volts, const SbcCalibration &cal)
{
    return volts * cal.phase_per_volt;
}

std::vector<double> SweepRange::values() const
{
    std::vector<double> out(points);
    for (std::size_t i = 0; i < points; ++i) {
        const double t = points > 1 ? static_cast<double>(i) / static_cast<double>(points - 1) : 0.0;
        out[i] = min + (max - min) * t;
    }
    if (points > 1)
        out.back() = max;
    return out;
}

std::string_view to_string(DetectionMethod method)
{
    return method == DetectionMethod::Split ? "split" : "homodyne";
}

ScenarioConfig ScenarioConfig::small()
{
    ScenarioConfig config{
        .preset = "small",
        .loop_length_m = 0.11,
        .loop_width_m = 0.08,
        .beam = GaussianBeam(1.0, kBeamRadius, kWavelength, 625e-6),
    };
    config.k_range = {0.02 / kBeamRadius, 0.3 / kBeamRadius, 20};
    config.drive_range = {0.0, 20.0, 21};
    return config;
}

ScenarioConfig ScenarioConfig::large()
{
    ScenarioConfig config = small();
    config.preset = "large";
    config.loop_length_m = 0.39;
    config.beam = GaussianBeam(1.0, kBeamRadius, kWavelength, 0.5e-3);
    return config;
}

void ScenarioConfig::validate() const
{
    for (const SweepRange *range : {&k_range, &drive_range}) {
        if (!std::isfinite(range->min) || !std::isfinite(range->max))
            throw Error(ErrorKind::InvalidArgument, "sweep bounds must be finite");
        if (range->points < 2)
            throw Error(ErrorKind::InvalidArgument, "a sweep needs at least two points");
    }
    if (!(noise_penalty >= 1.0))
        throw Error(ErrorKind::InvalidArgument, "noise penalty must be >= 1");
    if (!(integration_time > 0.0))
        throw Error(ErrorKind::InvalidArgument, "integration time must be positive");
    validate_grid(grid());
}

std::vector<SweepRecord> sweep_k(const ScenarioConfig &config, double phi)
{
    config.validate();
    const std::vector<double> ks = config.k_range.values();
    const double sigma = config.beam.sigma();
    std::vector<SweepRecord> records(ks.size());

    parallel_chunks(ks.size(), config.threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const InterferometerSetting setting(ks[i], phi);
            SweepRecord &r = records[i];
            r.independent = ks[i];
            r.k = ks[i];
            r.phi = phi;
            r.method = DetectionMethod::Split;

            const SampledProfile profile = sample_dark_profile(config.beam, setting, config.grid());
            r.numeric_signal = try_measure(split_detect, profile);
            r.x_mean_numeric = try_measure(mean_position, profile);
            if (r.numeric_signal)
                r.x_mean_from_split = *r.numeric_signal * std::sqrt(std::numbers::pi * sigma * sigma / 2.0);
            if (setting.k() != 0.0) {
                r.analytic_signal = split_signal_analytic(setting, sigma);
                r.x_mean_analytic = inverse_weak_value_shift(setting);
            }
            r.n_detected = photon_budget(config.beam, setting, config.detector, config.integration_time, true)
                               .n_detected;
            finish_snr(r, config);
            add_monte_carlo(r, config, profile, i);
        }
    });
    return records;
}

std::vector<SweepRecord> sweep_phase_snr(const ScenarioConfig &config,
                                         const SbcCalibration &cal,
                                         DetectionMethod method,
                                         std::optional<double> k)
{
    config.validate();
    cal.validate();
    if (method == DetectionMethod::Split && (!k || *k == 0.0))
        throw Error(ErrorKind::ZeroMomentum, "split-detection SNR sweep needs a fixed non-zero k");

    const std::vector<double> volts = config.drive_range.values();
    const double sigma = config.beam.sigma();
    std::vector<SweepRecord> records(volts.size());

    parallel_chunks(volts.size(), config.threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const double phi = sbc_phase(volts[i], cal);
            SweepRecord &r = records[i];
            r.independent = volts[i];
            r.phi = phi;
            r.method = method;

            if (method == DetectionMethod::Split) {
                const InterferometerSetting setting(*k, phi);
                r.k = *k;
                const SampledProfile profile = sample_dark_profile(config.beam, setting, config.grid());
                r.analytic_signal = split_signal_analytic(setting, sigma);
                r.numeric_signal = try_measure(split_detect, profile);
                r.n_detected =
                    photon_budget(config.beam, setting, config.detector, config.integration_time, true)
                        .n_detected;
                add_monte_carlo(r, config, profile, i);
            } else {
                const InterferometerSetting biased(0.0, std::numbers::pi / 2.0 + phi);
                const SampledProfile dark = sample_dark_profile(config.beam, biased, config.grid());
                const SampledProfile bright = sample_bright_profile(config.beam, biased, config.grid());
                r.analytic_signal = homodyne_signal(phi);
                r.numeric_signal = balanced_detect(dark, bright);
                r.n_detected = photon_budget(config.beam, InterferometerSetting(0.0, phi), config.detector,
                                             config.integration_time, false)
                                   .n_detected;
            }
            finish_snr(r, config);
        }
    });
    return records;
}

double headroom_factor(double fraction_incident)
{
    if (!(fraction_incident > 0.0 && fraction_incident <= 1.0))
        throw Error(ErrorKind::InvalidFraction, "incident fraction must lie in (0, 1]");
    return std::sqrt(1.0 / fraction_incident);
}

TwoLobeProfile two_lobe_profile(const ScenarioConfig &config, const InterferometerSetting &setting)
{
    const double node = node_position(setting);
    SampledProfile profile = sample_dark_profile(config.beam, setting, config.grid());
    if (!(node > profile.x_min() && node < profile.x_max()))
        throw Error(ErrorKind::OutOfDomain, "two-lobe node lies outside the sampled grid");
    const double left = integrate_power(profile, profile.x_min(), node);
    const double right = integrate_power(profile, node, profile.x_max());
    if (!(right > 0.0))
        throw Error(ErrorKind::ZeroPower, "no power right of the node");
    return {std::move(profile), node, left / right};
}

double fit_slope_through_origin(std::span<const double> xs, std::span<const double> ys)
{
    if (xs.size() != ys.size() || xs.empty())
        throw Error(ErrorKind::InvalidArgument, "fit needs matching, non-empty series");
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += xs[i] * ys[i];
        sxx += xs[i] * xs[i];
    }
    if (!(sxx > 0.0))
        throw Error(ErrorKind::InvalidArgument, "fit needs at least one non-zero abscissa");
    return sxy / sxx;
}

SnrComparison compare_snr(std::span<const SweepRecord> split, std::span<const SweepRecord> homodyne)
{
    SnrComparison out;
    double worst = 0.0;
    auto fit = [&](std::span<const SweepRecord> records) {
        std::vector<double> xs;
        std::vector<double> ys;
        for (const SweepRecord &r : records) {
            xs.push_back(std::abs(r.independent));
            ys.push_back(r.snr_analytic);
        }
        const double slope = fit_slope_through_origin(xs, ys);
        const double peak = *std::max_element(ys.begin(), ys.end());
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (peak > 0.0)
                worst = std::max(worst, std::abs(ys[i] - slope * xs[i]) / peak);
        }
        return slope;
    };
    out.slope_split = fit(split);
    out.slope_homodyne = fit(homodyne);
    out.slope_ratio = out.slope_split / out.slope_homodyne;
    out.max_residual = worst;
    return out;
}

} // namespace sagnac
