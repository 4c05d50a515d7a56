#ifndef SAGNAC_EXPERIMENTS_HPP
#define SAGNAC_EXPERIMENTS_HPP

#include <sagnac/detection.hpp>
#include <sagnac/monte_carlo.hpp>
#include <sagnac/optics.hpp>
#include <sagnac/profile.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sagnac
{

// Piezo-driven Soleil-Babinet compensator: relative phase per drive volt.
struct SbcCalibration
{
    double phase_per_volt = 22e-6;  // rad/V
    double uncertainty = 0.9e-6;    // rad/V

    void validate() const;
};

double sbc_phase(double volts, const SbcCalibration &cal);

// Inclusive, evenly spaced sweep.
struct SweepRange
{
    double min = 0.0;
    double max = 0.0;
    std::size_t points = 2;

    std::vector<double> values() const;
};

enum class DetectionMethod
{
    Split,
    Homodyne,
};

std::string_view to_string(DetectionMethod method);

struct ScenarioConfig
{
    std::string preset;
    // Loop geometry is informational; the 1-D model does not use it.
    double loop_length_m = 0.0;
    double loop_width_m = 0.0;

    GaussianBeam beam;
    double grid_span_sigma = 8.0;
    std::size_t grid_points = 4097;
    SweepRange k_range{};
    SweepRange drive_range{};
    DetectorModel detector{};
    double integration_time = 300e-6;
    std::uint64_t mc_samples = 0;  // 0 disables Monte Carlo columns
    double noise_penalty = 1.0;    // measured SNR = ideal SNR / penalty
    std::uint64_t seed = 0;
    unsigned threads = 1;

    // 11 cm x 8 cm loop, 625 uW effective input.
    static ScenarioConfig small();
    // 39 cm x 8 cm loop, 0.5 mW input.
    static ScenarioConfig large();

    GridSpec grid() const { return GridSpec::centred(beam.sigma(), grid_span_sigma, grid_points); }

    // Throws InvalidArgument on non-finite bounds, fewer than two sweep
    // points, noise_penalty < 1 or a non-positive integration time.
    void validate() const;
};

struct SweepRecord
{
    double independent = 0.0;  // k (rad/m) or drive voltage (V)
    double k = 0.0;
    double phi = 0.0;
    DetectionMethod method = DetectionMethod::Split;

    std::optional<double> analytic_signal;
    std::optional<double> numeric_signal;
    std::optional<double> x_mean_analytic;
    std::optional<double> x_mean_numeric;
    std::optional<double> x_mean_from_split;  // Delta_s sqrt(pi sigma^2 / 2)
    std::optional<double> mc_estimate;
    std::optional<double> mc_standard_error;

    double n_detected = 0.0;
    double snr_analytic = 0.0;
    double snr_effective = 0.0;
};

// Sweep over config.k_range at fixed phase. Records at k = 0
// carry only exact-path values; the analytic columns stay empty.
std::vector<SweepRecord> sweep_k(const ScenarioConfig &config, double phi);

// Sweep over config.drive_range. Split detection needs the
// fixed kick `k`; homodyne runs at k = 0 with the phase biased by pi/2.
std::vector<SweepRecord> sweep_phase_snr(const ScenarioConfig &config,
                                         const SbcCalibration &cal,
                                         DetectionMethod method,
                                         std::optional<double> k = std::nullopt);

// SNR multiplier from raising the input until the detector sees the full
// original flux: sqrt(1/f). Throws InvalidFraction unless 0 < f <= 1.
double headroom_factor(double fraction_incident);

struct TwoLobeProfile
{
    SampledProfile profile;
    double node = 0.0;             // tan(phi/2)/k
    double asymmetry_ratio = 1.0;  // power left of node / power right of node
};

TwoLobeProfile two_lobe_profile(const ScenarioConfig &config, const InterferometerSetting &setting);

// Least-squares slope of y = m x.
double fit_slope_through_origin(std::span<const double> xs, std::span<const double> ys);

struct SnrComparison
{
    double slope_split = 0.0;      // ideal SNR per volt
    double slope_homodyne = 0.0;
    double slope_ratio = 0.0;      // split / homodyne
    double max_residual = 0.0;     // worst linear-fit residual / max SNR, both methods
};

// Fits ideal SNR against |drive voltage| for both methods.
SnrComparison compare_snr(std::span<const SweepRecord> split, std::span<const SweepRecord> homodyne);

} // namespace sagnac

#endif
