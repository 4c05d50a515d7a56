#ifndef SAGNAC_DETECTION_HPP
#define SAGNAC_DETECTION_HPP

#include <sagnac/optics.hpp>
#include <sagnac/profile.hpp>

#include <optional>

namespace sagnac
{

namespace constants
{
inline constexpr double planck = 6.62607015e-34;       // J s
inline constexpr double speed_of_light = 299792458.0;  // m/s
} // namespace constants

// Below this integrated power a profile is considered dark.
inline constexpr double kDefaultZeroPowerEpsilon = 1e-30;

// Efficiency chain of a photodetector plus an additive stray-light offset on
// its normalised signal.
class DetectorModel
{
public:
    DetectorModel() = default;
    DetectorModel(double quantum_efficiency,
                  double transmissivity,
                  double junk_offset = 0.0,
                  std::optional<double> saturation_power_w = std::nullopt);

    // Quad-cell split detector behind a 50% protective plate (eta = 0.75).
    static DetectorModel quad_cell();
    // Balanced receiver (eta = 0.81).
    static DetectorModel balanced_receiver();

    double quantum_efficiency() const noexcept { return quantum_efficiency_; }
    double transmissivity() const noexcept { return transmissivity_; }
    double junk_offset() const noexcept { return junk_offset_; }
    const std::optional<double> &saturation_power() const noexcept { return saturation_power_; }

    double efficiency() const noexcept { return quantum_efficiency_ * transmissivity_; }

private:
    double quantum_efficiency_ = 1.0;
    double transmissivity_ = 1.0;
    double junk_offset_ = 0.0;
    std::optional<double> saturation_power_;
};

struct PhotonBudget
{
    double n_input = 0.0;
    double n_detected = 0.0;
    double integration_time = 0.0;  // s
    double postselection = 1.0;     // factor applied between input and detector
    double incident_power = 0.0;    // W reaching the detector surface
    bool saturation_exceeded = false;
};

// (P_right - P_left) / (P_right + P_left) with the split at x = 0.
// Throws ZeroPower when the total is below `epsilon`.
double split_detect(const SampledProfile &profile, double epsilon = kDefaultZeroPowerEpsilon);

// Intensity-weighted centroid. Throws ZeroPower.
double mean_position(const SampledProfile &profile, double epsilon = kDefaultZeroPowerEpsilon);

// (P_dark - P_bright) / (P_dark + P_bright). With k = 0 and the phase biased
// to pi/2 + phi this equals sin(phi). Throws GridMismatch or ZeroPower.
double balanced_detect(const SampledProfile &dark,
                       const SampledProfile &bright,
                       double epsilon = kDefaultZeroPowerEpsilon);

// Photons per integration window at the input and at the detector. With
// `include_postselection` the dark-port attenuation |k sigma cos(phi/2)|^2
// is applied before the detector efficiencies.
PhotonBudget photon_budget(const GaussianBeam &beam,
                           const InterferometerSetting &setting,
                           const DetectorModel &detector,
                           double integration_time_s,
                           bool include_postselection);

// Shot-noise limited SNR, |signal| sqrt(N_d).
double snr_analytic(double signal, double n_detected);

// Adds the detector's stray-light offset. Efficiencies only change photon
// counts, never the normalised signal.
double apply_detector(double signal, const DetectorModel &detector);

} // namespace sagnac

#endif
