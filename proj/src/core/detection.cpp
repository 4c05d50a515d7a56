#include <sagnac/detection.hpp>

#include <sagnac/error.hpp>

#include <cmath>
#include <string>

namespace sagnac
{

namespace
{

void require_probability(double p, const char *name)
{
    if (!(p >= 0.0 && p <= 1.0))
        throw Error(ErrorKind::InvalidArgument, std::string(name) + " must lie in [0, 1]");
}

void require_power(double total, double epsilon)
{
    if (!(total >= epsilon))
        throw Error(ErrorKind::ZeroPower, "no light on the detector (integrated power below threshold)");
}

} // namespace

DetectorModel::DetectorModel(double quantum_efficiency,
                             double transmissivity,
                             double junk_offset,
                             std::optional<double> saturation_power_w)
    : quantum_efficiency_(quantum_efficiency),
      transmissivity_(transmissivity),
      junk_offset_(junk_offset),
      saturation_power_(saturation_power_w)
{
    require_probability(quantum_efficiency, "quantum efficiency");
    require_probability(transmissivity, "transmissivity");
    if (!std::isfinite(junk_offset))
        throw Error(ErrorKind::InvalidArgument, "junk-light offset must be finite");
    if (saturation_power_ && !(*saturation_power_ > 0.0))
        throw Error(ErrorKind::InvalidArgument, "saturation power must be positive");
}

DetectorModel DetectorModel::quad_cell()
{
    return DetectorModel(0.75, 0.5);
}

DetectorModel DetectorModel::balanced_receiver()
{
    return DetectorModel(0.81, 1.0);
}

double split_detect(const SampledProfile &profile, double epsilon)
{
    const double left = integrate_power(profile, profile.x_min(), 0.0);
    const double right = integrate_power(profile, 0.0, profile.x_max());
    const double total = left + right;
    require_power(total, epsilon);
    return (right - left) / total;
}

double mean_position(const SampledProfile &profile, double epsilon)
{
    const double total = integrate_power(profile);
    require_power(total, epsilon);
    return integrate_first_moment(profile) / total;
}

double balanced_detect(const SampledProfile &dark, const SampledProfile &bright, double epsilon)
{
    if (!dark.same_grid(bright))
        throw Error(ErrorKind::GridMismatch, "dark and bright profiles are sampled on different grids");
    const double p_dark = integrate_power(dark);
    const double p_bright = integrate_power(bright);
    require_power(p_dark + p_bright, epsilon);
    return (p_dark - p_bright) / (p_dark + p_bright);
}

PhotonBudget photon_budget(const GaussianBeam &beam,
                           const InterferometerSetting &setting,
                           const DetectorModel &detector,
                           double integration_time_s,
                           bool include_postselection)
{
    if (!(integration_time_s > 0.0) || !std::isfinite(integration_time_s))
        throw Error(ErrorKind::InvalidArgument, "integration time must be positive");

    const double photon_energy = constants::planck * constants::speed_of_light / beam.wavelength();

    PhotonBudget budget;
    budget.integration_time = integration_time_s;
    budget.postselection =
        include_postselection ? postselection_probability(setting, beam.sigma()) : 1.0;
    budget.n_input = beam.power() * integration_time_s / photon_energy;
    budget.n_detected = budget.n_input * budget.postselection * detector.transmissivity() *
                        detector.quantum_efficiency();
    budget.incident_power = beam.power() * budget.postselection * detector.transmissivity();
    budget.saturation_exceeded =
        detector.saturation_power() && budget.incident_power > *detector.saturation_power();
    return budget;
}

double snr_analytic(double signal, double n_detected)
{
    if (!(n_detected >= 0.0))
        throw Error(ErrorKind::InvalidArgument, "photon count must be non-negative");
    return std::abs(signal) * std::sqrt(n_detected);
}

double apply_detector(double signal, const DetectorModel &detector)
{
    return signal + detector.junk_offset();
}

} // namespace sagnac
