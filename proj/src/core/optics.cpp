#include <sagnac/optics.hpp>

#include <sagnac/error.hpp>

#include <cmath>
#include <numbers>
#include <string>

namespace sagnac
{

namespace
{

void require_momentum(const InterferometerSetting &setting)
{
    if (setting.k() == 0.0)
        throw Error(ErrorKind::ZeroMomentum,
                    "approximate dark-port formulas need k != 0; use the exact output fields");
}

double envelope(const GaussianBeam &beam, double x)
{
    const double s = beam.sigma();
    return std::exp(-x * x / (4.0 * s * s));
}

} // namespace

GaussianBeam::GaussianBeam(double amplitude, double sigma_m, double wavelength_m, double power_w)
    : amplitude_(amplitude), sigma_(sigma_m), wavelength_(wavelength_m), power_(power_w)
{
    if (!(amplitude > 0.0) || !std::isfinite(amplitude))
        throw Error(ErrorKind::InvalidArgument, "beam amplitude must be positive");
    if (!(sigma_m > 0.0) || !std::isfinite(sigma_m))
        throw Error(ErrorKind::InvalidArgument, "beam radius sigma must be positive");
    if (!(wavelength_m > 0.0) || !std::isfinite(wavelength_m))
        throw Error(ErrorKind::InvalidArgument, "wavelength must be positive");
    if (!(power_w >= 0.0) || !std::isfinite(power_w))
        throw Error(ErrorKind::InvalidArgument, "optical power must be non-negative");
}

InterferometerSetting::InterferometerSetting(double k_rad_per_m, double phi_rad)
    : k_(k_rad_per_m), phi_(phi_rad)
{
    if (!std::isfinite(k_rad_per_m))
        throw Error(ErrorKind::InvalidArgument, "transverse momentum k must be finite");
    if (!(std::abs(phi_rad) < std::numbers::pi))
        throw Error(ErrorKind::InvalidArgument,
                    "relative phase must lie in the open interval (-pi, pi), got " +
                        std::to_string(phi_rad));
}

Complex input_field(const GaussianBeam &beam, double x)
{
    return {beam.amplitude() * envelope(beam, x), 0.0};
}

PortPair output_fields(const GaussianBeam &beam, const InterferometerSetting &setting, double x)
{
    const double g = beam.amplitude() * envelope(beam, x);
    const double arg = setting.k() * x - 0.5 * setting.phi();
    return {Complex(0.0, -g * std::sin(arg)), Complex(0.0, g * std::cos(arg))};
}

double homodyne_signal(double phi)
{
    return std::sin(phi);
}

double lobe_asymmetry(const InterferometerSetting &setting, double sigma_m)
{
    require_momentum(setting);
    return std::tan(0.5 * setting.phi()) / setting.k_sigma(sigma_m);
}

Complex dark_field_approx(const GaussianBeam &beam, const InterferometerSetting &setting, double x)
{
    const double s = beam.sigma();
    const double a = lobe_asymmetry(setting, s);
    const double ks = setting.k_sigma(s);
    const Complex prefactor(0.0, -beam.amplitude() * ks * std::cos(0.5 * setting.phi()));
    return prefactor * ((x / s - a) * envelope(beam, x));
}

double dark_intensity(const GaussianBeam &beam, const InterferometerSetting &setting, double x)
{
    const double s = beam.sigma();
    const double a = lobe_asymmetry(setting, s);
    const double ks = setting.k_sigma(s);
    const double c = ks * std::cos(0.5 * setting.phi());
    const double lobe = x / s - a;
    return c * c * beam.peak_intensity() * lobe * lobe * std::exp(-x * x / (2.0 * s * s));
}

double node_position(const InterferometerSetting &setting)
{
    require_momentum(setting);
    return std::tan(0.5 * setting.phi()) / setting.k();
}

double postselection_probability(const InterferometerSetting &setting, double sigma_m)
{
    const double ks = setting.k_sigma(sigma_m);
    if (std::abs(ks) > 1.0)
        throw Error(ErrorKind::OutOfRegime,
                    "post-selection formula needs |k sigma| <= 1, got " + std::to_string(ks));
    const double c = ks * std::cos(0.5 * setting.phi());
    return c * c;
}

Complex weak_value(double phi)
{
    if (phi == 0.0)
        throw Error(ErrorKind::ZeroPhase, "weak value diverges at phi = 0");
    return {0.0, -2.0 / phi};
}

double inverse_weak_value_shift(const InterferometerSetting &setting)
{
    require_momentum(setting);
    return -setting.phi() / setting.k();
}

WeakValueReport weak_value_report(const InterferometerSetting &setting, double sigma_m)
{
    WeakValueReport report;
    if (setting.phi() != 0.0)
        report.weak_value = weak_value(setting.phi());
    report.inverse_shift = inverse_weak_value_shift(setting);
    report.postselection = postselection_probability(setting, sigma_m);
    report.inverse_regime = std::abs(setting.phi()) < std::abs(setting.k_sigma(sigma_m));
    return report;
}

double split_signal_analytic(const InterferometerSetting &setting, double sigma_m)
{
    require_momentum(setting);
    return -std::sqrt(2.0 / std::numbers::pi) * setting.phi() / setting.k_sigma(sigma_m);
}

double two_lobe_mean_position(const InterferometerSetting &setting, double sigma_m)
{
    const double a = lobe_asymmetry(setting, sigma_m);
    return -2.0 * a * sigma_m / (1.0 + a * a);
}

double two_lobe_split_signal(const InterferometerSetting &setting, double sigma_m)
{
    const double a = lobe_asymmetry(setting, sigma_m);
    return -std::sqrt(8.0 / std::numbers::pi) * a / (1.0 + a * a);
}

} // namespace sagnac
