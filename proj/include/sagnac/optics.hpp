#ifndef SAGNAC_OPTICS_HPP
#define SAGNAC_OPTICS_HPP

#include <complex>
#include <optional>

namespace sagnac
{

using Complex = std::complex<double>;

// Collimated Gaussian input mode. The transverse model is 1-D in x and the
// beam radius is constant through the interferometer (no diffraction).
class GaussianBeam
{
public:
    // Throws Error(InvalidArgument) unless amplitude > 0, sigma > 0,
    // wavelength > 0 and power >= 0.
    GaussianBeam(double amplitude, double sigma_m, double wavelength_m, double power_w);

    double amplitude() const noexcept { return amplitude_; }
    double sigma() const noexcept { return sigma_; }
    double wavelength() const noexcept { return wavelength_; }
    double power() const noexcept { return power_; }

    // Peak intensity density, I0 = E0^2.
    double peak_intensity() const noexcept { return amplitude_ * amplitude_; }

private:
    double amplitude_;
    double sigma_;
    double wavelength_;
    double power_;
};

// Opposite transverse momentum kick k (rad/m) and relative phase phi (rad)
// between the clockwise and counter-clockwise paths. phi is restricted to the
// open interval (-pi, pi).
class InterferometerSetting
{
public:
    InterferometerSetting(double k_rad_per_m, double phi_rad);

    double k() const noexcept { return k_; }
    double phi() const noexcept { return phi_; }

    // Dimensionless kick relative to the beam radius.
    double k_sigma(double sigma_m) const noexcept { return k_ * sigma_m; }

private:
    double k_;
    double phi_;
};

struct PortPair
{
    Complex dark;
    Complex bright;
};

struct WeakValueReport
{
    std::optional<Complex> weak_value;  // -2i/phi, absent when phi == 0
    double inverse_shift = 0.0;         // <x> = -phi/k, metres
    double postselection = 0.0;         // |k sigma cos(phi/2)|^2
    bool inverse_regime = false;        // |phi| < |k sigma|
};

// E0 exp(-x^2 / 4 sigma^2).
Complex input_field(const GaussianBeam &beam, double x);

// Exact output ports of the B M B transfer matrix product acting on the
// input field (port 1 illuminated, port 2 vacuum):
//   dark   = -i E0 g(x) sin(kx - phi/2)
//   bright =  i E0 g(x) cos(kx - phi/2)
PortPair output_fields(const GaussianBeam &beam, const InterferometerSetting &setting, double x);

// Balanced homodyne signal sin(phi), obtained with k = 0 and the phase
// biased by pi/2.
double homodyne_signal(double phi);

// First-order dark-port field for small k sigma:
//   A (x/sigma - tan(phi/2)/(k sigma)) exp(-x^2/4 sigma^2),
//   A = -i E0 k sigma cos(phi/2).
// Throws ZeroMomentum for k == 0.
Complex dark_field_approx(const GaussianBeam &beam, const InterferometerSetting &setting, double x);

// |dark_field_approx|^2 written as P_ps I0 (x/sigma - a)^2 exp(-x^2/2 sigma^2).
double dark_intensity(const GaussianBeam &beam, const InterferometerSetting &setting, double x);

// Position of the unique zero of the two-lobe profile, tan(phi/2)/k.
double node_position(const InterferometerSetting &setting);

// |k sigma cos(phi/2)|^2. Throws OutOfRegime when |k sigma| > 1.
double postselection_probability(const InterferometerSetting &setting, double sigma_m);

// -2i/phi. Throws ZeroPhase for phi == 0.
Complex weak_value(double phi);

// Meter shift -phi/k. Equivalently -2 Im(A_w^-1)/k with A_w = -2i/phi.
// Throws ZeroMomentum for k == 0.
double inverse_weak_value_shift(const InterferometerSetting &setting);

WeakValueReport weak_value_report(const InterferometerSetting &setting, double sigma_m);

// Normalised split-detector signal for small tan(phi/2)/(k sigma):
//   -sqrt(2/pi) phi / (k sigma).
double split_signal_analytic(const InterferometerSetting &setting, double sigma_m);

// Dimensionless asymmetry a = tan(phi/2)/(k sigma) of the two-lobe profile.
double lobe_asymmetry(const InterferometerSetting &setting, double sigma_m);

// Gaussian moments of the first-order two-lobe intensity, valid for any a:
//   <x>     = -2 a sigma / (1 + a^2)
//   Delta_s = -sqrt(8/pi) a / (1 + a^2)
// Both reduce to -phi/k and -sqrt(2/pi) phi/(k sigma) for small a.
double two_lobe_mean_position(const InterferometerSetting &setting, double sigma_m);
double two_lobe_split_signal(const InterferometerSetting &setting, double sigma_m);

} // namespace sagnac

#endif
