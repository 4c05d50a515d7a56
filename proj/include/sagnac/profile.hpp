#ifndef SAGNAC_PROFILE_HPP
#define SAGNAC_PROFILE_HPP

#include <sagnac/optics.hpp>

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace sagnac
{

// Uniform transverse grid. x = 0 must coincide with a grid node so that the
// split detector boundary is exact.
struct GridSpec
{
    double x_min = 0.0;
    double x_max = 0.0;
    std::size_t n_points = 0;

    // [-span sigma, span sigma] with n_points nodes (defaults 8 sigma, 4097).
    static GridSpec centred(double sigma_m, double span_in_sigma = 8.0, std::size_t n_points = 4097);
};

// Non-negative intensity density sampled on a uniform grid.
class SampledProfile
{
public:
    // Throws InvalidGrid for a malformed grid and InvalidArgument for
    // negative or non-finite samples.
    SampledProfile(const GridSpec &grid, std::vector<double> values);

    // Tabulates `density` at every node of `grid`.
    static SampledProfile tabulate(const GridSpec &grid, const std::function<double(double)> &density);

    const GridSpec &grid() const noexcept { return grid_; }
    double x_min() const noexcept { return grid_.x_min; }
    double x_max() const noexcept { return grid_.x_max; }
    std::size_t size() const noexcept { return values_.size(); }
    double spacing() const noexcept { return spacing_; }
    double x(std::size_t i) const noexcept;
    std::size_t origin_index() const noexcept { return origin_; }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t i) const noexcept { return values_[i]; }

    bool same_grid(const SampledProfile &other) const noexcept;

private:
    GridSpec grid_;
    double spacing_;
    std::size_t origin_;
    std::vector<double> values_;
};

void validate_grid(const GridSpec &grid);

// |exact dark field|^2 from the full transfer-matrix result; legal for k = 0.
SampledProfile sample_dark_profile(const GaussianBeam &beam,
                                   const InterferometerSetting &setting,
                                   const GridSpec &grid);
SampledProfile sample_dark_profile(const GaussianBeam &beam, const InterferometerSetting &setting);

SampledProfile sample_bright_profile(const GaussianBeam &beam,
                                     const InterferometerSetting &setting,
                                     const GridSpec &grid);

SampledProfile sample_input_profile(const GaussianBeam &beam, const GridSpec &grid);

// Composite trapezoid integral of the piecewise-linear interpolant over
// [from, to]. Throws OutOfDomain when the interval leaves the grid.
double integrate_power(const SampledProfile &profile, double from, double to);
double integrate_power(const SampledProfile &profile);

// Integral of x I(x) over the whole grid, same rule.
double integrate_first_moment(const SampledProfile &profile);

} // namespace sagnac

#endif
