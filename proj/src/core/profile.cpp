#include <sagnac/profile.hpp>

#include <sagnac/error.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace sagnac
{

namespace
{

// Grid positions within this fraction of a cell of a node snap to the node.
constexpr double kSnap = 1e-9;

double cell_position(const SampledProfile &profile, double x)
{
    const double u = (x - profile.x_min()) / profile.spacing();
    const double nearest = std::round(u);
    return std::abs(u - nearest) < kSnap ? nearest : u;
}

// Exact integral of the linear interpolant on cell j between local
// coordinates t0 <= t1 in [0, 1].
double cell_integral(const SampledProfile &profile, std::size_t j, double t0, double t1)
{
    const double f0 = profile[j];
    const double df = profile[j + 1] - f0;
    return profile.spacing() * ((t1 - t0) * f0 + 0.5 * (t1 * t1 - t0 * t0) * df);
}

} // namespace

GridSpec GridSpec::centred(double sigma_m, double span_in_sigma, std::size_t n_points)
{
    return {-span_in_sigma * sigma_m, span_in_sigma * sigma_m, n_points};
}

void validate_grid(const GridSpec &grid)
{
    if (grid.n_points < 3 || grid.n_points % 2 == 0)
        throw Error(ErrorKind::InvalidGrid,
                    "grid needs an odd number of points >= 3, got " + std::to_string(grid.n_points));
    if (!std::isfinite(grid.x_min) || !std::isfinite(grid.x_max) || !(grid.x_min < 0.0) ||
        !(grid.x_max > 0.0))
        throw Error(ErrorKind::InvalidGrid, "grid must satisfy x_min < 0 < x_max");
    const double h = (grid.x_max - grid.x_min) / static_cast<double>(grid.n_points - 1);
    const double u = -grid.x_min / h;
    if (std::abs(u - std::round(u)) > 1e-6)
        throw Error(ErrorKind::InvalidGrid, "x = 0 does not fall on a grid node");
}

SampledProfile::SampledProfile(const GridSpec &grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values))
{
    validate_grid(grid_);
    if (values_.size() != grid_.n_points)
        throw Error(ErrorKind::InvalidGrid, "sample count does not match the grid");
    for (double v : values_) {
        if (!(v >= 0.0) || !std::isfinite(v))
            throw Error(ErrorKind::InvalidArgument, "intensity samples must be finite and non-negative");
    }
    spacing_ = (grid_.x_max - grid_.x_min) / static_cast<double>(grid_.n_points - 1);
    origin_ = static_cast<std::size_t>(std::llround(-grid_.x_min / spacing_));
}

SampledProfile SampledProfile::tabulate(const GridSpec &grid,
                                        const std::function<double(double)> &density)
{
    validate_grid(grid);
    const double h = (grid.x_max - grid.x_min) / static_cast<double>(grid.n_points - 1);
    const auto origin = static_cast<std::ptrdiff_t>(std::llround(-grid.x_min / h));
    std::vector<double> values(grid.n_points);
    for (std::size_t i = 0; i < grid.n_points; ++i) {
        // Nodes are placed relative to the origin so that x = 0 is exact.
        const double x = static_cast<double>(static_cast<std::ptrdiff_t>(i) - origin) * h;
        values[i] = density(x);
    }
    return SampledProfile(grid, std::move(values));
}

double SampledProfile::x(std::size_t i) const noexcept
{
    return static_cast<double>(static_cast<std::ptrdiff_t>(i) - static_cast<std::ptrdiff_t>(origin_)) *
           spacing_;
}

bool SampledProfile::same_grid(const SampledProfile &other) const noexcept
{
    return grid_.n_points == other.grid_.n_points && grid_.x_min == other.grid_.x_min &&
           grid_.x_max == other.grid_.x_max;
}

SampledProfile sample_dark_profile(const GaussianBeam &beam,
                                   const InterferometerSetting &setting,
                                   const GridSpec &grid)
{
    return SampledProfile::tabulate(grid, [&](double x) { return std::norm(output_fields(beam, setting, x).dark); });
}

SampledProfile sample_dark_profile(const GaussianBeam &beam, const InterferometerSetting &setting)
{
    return sample_dark_profile(beam, setting, GridSpec::centred(beam.sigma()));
}

SampledProfile sample_bright_profile(const GaussianBeam &beam,
                                     const InterferometerSetting &setting,
                                     const GridSpec &grid)
{
    return SampledProfile::tabulate(grid,
                                    [&](double x) { return std::norm(output_fields(beam, setting, x).bright); });
}

SampledProfile sample_input_profile(const GaussianBeam &beam, const GridSpec &grid)
{
    return SampledProfile::tabulate(grid, [&](double x) { return std::norm(input_field(beam, x)); });
}

double integrate_power(const SampledProfile &profile, double from, double to)
{
    const double tol = kSnap * profile.spacing();
    if (!(from <= to) || from < profile.x_min() - tol || to > profile.x_max() + tol)
        throw Error(ErrorKind::OutOfDomain, "integration interval lies outside the sampled grid");

    const double last = static_cast<double>(profile.size() - 1);
    const double u0 = std::clamp(cell_position(profile, from), 0.0, last);
    const double u1 = std::clamp(cell_position(profile, to), 0.0, last);
    if (u0 == u1)
        return 0.0;

    // The lower end opens the cell at or below it; the upper end closes the
    // cell at or below it (a node endpoint closes the previous cell).
    const auto j0 = static_cast<std::size_t>(std::min(std::floor(u0), last - 1.0));
    const auto j1 = static_cast<std::size_t>(std::ceil(u1) - 1.0);
    const double t0 = u0 - static_cast<double>(j0);
    const double t1 = u1 - static_cast<double>(j1);

    if (j0 == j1)
        return cell_integral(profile, j0, t0, t1);

    double sum = cell_integral(profile, j0, t0, 1.0);
    for (std::size_t j = j0 + 1; j < j1; ++j)
        sum += 0.5 * profile.spacing() * (profile[j] + profile[j + 1]);
    sum += cell_integral(profile, j1, 0.0, t1);
    return sum;
}

double integrate_power(const SampledProfile &profile)
{
    return integrate_power(profile, profile.x_min(), profile.x_max());
}

double integrate_first_moment(const SampledProfile &profile)
{
    const std::size_t n = profile.size();
    double sum = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i)
        sum += profile.x(i) * profile[i];
    sum += 0.5 * (profile.x(0) * profile[0] + profile.x(n - 1) * profile[n - 1]);
    return sum * profile.spacing();
}

} // namespace sagnac
