#ifndef SAGNAC_MONTE_CARLO_HPP
#define SAGNAC_MONTE_CARLO_HPP

#include <sagnac/detection.hpp>
#include <sagnac/profile.hpp>

#include <cstdint>
#include <vector>

namespace sagnac
{

struct MonteCarloResult
{
    double signal_estimate = 0.0;
    double standard_error = 0.0;
    std::uint64_t n_samples = 0;
    std::uint64_t seed = 0;
    std::uint64_t n_left = 0;
    std::uint64_t n_right = 0;
};

// Draws positions from a sampled intensity profile treated as a probability
// density with piecewise-linear shape (the same interpolant the trapezoid
// quadrature integrates).
class ProfileSampler
{
public:
    explicit ProfileSampler(const SampledProfile &profile, double epsilon = kDefaultZeroPowerEpsilon);

    // Index of the grid cell containing a photon for uniform u in [0, 1).
    std::size_t cell(double u) const;

    // Position for a pair of uniforms: the first picks the cell, the second
    // inverts the linear density inside it.
    double position(double u_cell, double u_within) const;

    // Cells at or beyond this index lie right of x = 0.
    std::size_t origin_cell() const noexcept { return origin_cell_; }

private:
    SampledProfile profile_;
    std::vector<double> cumulative_;
    std::size_t origin_cell_;
};

// Multinomial photon placement on the normalised profile followed by split
// detection. The estimate is (N_right - N_left)/N and its binomial standard
// error sqrt((1 - s^2)/N). When every photon lands on one side the plug-in
// variance vanishes; the worst-case bound 1/sqrt(N) is reported instead, so
// a single photon yields SE = 1.
//
// Photon i consumes counter i of the Philox stream keyed by `seed`, so the
// result is bit-identical for any `threads`.
MonteCarloResult monte_carlo_split(const SampledProfile &profile,
                                   std::uint64_t n_detected,
                                   std::uint64_t seed,
                                   unsigned threads = 1);

// `runs` independent estimates with seeds base_seed ^ run_index.
std::vector<MonteCarloResult> monte_carlo_batch(const SampledProfile &profile,
                                                std::uint64_t n_detected,
                                                std::uint64_t base_seed,
                                                std::size_t runs,
                                                unsigned threads = 1);

} // namespace sagnac

#endif
