#include <sagnac/monte_carlo.hpp>

#include <sagnac/error.hpp>
#include <sagnac/parallel.hpp>
#include <sagnac/philox.hpp>

#include <algorithm>
#include <cmath>

namespace sagnac
{

ProfileSampler::ProfileSampler(const SampledProfile &profile, double epsilon)
    : profile_(profile), cumulative_(profile.size() - 1), origin_cell_(profile.origin_index())
{
    double running = 0.0;
    for (std::size_t j = 0; j + 1 < profile.size(); ++j) {
        running += 0.5 * profile.spacing() * (profile[j] + profile[j + 1]);
        cumulative_[j] = running;
    }
    if (!(running >= epsilon))
        throw Error(ErrorKind::ZeroPower, "cannot sample photons from a dark profile");
}

std::size_t ProfileSampler::cell(double u) const
{
    const double target = u * cumulative_.back();
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()), cumulative_.size() - 1);
}

double ProfileSampler::position(double u_cell, double u_within) const
{
    const std::size_t j = cell(u_cell);
    const double f0 = profile_[j];
    const double df = profile_[j + 1] - f0;
    // Solve f0 t + df t^2 / 2 = u (f0 + f1) / 2 for t in [0, 1].
    const double c = u_within * (f0 + 0.5 * df);
    const double disc = std::max(f0 * f0 + 2.0 * df * c, 0.0);
    const double denom = f0 + std::sqrt(disc);
    const double t = denom > 0.0 ? std::clamp(2.0 * c / denom, 0.0, 1.0) : u_within;
    return profile_.x(j) + t * profile_.spacing();
}

MonteCarloResult monte_carlo_split(const SampledProfile &profile,
                                   std::uint64_t n_detected,
                                   std::uint64_t seed,
                                   unsigned threads)
{
    if (n_detected == 0)
        throw Error(ErrorKind::InvalidArgument, "Monte Carlo needs at least one detected photon");

    const ProfileSampler sampler(profile);
    const Philox4x32 rng(seed);

    const std::size_t workers = std::max(1u, threads);
    std::vector<std::uint64_t> right_counts(workers, 0);
    parallel_chunks(workers, threads, [&](std::size_t w_begin, std::size_t w_end) {
        for (std::size_t w = w_begin; w < w_end; ++w) {
            const std::uint64_t begin = n_detected * w / workers;
            const std::uint64_t end = n_detected * (w + 1) / workers;
            std::uint64_t right = 0;
            for (std::uint64_t i = begin; i < end; ++i) {
                const auto u = rng.uniforms(i);
                if (sampler.cell(u[0]) >= sampler.origin_cell())
                    ++right;
            }
            right_counts[w] = right;
        }
    });

    MonteCarloResult result;
    result.seed = seed;
    result.n_samples = n_detected;
    for (std::uint64_t r : right_counts)
        result.n_right += r;
    result.n_left = n_detected - result.n_right;

    const double n = static_cast<double>(n_detected);
    const double s = (static_cast<double>(result.n_right) - static_cast<double>(result.n_left)) / n;
    result.signal_estimate = s;
    const double variance = 1.0 - s * s;
    result.standard_error = variance > 0.0 ? std::sqrt(variance / n) : 1.0 / std::sqrt(n);
    return result;
}

std::vector<MonteCarloResult> monte_carlo_batch(const SampledProfile &profile,
                                                std::uint64_t n_detected,
                                                std::uint64_t base_seed,
                                                std::size_t runs,
                                                unsigned threads)
{
    std::vector<MonteCarloResult> results(runs);
    parallel_chunks(runs, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t r = begin; r < end; ++r)
            results[r] = monte_carlo_split(profile, n_detected, base_seed ^ r);
    });
    return results;
}

} // namespace sagnac
