#include <doctest.h>

#include "oracles.hpp"

#include <sagnac/error.hpp>
#include <sagnac/monte_carlo.hpp>
#include <sagnac/philox.hpp>

#include <cmath>

using namespace sagnac;
using doctest::Approx;

namespace
{

SampledProfile criterion_profile()
{
    const double sigma = 775e-6;
    const GaussianBeam beam(1.0, sigma, 795e-9, 625e-6);
    return sample_dark_profile(beam, InterferometerSetting(100.0, 440e-6));
}

} // namespace

TEST_CASE("Philox4x32-10 known-answer vectors")
{
    using P = Philox4x32;
    CHECK(P::block({0, 0, 0, 0}, {0, 0}) == P::Counter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(P::block({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
          P::Counter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(P::block({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
          P::Counter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("Philox uniforms")
{
    const Philox4x32 rng(42);
    double sum = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const auto u = rng.uniforms(static_cast<std::uint64_t>(i));
        REQUIRE(u[0] >= 0.0);
        REQUIRE(u[0] < 1.0);
        REQUIRE(u[1] >= 0.0);
        REQUIRE(u[1] < 1.0);
        sum += u[0] + u[1];
    }
    CHECK(sum / (2.0 * n) == Approx(0.5).epsilon(0.005));
    CHECK(rng.uniforms(7) == Philox4x32(42).uniforms(7));
    CHECK(rng.uniforms(7) != Philox4x32(43).uniforms(7));
    CHECK(rng.uniforms(7, 0) != rng.uniforms(7, 1));
}

TEST_CASE("profile sampler")
{
    const SampledProfile p({-1.0, 1.0, 3}, {0.0, 1.0, 0.0});
    const ProfileSampler s(p);
    CHECK(s.origin_cell() == 1);
    CHECK(s.cell(0.0) == 0);
    CHECK(s.cell(0.49) == 0);
    CHECK(s.cell(0.51) == 1);
    CHECK(s.position(0.25, 0.0) == Approx(-1.0));
    CHECK(s.position(0.25, 1.0) == Approx(0.0));
    // Rising density f = t: CDF t^2, so u = 1/4 maps to t = 1/2.
    CHECK(s.position(0.25, 0.25) == Approx(-0.5));

    CHECK_THROWS_AS(ProfileSampler(SampledProfile({-1.0, 1.0, 3}, {0.0, 0.0, 0.0})), Error);

    SUBCASE("sampled centroid matches the profile centroid")
    {
        const SampledProfile dark = sample_dark_profile(GaussianBeam(1.0, 1.0, 795e-9, 1e-3),
                                                        InterferometerSetting(0.5, 0.3));
        const ProfileSampler sampler(dark);
        const Philox4x32 rng(3);
        const int n = 400000;
        double sum = 0.0, sum2 = 0.0;
        for (int i = 0; i < n; ++i) {
            const auto u = rng.uniforms(static_cast<std::uint64_t>(i));
            const double x = sampler.position(u[0], u[1]);
            sum += x;
            sum2 += x * x;
        }
        const double mean = sum / n;
        const double se = std::sqrt((sum2 / n - mean * mean) / n);
        CHECK(std::abs(mean - oracle::dark_mean_exact(1.0, 0.5, 0.3)) < 4.0 * se);
    }
}

TEST_CASE("Monte Carlo split detection")
{
    const SampledProfile profile = criterion_profile();

    CHECK_THROWS_AS(monte_carlo_split(profile, 0, 1), Error);

    SUBCASE("single photon")
    {
        const MonteCarloResult r = monte_carlo_split(profile, 1, 5);
        CHECK(std::abs(r.signal_estimate) == 1.0);
        CHECK(r.standard_error == 1.0);
        CHECK(r.n_left + r.n_right == 1);
    }

    SUBCASE("binomial standard error")
    {
        const MonteCarloResult r = monte_carlo_split(profile, 10000, 9);
        CHECK(r.n_left + r.n_right == 10000);
        CHECK(r.signal_estimate == Approx((double(r.n_right) - double(r.n_left)) / 1e4).epsilon(1e-15));
        CHECK(r.standard_error ==
              Approx(std::sqrt((1.0 - r.signal_estimate * r.signal_estimate) / 1e4)).epsilon(1e-14));

        const SampledProfile right({-1.0, 1.0, 3}, {0.0, 0.0, 1.0});
        const MonteCarloResult all = monte_carlo_split(right, 400, 1);
        CHECK(all.signal_estimate == 1.0);
        CHECK(all.standard_error == Approx(0.05));
    }

    SUBCASE("seeded and thread independent")
    {
        const MonteCarloResult a = monte_carlo_split(profile, 100001, 77, 1);
        for (unsigned t : {2u, 3u, 8u}) {
            const MonteCarloResult b = monte_carlo_split(profile, 100001, 77, t);
            CHECK(b.n_right == a.n_right);
            CHECK(b.signal_estimate == a.signal_estimate);
        }
        CHECK(monte_carlo_split(profile, 100001, 78).n_right != a.n_right);
    }

    SUBCASE("symmetric profile gives zero within noise")
    {
        const SampledProfile input = sample_input_profile(GaussianBeam(1.0, 1.0, 795e-9, 1e-3), GridSpec::centred(1.0));
        const MonteCarloResult r = monte_carlo_split(input, 1000000, 21, 4);
        CHECK(std::abs(r.signal_estimate) < 3.0 * r.standard_error);
    }

    SUBCASE("first-order profile at one million photons")
    {
        const double sigma = 775e-6;
        const GaussianBeam beam(1.0, sigma, 795e-9, 625e-6);
        const InterferometerSetting s(100.0, 440e-6);
        const SampledProfile lobes = SampledProfile::tabulate(GridSpec::centred(sigma),
                                                              [&](double x) { return dark_intensity(beam, s, x); });
        const MonteCarloResult r = monte_carlo_split(lobes, 1000000, 2024, 4);
        CHECK(std::abs(r.signal_estimate - (-4.529925248429172e-3)) < 3.0 * r.standard_error);
    }

    SUBCASE("batch is unbiased")
    {
        const double quad = split_detect(profile);
        const auto batch = monte_carlo_batch(profile, 100000, 1000, 100, 4);
        REQUIRE(batch.size() == 100);
        double mean = 0.0, se = 0.0;
        for (std::size_t r = 0; r < batch.size(); ++r) {
            CHECK(batch[r].seed == (1000u ^ r));
            mean += batch[r].signal_estimate / 100.0;
            se += batch[r].standard_error / 100.0;
        }
        CHECK(std::abs(mean - quad) < 4.0 * se / 10.0);
    }
}
