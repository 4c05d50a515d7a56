#ifndef SAGNAC_CLI_CONFIG_HPP
#define SAGNAC_CLI_CONFIG_HPP

#include <sagnac/experiments.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sagnac::cli
{

// Flat `key = value` text grouped in `[section]` blocks. Keys are stored
// fully qualified ("beam.sigma_m"); every key has a default from the
// selected preset, so an empty file is a valid configuration.
class Config
{
public:
    // Throws ConfigError naming the offending line or key.
    static Config parse(std::string_view text, std::string_view origin = "<config>");

    // Reads a config file. A `.json` run manifest is also accepted, in which
    // case its "config" object is used.
    static Config load(const std::filesystem::path &path);

    // Applies a `key=value` override; `key` may be bare when unambiguous.
    void set(std::string_view assignment);
    void set(const std::string &key, std::string value);

    std::optional<std::string> get(const std::string &qualified_key) const;
    const std::map<std::string, std::string> &entries() const noexcept { return entries_; }

private:
    std::map<std::string, std::string> entries_;
};

// Qualified names of all recognised keys in display order.
const std::vector<std::string> &known_keys();

// Everything a CLI run needs, with defaults materialised.
struct RunSettings
{
    ScenarioConfig scenario;
    InterferometerSetting setting;
    SbcCalibration calibration;
    double noise_penalty_split = 1.0;
    double noise_penalty_homodyne = 1.0;
    double fraction_incident = 0.15;
    std::uint64_t mc_photons = 100000;
    std::uint64_t mc_runs = 100;
};

// Throws ConfigError naming the key whose value is malformed or out of range.
RunSettings resolve(const Config &config, std::optional<std::uint64_t> seed_override = std::nullopt);

// The resolved configuration as (qualified key, value) pairs, numbers in
// round-trip precision. Feeding these back through Config reproduces the run.
std::vector<std::pair<std::string, std::string>> materialize(const RunSettings &settings);

} // namespace sagnac::cli

#endif
