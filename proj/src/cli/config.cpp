#include <sagnac/cli/config.hpp>

#include <sagnac/error.hpp>

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace sagnac::cli
{

namespace
{

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

[[noreturn]] void config_error(const std::string &message)
{
    throw Error(ErrorKind::ConfigError, message);
}

std::string qualify(std::string_view key)
{
    const std::string k(trim(key));
    const auto &keys = known_keys();
    if (std::find(keys.begin(), keys.end(), k) != keys.end())
        return k;
    std::string match;
    for (const std::string &candidate : keys) {
        const auto dot = candidate.find('.');
        if (candidate.substr(dot + 1) == k) {
            if (!match.empty())
                config_error("ambiguous key '" + k + "'");
            match = candidate;
        }
    }
    if (match.empty())
        config_error("unknown key '" + k + "'");
    return match;
}

std::string format_number(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

class Reader
{
public:
    explicit Reader(const Config &config) : config_(config) {}

    std::optional<double> number(const std::string &key) const
    {
        const auto raw = config_.get(key);
        if (!raw || trim(*raw).empty())
            return std::nullopt;
        const std::string_view text = trim(*raw);
        double value = 0.0;
        const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc() || end != text.data() + text.size() || !std::isfinite(value))
            config_error("key '" + key + "': expected a finite number, got '" + std::string(text) + "'");
        return value;
    }

    std::optional<std::uint64_t> count(const std::string &key) const
    {
        const auto raw = config_.get(key);
        if (!raw || trim(*raw).empty())
            return std::nullopt;
        const std::string_view text = trim(*raw);
        std::uint64_t value = 0;
        const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec == std::errc() && end == text.data() + text.size())
            return value;
        // Allow counts written in scientific notation such as 1e5.
        const auto as_double = number(key);
        if (as_double && *as_double >= 0.0 && *as_double == std::floor(*as_double) && *as_double < 1.8e19)
            return static_cast<std::uint64_t>(*as_double);
        config_error("key '" + key + "': expected a non-negative integer, got '" + std::string(text) + "'");
    }

    void number_into(const std::string &key, double &target) const
    {
        if (auto v = number(key))
            target = *v;
    }

private:
    const Config &config_;
};

template <typename F>
auto guarded(const std::string &key, F &&make)
{
    try {
        return make();
    } catch (const Error &e) {
        if (e.kind() == ErrorKind::ConfigError)
            throw;
        config_error("key '" + key + "': " + e.what());
    }
}

} // namespace

const std::vector<std::string> &known_keys()
{
    static const std::vector<std::string> keys = {
        "scenario.preset",
        "beam.amplitude",
        "beam.sigma_m",
        "beam.wavelength_m",
        "beam.power_w",
        "setting.k_rad_per_m",
        "setting.phi_rad",
        "grid.span_sigma",
        "grid.n_points",
        "detector.quantum_efficiency",
        "detector.transmissivity",
        "detector.junk_offset",
        "detector.saturation_power_w",
        "sweep.k_min_rad_per_m",
        "sweep.k_max_rad_per_m",
        "sweep.k_points",
        "sweep.drive_min_v",
        "sweep.drive_max_v",
        "sweep.drive_points",
        "sweep.phase_per_volt",
        "sweep.phase_per_volt_uncertainty",
        "snr.noise_penalty_split",
        "snr.noise_penalty_homodyne",
        "snr.fraction_incident",
        "run.integration_time_s",
        "run.seed",
        "montecarlo.mc_samples",
        "montecarlo.mc_photons",
        "montecarlo.mc_runs",
    };
    return keys;
}

Config Config::parse(std::string_view text, std::string_view origin)
{
    Config config;
    std::string section;
    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find_first_of("#;");
        std::string_view body = trim(std::string_view(line).substr(0, hash));
        if (body.empty())
            continue;
        const std::string where = std::string(origin) + ":" + std::to_string(line_no);
        if (body.front() == '[') {
            if (body.back() != ']')
                config_error(where + ": malformed section header");
            section = std::string(trim(body.substr(1, body.size() - 2)));
            continue;
        }
        const auto eq = body.find('=');
        if (eq == std::string_view::npos)
            config_error(where + ": expected 'key = value'");
        std::string key(trim(body.substr(0, eq)));
        if (!section.empty() && key.find('.') == std::string::npos)
            key = section + "." + key;
        try {
            config.set(key, std::string(trim(body.substr(eq + 1))));
        } catch (const Error &e) {
            config_error(where + ": " + e.what());
        }
    }
    return config;
}

Config Config::load(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        config_error("cannot read config file '" + path.string() + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();

    if (path.extension() != ".json")
        return parse(buffer.str(), path.string());

    Config config;
    try {
        const auto manifest = nlohmann::json::parse(buffer.str());
        for (const auto &[key, value] : manifest.at("config").items())
            config.set(key, value.get<std::string>());
    } catch (const nlohmann::json::exception &e) {
        config_error("manifest '" + path.string() + "' is not a valid run manifest: " + e.what());
    }
    return config;
}

void Config::set(std::string_view assignment)
{
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos)
        config_error("override '" + std::string(assignment) + "' is not of the form key=value");
    set(std::string(assignment.substr(0, eq)), std::string(trim(assignment.substr(eq + 1))));
}

void Config::set(const std::string &key, std::string value)
{
    entries_[qualify(key)] = std::move(value);
}

std::optional<std::string> Config::get(const std::string &qualified_key) const
{
    const auto it = entries_.find(qualified_key);
    if (it == entries_.end())
        return std::nullopt;
    return it->second;
}

RunSettings resolve(const Config &config, std::optional<std::uint64_t> seed_override)
{
    const Reader read(config);

    const std::string preset = std::string(trim(config.get("scenario.preset").value_or("small")));
    ScenarioConfig scenario = [&] {
        if (preset == "small")
            return ScenarioConfig::small();
        if (preset == "large")
            return ScenarioConfig::large();
        config_error("key 'scenario.preset': expected 'small' or 'large', got '" + preset + "'");
    }();

    double amplitude = scenario.beam.amplitude();
    double sigma = scenario.beam.sigma();
    double wavelength = scenario.beam.wavelength();
    double power = scenario.beam.power();
    read.number_into("beam.amplitude", amplitude);
    read.number_into("beam.sigma_m", sigma);
    read.number_into("beam.wavelength_m", wavelength);
    read.number_into("beam.power_w", power);
    scenario.beam = guarded("beam", [&] { return GaussianBeam(amplitude, sigma, wavelength, power); });

    read.number_into("grid.span_sigma", scenario.grid_span_sigma);
    if (auto n = read.count("grid.n_points"))
        scenario.grid_points = *n;
    guarded("grid", [&] {
        if (!(scenario.grid_span_sigma > 0.0))
            throw Error(ErrorKind::InvalidGrid, "span must be positive");
        validate_grid(scenario.grid());
        return 0;
    });

    double qe = 1.0;
    double transmissivity = 1.0;
    double junk = 0.0;
    read.number_into("detector.quantum_efficiency", qe);
    read.number_into("detector.transmissivity", transmissivity);
    read.number_into("detector.junk_offset", junk);
    const std::optional<double> saturation = read.number("detector.saturation_power_w");
    scenario.detector = guarded("detector", [&] { return DetectorModel(qe, transmissivity, junk, saturation); });

    // Kick defaults scale with the beam radius: k sigma = 0.1 for single
    // runs and k sigma in [0.02, 0.3] for sweeps.
    const double k = read.number("setting.k_rad_per_m").value_or(0.1 / sigma);
    const double phi = read.number("setting.phi_rad").value_or(0.0);
    const InterferometerSetting setting =
        guarded("setting.phi_rad", [&] { return InterferometerSetting(k, phi); });

    scenario.k_range.min = read.number("sweep.k_min_rad_per_m").value_or(0.02 / sigma);
    scenario.k_range.max = read.number("sweep.k_max_rad_per_m").value_or(0.3 / sigma);
    if (auto n = read.count("sweep.k_points"))
        scenario.k_range.points = *n;
    read.number_into("sweep.drive_min_v", scenario.drive_range.min);
    read.number_into("sweep.drive_max_v", scenario.drive_range.max);
    if (auto n = read.count("sweep.drive_points"))
        scenario.drive_range.points = *n;

    SbcCalibration calibration;
    read.number_into("sweep.phase_per_volt", calibration.phase_per_volt);
    read.number_into("sweep.phase_per_volt_uncertainty", calibration.uncertainty);
    guarded("sweep.phase_per_volt", [&] {
        calibration.validate();
        return 0;
    });

    RunSettings settings{.scenario = scenario, .setting = setting, .calibration = calibration};
    // The small configuration is where the measured excess-noise factors
    // were reported.
    if (preset == "small") {
        settings.noise_penalty_split = 2.6;
        settings.noise_penalty_homodyne = 3.2;
    }
    read.number_into("snr.noise_penalty_split", settings.noise_penalty_split);
    read.number_into("snr.noise_penalty_homodyne", settings.noise_penalty_homodyne);
    read.number_into("snr.fraction_incident", settings.fraction_incident);
    guarded("snr.fraction_incident", [&] { return headroom_factor(settings.fraction_incident); });
    auto require_penalty = [](const std::string &key, double v) {
        if (!(v >= 1.0))
            config_error("key '" + key + "': noise penalty must be >= 1");
    };
    require_penalty("snr.noise_penalty_split", settings.noise_penalty_split);
    require_penalty("snr.noise_penalty_homodyne", settings.noise_penalty_homodyne);

    read.number_into("run.integration_time_s", settings.scenario.integration_time);
    settings.scenario.seed = read.count("run.seed").value_or(12345);
    if (seed_override)
        settings.scenario.seed = *seed_override;

    settings.scenario.mc_samples = read.count("montecarlo.mc_samples").value_or(0);
    settings.mc_photons = read.count("montecarlo.mc_photons").value_or(settings.mc_photons);
    settings.mc_runs = read.count("montecarlo.mc_runs").value_or(settings.mc_runs);
    if (settings.mc_photons == 0)
        config_error("key 'montecarlo.mc_photons': must be >= 1");
    if (settings.mc_runs == 0)
        config_error("key 'montecarlo.mc_runs': must be >= 1");

    guarded("sweep", [&] {
        settings.scenario.validate();
        return 0;
    });
    return settings;
}

std::vector<std::pair<std::string, std::string>> materialize(const RunSettings &s)
{
    const ScenarioConfig &c = s.scenario;
    std::vector<std::pair<std::string, std::string>> out = {
        {"scenario.preset", c.preset},
        {"beam.amplitude", format_number(c.beam.amplitude())},
        {"beam.sigma_m", format_number(c.beam.sigma())},
        {"beam.wavelength_m", format_number(c.beam.wavelength())},
        {"beam.power_w", format_number(c.beam.power())},
        {"setting.k_rad_per_m", format_number(s.setting.k())},
        {"setting.phi_rad", format_number(s.setting.phi())},
        {"grid.span_sigma", format_number(c.grid_span_sigma)},
        {"grid.n_points", std::to_string(c.grid_points)},
        {"detector.quantum_efficiency", format_number(c.detector.quantum_efficiency())},
        {"detector.transmissivity", format_number(c.detector.transmissivity())},
        {"detector.junk_offset", format_number(c.detector.junk_offset())},
        {"detector.saturation_power_w",
         c.detector.saturation_power() ? format_number(*c.detector.saturation_power()) : ""},
        {"sweep.k_min_rad_per_m", format_number(c.k_range.min)},
        {"sweep.k_max_rad_per_m", format_number(c.k_range.max)},
        {"sweep.k_points", std::to_string(c.k_range.points)},
        {"sweep.drive_min_v", format_number(c.drive_range.min)},
        {"sweep.drive_max_v", format_number(c.drive_range.max)},
        {"sweep.drive_points", std::to_string(c.drive_range.points)},
        {"sweep.phase_per_volt", format_number(s.calibration.phase_per_volt)},
        {"sweep.phase_per_volt_uncertainty", format_number(s.calibration.uncertainty)},
        {"snr.noise_penalty_split", format_number(s.noise_penalty_split)},
        {"snr.noise_penalty_homodyne", format_number(s.noise_penalty_homodyne)},
        {"snr.fraction_incident", format_number(s.fraction_incident)},
        {"run.integration_time_s", format_number(c.integration_time)},
        {"run.seed", std::to_string(c.seed)},
        {"montecarlo.mc_samples", std::to_string(c.mc_samples)},
        {"montecarlo.mc_photons", std::to_string(s.mc_photons)},
        {"montecarlo.mc_runs", std::to_string(s.mc_runs)},
    };
    return out;
}

} // namespace sagnac::cli
