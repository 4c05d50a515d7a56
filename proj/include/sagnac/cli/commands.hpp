#ifndef SAGNAC_CLI_COMMANDS_HPP
#define SAGNAC_CLI_COMMANDS_HPP

#include <sagnac/error.hpp>

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace sagnac::cli
{

inline constexpr const char *kToolVersion = "0.1.0";

struct CommandOptions
{
    std::string command;  // darkport | sweep-k | snr | montecarlo
    std::filesystem::path config_path;
    std::vector<std::string> overrides;  // key=value
    std::filesystem::path out_dir;
    std::optional<std::uint64_t> seed;
    unsigned threads = 1;
};

struct CommandResult
{
    std::vector<std::filesystem::path> outputs;  // data files, plot (if any), manifest
    nlohmann::json manifest;
};

const std::vector<std::string> &command_names();

// Resolves the configuration, runs the command and writes its CSV, SVG plot
// and `<command>.manifest.json` into out_dir. Plot failures are recorded in
// the manifest and never raise. Throws Error for everything else.
CommandResult run_command(const CommandOptions &options);

// Process exit status for a failure category (0 is reserved for success).
int exit_code(ErrorKind kind);

// Hardware concurrency, capped by SAGNAC_AMP_THREADS when set.
unsigned threads_from_environment();

} // namespace sagnac::cli

#endif
