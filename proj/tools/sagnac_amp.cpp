#include <sagnac/cli/commands.hpp>

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char **argv)
{
    using namespace sagnac;

    CLI::App app{"Phase amplification in a misaligned Sagnac interferometer", "sagnac-amp"};
    app.set_version_flag("--version", cli::kToolVersion);

    cli::CommandOptions options;
    std::uint64_t seed = 0;
    app.add_option("command", options.command, "darkport | sweep-k | snr | montecarlo")
        ->required()
        ->check(CLI::IsMember(cli::command_names()));
    app.add_option("--config", options.config_path, "scenario config file (key = value)")->required();
    app.add_option("--set", options.overrides, "override a config key, key=value")->allow_extra_args(false);
    app.add_option("--out", options.out_dir, "output directory")->required();
    auto *seed_opt = app.add_option("--seed", seed, "base RNG seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e);
    }
    if (seed_opt->count() > 0)
        options.seed = seed;
    options.threads = cli::threads_from_environment();

    try {
        const cli::CommandResult result = cli::run_command(options);
        for (const auto &path : result.outputs)
            std::cout << path.string() << '\n';
        return 0;
    } catch (const Error &e) {
        std::cerr << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
        return cli::exit_code(e.kind());
    } catch (const std::exception &e) {
        std::cerr << "error: Internal: " << e.what() << '\n';
        return 5;
    }
}
