#include <doctest.h>

#include <sagnac/cli/commands.hpp>
#include <sagnac/cli/config.hpp>
#include <sagnac/cli/csv.hpp>
#include <sagnac/cli/svg_plot.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

using namespace sagnac;
using namespace sagnac::cli;
namespace fs = std::filesystem;

namespace
{

std::string read_file(const fs::path &p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> lines(const std::string &text)
{
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);)
        out.push_back(line);
    return out;
}

std::vector<std::string> fields(const std::string &line)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

// Fresh scratch directory holding a config file.
struct Workspace
{
    fs::path dir;
    fs::path config;

    explicit Workspace(const std::string &name, const std::string &text = "[scenario]\npreset = small\n")
        : dir(fs::temp_directory_path() / ("sagnac_test_" + name)), config(dir / "run.cfg")
    {
        fs::remove_all(dir);
        fs::create_directories(dir);
        std::ofstream(config) << text;
    }
    ~Workspace() { fs::remove_all(dir); }

    CommandResult run(const std::string &command, std::vector<std::string> overrides = {},
                      const std::string &out = "out", unsigned threads = 1) const
    {
        CommandOptions o;
        o.command = command;
        o.config_path = config;
        o.overrides = std::move(overrides);
        o.out_dir = dir / out;
        o.threads = threads;
        return run_command(o);
    }
};

ErrorKind kind_of(auto &&f)
{
    try {
        f();
    } catch (const Error &e) {
        return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::InvalidArgument;
}

} // namespace

TEST_CASE("config parsing")
{
    const Config c = Config::parse("# comment\n[beam]\nsigma_m = 1e-3 ; trailing\n\n[setting]\nphi_rad=0.01\n");
    CHECK(c.get("beam.sigma_m") == "1e-3");
    CHECK(c.get("setting.phi_rad") == "0.01");
    CHECK_FALSE(c.get("beam.power_w"));

    const RunSettings s = resolve(c);
    CHECK(s.scenario.beam.sigma() == 1e-3);
    CHECK(s.setting.phi() == 0.01);
    CHECK(s.setting.k() == doctest::Approx(0.1 / 1e-3));
    CHECK(s.scenario.seed == 12345);
    CHECK(s.scenario.mc_samples == 0);

    SUBCASE("errors name the offending key")
    {
        try {
            Config::parse("[beam]\nwaist = 3\n");
            FAIL("expected an error");
        } catch (const Error &e) {
            CHECK(e.kind() == ErrorKind::ConfigError);
            CHECK(std::string(e.what()).find("beam.waist") != std::string::npos);
        }
        try {
            resolve(Config::parse("[beam]\nsigma_m = wide\n"));
            FAIL("expected an error");
        } catch (const Error &e) {
            CHECK(e.kind() == ErrorKind::ConfigError);
            CHECK(std::string(e.what()).find("beam.sigma_m") != std::string::npos);
        }
        try {
            resolve(Config::parse("[grid]\nn_points = 4096\n"));
            FAIL("expected an error");
        } catch (const Error &e) {
            CHECK(e.kind() == ErrorKind::ConfigError);
        }
        CHECK(kind_of([] { Config::parse("no equals sign\n"); }) == ErrorKind::ConfigError);
        CHECK(kind_of([] { resolve(Config::parse("[scenario]\npreset = huge\n")); }) == ErrorKind::ConfigError);
        CHECK(kind_of([] { Config::load("/nonexistent/sagnac.cfg"); }) == ErrorKind::ConfigError);
    }

    SUBCASE("overrides")
    {
        Config o = c;
        o.set("sigma_m=2e-3");
        o.set("setting.phi_rad=-0.02");
        CHECK(o.get("beam.sigma_m") == "2e-3");
        CHECK(o.get("setting.phi_rad") == "-0.02");
        CHECK(kind_of([&] { o.set("nonsense=1"); }) == ErrorKind::ConfigError);
        CHECK(kind_of([&] { o.set("missing_equals"); }) == ErrorKind::ConfigError);
    }

    SUBCASE("seed override and materialised round trip")
    {
        const RunSettings seeded = resolve(c, 7);
        CHECK(seeded.scenario.seed == 7);
        Config again;
        for (const auto &[k, v] : materialize(seeded))
            again.set(k, v);
        const RunSettings back = resolve(again);
        CHECK(back.scenario.beam.sigma() == seeded.scenario.beam.sigma());
        CHECK(back.setting.k() == seeded.setting.k());
        CHECK(back.scenario.seed == 7);
        CHECK(back.noise_penalty_split == seeded.noise_penalty_split);
    }

    SUBCASE("every known key is qualified")
    {
        for (const std::string &k : known_keys())
            CHECK(k.find('.') != std::string::npos);
    }
}

TEST_CASE("CSV formatting")
{
    CHECK(format_value(1.0) == "1.000000000000000e+00");
    CHECK(format_value(-4.529925248429172e-3) == "-4.529925248429172e-03");
    CHECK(format_value(std::optional<double>{}) == "");
    CHECK(std::stod(format_value(0.1 + 0.2)) == doctest::Approx(0.30000000000000004).epsilon(1e-15));

    CsvTable t({"a", "b"});
    t.add_row({"1", "x,y"});
    t.add_row({"2", "say \"hi\""});
    CHECK(t.rows() == 2);
    CHECK(t.render() == "a,b\n1,\"x,y\"\n2,\"say \"\"hi\"\"\"\n");
    CHECK_THROWS_AS(t.add_row({"only one"}), Error);

    CHECK(kind_of([] { write_text_atomic("/nonexistent/dir/file.csv", "x"); }) == ErrorKind::IoError);
}

TEST_CASE("SVG plot")
{
    SvgPlot plot("title & <more>", "x", "y");
    plot.add({.label = "series", .x = {0.0, 1.0, NAN, 2.0}, .y = {0.0, 1.0, 3.0, 4.0}});
    const std::string svg = plot.render();
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("title &amp; &lt;more&gt;") != std::string::npos);
    CHECK(svg.find("nan") == std::string::npos);
}

TEST_CASE("darkport command")
{
    const Workspace ws("darkport");
    const CommandResult r = ws.run("darkport", {"setting.phi_rad=440e-6"});
    const auto rows = lines(read_file(ws.dir / "out" / "darkport.csv"));
    REQUIRE(rows.size() == 4098);
    CHECK(rows[0] == "x_m,intensity,intensity_approx,input_intensity");
    CHECK(fs::exists(ws.dir / "out" / "darkport.svg"));
    CHECK(fs::exists(ws.dir / "out" / "darkport.manifest.json"));
    CHECK(r.manifest["plot"] == "ok");
    CHECK(r.manifest["command"] == "darkport");
    CHECK(r.manifest["summary"]["postselection_probability"].get<double>() ==
          doctest::Approx(0.01).epsilon(1e-6));
    CHECK(r.manifest["summary"]["node_m"].get<double>() == doctest::Approx(std::tan(220e-6) / (0.1 / 775e-6)));

    // Centre row sits exactly on x = 0 and every value has 16 significant digits.
    const auto centre = fields(rows[1 + 2048]);
    CHECK(centre[0] == "0.000000000000000e+00");
    for (const std::string &f : centre)
        CHECK(f.size() >= 21);

    SUBCASE("k = 0 leaves the first-order column empty")
    {
        ws.run("darkport", {"setting.k_rad_per_m=0"}, "k0");
        const auto k0 = lines(read_file(ws.dir / "k0" / "darkport.csv"));
        REQUIRE(k0.size() == 4098);
        CHECK(fields(k0[10])[2].empty());
        CHECK_FALSE(fields(k0[10])[3].empty());
    }
}

TEST_CASE("sweep-k command")
{
    const Workspace ws("sweepk");

    SUBCASE("two points give two rows, no Monte Carlo columns by default")
    {
        ws.run("sweep-k", {"sweep.k_points=2", "setting.phi_rad=440e-6"});
        const auto rows = lines(read_file(ws.dir / "out" / "sweep_k.csv"));
        REQUIRE(rows.size() == 3);
        CHECK(rows[0] == "k_rad_per_m,x_mean_analytic_m,x_mean_numeric_m,split_signal,n_detected,snr");
    }

    SUBCASE("Monte Carlo columns appear on request")
    {
        ws.run("sweep-k", {"sweep.k_points=3", "mc_samples=1000", "setting.phi_rad=0.01"});
        const auto rows = lines(read_file(ws.dir / "out" / "sweep_k.csv"));
        REQUIRE(rows.size() == 4);
        CHECK(fields(rows[0]).size() == 8);
        CHECK(fields(rows[0]).back() == "mc_std_error");
    }

    SUBCASE("k = 0 in the range leaves the analytic column empty")
    {
        ws.run("sweep-k", {"sweep.k_min_rad_per_m=0", "sweep.k_points=3", "setting.phi_rad=0.01"});
        const auto rows = lines(read_file(ws.dir / "out" / "sweep_k.csv"));
        REQUIRE(rows.size() == 4);
        CHECK(fields(rows[1])[1].empty());
        CHECK_FALSE(fields(rows[2])[1].empty());
    }
}

TEST_CASE("snr command")
{
    const Workspace ws("snr");
    const CommandResult r = ws.run("snr");
    const auto rows = lines(read_file(ws.dir / "out" / "snr.csv"));
    REQUIRE(rows.size() == 1 + 2 * 21);
    CHECK(fields(rows[1])[2] == "split");
    CHECK(fields(rows[22])[2] == "homodyne");
    const auto &summary = r.manifest["summary"];
    CHECK(summary["slope_ratio_split_to_homodyne"].get<double>() ==
          doctest::Approx(std::sqrt(2.0 / 3.141592653589793)).epsilon(1e-6));
    CHECK(summary["headroom_factor"].get<double>() == doctest::Approx(2.581988897471611));
    // Small preset default penalties.
    CHECK(summary["slope_split_effective_per_v"].get<double>() ==
          doctest::Approx(summary["slope_split_ideal_per_v"].get<double>() / 2.6));
    CHECK(summary["slope_homodyne_effective_per_v"].get<double>() ==
          doctest::Approx(summary["slope_homodyne_ideal_per_v"].get<double>() / 3.2));
}

TEST_CASE("montecarlo command")
{
    const Workspace ws("mc");

    SUBCASE("single photon runs")
    {
        ws.run("montecarlo", {"mc_photons=1", "mc_runs=3", "setting.phi_rad=440e-6"});
        const auto rows = lines(read_file(ws.dir / "out" / "montecarlo.csv"));
        REQUIRE(rows.size() == 4);
        for (std::size_t i = 1; i < rows.size(); ++i)
            CHECK(fields(rows[i])[3] == "1.000000000000000e+00");
    }

    SUBCASE("summary statistics")
    {
        const CommandResult r = ws.run("montecarlo", {"mc_photons=20000", "mc_runs=20", "setting.phi_rad=0.01"});
        const auto &summary = r.manifest["summary"];
        CHECK(summary["runs"] == 20);
        CHECK(summary["within_3_std_error"].get<int>() >= 18);
    }
}

TEST_CASE("determinism and manifest replay")
{
    const Workspace ws("determinism");
    const std::vector<std::string> set{"sweep.k_points=4", "mc_samples=5000", "setting.phi_rad=440e-6"};
    ws.run("sweep-k", set, "a", 1);
    const CommandResult b = ws.run("sweep-k", set, "b", 4);
    const std::string first = read_file(ws.dir / "a" / "sweep_k.csv");
    CHECK(first == read_file(ws.dir / "b" / "sweep_k.csv"));

    // A manifest is itself a valid config and reproduces the data.
    CommandOptions replay;
    replay.command = "sweep-k";
    replay.config_path = ws.dir / "b" / "sweep_k.manifest.json";
    replay.out_dir = ws.dir / "c";
    run_command(replay);
    CHECK(first == read_file(ws.dir / "c" / "sweep_k.csv"));

    CommandOptions other_seed = replay;
    other_seed.seed = 1;
    other_seed.out_dir = ws.dir / "d";
    run_command(other_seed);
    CHECK(first != read_file(ws.dir / "d" / "sweep_k.csv"));
}

TEST_CASE("exit codes")
{
    CHECK(exit_code(ErrorKind::ConfigError) == 2);
    CHECK(exit_code(ErrorKind::IoError) == 3);
    CHECK(exit_code(ErrorKind::ZeroPower) == 4);

    const Workspace ws("exit");
    CommandOptions o;
    o.command = "darkport";
    o.config_path = ws.dir / "missing.cfg";
    o.out_dir = ws.dir / "out";
    CHECK(kind_of([&] { run_command(o); }) == ErrorKind::ConfigError);

#ifdef SAGNAC_AMP_PATH
    const std::string cmd = std::string(SAGNAC_AMP_PATH) + " darkport --config " + (ws.dir / "missing.cfg").string() +
                            " --out " + (ws.dir / "out").string() + " 2> " + (ws.dir / "err.txt").string();
    const int status = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(status) == 2);
    CHECK(read_file(ws.dir / "err.txt").find("error: ConfigError") != std::string::npos);
#endif
}
