#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hcf/cli.hpp"
#include "hcf/config.hpp"
#include "hcf/error.hpp"

using namespace hcf;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int status;
    std::string out, err;
};

Outcome run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "hcf_sim");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int status = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {status, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("hcf_cli_test_" + name);
    fs::remove_all(dir);
    return dir;
}

}  // namespace

TEST_CASE("key-value parsing") {
    std::istringstream in("# comment\n users = 8 \n\narch=cf # trailing\n");
    const auto kv = parse_key_values(in);
    REQUIRE(kv.size() == 2);
    CHECK(kv[0] == std::pair<std::string, std::string>{"users", "8"});
    CHECK(kv[1].second == "cf");

    std::istringstream bad("users 8\n");
    CHECK_THROWS_AS(parse_key_values(bad), ConfigError);

    RunConfig c;
    CHECK_THROWS_AS(apply_setting(c, "colour", "blue"), ConfigError);
    CHECK_THROWS_AS(apply_setting(c, "users", "many"), ConfigError);
}

TEST_CASE("resolved configs round-trip exactly") {
    RunConfig c;
    apply_setting(c, "arch", "uc");
    apply_setting(c, "shadowing_db", "7.3");
    apply_setting(c, "ue_power_w", "0.123456789012345");
    apply_setting(c, "seed", "18446744073709551615");
    c.resolve();
    CHECK(c.scenario.layout.cbs_antennas == 0);
    std::istringstream in(to_config_text(c));
    RunConfig d;
    apply_settings(d, parse_key_values(in));
    d.resolve();
    CHECK(to_key_values(c) == to_key_values(d));
    CHECK(d.scenario.ue_power_w == c.scenario.ue_power_w);
    CHECK(d.seed == 18446744073709551615ULL);
    CHECK(to_key_values(c).size() == config_keys().size());
    CHECK(format_double(0.1) == "0.1");
}

TEST_CASE("defaults follow the architecture") {
    RunConfig c;
    c.resolve();
    CHECK(c.scenario.layout.cbs_antennas == 128);
    CHECK(c.scenario.layout.total_antennas == 256);
    CHECK(c.scenario.layout.users == 16);
    CHECK(c.scenario.layout.inner_radius_m == 500);
    CHECK(c.scenario.antenna_power_w == 0.2);
    CHECK(c.scenario.ue_power_w == 0.1);
    RunConfig bad;
    apply_setting(bad, "cbs_antennas", "300");
    CHECK_THROWS_AS(bad.resolve(), ConfigError);
}

TEST_CASE("simulate writes reproducible outputs") {
    const auto dir = scratch("simulate");
    auto r = run_cli({"simulate", "--arch", "hcf", "--inner-radius", "250", "--epochs", "30", "--seed", "42", "--out",
                      dir.string()});
    REQUIRE(r.status == cli::kExitOk);
    for (const char* f : {"summary.json", "se_samples.csv", "cdf.csv", "manifest.json", "config.txt"})
        CHECK(fs::exists(dir / f));

    const auto summary = nlohmann::json::parse(slurp(dir / "summary.json"));
    CHECK(summary["uplink"].contains("mean_sum_se"));
    CHECK(summary["epochs"] == 30);
    const auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
    CHECK(manifest["config"]["seed"] == "42");
    CHECK(manifest["config"]["inner_radius_m"] == "250");
    CHECK(manifest.contains("version"));
    CHECK(manifest.contains("wall_seconds"));

    const auto header = slurp(dir / "se_samples.csv").substr(0, 24);
    CHECK(header == "epoch,user,direction,se\n");
    CHECK(slurp(dir / "cdf.csv").rfind("series,value,cumulative_probability\n", 0) == 0);

    const auto again = scratch("simulate_again");
    r = run_cli({"simulate", "--config", (dir / "config.txt").string(), "--out", again.string()});
    REQUIRE(r.status == cli::kExitOk);
    for (const char* f : {"summary.json", "se_samples.csv", "cdf.csv"}) CHECK(slurp(dir / f) == slurp(again / f));
    // the first line of config.txt records the invoking command
    const auto body = [](const std::string& text) { return text.substr(text.find('\n')); };
    CHECK(body(slurp(dir / "config.txt")) == body(slurp(again / "config.txt")));
}

TEST_CASE("flags override the config file") {
    const auto dir = scratch("override");
    fs::create_directories(dir);
    std::ofstream(dir / "in.txt") << "arch = cf\nepochs = 3\nusers = 4\ntotal_antennas = 32\n";
    const auto r = run_cli({"simulate", "--config", (dir / "in.txt").string(), "--users", "2", "--out", dir.string()});
    REQUIRE(r.status == cli::kExitOk);
    const auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
    CHECK(manifest["config"]["users"] == "2");
    CHECK(manifest["config"]["arch"] == "cf");
    CHECK(manifest["config"]["epochs"] == "3");
}

TEST_CASE("usage errors") {
    CHECK(run_cli({"simulate", "--bogus"}).status == cli::kExitUsage);
    CHECK(run_cli({}).status == cli::kExitUsage);
    CHECK(run_cli({"simulate", "--config", "/nonexistent/file.txt"}).status == cli::kExitUsage);
    const auto r = run_cli({"simulate", "--arch", "hcf", "--inner-radius", "2000", "--epochs", "1",
                            "--out", scratch("bad").string()});
    CHECK(r.status == cli::kExitUsage);
    CHECK_FALSE(r.err.empty());
    CHECK(run_cli({"simulate", "--set", "nokey=1"}).status == cli::kExitUsage);
}

TEST_CASE("validate reports per formula and fails at zero tolerance") {
    const auto dir = scratch("validate");
    auto r = run_cli({"validate", "--users", "3", "--antennas", "24", "--cbs-antennas", "12", "--draws", "4000",
                      "--tolerance", "0", "--seed", "3", "--out", dir.string()});
    CHECK(r.status == cli::kExitValidationFailed);
    CHECK(r.out.find("FAIL") != std::string::npos);
    CHECK(fs::exists(dir / "validation.json"));
    r = run_cli({"validate", "--users", "3", "--antennas", "24", "--cbs-antennas", "12", "--draws", "4000",
                 "--tolerance", "0.5", "--seed", "3"});
    CHECK(r.status == cli::kExitOk);
    CHECK(r.out.find("PASS") != std::string::npos);
}

TEST_CASE("compare emits one row per architecture and radius") {
    const auto dir = scratch("compare");
    const auto r = run_cli({"compare", "--epochs", "4", "--seed", "42", "--out", dir.string()});
    REQUIRE(r.status == cli::kExitOk);
    const auto rows = nlohmann::json::parse(slurp(dir / "compare.json"));
    REQUIRE(rows.size() == 5);
    CHECK(rows[0]["architecture"] == "cf");
    CHECK(rows[1]["architecture"] == "uc");
    CHECK(rows[2]["inner_radius_m"] == 100.0);
    CHECK(rows[4]["inner_radius_m"] == 500.0);
    CHECK(rows[0]["fronthaul_ratio_to_cf"] == 1.0);
}

TEST_CASE("output directory from the environment") {
    const auto dir = scratch("env");
    ::setenv(cli::kOutputDirEnv, dir.string().c_str(), 1);
    const auto r = run_cli({"simulate", "--arch", "cf", "--epochs", "2", "--users", "2", "--antennas", "8"});
    ::unsetenv(cli::kOutputDirEnv);
    CHECK(r.status == cli::kExitOk);
    CHECK(fs::exists(dir / "summary.json"));
}
