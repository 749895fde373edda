#ifndef HCF_CONFIG_HPP
#define HCF_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hcf/montecarlo.hpp"
#include "hcf/scenario.hpp"

namespace hcf {

/// Every resolved run parameter. A config file is flat `key = value` text
/// using the keys listed by `config_keys()`; `#` starts a comment.
struct RunConfig {
    Scenario scenario = default_scenario(Architecture::Hierarchical);
    bool cbs_antennas_set = false;  ///< N_b given explicitly; otherwise M / 2 for HCF, 0 for CF/UC

    std::size_t epochs = 10000;
    std::uint64_t seed = 1;
    int threads = 0;
    Pooling pooling = Pooling::Pooled;
    bool oracle = false;
    std::size_t oracle_draws = 10000;

    // validate
    std::size_t draws = 100000;
    double tolerance = 0.05;
    double term_tolerance = 0.02;
    int layouts = 1;

    /// Applies architecture-dependent defaults and checks the scenario.
    void resolve();
    SimulationPlan plan() const;
};

using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// Recognized keys, in the order they are written to manifests.
const std::vector<std::string_view>& config_keys();

KeyValues parse_key_values(std::istream& in);
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);
void apply_settings(RunConfig& config, const KeyValues& settings);
void load_config_file(RunConfig& config, const std::filesystem::path& path);

/// Resolved configuration as key/value pairs; round-trips through
/// apply_settings bit-exactly.
KeyValues to_key_values(const RunConfig& config);
std::string to_config_text(const RunConfig& config);

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double value);

}  // namespace hcf

#endif  // HCF_CONFIG_HPP
