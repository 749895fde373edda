#include "hcf/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

#include "hcf/error.hpp"

namespace hcf {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
    T value{};
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end)
        throw ConfigError("invalid value '" + std::string(text) + "' for key '" + std::string(key) + "'");
    return value;
}

bool parse_bool(std::string_view key, std::string_view text) {
    if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
    if (text == "false" || text == "0" || text == "no" || text == "off") return false;
    throw ConfigError("invalid boolean '" + std::string(text) + "' for key '" + std::string(key) + "'");
}

ClassificationMode parse_classification(std::string_view text) {
    if (text == "radius") return ClassificationMode::Radius;
    if (text == "cbs-threshold" || text == "threshold") return ClassificationMode::CbsThreshold;
    throw ConfigError("unknown classification '" + std::string(text) + "' (expected radius or cbs-threshold)");
}

}  // namespace

std::string format_double(double value) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), ptr);
}

const std::vector<std::string_view>& config_keys() {
    static const std::vector<std::string_view> keys{
        "arch",           "total_antennas",  "users",          "cbs_antennas",       "outer_radius_m",
        "inner_radius_m", "ap_placement",    "carrier_mhz",    "ap_height_m",        "ue_height_m",
        "d0_km",          "d1_km",           "shadowing_db",   "noise_density_dbm_hz", "noise_figure_db",
        "bandwidth_hz",   "ue_power_w",      "antenna_power_w", "classification",    "cbs_threshold",
        "epochs",         "seed",            "threads",        "pooling",            "oracle",
        "oracle_draws",   "draws",           "tolerance",      "term_tolerance",     "layouts"};
    return keys;
}

void RunConfig::resolve() {
    auto& layout = scenario.layout;
    if (!cbs_antennas_set) layout.cbs_antennas = layout.has_cbs() ? layout.total_antennas / 2 : 0;
    scenario.validate();
    if (epochs < 1) throw ConfigError("epochs must be at least 1");
    if (draws < 1) throw ConfigError("draws must be at least 1");
    if (layouts < 1) throw ConfigError("layouts must be at least 1");
    if (tolerance < 0.0 || term_tolerance < 0.0) throw ConfigError("tolerances must be non-negative");
}

SimulationPlan RunConfig::plan() const {
    SimulationPlan p;
    p.scenario = scenario;
    p.epochs = epochs;
    p.master_seed = seed;
    p.threads = threads;
    p.pooling = pooling;
    p.oracle_enabled = oracle;
    p.oracle_draws = oracle_draws;
    return p;
}

KeyValues parse_key_values(std::istream& in) {
    KeyValues out;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        std::string_view view(line);
        if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
        view = trim(view);
        if (view.empty()) continue;
        const auto eq = view.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("config line " + std::to_string(number) + ": expected key = value");
        const auto key = trim(view.substr(0, eq));
        const auto value = trim(view.substr(eq + 1));
        if (key.empty()) throw ConfigError("config line " + std::to_string(number) + ": empty key");
        out.emplace_back(std::string(key), std::string(value));
    }
    return out;
}

void apply_setting(RunConfig& c, std::string_view key, std::string_view value) {
    auto& s = c.scenario;
    auto& l = s.layout;
    if (key == "arch") l.architecture = parse_architecture(value);
    else if (key == "total_antennas") l.total_antennas = parse_number<int>(key, value);
    else if (key == "users") l.users = parse_number<int>(key, value);
    else if (key == "cbs_antennas") {
        l.cbs_antennas = parse_number<int>(key, value);
        c.cbs_antennas_set = true;
    }
    else if (key == "outer_radius_m") l.outer_radius_m = parse_number<double>(key, value);
    else if (key == "inner_radius_m") l.inner_radius_m = parse_number<double>(key, value);
    else if (key == "ap_placement") l.ap_placement = parse_placement(value);
    else if (key == "carrier_mhz") s.path_loss.carrier_mhz = parse_number<double>(key, value);
    else if (key == "ap_height_m") s.path_loss.ap_height_m = parse_number<double>(key, value);
    else if (key == "ue_height_m") s.path_loss.ue_height_m = parse_number<double>(key, value);
    else if (key == "d0_km") s.path_loss.d0_km = parse_number<double>(key, value);
    else if (key == "d1_km") s.path_loss.d1_km = parse_number<double>(key, value);
    else if (key == "shadowing_db") s.shadowing.sigma_db = parse_number<double>(key, value);
    else if (key == "noise_density_dbm_hz") s.noise.density_dbm_hz = parse_number<double>(key, value);
    else if (key == "noise_figure_db") s.noise.noise_figure_db = parse_number<double>(key, value);
    else if (key == "bandwidth_hz") s.noise.bandwidth_hz = parse_number<double>(key, value);
    else if (key == "ue_power_w") s.ue_power_w = parse_number<double>(key, value);
    else if (key == "antenna_power_w") s.antenna_power_w = parse_number<double>(key, value);
    else if (key == "classification") s.classification = parse_classification(value);
    else if (key == "cbs_threshold") s.cbs_threshold = parse_number<double>(key, value);
    else if (key == "epochs") c.epochs = parse_number<std::size_t>(key, value);
    else if (key == "seed") c.seed = parse_number<std::uint64_t>(key, value);
    else if (key == "threads") c.threads = parse_number<int>(key, value);
    else if (key == "pooling") c.pooling = parse_pooling(value);
    else if (key == "oracle") c.oracle = parse_bool(key, value);
    else if (key == "oracle_draws") c.oracle_draws = parse_number<std::size_t>(key, value);
    else if (key == "draws") c.draws = parse_number<std::size_t>(key, value);
    else if (key == "tolerance") c.tolerance = parse_number<double>(key, value);
    else if (key == "term_tolerance") c.term_tolerance = parse_number<double>(key, value);
    else if (key == "layouts") c.layouts = parse_number<int>(key, value);
    else throw ConfigError("unknown config key '" + std::string(key) + "'");
}

void apply_settings(RunConfig& config, const KeyValues& settings) {
    for (const auto& [k, v] : settings) apply_setting(config, k, v);
}

void load_config_file(RunConfig& config, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
    apply_settings(config, parse_key_values(in));
}

KeyValues to_key_values(const RunConfig& c) {
    const auto& s = c.scenario;
    const auto& l = s.layout;
    const auto d = [](double v) { return format_double(v); };
    return {
        {"arch", std::string(to_string(l.architecture))},
        {"total_antennas", std::to_string(l.total_antennas)},
        {"users", std::to_string(l.users)},
        {"cbs_antennas", std::to_string(l.cbs_antennas)},
        {"outer_radius_m", d(l.outer_radius_m)},
        {"inner_radius_m", d(l.inner_radius_m)},
        {"ap_placement", std::string(to_string(l.ap_placement))},
        {"carrier_mhz", d(s.path_loss.carrier_mhz)},
        {"ap_height_m", d(s.path_loss.ap_height_m)},
        {"ue_height_m", d(s.path_loss.ue_height_m)},
        {"d0_km", d(s.path_loss.d0_km)},
        {"d1_km", d(s.path_loss.d1_km)},
        {"shadowing_db", d(s.shadowing.sigma_db)},
        {"noise_density_dbm_hz", d(s.noise.density_dbm_hz)},
        {"noise_figure_db", d(s.noise.noise_figure_db)},
        {"bandwidth_hz", d(s.noise.bandwidth_hz)},
        {"ue_power_w", d(s.ue_power_w)},
        {"antenna_power_w", d(s.antenna_power_w)},
        {"classification", s.classification == ClassificationMode::Radius ? "radius" : "cbs-threshold"},
        {"cbs_threshold", d(s.cbs_threshold)},
        {"epochs", std::to_string(c.epochs)},
        {"seed", std::to_string(c.seed)},
        {"threads", std::to_string(c.threads)},
        {"pooling", std::string(to_string(c.pooling))},
        {"oracle", c.oracle ? "true" : "false"},
        {"oracle_draws", std::to_string(c.oracle_draws)},
        {"draws", std::to_string(c.draws)},
        {"tolerance", d(c.tolerance)},
        {"term_tolerance", d(c.term_tolerance)},
        {"layouts", std::to_string(c.layouts)},
    };
}

std::string to_config_text(const RunConfig& config) {
    std::ostringstream out;
    for (const auto& [k, v] : to_key_values(config)) out << k << " = " << v << '\n';
    return out.str();
}

}  // namespace hcf
