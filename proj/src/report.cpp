#include "hcf/report.hpp"

#include <fstream>

#include "hcf/error.hpp"

namespace hcf {

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    return out;
}

void write_series(std::ostream& out, std::string_view name, std::span<const double> samples) {
    for (const auto& [value, prob] : empirical_cdf(samples))
        out << name << ',' << format_double(value) << ',' << format_double(prob) << '\n';
}

}  // namespace

nlohmann::json summary_json(const CampaignAggregate& a, const RunConfig& config) {
    const auto& layout = config.scenario.layout;
    double near = 0;
    for (int n : a.near_user_counts) near += n;
    nlohmann::json j;
    j["architecture"] = std::string(to_string(layout.architecture));
    j["inner_radius_m"] = layout.inner_radius_m;
    j["epochs"] = a.epochs;
    j["users"] = a.users;
    j["seed"] = config.seed;
    j["pooling"] = std::string(to_string(a.pooling));
    j["uplink"] = {{"mean_sum_se", a.mean_sum_ul},
                   {"mean_user_se", a.mean_ul},
                   {"median_user_se", a.median_ul},
                   {"five_percent_likely_se", a.five_percent_ul},
                   {"sum_se_p05", percentile(a.ul_sum_samples, 0.05)},
                   {"sum_se_p95", percentile(a.ul_sum_samples, 0.95)}};
    j["downlink"] = {{"mean_sum_se", a.mean_sum_dl},
                     {"mean_user_se", a.mean_dl},
                     {"median_user_se", a.median_dl},
                     {"five_percent_likely_se", a.five_percent_dl},
                     {"sum_se_p05", percentile(a.dl_sum_samples, 0.05)},
                     {"sum_se_p95", percentile(a.dl_sum_samples, 0.95)}};
    j["fronthaul"] = {{"mean_uplink_symbols", a.mean_fronthaul_ul},
                      {"mean_downlink_symbols", a.mean_fronthaul_dl},
                      {"mean_total_symbols", a.mean_fronthaul_total()}};
    j["mean_near_users"] = a.epochs ? near / static_cast<double>(a.epochs) : 0.0;
    if (config.oracle) j["max_oracle_deviation"] = a.max_oracle_deviation;
    return j;
}

nlohmann::json validation_json(const ValidationReport& r) {
    nlohmann::json j;
    j["draws"] = r.draws;
    j["tolerance"] = r.tolerance;
    j["term_tolerance"] = r.term_tolerance;
    j["passed"] = r.passed();
    j["terms_passed"] = r.terms_passed();
    auto& checks = j["checks"] = nlohmann::json::array();
    for (const auto& c : r.checks) {
        nlohmann::json terms = nlohmann::json::object();
        const auto labels = term_labels(c.kind);
        for (std::size_t t = 0; t < labels.size(); ++t)
            terms[std::string(labels[t])] = {{"target", c.target_power(t)},
                                             {"empirical", c.empirical_power(t)},
                                             {"ratio", c.term_ratio(t)},
                                             {"z_score", c.term_z(t)}};
        checks.push_back({{"layout", c.epoch},
                          {"user", c.user},
                          {"link", std::string(to_string(c.kind))},
                          {"closed_form_sinr", c.closed_form},
                          {"empirical_sinr", c.empirical},
                          {"ratio", c.ratio},
                          {"max_correlation", c.max_correlation},
                          {"reconstruction_error", c.reconstruction_error},
                          {"terms", terms}});
    }
    return j;
}

void write_se_samples_csv(std::ostream& out, const CampaignAggregate& a) {
    out << "epoch,user,direction,se\n";
    const auto users = static_cast<std::size_t>(a.users);
    for (std::size_t e = 0; e < a.epochs; ++e)
        for (std::size_t k = 0; k < users; ++k) out << e << ',' << k << ",ul," << format_double(a.ul_samples[e * users + k]) << '\n';
    for (std::size_t e = 0; e < a.epochs; ++e)
        for (std::size_t k = 0; k < users; ++k) out << e << ',' << k << ",dl," << format_double(a.dl_samples[e * users + k]) << '\n';
}

void write_cdf_csv(std::ostream& out, const CampaignAggregate& a) {
    out << "series,value,cumulative_probability\n";
    write_series(out, "ul_user", a.ul_samples);
    write_series(out, "dl_user", a.dl_samples);
    write_series(out, "ul_sum", a.ul_sum_samples);
    write_series(out, "dl_sum", a.dl_sum_samples);
}

nlohmann::json manifest_json(const RunManifest& m) {
    nlohmann::json j;
    j["version"] = kVersionTag;
    j["command"] = m.command;
    j["seed"] = m.config.seed;
    j["wall_seconds"] = m.wall_seconds;
    auto& cfg = j["config"] = nlohmann::json::object();
    for (const auto& [k, v] : to_key_values(m.config)) cfg[k] = v;
    return j;
}

void write_manifest(const std::filesystem::path& dir, const RunManifest& manifest) {
    std::filesystem::create_directories(dir);
    open_output(dir / "manifest.json") << manifest_json(manifest).dump(2) << '\n';
    open_output(dir / "config.txt") << "# " << kVersionTag << " " << manifest.command << '\n'
                                    << to_config_text(manifest.config);
}

void write_campaign(const std::filesystem::path& dir, const CampaignAggregate& aggregate, const RunConfig& config) {
    std::filesystem::create_directories(dir);
    open_output(dir / "summary.json") << summary_json(aggregate, config).dump(2) << '\n';
    auto samples = open_output(dir / "se_samples.csv");
    write_se_samples_csv(samples, aggregate);
    auto cdf = open_output(dir / "cdf.csv");
    write_cdf_csv(cdf, aggregate);
}

}  // namespace hcf
