#ifndef HCF_REPORT_HPP
#define HCF_REPORT_HPP

#include <filesystem>
#include <ostream>
#include <string>

#include <json.hpp>

#include "hcf/config.hpp"
#include "hcf/linklevel.hpp"
#include "hcf/montecarlo.hpp"

// Output schemas
//
//   se_samples.csv  epoch,user,direction,se        direction in {ul, dl}
//   cdf.csv         series,value,cumulative_probability
//                   series in {ul_user, dl_user, ul_sum, dl_sum}
//   summary.json    campaign statistics, see summary_json()
//   manifest.json   resolved configuration, seed, version, duration
//   config.txt      resolved configuration as a re-runnable config file

namespace hcf {

inline constexpr const char* kVersionTag = "hcf-sim " HCF_VERSION;

nlohmann::json summary_json(const CampaignAggregate& aggregate, const RunConfig& config);
nlohmann::json validation_json(const ValidationReport& report);

void write_se_samples_csv(std::ostream& out, const CampaignAggregate& aggregate);
void write_cdf_csv(std::ostream& out, const CampaignAggregate& aggregate);

struct RunManifest {
    RunConfig config;
    std::string command;
    double wall_seconds = 0;
};

nlohmann::json manifest_json(const RunManifest& manifest);

/// Writes manifest.json and config.txt into `dir`.
void write_manifest(const std::filesystem::path& dir, const RunManifest& manifest);

/// Writes summary.json, se_samples.csv and cdf.csv into `dir`.
void write_campaign(const std::filesystem::path& dir, const CampaignAggregate& aggregate, const RunConfig& config);

}  // namespace hcf

#endif  // HCF_REPORT_HPP
