#ifndef HCF_MONTECARLO_HPP
#define HCF_MONTECARLO_HPP

#include <Eigen/Core>

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "hcf/fronthaul.hpp"
#include "hcf/scenario.hpp"

namespace hcf {

enum class Pooling {
    Pooled,        ///< 5%-likely SE over all K * epochs per-user samples
    EpochMinimum,  ///< 5%-likely SE over the per-epoch worst user
};

std::string_view to_string(Pooling pooling);
Pooling parse_pooling(std::string_view name);

struct SimulationPlan {
    Scenario scenario;
    std::size_t epochs = 10000;
    std::uint64_t master_seed = 1;
    int threads = 0;  ///< 0 = hardware concurrency
    Pooling pooling = Pooling::Pooled;
    bool oracle_enabled = false;  ///< run the link-level oracle on every epoch
    std::size_t oracle_draws = 10000;

    void validate() const;
};

struct EpochResult {
    std::size_t epoch = 0;
    Eigen::VectorXd ul_se;  ///< bps/Hz, K
    Eigen::VectorXd dl_se;
    double ul_sum = 0;
    double dl_sum = 0;
    int near_users = 0;
    FronthaulReport fronthaul;
    double oracle_deviation = 0;  ///< max |empirical / closed-form - 1|, when enabled
};

/// Seed of epoch `index` in a campaign.
std::uint64_t epoch_seed(std::uint64_t master_seed, std::size_t index);

/// One epoch end to end: layout, fading, estimation, association, SINR and
/// fronthaul. Deterministic in (scenario, seed).
EpochResult run_epoch(const Scenario& scenario, std::uint64_t seed, std::size_t index = 0);

/// Same as run_epoch, optionally followed by the link-level oracle.
EpochResult run_epoch(const SimulationPlan& plan, std::size_t index);

struct CampaignAggregate {
    std::size_t epochs = 0;
    int users = 0;
    std::vector<double> ul_samples;  ///< epoch-major, K per epoch
    std::vector<double> dl_samples;
    std::vector<double> ul_sum_samples;  ///< one per epoch
    std::vector<double> dl_sum_samples;
    std::vector<int> near_user_counts;
    Pooling pooling = Pooling::Pooled;
    double five_percent_ul = 0;
    double five_percent_dl = 0;
    double median_ul = 0;
    double median_dl = 0;
    double mean_ul = 0;  ///< mean per-user SE
    double mean_dl = 0;
    double mean_sum_ul = 0;
    double mean_sum_dl = 0;
    double mean_fronthaul_ul = 0;
    double mean_fronthaul_dl = 0;
    double max_oracle_deviation = 0;

    double mean_fronthaul_total() const noexcept { return mean_fronthaul_ul + mean_fronthaul_dl; }
};

/// Aggregates epoch results given in epoch order.
CampaignAggregate aggregate(std::span<const EpochResult> results, Pooling pooling);

/// Runs all epochs (in parallel) and merges them in epoch order; the result
/// does not depend on the thread count.
CampaignAggregate run_campaign(const SimulationPlan& plan);

/// Empirical quantile: sorted order statistics with linear interpolation
/// between adjacent ranks, position (n - 1) p.
double percentile(std::span<const double> samples, double p);

/// Sorted (value, i / n) pairs, i = 1..n.
std::vector<std::pair<double, double>> empirical_cdf(std::span<const double> samples);

/// 5%-likely SE under the given pooling rule, from epoch-major samples.
double five_percent_likely(std::span<const double> per_user, int users, Pooling pooling);

}  // namespace hcf

#endif  // HCF_MONTECARLO_HPP
