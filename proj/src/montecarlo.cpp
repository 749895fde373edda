#include "hcf/montecarlo.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <string>

#include "hcf/error.hpp"
#include "hcf/linklevel.hpp"
#include "hcf/parallel.hpp"

namespace hcf {

std::string_view to_string(Pooling pooling) {
    return pooling == Pooling::Pooled ? "pooled" : "epoch-min";
}

Pooling parse_pooling(std::string_view name) {
    if (name == "pooled") return Pooling::Pooled;
    if (name == "epoch-min" || name == "epoch_min") return Pooling::EpochMinimum;
    throw ConfigError("unknown pooling '" + std::string(name) + "' (expected pooled or epoch-min)");
}

void SimulationPlan::validate() const {
    scenario.validate();
    if (epochs < 1) throw ConfigError("a campaign needs at least one epoch");
    if (oracle_enabled && oracle_draws < 1) throw ConfigError("oracle needs at least one draw");
}

std::uint64_t epoch_seed(std::uint64_t master_seed, std::size_t index) {
    return derive_seed(master_seed, static_cast<std::uint64_t>(index));
}

namespace {

EpochResult summarize(const EpochState& state, std::size_t index, const Scenario& scenario) {
    const auto report = evaluate(state.link);
    EpochResult r;
    r.epoch = index;
    r.ul_se = report.ul_se;
    r.dl_se = report.dl_se;
    r.ul_sum = report.ul_sum;
    r.dl_sum = report.dl_sum;
    r.near_users = static_cast<int>(state.link.association.near_users.size());
    r.fronthaul = count_overhead(scenario.layout.architecture, state.link.association, scenario.layout.total_antennas,
                                 scenario.layout.users, scenario.layout.cbs_antennas);
    return r;
}

}  // namespace

EpochResult run_epoch(const Scenario& scenario, std::uint64_t seed, std::size_t index) {
    Rng rng{seed};
    return summarize(realize_epoch(scenario, rng), index, scenario);
}

EpochResult run_epoch(const SimulationPlan& plan, std::size_t index) {
    const auto seed = epoch_seed(plan.master_seed, index);
    Rng rng{seed};
    const auto state = realize_epoch(plan.scenario, rng);
    auto result = summarize(state, index, plan.scenario);
    if (plan.oracle_enabled) {
        OracleOptions opt;
        opt.draws = plan.oracle_draws;
        opt.seed = splitmix64(seed);
        opt.threads = 1;
        const auto report = validate_link_state(state.link, opt, static_cast<int>(index));
        for (const auto& c : report.checks) result.oracle_deviation = std::max(result.oracle_deviation, c.sinr_deviation());
    }
    return result;
}

double percentile(std::span<const double> samples, double p) {
    if (samples.empty()) throw DomainError("percentile of an empty sample");
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("percentile fraction must lie in [0, 1]");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

std::vector<std::pair<double, double>> empirical_cdf(std::span<const double> samples) {
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::pair<double, double>> cdf;
    cdf.reserve(sorted.size());
    const double n = static_cast<double>(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) cdf.emplace_back(sorted[i], static_cast<double>(i + 1) / n);
    return cdf;
}

double five_percent_likely(std::span<const double> per_user, int users, Pooling pooling) {
    if (pooling == Pooling::Pooled) return percentile(per_user, 0.05);
    std::vector<double> minima;
    for (std::size_t i = 0; i + users <= per_user.size(); i += users)
        minima.push_back(*std::min_element(per_user.begin() + i, per_user.begin() + i + users));
    return percentile(minima, 0.05);
}

CampaignAggregate aggregate(std::span<const EpochResult> results, Pooling pooling) {
    CampaignAggregate a;
    a.epochs = results.size();
    a.pooling = pooling;
    if (results.empty()) return a;
    a.users = static_cast<int>(results.front().ul_se.size());
    a.ul_samples.reserve(a.epochs * a.users);
    a.dl_samples.reserve(a.epochs * a.users);
    double fh_ul = 0, fh_dl = 0;
    for (const auto& r : results) {
        a.ul_samples.insert(a.ul_samples.end(), r.ul_se.data(), r.ul_se.data() + r.ul_se.size());
        a.dl_samples.insert(a.dl_samples.end(), r.dl_se.data(), r.dl_se.data() + r.dl_se.size());
        a.ul_sum_samples.push_back(r.ul_sum);
        a.dl_sum_samples.push_back(r.dl_sum);
        a.near_user_counts.push_back(r.near_users);
        fh_ul += static_cast<double>(r.fronthaul.uplink_symbols);
        fh_dl += static_cast<double>(r.fronthaul.downlink_symbols);
        a.max_oracle_deviation = std::max(a.max_oracle_deviation, r.oracle_deviation);
    }
    const double n = static_cast<double>(a.epochs);
    auto mean = [](const std::vector<double>& v) {
        return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    };
    a.five_percent_ul = five_percent_likely(a.ul_samples, a.users, pooling);
    a.five_percent_dl = five_percent_likely(a.dl_samples, a.users, pooling);
    a.median_ul = percentile(a.ul_samples, 0.5);
    a.median_dl = percentile(a.dl_samples, 0.5);
    a.mean_ul = mean(a.ul_samples);
    a.mean_dl = mean(a.dl_samples);
    a.mean_sum_ul = mean(a.ul_sum_samples);
    a.mean_sum_dl = mean(a.dl_sum_samples);
    a.mean_fronthaul_ul = fh_ul / n;
    a.mean_fronthaul_dl = fh_dl / n;
    return a;
}

CampaignAggregate run_campaign(const SimulationPlan& plan) {
    plan.validate();
    std::vector<EpochResult> results(plan.epochs);
    parallel_for(plan.epochs, plan.threads, [&](std::size_t i) { results[i] = run_epoch(plan, i); });
    return aggregate(results, plan.pooling);
}

}  // namespace hcf
