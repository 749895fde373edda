#include "hcf/scenario.hpp"

#include "hcf/error.hpp"
#include "hcf/estimation.hpp"

namespace hcf {

ClassificationRule Scenario::rule() const {
    ClassificationRule r;
    r.mode = classification;
    r.radius_m = layout.inner_radius_m;
    r.cbs_threshold = cbs_threshold;
    return r;
}

void Scenario::validate() const {
    layout.validate();
    path_loss.validate();
    if (shadowing.sigma_db < 0.0) throw ConfigError("shadowing standard deviation must be non-negative");
    if (!(noise.bandwidth_hz > 0.0)) throw ConfigError("bandwidth must be positive");
    if (!(ue_power_w > 0.0) || !(antenna_power_w > 0.0)) throw ConfigError("transmit powers must be positive");
    if (layout.has_cbs()) rule().validate();
}

Scenario default_scenario(Architecture arch, double inner_radius_m) {
    Scenario s;
    s.layout.architecture = arch;
    s.layout.inner_radius_m = inner_radius_m;
    s.layout.cbs_antennas = arch == Architecture::Hierarchical ? 128 : 0;
    return s;
}

EpochState realize_epoch(const Scenario& scenario, Rng& rng) {
    scenario.validate();
    EpochState e;
    e.layout = generate_layout(scenario.layout, rng);
    auto& link = e.link;
    link.fading = draw_large_scale(e.layout, scenario.path_loss, scenario.shadowing, rng);
    link.noise_power = scenario.noise.power_w();
    link.cbs_antennas = scenario.layout.cbs_antennas;
    link.quality = mmse_quality(link.fading, scenario.ue_power_w, link.noise_power);
    link.association = associate(e.layout, link.fading, scenario.rule());

    link.power.ue_power_w = scenario.ue_power_w;
    link.power.antenna_power_w = scenario.antenna_power_w;
    link.power.uplink_eta = Eigen::VectorXd::Ones(scenario.layout.users);
    auto eta = dl_power_allocation(link.association, link.quality, link.cbs_antennas);
    link.power.downlink_eta_ap = std::move(eta.ap);
    link.power.downlink_eta_cbs = std::move(eta.cbs);
    return e;
}

}  // namespace hcf
