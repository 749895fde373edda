#ifndef HCF_SCENARIO_HPP
#define HCF_SCENARIO_HPP

#include "hcf/association.hpp"
#include "hcf/geometry.hpp"
#include "hcf/propagation.hpp"
#include "hcf/random.hpp"
#include "hcf/sinr.hpp"

namespace hcf {

/// Full parameter set of one system-level simulation. Defaults are the
/// reference deployment: M = 256, K = 16, N_b = 128, R = 1 km, r = 500 m.
struct Scenario {
    ScenarioConfig layout;
    PathLossParams path_loss;
    ShadowingParams shadowing;
    NoiseModel noise;
    double ue_power_w = 0.1;
    double antenna_power_w = 0.2;
    ClassificationMode classification = ClassificationMode::Radius;
    double cbs_threshold = 0.0;  ///< used in CbsThreshold mode

    ClassificationRule rule() const;
    void validate() const;
};

/// Scenario with the reference parameters for `arch`; N_b is zero for CF/UC.
Scenario default_scenario(Architecture arch, double inner_radius_m = 500.0);

/// One drawn epoch: layout plus everything needed to evaluate it.
struct EpochState {
    NetworkLayout layout;
    LinkState<double> link;
};

/// Geometry, large-scale fading, estimation, association and power
/// allocation for one epoch; consumes `rng` in that order. Uplink power
/// control is full power (eta_k = 1).
EpochState realize_epoch(const Scenario& scenario, Rng& rng);

}  // namespace hcf

#endif  // HCF_SCENARIO_HPP
