#ifndef HCF_TESTS_SUPPORT_HPP
#define HCF_TESTS_SUPPORT_HPP

#include <Eigen/Core>
#include <cmath>
#include <utility>
#include <vector>

#include "hcf/association.hpp"
#include "hcf/scenario.hpp"
#include "hcf/sinr.hpp"

namespace hcf::test {

inline AssociationMap make_association(IndexSet near, std::vector<IndexSet> serving, int aps) {
    AssociationMap a;
    a.near_users = std::move(near);
    a.serving_aps = std::move(serving);
    a.served_users = invert_sets(a.serving_aps, aps);
    return a;
}

/// Hand-built state with full uplink power and the saturating downlink split.
inline LinkState<double> make_state(Eigen::MatrixXd beta_ap, Eigen::VectorXd beta_cbs, Eigen::MatrixXd alpha_ap,
                                    Eigen::VectorXd alpha_cbs, AssociationMap assoc, int cbs_antennas,
                                    double noise, double ue_power = 0.1, double antenna_power = 0.2) {
    LinkState<double> s;
    s.fading.ap = std::move(beta_ap);
    s.fading.cbs = std::move(beta_cbs);
    s.quality.ap = std::move(alpha_ap);
    s.quality.cbs = std::move(alpha_cbs);
    s.association = std::move(assoc);
    s.cbs_antennas = cbs_antennas;
    s.noise_power = noise;
    s.power.ue_power_w = ue_power;
    s.power.antenna_power_w = antenna_power;
    s.power.uplink_eta = Eigen::VectorXd::Ones(s.users());
    const auto eta = dl_power_allocation(s.association, s.quality, cbs_antennas);
    s.power.downlink_eta_ap = eta.ap;
    s.power.downlink_eta_cbs = eta.cbs;
    return s;
}

/// Small random deployment drawn through the regular epoch pipeline.
inline Scenario small_scenario(Architecture arch, int antennas, int users, int cbs_antennas) {
    Scenario s = default_scenario(arch);
    s.layout.total_antennas = antennas;
    s.layout.users = users;
    s.layout.cbs_antennas = arch == Architecture::Hierarchical ? cbs_antennas : 0;
    return s;
}

inline double rel(double a, double b) { return std::abs(a / b - 1.0); }

}  // namespace hcf::test

#endif  // HCF_TESTS_SUPPORT_HPP
