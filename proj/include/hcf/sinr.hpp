#ifndef HCF_SINR_HPP
#define HCF_SINR_HPP

#include <Eigen/Core>

#include <cmath>
#include <span>
#include <string>
#include <type_traits>

#include "hcf/association.hpp"
#include "hcf/error.hpp"
#include "hcf/estimation.hpp"
#include "hcf/propagation.hpp"

namespace hcf {

template <typename Scalar>
struct PowerConfig {
    using Matrix = typename LargeScaleFading<Scalar>::Matrix;
    using Vector = typename LargeScaleFading<Scalar>::Vector;

    Scalar ue_power_w = Scalar(0.1);       ///< p_u
    Scalar antenna_power_w = Scalar(0.2);  ///< p_d, per antenna
    Vector uplink_eta;                     ///< K, in [0, 1]
    Matrix downlink_eta_ap;                ///< (M - N_b) x K
    Matrix downlink_eta_cbs;               ///< N_b x K
};

template <typename Scalar>
struct DownlinkEta {
    typename LargeScaleFading<Scalar>::Matrix ap;
    typename LargeScaleFading<Scalar>::Matrix cbs;
};

/// Per-antenna power saturating split: every user served by an antenna gets
/// eta = 1 / sum of the alphas it serves, so sum(eta * alpha) = 1 on each
/// active antenna. Idle APs get a zero row.
template <typename Scalar>
DownlinkEta<Scalar> dl_power_allocation(const AssociationMap& assoc, const EstimateQuality<Scalar>& quality,
                                        int cbs_antennas) {
    const auto users = assoc.users();
    DownlinkEta<Scalar> eta;
    eta.ap.setZero(assoc.aps(), users);
    for (int m = 0; m < assoc.aps(); ++m) {
        Scalar load = 0;
        for (int j : assoc.served_users[m]) load += quality.ap(m, j);
        if (!(load > 0)) continue;
        for (int j : assoc.served_users[m]) eta.ap(m, j) = Scalar(1) / load;
    }
    eta.cbs.setZero(cbs_antennas, users);
    Scalar load = 0;
    for (int j : assoc.near_users) load += quality.cbs(j);
    if (load > 0)
        for (int j : assoc.near_users) eta.cbs.col(j).setConstant(Scalar(1) / load);
    return eta;
}

/// Everything the closed-form SINRs depend on for one epoch.
template <typename Scalar>
struct LinkState {
    LargeScaleFading<Scalar> fading;
    EstimateQuality<Scalar> quality;
    AssociationMap association;
    PowerConfig<Scalar> power;
    Scalar noise_power = 0;
    int cbs_antennas = 0;

    int users() const noexcept { return static_cast<int>(fading.users()); }
    int aps() const noexcept { return static_cast<int>(fading.aps()); }
};

namespace detail {

inline void require_near(const AssociationMap& assoc, int k, const char* what) {
    if (!assoc.is_near(k)) throw MisuseError(std::string(what) + ": user " + std::to_string(k) + " is not a near user");
}

inline void require_far(const AssociationMap& assoc, int k, const char* what) {
    if (assoc.is_near(k)) throw MisuseError(std::string(what) + ": user " + std::to_string(k) + " is a near user");
}

}  // namespace detail

/// Uplink SINR of a near user under MF detection at the CBS.
template <typename Scalar>
Scalar ul_sinr_nu(const LinkState<Scalar>& s, int k) {
    detail::require_near(s.association, k, "ul_sinr_nu");
    const auto& eta = s.power.uplink_eta;
    const Scalar alpha = s.quality.cbs(k);
    const Scalar interference = eta.dot(s.fading.cbs) - eta(k) * alpha + s.noise_power / s.power.ue_power_w;
    return eta(k) * Scalar(s.cbs_antennas) * alpha / interference;
}

/// Uplink SINR of a user detected over the distributed APs in `serving`,
/// relying on channel statistics only at the central unit.
template <typename Scalar>
Scalar ul_sinr_fu(const LinkState<Scalar>& s, int k, std::span<const int> serving) {
    if (serving.empty()) throw MisuseError("ul_sinr_fu: empty serving set for user " + std::to_string(k));
    const auto& eta = s.power.uplink_eta;
    Scalar alpha_sum = 0;
    Scalar interference = 0;
    for (int m : serving) {
        const Scalar a = s.quality.ap(m, k);
        alpha_sum += a;
        interference += a * s.fading.ap.row(m).dot(eta.transpose());
    }
    const Scalar denom = interference + s.noise_power / s.power.ue_power_w * alpha_sum;
    return eta(k) * alpha_sum * alpha_sum / denom;
}

template <typename Scalar>
Scalar ul_sinr_fu(const LinkState<Scalar>& s, int k) {
    detail::require_far(s.association, k, "ul_sinr_fu");
    return ul_sinr_fu(s, k, std::span<const int>(s.association.serving_aps.at(k)));
}

namespace detail {

/// Sum over CBS antennas n of beta_k^0 * sum_{j in near} eta_nj alpha_j^0.
template <typename Scalar>
Scalar cbs_leakage(const LinkState<Scalar>& s, int k) {
    if (!s.fading.has_cbs()) return 0;
    Scalar total = 0;
    for (int n = 0; n < s.cbs_antennas; ++n)
        for (int j : s.association.near_users) total += s.power.downlink_eta_cbs(n, j) * s.quality.cbs(j);
    return s.fading.cbs(k) * total;
}

/// Sum over APs m of beta_mk * sum_{j in K_m} eta_mj alpha_mj.
template <typename Scalar>
Scalar ap_leakage(const LinkState<Scalar>& s, int k) {
    Scalar total = 0;
    for (int m = 0; m < s.aps(); ++m) {
        Scalar load = 0;
        for (int j : s.association.served_users[m]) load += s.power.downlink_eta_ap(m, j) * s.quality.ap(m, j);
        total += s.fading.ap(m, k) * load;
    }
    return total;
}

}  // namespace detail

/// Downlink SINR of a near user under conjugate beamforming from the CBS.
template <typename Scalar>
Scalar dl_sinr_nu(const LinkState<Scalar>& s, int k) {
    detail::require_near(s.association, k, "dl_sinr_nu");
    using std::sqrt;
    Scalar coherent = 0;
    for (int n = 0; n < s.cbs_antennas; ++n) coherent += sqrt(s.power.downlink_eta_cbs(n, k)) * s.quality.cbs(k);
    const Scalar denom =
        detail::cbs_leakage(s, k) + detail::ap_leakage(s, k) + s.noise_power / s.power.antenna_power_w;
    return coherent * coherent / denom;
}

/// Downlink SINR of a far user served by distributed APs.
template <typename Scalar>
Scalar dl_sinr_fu(const LinkState<Scalar>& s, int k) {
    detail::require_far(s.association, k, "dl_sinr_fu");
    using std::sqrt;
    Scalar coherent = 0;
    for (int m = 0; m < s.aps(); ++m) coherent += sqrt(s.power.downlink_eta_ap(m, k)) * s.quality.ap(m, k);
    const Scalar denom =
        detail::ap_leakage(s, k) + detail::cbs_leakage(s, k) + s.noise_power / s.power.antenna_power_w;
    return coherent * coherent / denom;
}

/// log2(1 + sinr), elementwise.
template <typename Derived>
auto spectral_efficiency(const Eigen::ArrayBase<Derived>& sinr) {
    return (sinr + typename Derived::Scalar(1)).log() / std::log(typename Derived::Scalar(2));
}

template <typename Scalar>
    requires std::is_arithmetic_v<Scalar>
Scalar spectral_efficiency(Scalar sinr) {
    using std::log2;
    return log2(Scalar(1) + sinr);
}

template <typename Scalar>
struct SinrReport {
    using Vector = typename LargeScaleFading<Scalar>::Vector;
    Vector ul_sinr;
    Vector dl_sinr;
    Vector ul_se;  ///< bps/Hz
    Vector dl_se;
    Scalar ul_sum = 0;  ///< C_ul
    Scalar dl_sum = 0;  ///< C_dl
};

/// Closed-form SINR and SE for every user. A far user without any serving
/// AP (only possible when N_b = M) gets zero.
template <typename Scalar>
SinrReport<Scalar> evaluate(const LinkState<Scalar>& s) {
    const int users = s.users();
    SinrReport<Scalar> r;
    r.ul_sinr.resize(users);
    r.dl_sinr.resize(users);
    for (int k = 0; k < users; ++k) {
        if (s.association.is_near(k)) {
            r.ul_sinr(k) = ul_sinr_nu(s, k);
            r.dl_sinr(k) = dl_sinr_nu(s, k);
        } else if (s.association.serving_aps[k].empty()) {
            r.ul_sinr(k) = 0;
            r.dl_sinr(k) = 0;
        } else {
            r.ul_sinr(k) = ul_sinr_fu(s, k);
            r.dl_sinr(k) = dl_sinr_fu(s, k);
        }
    }
    r.ul_se = spectral_efficiency(r.ul_sinr.array()).matrix();
    r.dl_se = spectral_efficiency(r.dl_sinr.array()).matrix();
    r.ul_sum = r.ul_se.sum();
    r.dl_sum = r.dl_se.sum();
    return r;
}

}  // namespace hcf

#endif  // HCF_SINR_HPP
