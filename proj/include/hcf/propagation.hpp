#ifndef HCF_PROPAGATION_HPP
#define HCF_PROPAGATION_HPP

#include <Eigen/Core>

#include <cmath>
#include <type_traits>

#include "hcf/error.hpp"
#include "hcf/geometry.hpp"
#include "hcf/random.hpp"

namespace hcf {

/// Frequency-dependent constant of the COST-Hata model, in dB.
template <typename Scalar>
Scalar reference_loss_l0(Scalar carrier_mhz, Scalar ap_height_m, Scalar ue_height_m) {
    if (!(carrier_mhz > 0) || !(ap_height_m > 0) || !(ue_height_m > 0))
        throw DomainError("reference_loss_l0: frequency and heights must be positive");
    using std::log10;
    const Scalar lf = log10(carrier_mhz);
    return Scalar(46.3) + Scalar(33.9) * lf - Scalar(13.82) * log10(ap_height_m) -
           (Scalar(1.1) * lf - Scalar(0.7)) * ue_height_m + Scalar(1.56) * lf - Scalar(0.8);
}

struct PathLossParams {
    double carrier_mhz = 1900.0;
    double ap_height_m = 15.0;
    double ue_height_m = 1.65;
    double d0_km = 0.01;  ///< inner breakpoint
    double d1_km = 0.05;  ///< outer breakpoint

    double reference_loss_db() const { return reference_loss_l0(carrier_mhz, ap_height_m, ue_height_m); }
    void validate() const;
};

/// Three-slope COST-Hata gain in dB (a negative number). Distance in km.
template <typename Scalar>
    requires std::is_arithmetic_v<Scalar>
Scalar cost_hata_path_loss_db(Scalar d_km, const PathLossParams& p, Scalar l0) {
    using std::log10;
    const Scalar d0 = Scalar(p.d0_km);
    const Scalar d1 = Scalar(p.d1_km);
    if (d_km > d1) return -l0 - Scalar(35) * log10(d_km);
    // the d0 branch is the d1 branch frozen at d = d0
    const Scalar d = d_km > d0 ? d_km : d0;
    return -l0 - Scalar(10) * log10(std::pow(d1, Scalar(1.5)) * d * d);
}

template <typename Scalar>
    requires std::is_arithmetic_v<Scalar>
Scalar cost_hata_path_loss_db(Scalar d_km, const PathLossParams& p) {
    return cost_hata_path_loss_db(d_km, p, Scalar(p.reference_loss_db()));
}

/// Elementwise path loss over an array of distances in km.
template <typename Derived>
auto cost_hata_path_loss_db(const Eigen::ArrayBase<Derived>& d_km, const PathLossParams& p) {
    using Scalar = typename Derived::Scalar;
    const Scalar l0 = Scalar(p.reference_loss_db());
    return d_km.unaryExpr([p, l0](Scalar d) { return cost_hata_path_loss_db(d, p, l0); });
}

struct ShadowingParams {
    double sigma_db = 8.0;
};

/// Large-scale fading coefficients (linear power gains).
template <typename Scalar>
struct LargeScaleFading {
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    Matrix ap;   ///< (M - N_b) x K, beta_mk
    Vector cbs;  ///< K, beta_k^0; empty without a CBS

    Eigen::Index aps() const noexcept { return ap.rows(); }
    Eigen::Index users() const noexcept { return ap.cols(); }
    bool has_cbs() const noexcept { return cbs.size() > 0; }
};

using FadingMatrix = LargeScaleFading<double>;

/// beta = 10^((L + X) / 10) per link with i.i.d. X ~ N(0, sigma_sd^2).
/// AP links are drawn column by column (user-major), then the CBS links.
FadingMatrix draw_large_scale(const NetworkLayout& layout, const PathLossParams& pl,
                              const ShadowingParams& sh, Rng& rng);

/// Thermal noise power in watts.
template <typename Scalar>
Scalar noise_power(Scalar density_dbm_hz, Scalar noise_figure_db, Scalar bandwidth_hz) {
    if (!(bandwidth_hz > 0)) throw DomainError("noise_power: bandwidth must be positive");
    using std::log10;
    using std::pow;
    const Scalar dbm = density_dbm_hz + Scalar(10) * log10(bandwidth_hz) + noise_figure_db;
    return pow(Scalar(10), (dbm - Scalar(30)) / Scalar(10));
}

struct NoiseModel {
    double density_dbm_hz = -174.0;
    double noise_figure_db = 9.0;
    double bandwidth_hz = 5e6;

    double power_w() const { return noise_power(density_dbm_hz, noise_figure_db, bandwidth_hz); }
};

}  // namespace hcf

#endif  // HCF_PROPAGATION_HPP
