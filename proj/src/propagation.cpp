#include "hcf/propagation.hpp"

namespace hcf {

void PathLossParams::validate() const {
    if (!(d0_km > 0.0) || !(d0_km < d1_km))
        throw ConfigError("path loss breakpoints must satisfy 0 < d0 < d1");
    (void)reference_loss_db();
}

FadingMatrix draw_large_scale(const NetworkLayout& layout, const PathLossParams& pl,
                              const ShadowingParams& sh, Rng& rng) {
    const auto aps = layout.aps.cols();
    const auto users = layout.ues.cols();
    const double l0 = pl.reference_loss_db();
    std::normal_distribution<double> shadow(0.0, 1.0);

    auto link = [&](double d_m) {
        const double gain_db = cost_hata_path_loss_db(d_m / 1000.0, pl, l0) + sh.sigma_db * shadow(rng);
        return std::pow(10.0, gain_db / 10.0);
    };

    FadingMatrix f;
    f.ap.resize(aps, users);
    for (Eigen::Index k = 0; k < users; ++k)
        for (Eigen::Index m = 0; m < aps; ++m) f.ap(m, k) = link(distance(layout.aps.col(m), layout.ues.col(k)));

    if (layout.cbs) {
        f.cbs.resize(users);
        for (Eigen::Index k = 0; k < users; ++k) f.cbs(k) = link(distance(*layout.cbs, layout.ues.col(k)));
    }
    return f;
}

}  // namespace hcf
