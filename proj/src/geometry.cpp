#include "hcf/geometry.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <string>

#include "hcf/error.hpp"

namespace hcf {

namespace {

std::string lowercase(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

}  // namespace

std::string_view to_string(Architecture arch) {
    switch (arch) {
        case Architecture::CellFree: return "cf";
        case Architecture::UserCentric: return "uc";
        case Architecture::Hierarchical: return "hcf";
    }
    return "?";
}

Architecture parse_architecture(std::string_view name) {
    const auto s = lowercase(name);
    if (s == "cf") return Architecture::CellFree;
    if (s == "uc") return Architecture::UserCentric;
    if (s == "hcf") return Architecture::Hierarchical;
    throw ConfigError("unknown architecture '" + std::string(name) + "' (expected cf, uc or hcf)");
}

std::string_view to_string(ApPlacement placement) {
    return placement == ApPlacement::Random ? "random" : "ring";
}

ApPlacement parse_placement(std::string_view name) {
    const auto s = lowercase(name);
    if (s == "random") return ApPlacement::Random;
    if (s == "ring" || s == "ring-grid") return ApPlacement::RingGrid;
    throw ConfigError("unknown AP placement '" + std::string(name) + "' (expected random or ring)");
}

void ScenarioConfig::validate() const {
    if (users < 1) throw ConfigError("user count K must be at least 1");
    if (total_antennas < 1) throw ConfigError("antenna count M must be at least 1");
    if (cbs_antennas < 0 || cbs_antennas > total_antennas)
        throw ConfigError("CBS antenna count N_b must lie in [0, M]");
    if (!(outer_radius_m > 0.0) || !std::isfinite(outer_radius_m))
        throw ConfigError("outer radius R must be positive and finite");
    if (has_cbs()) {
        if (!(inner_radius_m > 0.0) || !(inner_radius_m < outer_radius_m))
            throw ConfigError("HCF requires 0 < r < R");
    } else if (cbs_antennas != 0) {
        throw ConfigError("CF and UC architectures have no CBS antennas (N_b must be 0)");
    }
}

Eigen::Matrix2Xd uniform_annulus(int count, double inner, double outer, Rng& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double r2_lo = inner * inner;
    const double r2_hi = outer * outer;
    Eigen::Matrix2Xd pts(2, count);
    for (int i = 0; i < count; ++i) {
        // sqrt of a uniform squared radius gives area-uniform density
        const double rad = std::min(outer, std::max(inner, std::sqrt(r2_lo + (r2_hi - r2_lo) * unit(rng))));
        const double theta = 2.0 * std::numbers::pi * unit(rng);
        pts(0, i) = rad * std::cos(theta);
        pts(1, i) = rad * std::sin(theta);
    }
    return pts;
}

Eigen::Matrix2Xd ring_grid(int count, double inner, double outer) {
    Eigen::Matrix2Xd pts(2, count);
    if (count == 0) return pts;
    const double area = std::numbers::pi * (outer * outer - inner * inner);
    const double spacing = std::sqrt(area / count);
    const int rings = std::clamp(static_cast<int>(std::lround((outer - inner) / spacing)), 1, count);
    const double width = (outer - inner) / rings;

    Eigen::VectorXd radii(rings);
    for (int i = 0; i < rings; ++i) radii(i) = inner + (i + 0.5) * width;

    // APs per ring proportional to circumference; the outermost ring absorbs
    // the rounding remainder
    Eigen::VectorXi per_ring(rings);
    int assigned = 0;
    for (int i = 0; i < rings; ++i) {
        per_ring(i) = static_cast<int>(std::floor(count * radii(i) / radii.sum()));
        assigned += per_ring(i);
    }
    per_ring(rings - 1) += count - assigned;

    int col = 0;
    for (int i = 0; i < rings; ++i) {
        const int n = per_ring(i);
        const double offset = (i % 2 == 0) ? 0.0 : 0.5;
        for (int j = 0; j < n; ++j, ++col) {
            const double theta = 2.0 * std::numbers::pi * (j + offset) / n;
            pts(0, col) = radii(i) * std::cos(theta);
            pts(1, col) = radii(i) * std::sin(theta);
        }
    }
    return pts;
}

NetworkLayout generate_layout(const ScenarioConfig& config, Rng& rng) {
    config.validate();
    NetworkLayout layout;
    layout.architecture = config.architecture;
    const double ap_inner = config.has_cbs() ? config.inner_radius_m : 0.0;
    if (config.has_cbs()) layout.cbs = Position::Zero();

    if (config.ap_placement == ApPlacement::RingGrid)
        layout.aps = ring_grid(config.distributed_aps(), ap_inner, config.outer_radius_m);
    else
        layout.aps = uniform_annulus(config.distributed_aps(), ap_inner, config.outer_radius_m, rng);

    layout.ues = uniform_annulus(config.users, 0.0, config.outer_radius_m, rng);
    return layout;
}

}  // namespace hcf
