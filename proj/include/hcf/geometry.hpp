#ifndef HCF_GEOMETRY_HPP
#define HCF_GEOMETRY_HPP

#include <Eigen/Core>

#include <optional>
#include <string_view>

#include "hcf/random.hpp"

namespace hcf {

enum class Architecture { CellFree, UserCentric, Hierarchical };

std::string_view to_string(Architecture arch);
/// Accepts "cf", "uc" and "hcf" (case-insensitive).
Architecture parse_architecture(std::string_view name);

/// Distributed AP placement. `RingGrid` puts APs on concentric rings with a
/// fixed angular spacing; it is meant for sensitivity checks only.
enum class ApPlacement { Random, RingGrid };

std::string_view to_string(ApPlacement placement);
ApPlacement parse_placement(std::string_view name);

/// Cartesian coordinates in meters, origin at the area center.
using Position = Eigen::Vector2d;

struct ScenarioConfig {
    Architecture architecture = Architecture::Hierarchical;
    int total_antennas = 256;  ///< M
    int users = 16;            ///< K
    int cbs_antennas = 128;    ///< N_b; zero for CF and UC
    double outer_radius_m = 1000.0;
    double inner_radius_m = 500.0;  ///< HCF only
    ApPlacement ap_placement = ApPlacement::Random;

    /// Number of single-antenna distributed APs (M - N_b).
    int distributed_aps() const noexcept { return total_antennas - cbs_antennas; }
    bool has_cbs() const noexcept { return architecture == Architecture::Hierarchical; }

    /// Throws ConfigError when the invariants do not hold.
    void validate() const;
};

struct NetworkLayout {
    Architecture architecture = Architecture::CellFree;
    std::optional<Position> cbs;  ///< present iff HCF
    Eigen::Matrix2Xd aps;         ///< one column per distributed AP
    Eigen::Matrix2Xd ues;         ///< one column per user
};

/// Euclidean distance between two points.
template <typename DerivedA, typename DerivedB>
auto distance(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
    return (a - b).norm();
}

/// Area-uniform draw of `count` points in the annulus [inner, outer].
Eigen::Matrix2Xd uniform_annulus(int count, double inner, double outer, Rng& rng);

/// Deterministic ring layout of `count` points covering [inner, outer].
Eigen::Matrix2Xd ring_grid(int count, double inner, double outer);

/// Draws the APs first, then the UEs, from `rng`.
NetworkLayout generate_layout(const ScenarioConfig& config, Rng& rng);

}  // namespace hcf

#endif  // HCF_GEOMETRY_HPP
