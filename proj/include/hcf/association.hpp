#ifndef HCF_ASSOCIATION_HPP
#define HCF_ASSOCIATION_HPP

#include <span>
#include <vector>

#include "hcf/geometry.hpp"
#include "hcf/propagation.hpp"

namespace hcf {

using IndexSet = std::vector<int>;  ///< sorted, unique

/// Near/far split and the bipartite AP-user serving relation.
///
/// `serving_aps[k]` is the set of distributed APs serving user k (empty for
/// near users, who are served by the CBS only). `served_users[m]` is its
/// exact inverse.
struct AssociationMap {
    IndexSet near_users;
    std::vector<IndexSet> serving_aps;   ///< per user
    std::vector<IndexSet> served_users;  ///< per distributed AP

    int users() const noexcept { return static_cast<int>(serving_aps.size()); }
    int aps() const noexcept { return static_cast<int>(served_users.size()); }
    bool is_near(int k) const;
};

enum class ClassificationMode { Radius, CbsThreshold };

struct ClassificationRule {
    ClassificationMode mode = ClassificationMode::Radius;
    double radius_m = 500.0;     ///< Radius mode: near iff distance to CBS <= radius
    double cbs_threshold = 0.0;  ///< CbsThreshold mode: near iff beta_k^0 >= threshold

    void validate() const;
};

/// Near-user set of an HCF layout. Throws MisuseError for CF/UC layouts.
IndexSet classify_users(const NetworkLayout& layout, const FadingMatrix& fading, const ClassificationRule& rule);

/// Mean-threshold AP selection for every far user: m serves k iff
/// beta_mk >= mean_m(beta_mk). Near users get an empty set.
std::vector<IndexSet> serving_sets(const FadingMatrix& fading, std::span<const int> near_users);

/// Every AP serves every user.
std::vector<IndexSet> all_serving(int aps, int users);

/// Inverse of a relation given as one set per left element; `count` is the
/// size of the right side.
std::vector<IndexSet> invert_sets(const std::vector<IndexSet>& sets, int count);

/// Builds the association of one epoch for the given architecture.
AssociationMap associate(const NetworkLayout& layout, const FadingMatrix& fading, const ClassificationRule& rule);

/// True iff m in serving_aps[k] <=> k in served_users[m] for all pairs.
bool is_consistent(const AssociationMap& assoc);

}  // namespace hcf

#endif  // HCF_ASSOCIATION_HPP
