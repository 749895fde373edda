#include "hcf/association.hpp"

#include <algorithm>

#include "hcf/error.hpp"

namespace hcf {

bool AssociationMap::is_near(int k) const {
    return std::binary_search(near_users.begin(), near_users.end(), k);
}

void ClassificationRule::validate() const {
    if (mode == ClassificationMode::Radius && !(radius_m > 0.0))
        throw ConfigError("classification radius must be positive");
    if (mode == ClassificationMode::CbsThreshold && !(cbs_threshold > 0.0))
        throw ConfigError("CBS threshold must be positive");
}

IndexSet classify_users(const NetworkLayout& layout, const FadingMatrix& fading, const ClassificationRule& rule) {
    if (layout.architecture != Architecture::Hierarchical || !layout.cbs)
        throw MisuseError("classify_users applies to HCF layouts only");
    IndexSet near;
    const auto users = static_cast<int>(layout.ues.cols());
    for (int k = 0; k < users; ++k) {
        const bool is_near = rule.mode == ClassificationMode::Radius
                                 ? distance(layout.ues.col(k), *layout.cbs) <= rule.radius_m
                                 : fading.cbs(k) >= rule.cbs_threshold;
        if (is_near) near.push_back(k);
    }
    return near;
}

std::vector<IndexSet> serving_sets(const FadingMatrix& fading, std::span<const int> near_users) {
    const auto users = static_cast<int>(fading.users());
    const auto aps = static_cast<int>(fading.aps());
    std::vector<IndexSet> sets(users);
    if (aps == 0) return sets;
    for (int k = 0; k < users; ++k) {
        if (std::find(near_users.begin(), near_users.end(), k) != near_users.end()) continue;
        const auto column = fading.ap.col(k);
        const double threshold = column.mean();
        for (int m = 0; m < aps; ++m)
            if (column(m) >= threshold) sets[k].push_back(m);
        if (sets[k].empty()) {
            // only reachable through rounding in the mean
            Eigen::Index best = 0;
            column.maxCoeff(&best);
            sets[k].push_back(static_cast<int>(best));
        }
    }
    return sets;
}

std::vector<IndexSet> all_serving(int aps, int users) {
    IndexSet every(aps);
    for (int m = 0; m < aps; ++m) every[m] = m;
    return std::vector<IndexSet>(users, every);
}

std::vector<IndexSet> invert_sets(const std::vector<IndexSet>& sets, int count) {
    std::vector<IndexSet> inverse(count);
    for (int i = 0; i < static_cast<int>(sets.size()); ++i)
        for (int j : sets[i]) inverse.at(j).push_back(i);
    return inverse;
}

AssociationMap associate(const NetworkLayout& layout, const FadingMatrix& fading, const ClassificationRule& rule) {
    AssociationMap assoc;
    const auto users = static_cast<int>(fading.users());
    const auto aps = static_cast<int>(fading.aps());
    switch (layout.architecture) {
        case Architecture::CellFree:
            assoc.serving_aps = all_serving(aps, users);
            break;
        case Architecture::UserCentric:
            assoc.serving_aps = serving_sets(fading, {});
            break;
        case Architecture::Hierarchical:
            assoc.near_users = classify_users(layout, fading, rule);
            assoc.serving_aps = serving_sets(fading, assoc.near_users);
            break;
    }
    assoc.served_users = invert_sets(assoc.serving_aps, aps);
    return assoc;
}

bool is_consistent(const AssociationMap& assoc) {
    for (int k = 0; k < assoc.users(); ++k) {
        if (assoc.is_near(k) && !assoc.serving_aps[k].empty()) return false;
        if (!assoc.is_near(k) && assoc.aps() > 0 && assoc.serving_aps[k].empty()) return false;
        for (int m : assoc.serving_aps[k]) {
            if (m < 0 || m >= assoc.aps()) return false;
            const auto& back = assoc.served_users[m];
            if (!std::binary_search(back.begin(), back.end(), k)) return false;
        }
    }
    for (int m = 0; m < assoc.aps(); ++m) {
        for (int k : assoc.served_users[m]) {
            if (k < 0 || k >= assoc.users()) return false;
            const auto& fwd = assoc.serving_aps[k];
            if (!std::binary_search(fwd.begin(), fwd.end(), m)) return false;
        }
    }
    return true;
}

}  // namespace hcf
