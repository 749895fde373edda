#ifndef HCF_FRONTHAUL_HPP
#define HCF_FRONTHAUL_HPP

#include <cstdint>

#include "hcf/association.hpp"
#include "hcf/geometry.hpp"

namespace hcf {

/// Complex-valued data symbols crossing the fronthaul per channel use.
struct FronthaulReport {
    std::int64_t uplink_symbols = 0;
    std::int64_t downlink_symbols = 0;
    std::int64_t total() const noexcept { return uplink_symbols + downlink_symbols; }
};

/// CF: every AP exchanges one symbol per user in each direction (M K).
/// UC/HCF: AP m exchanges |K_m| symbols per direction; CBS antennas never
/// use the fronthaul.
FronthaulReport count_overhead(Architecture arch, const AssociationMap& assoc, int total_antennas, int users,
                               int cbs_antennas);

}  // namespace hcf

#endif  // HCF_FRONTHAUL_HPP
