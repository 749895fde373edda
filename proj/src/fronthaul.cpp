#include "hcf/fronthaul.hpp"

#include "hcf/error.hpp"

namespace hcf {

FronthaulReport count_overhead(Architecture arch, const AssociationMap& assoc, int total_antennas, int users,
                               int cbs_antennas) {
    FronthaulReport r;
    if (arch == Architecture::CellFree) {
        r.uplink_symbols = static_cast<std::int64_t>(total_antennas) * users;
    } else {
        if (assoc.aps() != total_antennas - cbs_antennas)
            throw MisuseError("count_overhead: association does not match the distributed AP count");
        for (const auto& served : assoc.served_users) r.uplink_symbols += static_cast<std::int64_t>(served.size());
    }
    r.downlink_symbols = r.uplink_symbols;
    return r;
}

}  // namespace hcf
