#include <doctest.h>

#include "hcf/error.hpp"
#include "hcf/fronthaul.hpp"
#include "hcf/scenario.hpp"
#include "support.hpp"

using namespace hcf;

TEST_CASE("cell-free exchanges every symbol with every AP") {
    AssociationMap a;
    a.serving_aps = all_serving(256, 16);
    a.served_users = invert_sets(a.serving_aps, 256);
    const auto r = count_overhead(Architecture::CellFree, a, 256, 16, 0);
    CHECK(r.uplink_symbols == 4096);
    CHECK(r.downlink_symbols == 4096);
    CHECK(r.total() == 8192);
    const auto uc = count_overhead(Architecture::UserCentric, a, 256, 16, 0);
    CHECK(uc.uplink_symbols == 4096);
    CHECK(uc.downlink_symbols == 4096);
}

TEST_CASE("near users cost no fronthaul") {
    const auto a = test::make_association({0, 1, 2}, {{}, {}, {}}, 128);
    const auto r = count_overhead(Architecture::Hierarchical, a, 256, 3, 128);
    CHECK(r.total() == 0);
}

TEST_CASE("counts follow the serving sets") {
    const auto a = test::make_association({1}, {{0, 2}, {}, {1, 2, 3}}, 4);
    const auto r = count_overhead(Architecture::Hierarchical, a, 8, 3, 4);
    CHECK(r.uplink_symbols == 5);
    CHECK(r.downlink_symbols == 5);
    CHECK_THROWS_AS(count_overhead(Architecture::Hierarchical, a, 9, 3, 4), MisuseError);
}

TEST_CASE("hierarchical and user-centric never exceed cell-free") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        std::int64_t totals[3];
        int i = 0;
        for (auto arch : {Architecture::CellFree, Architecture::UserCentric, Architecture::Hierarchical}) {
            const Scenario s = default_scenario(arch);
            Rng rng(seed);
            const auto e = realize_epoch(s, rng);
            totals[i++] = count_overhead(arch, e.link.association, s.layout.total_antennas, s.layout.users,
                                         s.layout.cbs_antennas)
                              .total();
        }
        CHECK(totals[0] == 8192);
        CHECK(totals[1] <= totals[0]);
        CHECK(totals[2] <= totals[0]);
    }
}
