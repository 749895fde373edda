#include <doctest.h>

#include <cmath>

#include "hcf/error.hpp"
#include "hcf/scenario.hpp"
#include "hcf/sinr.hpp"
#include "support.hpp"

using namespace hcf;
using test::make_association;
using test::make_state;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
    int i = 0;
    for (double x : v) out(i++) = x;
    return out;
}

LinkState<double> single_nu(int nb, double pu, double noise) {
    return make_state(Eigen::MatrixXd(0, 1), vec({1.0}), Eigen::MatrixXd(0, 1), vec({0.9}),
                      make_association({0}, {{}}, 0), nb, noise, pu, pu);
}

}  // namespace

TEST_CASE("uplink near-user example") {
    auto s = single_nu(2, 1.0, 0.1);
    CHECK(ul_sinr_nu(s, 0) == doctest::Approx(9.0).epsilon(1e-14));
    s.cbs_antennas = 4;
    CHECK(ul_sinr_nu(s, 0) == doctest::Approx(18.0).epsilon(1e-14));
    s.power.uplink_eta(0) = 0;
    CHECK(ul_sinr_nu(s, 0) == 0.0);
}

TEST_CASE("uplink far-user examples") {
    Eigen::MatrixXd beta(2, 1), alpha(2, 1);
    beta << 1, 1;
    alpha << 0.5, 0.5;
    auto s = make_state(beta, Eigen::VectorXd(), alpha, Eigen::VectorXd(), make_association({}, {{0, 1}}, 2), 0, 0.0);
    CHECK(ul_sinr_fu(s, 0) == doctest::Approx(1.0).epsilon(1e-14));

    // perfect estimation from one AP still pays the channel-uncertainty penalty
    Eigen::MatrixXd one(1, 1);
    one << 1.0;
    auto p = make_state(one, Eigen::VectorXd(), one, Eigen::VectorXd(), make_association({}, {{0}}, 1), 0, 0.0);
    CHECK(ul_sinr_fu(p, 0) == doctest::Approx(1.0).epsilon(1e-14));
    const std::vector<int> empty;
    CHECK_THROWS_AS(ul_sinr_fu(p, 0, empty), MisuseError);
}

TEST_CASE("downlink near-user example") {
    auto s = single_nu(1, 1.0, 0.1);
    s.power.downlink_eta_cbs.setOnes();
    CHECK(dl_sinr_nu(s, 0) == doctest::Approx(0.81).epsilon(1e-14));
    const double low_noise = [&] {
        auto t = s;
        t.noise_power = 0.01;
        return dl_sinr_nu(t, 0);
    }();
    CHECK(low_noise > dl_sinr_nu(s, 0));
    CHECK(low_noise < 0.9);
    s.power.downlink_eta_cbs.setZero();
    CHECK(dl_sinr_nu(s, 0) == 0.0);
}

TEST_CASE("downlink far-user example") {
    Eigen::MatrixXd beta(1, 1), alpha(1, 1);
    beta << 1.0;
    alpha << 0.5;
    auto s = make_state(beta, Eigen::VectorXd(), alpha, Eigen::VectorXd(), make_association({}, {{0}}, 1), 0, 0.1,
                        1.0, 1.0);
    CHECK(s.power.downlink_eta_ap(0, 0) == doctest::Approx(2.0));
    const double expected = std::pow(std::sqrt(2.0) * 0.5, 2) / (1.0 * 2.0 * 0.5 + 0.1);
    CHECK(dl_sinr_fu(s, 0) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(dl_sinr_fu(s, 0) == doctest::Approx(0.5 / 1.1).epsilon(1e-14));
    s.power.downlink_eta_ap.setZero();
    CHECK(dl_sinr_fu(s, 0) == 0.0);
}

TEST_CASE("near/far misuse") {
    auto s = single_nu(2, 1.0, 0.1);
    CHECK_THROWS_AS(ul_sinr_fu(s, 0), MisuseError);
    CHECK_THROWS_AS(dl_sinr_fu(s, 0), MisuseError);
    Eigen::MatrixXd one(1, 1);
    one << 1.0;
    auto f = make_state(one, Eigen::VectorXd(), one, Eigen::VectorXd(), make_association({}, {{0}}, 1), 0, 0.0);
    CHECK_THROWS_AS(ul_sinr_nu(f, 0), MisuseError);
    CHECK_THROWS_AS(dl_sinr_nu(f, 0), MisuseError);
}

TEST_CASE("downlink power allocation") {
    Eigen::MatrixXd alpha(3, 2);
    alpha << 0.5, 0.7, 0.25, 0.25, 0.1, 0.2;
    const auto a = make_association({}, {{0, 1}, {1}}, 3);
    EstimateQuality<double> q;
    q.ap = alpha;
    const auto eta = dl_power_allocation(a, q, 0);
    CHECK(eta.ap(0, 0) == doctest::Approx(2.0));
    CHECK(eta.ap(0, 1) == 0.0);
    CHECK(eta.ap(1, 0) == doctest::Approx(2.0));
    CHECK(eta.ap(1, 1) == doctest::Approx(2.0));
    CHECK(eta.ap.row(2).isZero());
    CHECK(eta.cbs.size() == 0);
}

TEST_CASE("drawn power allocation saturates every active antenna") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Rng rng(seed);
        const auto e = realize_epoch(default_scenario(Architecture::Hierarchical), rng);
        const auto& s = e.link;
        for (int m = 0; m < s.aps(); ++m) {
            const double load = (s.power.downlink_eta_ap.row(m).array() * s.quality.ap.row(m).array()).sum();
            if (s.association.served_users[m].empty())
                CHECK(load == 0.0);
            else
                CHECK(load == doctest::Approx(1.0).epsilon(1e-13));
        }
        for (int n = 0; n < s.cbs_antennas; ++n) {
            const double load = s.power.downlink_eta_cbs.row(n).dot(s.quality.cbs);
            CHECK(load == doctest::Approx(s.association.near_users.empty() ? 0.0 : 1.0).epsilon(1e-13));
        }
    }
}

TEST_CASE("closed forms agree with direct evaluation") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Rng rng(seed);
        const auto e = realize_epoch(default_scenario(Architecture::Hierarchical), rng);
        const auto& s = e.link;
        const auto& a = s.association;
        const int K = s.users(), M = s.aps(), Nb = s.cbs_antennas;
        const double pu = s.power.ue_power_w, pd = s.power.antenna_power_w, n2 = s.noise_power;
        const auto& be = s.fading;
        const auto& al = s.quality;
        const auto& p = s.power;

        double cbs_load = 0;  // per CBS antenna: sum over near j of eta alpha
        for (int n = 0; n < Nb; ++n)
            for (int j : a.near_users) cbs_load += p.downlink_eta_cbs(n, j) * al.cbs(j);
        for (int k = 0; k < K; ++k) {
            double ap_load = 0;
            for (int m = 0; m < M; ++m)
                for (int j : a.served_users[m]) ap_load += be.ap(m, k) * p.downlink_eta_ap(m, j) * al.ap(m, j);
            if (a.is_near(k)) {
                double total = 0;
                for (int j = 0; j < K; ++j) total += p.uplink_eta(j) * be.cbs(j);
                const double ul = p.uplink_eta(k) * Nb * al.cbs(k) / (total - p.uplink_eta(k) * al.cbs(k) + n2 / pu);
                CHECK(ul_sinr_nu(s, k) == doctest::Approx(ul).epsilon(1e-12));
                double num = 0;
                for (int n = 0; n < Nb; ++n) num += std::sqrt(p.downlink_eta_cbs(n, k)) * al.cbs(k);
                const double dl = num * num / (be.cbs(k) * cbs_load + ap_load + n2 / pd);
                CHECK(dl_sinr_nu(s, k) == doctest::Approx(dl).epsilon(1e-12));
            } else {
                double sa = 0, den = 0;
                for (int m : a.serving_aps[k]) {
                    sa += al.ap(m, k);
                    double inner = 0;
                    for (int j = 0; j < K; ++j) inner += p.uplink_eta(j) * be.ap(m, j);
                    den += al.ap(m, k) * inner;
                }
                const double ul = p.uplink_eta(k) * sa * sa / (den + n2 / pu * sa);
                CHECK(ul_sinr_fu(s, k) == doctest::Approx(ul).epsilon(1e-12));
                double num = 0;
                for (int m = 0; m < M; ++m) num += std::sqrt(p.downlink_eta_ap(m, k)) * al.ap(m, k);
                const double dl = num * num / (ap_load + be.cbs(k) * cbs_load + n2 / pd);
                CHECK(dl_sinr_fu(s, k) == doctest::Approx(dl).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("sinr grows with the user's own estimate quality and falls with noise") {
    Rng rng(4);
    const auto e = realize_epoch(default_scenario(Architecture::Hierarchical), rng);
    for (int k = 0; k < e.link.users(); ++k) {
        auto better = e.link;
        better.quality.cbs(k) *= 1.01;
        better.quality.ap.col(k) *= 1.01;
        auto noisy = e.link;
        noisy.noise_power *= 2;
        if (e.link.association.is_near(k)) {
            CHECK(ul_sinr_nu(better, k) > ul_sinr_nu(e.link, k));
            CHECK(ul_sinr_nu(noisy, k) < ul_sinr_nu(e.link, k));
            CHECK(dl_sinr_nu(noisy, k) < dl_sinr_nu(e.link, k));
        } else {
            CHECK(ul_sinr_fu(better, k) > ul_sinr_fu(e.link, k));
            CHECK(ul_sinr_fu(noisy, k) < ul_sinr_fu(e.link, k));
            CHECK(dl_sinr_fu(noisy, k) < dl_sinr_fu(e.link, k));
        }
    }
}

TEST_CASE("user-centric equals cell-free at full inclusion") {
    Rng rng(2);
    Scenario sc = default_scenario(Architecture::CellFree);
    sc.layout.total_antennas = 16;
    sc.layout.users = 4;
    auto cf = realize_epoch(sc, rng).link;
    // one common gain per user puts every AP at the mean, so every AP serves
    for (int k = 0; k < cf.users(); ++k) cf.fading.ap.col(k).setConstant(cf.fading.ap(0, k));
    cf.quality = mmse_quality(cf.fading, cf.power.ue_power_w, cf.noise_power);
    auto uc = cf;
    uc.association.serving_aps = serving_sets(uc.fading, IndexSet{});
    uc.association.served_users = invert_sets(uc.association.serving_aps, uc.aps());
    CHECK(uc.association.serving_aps == all_serving(cf.aps(), cf.users()));
    for (auto* s : {&cf, &uc}) {
        const auto eta = dl_power_allocation(s->association, s->quality, 0);
        s->power.downlink_eta_ap = eta.ap;
    }
    const auto rc = evaluate(cf), ru = evaluate(uc);
    CHECK(rc.ul_sinr == ru.ul_sinr);
    CHECK(rc.dl_sinr == ru.dl_sinr);
}

TEST_CASE("spectral efficiency") {
    CHECK(spectral_efficiency(1.0) == 1.0);
    CHECK(spectral_efficiency(0.0) == 0.0);
    const Eigen::ArrayXd g = Eigen::ArrayXd::Constant(7, 3.0);
    CHECK(spectral_efficiency(g).sum() == doctest::Approx(14.0).epsilon(1e-14));
    CHECK(spectral_efficiency(3.0f) == doctest::Approx(2.0f));

    Rng rng(8);
    const auto e = realize_epoch(default_scenario(Architecture::Hierarchical), rng);
    const auto r = evaluate(e.link);
    CHECK(r.ul_sum == doctest::Approx(r.ul_se.sum()).epsilon(1e-14));
    CHECK(r.dl_sum == doctest::Approx(r.dl_se.sum()).epsilon(1e-14));
    for (int k = 0; k < e.link.users(); ++k) {
        CHECK(r.ul_sinr(k) >= 0);
        CHECK(r.ul_se(k) == doctest::Approx(std::log2(1 + r.ul_sinr(k))).epsilon(1e-14));
    }
}
