#include "hcf/linklevel.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "hcf/parallel.hpp"

namespace hcf {

namespace {

using cd = std::complex<double>;

constexpr std::size_t kChunkDraws = 2048;

constexpr std::array<std::string_view, 4> kUplinkNearLabels{"desired", "cee", "iui", "noise"};
constexpr std::array<std::string_view, 5> kUplinkFarLabels{"desired", "cee", "iui", "noise", "channel_uncertainty"};
constexpr std::array<std::string_view, 6> kDownlinkNearLabels{"desired",  "channel_uncertainty", "cee",
                                                              "iui_near", "iui_far",             "noise"};
constexpr std::array<std::string_view, 6> kDownlinkFarLabels{"desired", "channel_uncertainty", "cee",
                                                             "iui_far", "iui_near",            "noise"};

void fill_normal(Eigen::MatrixXcd& out, const Eigen::MatrixXd& variance, ComplexNormal& cn, Rng& rng) {
    out.resize(variance.rows(), variance.cols());
    for (Eigen::Index j = 0; j < variance.cols(); ++j)
        for (Eigen::Index i = 0; i < variance.rows(); ++i) out(i, j) = cn(rng, variance(i, j));
}

void fill_normal(Eigen::VectorXcd& out, Eigen::Index n, double variance, ComplexNormal& cn, Rng& rng) {
    out.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) out(i) = cn(rng, variance);
}

double relative_gap(double value, double reference) {
    if (reference == 0.0) return value == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return std::abs(value / reference - 1.0);
}

}  // namespace

ChannelRealization draw_channels(const FadingMatrix& fading, const EstimateQuality<double>& quality,
                                 int cbs_antennas, Rng& rng) {
    ComplexNormal cn;
    ChannelRealization ch;
    const Eigen::MatrixXd ap_error = (fading.ap - quality.ap).cwiseMax(0.0);
    fill_normal(ch.g_hat, quality.ap, cn, rng);
    fill_normal(ch.g_tilde, ap_error, cn, rng);
    ch.g = ch.g_hat + ch.g_tilde;

    const auto users = fading.users();
    Eigen::MatrixXd cbs_est = Eigen::MatrixXd::Zero(cbs_antennas, users);
    Eigen::MatrixXd cbs_err = Eigen::MatrixXd::Zero(cbs_antennas, users);
    if (fading.has_cbs() && cbs_antennas > 0) {
        cbs_est.rowwise() = quality.cbs.transpose();
        cbs_err.rowwise() = (fading.cbs - quality.cbs).cwiseMax(0.0).transpose();
    }
    fill_normal(ch.h_hat, cbs_est, cn, rng);
    fill_normal(ch.h_tilde, cbs_err, cn, rng);
    ch.h = ch.h_hat + ch.h_tilde;
    return ch;
}

SymbolBlock draw_symbols(int users, int cbs_antennas, int aps, double noise_power, Rng& rng) {
    ComplexNormal cn;
    SymbolBlock s;
    fill_normal(s.x, users, 1.0, cn, rng);
    fill_normal(s.u, users, 1.0, cn, rng);
    fill_normal(s.cbs_noise, cbs_antennas, noise_power, cn, rng);
    fill_normal(s.ap_noise, aps, noise_power, cn, rng);
    fill_normal(s.ue_noise, users, noise_power, cn, rng);
    return s;
}

DrawSignals make_signals(const LinkState<double>& state, const ChannelRealization& ch, const SymbolBlock& sym) {
    const auto& p = state.power;
    const auto& assoc = state.association;
    const Eigen::VectorXcd weighted_x =
        (std::sqrt(p.ue_power_w) * p.uplink_eta.array().sqrt()).matrix().cast<cd>().cwiseProduct(sym.x);

    DrawSignals sig;
    sig.cbs_rx = ch.h * weighted_x + sym.cbs_noise;
    sig.ap_rx = ch.g * weighted_x + sym.ap_noise;

    const double amp = std::sqrt(p.antenna_power_w);
    sig.cbs_precoder = Eigen::MatrixXcd::Zero(ch.h_hat.rows(), ch.h_hat.cols());
    for (int j : assoc.near_users)
        sig.cbs_precoder.col(j) =
            (amp * p.downlink_eta_cbs.col(j).array().sqrt()).matrix().cast<cd>().cwiseProduct(ch.h_hat.col(j).conjugate());
    sig.ap_precoder = Eigen::MatrixXcd::Zero(ch.g_hat.rows(), ch.g_hat.cols());
    for (int m = 0; m < assoc.aps(); ++m)
        for (int j : assoc.served_users[m])
            sig.ap_precoder(m, j) = amp * std::sqrt(p.downlink_eta_ap(m, j)) * std::conj(ch.g_hat(m, j));

    sig.cbs_tx = sig.cbs_precoder * sym.u;
    sig.ap_tx = sig.ap_precoder * sym.u;
    sig.ue_rx = ch.h.transpose() * sig.cbs_tx + ch.g.transpose() * sig.ap_tx + sym.ue_noise;
    return sig;
}

std::string_view to_string(LinkKind kind) {
    switch (kind) {
        case LinkKind::UplinkNear: return "ul_nu";
        case LinkKind::UplinkFar: return "ul_fu";
        case LinkKind::DownlinkNear: return "dl_nu";
        case LinkKind::DownlinkFar: return "dl_fu";
    }
    return "?";
}

std::span<const std::string_view> term_labels(LinkKind kind) {
    switch (kind) {
        case LinkKind::UplinkNear: return kUplinkNearLabels;
        case LinkKind::UplinkFar: return kUplinkFarLabels;
        case LinkKind::DownlinkNear: return kDownlinkNearLabels;
        case LinkKind::DownlinkFar: return kDownlinkFarLabels;
    }
    return {};
}

TermSample ul_decompose_nu(int k, const LinkState<double>& state, const ChannelRealization& ch,
                           const SymbolBlock& sym, const DrawSignals& sig) {
    detail::require_near(state.association, k, "ul_decompose_nu");
    const auto& p = state.power;
    const double pu = p.ue_power_w;
    const auto h_hat = ch.h_hat.col(k);
    const cd gain = std::sqrt(pu * p.uplink_eta(k)) * sym.x(k);

    // inner products of the combiner with every user's true channel
    const Eigen::RowVectorXcd leak = h_hat.adjoint() * ch.h;
    cd iui = 0;
    double iui_power = 0;
    for (int j = 0; j < state.users(); ++j) {
        if (j == k) continue;
        iui += std::sqrt(pu * p.uplink_eta(j)) * leak(j) * sym.x(j);
        iui_power += pu * p.uplink_eta(j) * std::norm(leak(j));
    }

    const double energy = h_hat.squaredNorm();
    const cd cee = h_hat.dot(ch.h_tilde.col(k));
    const double pe = pu * p.uplink_eta(k);
    TermSample t;
    t.terms.resize(4);
    t.terms << gain * energy, gain * cee, iui, h_hat.dot(sym.cbs_noise);
    t.power.resize(4);
    t.power << pe * energy * energy, pe * std::norm(cee), iui_power, state.noise_power * energy;
    t.received = h_hat.dot(sig.cbs_rx);
    return t;
}

TermSample ul_decompose_fu(int k, const LinkState<double>& state, const ChannelRealization& ch,
                           const SymbolBlock& sym, const DrawSignals& sig, std::span<const int> serving) {
    if (serving.empty()) throw MisuseError("ul_decompose_fu: empty serving set for user " + std::to_string(k));
    const auto& p = state.power;
    const double pu = p.ue_power_w;
    const cd gain = std::sqrt(pu * p.uplink_eta(k)) * sym.x(k);

    double mean_gain = 0, energy = 0;
    cd cee = 0, noise = 0, uncertainty = 0, received = 0;
    // combined channel of every user through user k's combiner
    Eigen::VectorXcd leak = Eigen::VectorXcd::Zero(state.users());
    for (int m : serving) {
        const cd est = ch.g_hat(m, k);
        const double alpha = state.quality.ap(m, k);
        mean_gain += alpha;
        energy += std::norm(est);
        cee += std::conj(est) * ch.g_tilde(m, k);
        leak += std::conj(est) * ch.g.row(m).transpose();
        noise += std::conj(est) * sym.ap_noise(m);
        uncertainty += std::norm(est) - alpha;
        received += std::conj(est) * sig.ap_rx(m);
    }
    cd iui = 0;
    double iui_power = 0;
    for (int j = 0; j < state.users(); ++j) {
        if (j == k) continue;
        iui += std::sqrt(pu * p.uplink_eta(j)) * leak(j) * sym.x(j);
        iui_power += pu * p.uplink_eta(j) * std::norm(leak(j));
    }

    const double pe = pu * p.uplink_eta(k);
    TermSample t;
    t.terms.resize(5);
    t.terms << gain * mean_gain, gain * cee, iui, noise, gain * uncertainty;
    t.power.resize(5);
    t.power << pe * mean_gain * mean_gain, pe * std::norm(cee), iui_power, state.noise_power * energy,
        pe * std::norm(uncertainty);
    t.received = received;
    return t;
}

TermSample dl_decompose(int k, const LinkState<double>& state, const ChannelRealization& ch,
                        const SymbolBlock& sym, const DrawSignals& sig) {
    const auto& p = state.power;
    const auto& assoc = state.association;
    const double amp = std::sqrt(p.antenna_power_w);
    const bool near = assoc.is_near(k);

    // effective gains of user k's true channel through every user's precoder
    const Eigen::VectorXcd via_cbs = sig.cbs_precoder.transpose() * ch.h.col(k);
    const Eigen::VectorXcd via_aps = sig.ap_precoder.transpose() * ch.g.col(k);

    double desired = 0;
    cd uncertainty = 0, cee = 0;
    if (near) {
        for (int n = 0; n < state.cbs_antennas; ++n) {
            const double w = amp * std::sqrt(p.downlink_eta_cbs(n, k));
            const cd est = ch.h_hat(n, k);
            desired += w * state.quality.cbs(k);
            uncertainty += w * (std::norm(est) - state.quality.cbs(k));
            cee += w * ch.h_tilde(n, k) * std::conj(est);
        }
    } else {
        for (int m : assoc.serving_aps[k]) {
            const double w = amp * std::sqrt(p.downlink_eta_ap(m, k));
            const cd est = ch.g_hat(m, k);
            desired += w * state.quality.ap(m, k);
            uncertainty += w * (std::norm(est) - state.quality.ap(m, k));
            cee += w * ch.g_tilde(m, k) * std::conj(est);
        }
    }

    cd from_near = 0, from_far = 0;
    double near_power = 0, far_power = 0;
    for (int j : assoc.near_users) {
        if (j == k) continue;
        from_near += via_cbs(j) * sym.u(j);
        near_power += std::norm(via_cbs(j));
    }
    for (int j = 0; j < state.users(); ++j) {
        if (j == k || assoc.is_near(j)) continue;
        from_far += via_aps(j) * sym.u(j);
        far_power += std::norm(via_aps(j));
    }

    const cd u = sym.u(k);
    const double sigma2 = state.noise_power;
    TermSample t;
    t.terms.resize(6);
    t.power.resize(6);
    if (near) {
        t.terms << desired * u, uncertainty * u, cee * u, from_near, from_far, sym.ue_noise(k);
        t.power << desired * desired, std::norm(uncertainty), std::norm(cee), near_power, far_power, sigma2;
    } else {
        t.terms << desired * u, uncertainty * u, cee * u, from_far, from_near, sym.ue_noise(k);
        t.power << desired * desired, std::norm(uncertainty), std::norm(cee), far_power, near_power, sigma2;
    }
    t.received = sig.ue_rx(k);
    return t;
}

Eigen::VectorXd term_targets(LinkKind kind, int k, const LinkState<double>& s) {
    const auto& p = s.power;
    const auto& assoc = s.association;
    const auto& alpha = s.quality;
    const auto& beta = s.fading;
    const double sigma2 = s.noise_power;
    Eigen::VectorXd t;

    switch (kind) {
        case LinkKind::UplinkNear: {
            const double nb = s.cbs_antennas;
            const double a = alpha.cbs(k);
            double others = 0;
            for (int j = 0; j < s.users(); ++j)
                if (j != k) others += p.uplink_eta(j) * beta.cbs(j);
            t.resize(4);
            t << p.ue_power_w * p.uplink_eta(k) * nb * nb * a * a,
                p.ue_power_w * p.uplink_eta(k) * nb * a * (beta.cbs(k) - a), p.ue_power_w * nb * a * others,
                sigma2 * nb * a;
            break;
        }
        case LinkKind::UplinkFar: {
            double sum_a = 0, cee = 0, iui = 0, sq = 0;
            for (int m : assoc.serving_aps.at(k)) {
                const double a = alpha.ap(m, k);
                sum_a += a;
                cee += a * (beta.ap(m, k) - a);
                sq += a * a;
                double others = 0;
                for (int j = 0; j < s.users(); ++j)
                    if (j != k) others += p.uplink_eta(j) * beta.ap(m, j);
                iui += a * others;
            }
            const double pe = p.ue_power_w * p.uplink_eta(k);
            t.resize(5);
            t << pe * sum_a * sum_a, pe * cee, p.ue_power_w * iui, sigma2 * sum_a, pe * sq;
            break;
        }
        case LinkKind::DownlinkNear:
        case LinkKind::DownlinkFar: {
            const bool near = kind == LinkKind::DownlinkNear;
            double coherent = 0, uncertainty = 0, cee = 0;
            if (near) {
                const double a = alpha.cbs(k), b = beta.cbs(k);
                for (int n = 0; n < s.cbs_antennas; ++n) {
                    const double e = p.downlink_eta_cbs(n, k);
                    coherent += std::sqrt(e) * a;
                    uncertainty += e * a * a;
                    cee += e * a * (b - a);
                }
            } else {
                for (int m : assoc.serving_aps.at(k)) {
                    const double e = p.downlink_eta_ap(m, k), a = alpha.ap(m, k), b = beta.ap(m, k);
                    coherent += std::sqrt(e) * a;
                    uncertainty += e * a * a;
                    cee += e * a * (b - a);
                }
            }
            double iui_near = 0, iui_far = 0;
            if (beta.has_cbs())
                for (int n = 0; n < s.cbs_antennas; ++n)
                    for (int j : assoc.near_users)
                        if (j != k) iui_near += beta.cbs(k) * p.downlink_eta_cbs(n, j) * alpha.cbs(j);
            for (int m = 0; m < s.aps(); ++m)
                for (int j : assoc.served_users[m])
                    if (j != k) iui_far += beta.ap(m, k) * p.downlink_eta_ap(m, j) * alpha.ap(m, j);
            const double pd = p.antenna_power_w;
            t.resize(6);
            if (near)
                t << pd * coherent * coherent, pd * uncertainty, pd * cee, pd * iui_near, pd * iui_far, sigma2;
            else
                t << pd * coherent * coherent, pd * uncertainty, pd * cee, pd * iui_far, pd * iui_near, sigma2;
            break;
        }
    }
    return t;
}

std::vector<LinkKind> link_kinds(const LinkState<double>& state, int k) {
    if (state.association.is_near(k)) return {LinkKind::UplinkNear, LinkKind::DownlinkNear};
    if (state.association.serving_aps.at(k).empty()) return {};
    return {LinkKind::UplinkFar, LinkKind::DownlinkFar};
}

double TermPowerEstimate::sinr() const {
    const double disturbance = power.sum() - power(0);
    return power(0) / disturbance;
}

TermPowerAccumulator::TermPowerAccumulator(LinkKind kind)
    : kind_(kind),
      power_(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(term_labels(kind).size()))),
      power_sq_(Eigen::VectorXd::Zero(power_.size())),
      cross_(Eigen::VectorXcd::Zero(power_.size())) {}

void TermPowerAccumulator::add(const TermSample& sample) {
    ++draws_;
    power_ += sample.power;
    power_sq_ += sample.power.cwiseAbs2();
    cross_ += sample.terms(0) * sample.terms.conjugate();
    const double scale = std::max(std::abs(sample.received), std::numeric_limits<double>::min());
    max_error_ = std::max(max_error_, std::abs(sample.terms.sum() - sample.received) / scale);
}

void TermPowerAccumulator::merge(const TermPowerAccumulator& other) {
    draws_ += other.draws_;
    power_ += other.power_;
    power_sq_ += other.power_sq_;
    cross_ += other.cross_;
    max_error_ = std::max(max_error_, other.max_error_);
}

TermPowerEstimate TermPowerAccumulator::estimate() const {
    TermPowerEstimate e;
    e.kind = kind_;
    e.draws = draws_;
    const double n = static_cast<double>(std::max<std::size_t>(draws_, 1));
    e.power = power_ / n;
    const Eigen::ArrayXd spread = (power_sq_.array() / n - e.power.array().square()).max(0.0);
    e.standard_error = (spread / std::max(n - 1, 1.0)).sqrt().matrix();
    e.correlation = Eigen::VectorXd::Zero(power_.size());
    for (Eigen::Index i = 1; i < power_.size(); ++i) {
        const double norm = std::sqrt(e.power(0) * e.power(i));
        e.correlation(i) = norm > 0 ? std::abs(cross_(i) / n) / norm : 0.0;
    }
    e.max_reconstruction_error = max_error_;
    return e;
}

double OracleCheck::sinr_deviation() const { return std::abs(ratio - 1.0); }

double OracleCheck::max_term_deviation() const {
    double worst = 0;
    for (Eigen::Index i = 0; i < term_ratio.size(); ++i) worst = std::max(worst, std::abs(term_ratio(i) - 1.0));
    return worst;
}

bool ValidationReport::passed() const { return failures().empty(); }

bool ValidationReport::terms_passed() const { return term_failures().empty(); }

std::vector<OracleCheck> ValidationReport::failures() const {
    std::vector<OracleCheck> out;
    for (const auto& c : checks)
        if (!(c.sinr_deviation() <= tolerance)) out.push_back(c);
    return out;
}

std::vector<OracleCheck> ValidationReport::term_failures() const {
    std::vector<OracleCheck> out;
    for (const auto& c : checks)
        if (!(c.max_term_deviation() <= term_tolerance)) out.push_back(c);
    return out;
}

std::vector<TermPowerEstimate> estimate_term_powers(const LinkState<double>& state, const OracleOptions& opt) {
    struct Slot {
        int user;
        LinkKind kind;
    };
    std::vector<Slot> slots;
    for (int k = 0; k < state.users(); ++k)
        for (auto kind : link_kinds(state, k)) slots.push_back({k, kind});

    const std::size_t chunks = (opt.draws + kChunkDraws - 1) / kChunkDraws;
    std::vector<std::vector<TermPowerAccumulator>> partial(chunks);

    parallel_for(chunks, opt.threads, [&](std::size_t c) {
        std::vector<TermPowerAccumulator> acc;
        acc.reserve(slots.size());
        for (const auto& s : slots) acc.emplace_back(s.kind);
        Rng rng = make_rng(opt.seed, c);
        const std::size_t n = std::min(kChunkDraws, opt.draws - c * kChunkDraws);
        for (std::size_t d = 0; d < n; ++d) {
            const auto ch = draw_channels(state.fading, state.quality, state.cbs_antennas, rng);
            const auto sym = draw_symbols(state.users(), state.cbs_antennas, state.aps(), state.noise_power, rng);
            const auto sig = make_signals(state, ch, sym);
            for (std::size_t i = 0; i < slots.size(); ++i) {
                const auto [k, kind] = slots[i];
                switch (kind) {
                    case LinkKind::UplinkNear: acc[i].add(ul_decompose_nu(k, state, ch, sym, sig)); break;
                    case LinkKind::UplinkFar:
                        acc[i].add(ul_decompose_fu(k, state, ch, sym, sig, state.association.serving_aps[k]));
                        break;
                    default: acc[i].add(dl_decompose(k, state, ch, sym, sig)); break;
                }
            }
        }
        partial[c] = std::move(acc);
    });

    std::vector<TermPowerEstimate> out;
    out.reserve(slots.size());
    for (std::size_t i = 0; i < slots.size(); ++i) {
        TermPowerAccumulator total(slots[i].kind);
        for (const auto& chunk : partial) total.merge(chunk[i]);
        out.push_back(total.estimate());
    }
    return out;
}

ValidationReport validate_link_state(const LinkState<double>& state, const OracleOptions& opt, int epoch) {
    ValidationReport report;
    report.draws = opt.draws;
    report.tolerance = opt.tolerance;
    report.term_tolerance = opt.term_tolerance;

    const auto estimates = estimate_term_powers(state, opt);
    std::size_t i = 0;
    for (int k = 0; k < state.users(); ++k) {
        for (auto kind : link_kinds(state, k)) {
            const auto& est = estimates[i++];
            OracleCheck c;
            c.epoch = epoch;
            c.user = k;
            c.kind = kind;
            switch (kind) {
                case LinkKind::UplinkNear: c.closed_form = ul_sinr_nu(state, k); break;
                case LinkKind::UplinkFar: c.closed_form = ul_sinr_fu(state, k); break;
                case LinkKind::DownlinkNear: c.closed_form = dl_sinr_nu(state, k); break;
                case LinkKind::DownlinkFar: c.closed_form = dl_sinr_fu(state, k); break;
            }
            c.empirical = est.sinr();
            c.ratio = c.empirical / c.closed_form;
            c.target_power = term_targets(kind, k, state);
            c.empirical_power = est.power;
            c.term_ratio.resize(est.power.size());
            for (Eigen::Index t = 0; t < est.power.size(); ++t)
                c.term_ratio(t) = relative_gap(est.power(t), c.target_power(t)) == 0.0
                                      ? 1.0
                                      : est.power(t) / c.target_power(t);
            c.term_z = Eigen::VectorXd::Zero(est.power.size());
            for (Eigen::Index t = 0; t < est.power.size(); ++t)
                if (est.standard_error(t) > 0)
                    c.term_z(t) = (est.power(t) - c.target_power(t)) / est.standard_error(t);
            c.max_correlation = est.correlation.maxCoeff();
            c.reconstruction_error = est.max_reconstruction_error;
            report.checks.push_back(std::move(c));
        }
    }
    return report;
}

ValidationReport validate_closed_form(const Scenario& scenario, int epochs, const OracleOptions& opt) {
    ValidationReport report;
    report.draws = opt.draws;
    report.tolerance = opt.tolerance;
    report.term_tolerance = opt.term_tolerance;
    for (int e = 0; e < epochs; ++e) {
        Rng rng = make_rng(opt.seed, static_cast<std::uint64_t>(e));
        const auto epoch = realize_epoch(scenario, rng);
        OracleOptions sub = opt;
        sub.seed = derive_seed(opt.seed ^ 0xa5a5a5a5a5a5a5a5ULL, static_cast<std::uint64_t>(e));
        auto r = validate_link_state(epoch.link, sub, e);
        for (auto& c : r.checks) report.checks.push_back(std::move(c));
    }
    return report;
}

}  // namespace hcf
