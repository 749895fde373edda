#ifndef HCF_LINKLEVEL_HPP
#define HCF_LINKLEVEL_HPP

#include <Eigen/Core>

#include <complex>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "hcf/random.hpp"
#include "hcf/scenario.hpp"
#include "hcf/sinr.hpp"

// Small-scale fading oracle. Draws channels, estimates, symbols and noise,
// splits every detected/received signal into its labeled terms and compares
// the empirical term powers with the closed-form SINR expressions.

namespace hcf {

/// True channels and their MMSE estimate/error split, g = g_hat + g_tilde.
struct ChannelRealization {
    Eigen::MatrixXcd g, g_hat, g_tilde;  ///< (M - N_b) x K
    Eigen::MatrixXcd h, h_hat, h_tilde;  ///< N_b x K
};

/// Draws g_hat ~ CN(0, alpha) and g_tilde ~ CN(0, beta - alpha)
/// independently (likewise for the CBS array) and forms their sums.
ChannelRealization draw_channels(const FadingMatrix& fading, const EstimateQuality<double>& quality,
                                 int cbs_antennas, Rng& rng);

/// Unit-variance Gaussian data symbols and CN(0, sigma^2) receiver noise.
struct SymbolBlock {
    Eigen::VectorXcd x;          ///< uplink symbols, K
    Eigen::VectorXcd u;          ///< downlink symbols, K
    Eigen::VectorXcd cbs_noise;  ///< n_b, N_b
    Eigen::VectorXcd ap_noise;   ///< n_m, M - N_b
    Eigen::VectorXcd ue_noise;   ///< w_k, K
};

SymbolBlock draw_symbols(int users, int cbs_antennas, int aps, double noise_power, Rng& rng);

/// Transmitted and received signals of one draw, computed from the signal
/// models directly (not from any term split).
struct DrawSignals {
    Eigen::VectorXcd cbs_rx;  ///< y_b
    Eigen::VectorXcd ap_rx;   ///< y_m
    Eigen::VectorXcd cbs_tx;  ///< d_n
    Eigen::VectorXcd ap_tx;   ///< s_m
    Eigen::VectorXcd ue_rx;   ///< y_k
    Eigen::MatrixXcd cbs_precoder;  ///< sqrt(p_d eta_nj) conj(h_hat_nj), j in K_0
    Eigen::MatrixXcd ap_precoder;   ///< sqrt(p_d eta_mj) conj(g_hat_mj), j in K_m
};

DrawSignals make_signals(const LinkState<double>& state, const ChannelRealization& ch, const SymbolBlock& sym);

enum class LinkKind { UplinkNear, UplinkFar, DownlinkNear, DownlinkFar };

std::string_view to_string(LinkKind kind);

/// Term names in the order used by TermSample and term_targets. Index 0 is
/// always the desired signal.
std::span<const std::string_view> term_labels(LinkKind kind);

/// Labeled terms of one draw and the directly computed signal they split.
///
/// `power` holds the power of each term averaged over the data symbols and
/// receiver noise given this draw's channels (both have known second
/// moments); its mean over draws is the unconditional term power.
struct TermSample {
    Eigen::VectorXcd terms;
    Eigen::VectorXd power;
    std::complex<double> received;
};

/// MF soft estimate at the CBS for near user k:
/// desired, CEE, IUI, noise.
TermSample ul_decompose_nu(int k, const LinkState<double>& state, const ChannelRealization& ch,
                           const SymbolBlock& sym, const DrawSignals& sig);

/// Soft estimate combined over `serving` for user k, detected with channel
/// statistics: desired, CEE, IUI, noise, channel uncertainty.
TermSample ul_decompose_fu(int k, const LinkState<double>& state, const ChannelRealization& ch,
                           const SymbolBlock& sym, const DrawSignals& sig, std::span<const int> serving);

/// Downlink received signal of user k. Near users: desired, channel
/// uncertainty, CEE, IUI from other near users, IUI from far users, noise.
/// Far users: desired, channel uncertainty, CEE, IUI from other far users,
/// IUI from near users, noise.
TermSample dl_decompose(int k, const LinkState<double>& state, const ChannelRealization& ch,
                        const SymbolBlock& sym, const DrawSignals& sig);

/// Closed-form mean power of every labeled term.
Eigen::VectorXd term_targets(LinkKind kind, int k, const LinkState<double>& state);

/// Link kinds that apply to user k (uplink first).
std::vector<LinkKind> link_kinds(const LinkState<double>& state, int k);

struct TermPowerEstimate {
    LinkKind kind = LinkKind::UplinkNear;
    std::size_t draws = 0;
    Eigen::VectorXd power;        ///< mean term power
    Eigen::VectorXd standard_error;  ///< of each mean power
    Eigen::VectorXd correlation;  ///< |E[t_0 conj(t_i)]| / sqrt(P_0 P_i); zero at index 0
    double max_reconstruction_error = 0;  ///< max |sum(terms) - received| / |received|

    /// Desired power over the sum of all other term powers.
    double sinr() const;
};

class TermPowerAccumulator {
public:
    explicit TermPowerAccumulator(LinkKind kind);

    void add(const TermSample& sample);
    void merge(const TermPowerAccumulator& other);
    TermPowerEstimate estimate() const;

private:
    LinkKind kind_;
    std::size_t draws_ = 0;
    Eigen::VectorXd power_;
    Eigen::VectorXd power_sq_;
    Eigen::VectorXcd cross_;
    double max_error_ = 0;
};

struct OracleCheck {
    int epoch = 0;
    int user = 0;
    LinkKind kind = LinkKind::UplinkNear;
    double closed_form = 0;  ///< Eq-level SINR from the sinr module
    double empirical = 0;    ///< ratio of averaged term powers
    double ratio = 0;        ///< empirical / closed_form
    Eigen::VectorXd target_power;
    Eigen::VectorXd empirical_power;
    Eigen::VectorXd term_ratio;  ///< empirical / target, 1 where both vanish
    Eigen::VectorXd term_z;      ///< (empirical - target) / standard error, 0 where undefined
    double max_correlation = 0;
    double reconstruction_error = 0;

    double sinr_deviation() const;
    double max_term_deviation() const;
};

struct ValidationReport {
    std::size_t draws = 0;
    double tolerance = 0;       ///< on |ratio - 1| of the SINRs
    double term_tolerance = 0;  ///< on |term_ratio - 1|
    std::vector<OracleCheck> checks;

    bool passed() const;  ///< every SINR within tolerance
    bool terms_passed() const;
    std::vector<OracleCheck> failures() const;
    std::vector<OracleCheck> term_failures() const;
};

struct OracleOptions {
    std::size_t draws = 100000;
    double tolerance = 0.05;
    double term_tolerance = 0.02;
    std::uint64_t seed = 1;
    int threads = 0;
};

/// Monte Carlo over small-scale fading for one fixed epoch. Draws are split
/// into fixed-size chunks with their own derived streams, so the result is
/// identical for any thread count.
std::vector<TermPowerEstimate> estimate_term_powers(const LinkState<double>& state, const OracleOptions& opt);

ValidationReport validate_link_state(const LinkState<double>& state, const OracleOptions& opt, int epoch = 0);

/// Validates `epochs` independently drawn layouts of `scenario`.
ValidationReport validate_closed_form(const Scenario& scenario, int epochs, const OracleOptions& opt);

}  // namespace hcf

#endif  // HCF_LINKLEVEL_HPP
