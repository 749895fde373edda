#ifndef HCF_ESTIMATION_HPP
#define HCF_ESTIMATION_HPP

#include <Eigen/Core>

#include "hcf/propagation.hpp"

namespace hcf {

/// Variances of the MMSE channel estimates. The estimation error of each
/// link has variance beta - alpha.
template <typename Scalar>
struct EstimateQuality {
    typename LargeScaleFading<Scalar>::Matrix ap;   ///< alpha_mk
    typename LargeScaleFading<Scalar>::Vector cbs;  ///< alpha_k^0
};

/// alpha = p_u beta^2 / (p_u beta + sigma^2), elementwise.
template <typename Derived, typename Scalar>
auto mmse_variance(const Eigen::ArrayBase<Derived>& beta, Scalar ue_power, Scalar noise) {
    return ue_power * beta.square() / (ue_power * beta + noise);
}

template <typename Scalar>
EstimateQuality<Scalar> mmse_quality(const LargeScaleFading<Scalar>& fading, Scalar ue_power, Scalar noise) {
    EstimateQuality<Scalar> q;
    q.ap = mmse_variance(fading.ap.array(), ue_power, noise).matrix();
    q.cbs = mmse_variance(fading.cbs.array(), ue_power, noise).matrix();
    return q;
}

}  // namespace hcf

#endif  // HCF_ESTIMATION_HPP
