#pragma once

#include "dogm/rnn/network.hpp"
#include "dogm/tensor.hpp"

namespace dogm {

/* Weights and thresholds of the composite training objective. */
struct LossWeights {
    double alpha_p = 50.0;
    double alpha_v = 0.02;
    double alpha_d = 0.1;
    double huber_delta = 0.02;
    double occ_mask_threshold = 0.7;
};

template <typename T>
struct LossResult {
    T value = T(0);
    T occ_term = T(0);   // unweighted mean Huber
    T vel_term = T(0);   // unweighted L_vE + L_vN
    T dyn_term = T(0);   // unweighted mean squared dynamic error
    std::int64_t masked_cells = 0;
    Tensor<T> grad;      // d loss / d prediction, channels as DogmChannel
};

/* Weighted sum of the occupancy Huber loss over all cells and the masked
 * mean-squared velocity and dynamic-classification losses. The mask is
 * label occupancy > occ_mask_threshold; with an empty mask the masked terms
 * contribute zero. label channels follow DogmChannel with the dynamic flag
 * in kChanDyn. Reductions run as pairwise trees. */
template <typename T>
LossResult<T> composite_loss(const Tensor<T>& pred, const Tensor<T>& label,
                             const LossWeights& w = {});

} // namespace dogm
