#pragma once

#include "dogm/tensor.hpp"

namespace dogm {

/* Hidden and cell tensors of one ConvLSTM layer, tagged with the pyramid
 * level they live on. The two bottleneck layers are both tagged with the
 * coarsest level. */
template <typename T>
struct RecurrentState {
    int level = 0;
    Tensor<T> hidden;
    Tensor<T> cell;
};

} // namespace dogm
