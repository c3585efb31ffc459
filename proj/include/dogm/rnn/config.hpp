#pragma once

#include <cstdint>
#include <vector>

#include "dogm/error.hpp"

namespace dogm {

/* Architecture of the recurrent grid network: a stride-3 convolutional
 * encoder (one level per entry of level_channels), a ConvLSTM per skip
 * connection with fewer state channels than its input, a two-layer
 * bottleneck ConvLSTM, and two mirrored transposed-convolution decoders. */
struct NetConfig {
    int input_width = 108;   // placed-canvas extent, east
    int input_height = 108;  // placed-canvas extent, north
    std::vector<int> level_channels = {8, 16, 24, 32};
    std::vector<int> skip_state_channels = {4, 8, 12};
    int bottleneck_channels = 0;  // 0: same as the deepest level
    int kernel_size = 3;
    double dropout_rate = 0.1;
    double lrelu_slope = 0.1;
    std::uint64_t seed = 1;

    int levels() const { return static_cast<int>(level_channels.size()); }
    int bottleneck() const {
        return bottleneck_channels > 0 ? bottleneck_channels : level_channels.back();
    }

    void validate() const {
        if (levels() < 2)
            throw ConfigError("NetConfig: need at least two levels");
        if (static_cast<int>(skip_state_channels.size()) != levels() - 1)
            throw ConfigError("NetConfig: one skip state channel count per "
                              "non-bottleneck level required");
        for (int l = 0; l < levels() - 1; ++l) {
            if (skip_state_channels[l] < 1 ||
                skip_state_channels[l] >= level_channels[l])
                throw ConfigError("NetConfig: skip states must have fewer "
                                  "channels than their input");
        }
        for (int c : level_channels)
            if (c < 1)
                throw ConfigError("NetConfig: channel counts must be >= 1");
        if (kernel_size < 3 || kernel_size % 2 == 0)
            throw ConfigError("NetConfig: kernel size must be odd and >= 3");
        if (dropout_rate < 0.0 || dropout_rate >= 1.0)
            throw ConfigError("NetConfig: dropout rate must be in [0, 1)");
        if (input_width < kernel_size || input_height < kernel_size)
            throw ConfigError("NetConfig: input smaller than one kernel");
    }
};

} // namespace dogm
