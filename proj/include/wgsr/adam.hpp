// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "wgsr/models.hpp"

namespace wgsr {

struct AdamConfig {
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

// First/second moment buffers mirroring a Params list, plus a shared step
// counter. Buffers are addressed positionally, so the parameter order must
// not change between steps.
struct AdamState {
    AdamConfig cfg;
    std::vector<std::vector<double>> m, v;
    long step = 0;

    static AdamState init_for(const Params& params, AdamConfig cfg = {});
};

// Standard bias-corrected update from the accumulated gradients; every
// parameter must have a populated gradient. Gradients are left untouched.
void adam_step(Params& params, AdamState& state, double lr);

}  // namespace wgsr
