// SPDX-License-Identifier: Apache-2.0

#include "wgsr/adam.hpp"

#include <cmath>

namespace wgsr {

AdamState AdamState::init_for(const Params& params, AdamConfig cfg) {
    AdamState s;
    s.cfg = cfg;
    for (const auto& [name, t] : params.items) {
        s.m.emplace_back(t.numel(), 0.0);
        s.v.emplace_back(t.numel(), 0.0);
    }
    return s;
}

void adam_step(Params& params, AdamState& state, double lr) {
    if (state.m.size() != params.items.size())
        throw Error("adam_step: state does not match parameter list");
    ++state.step;
    const double b1 = state.cfg.beta1, b2 = state.cfg.beta2;
    const double bc1 = 1.0 - std::pow(b1, state.step);
    const double bc2 = 1.0 - std::pow(b2, state.step);
    for (size_t p = 0; p < params.items.size(); ++p) {
        auto& [name, t] = params.items[p];
        if (t.grad_vec().empty())
            throw Error("adam_step: no gradient for parameter '" + name + "'");
        const float* g = t.grad_vec().data();
        float* w = t.val();
        auto& m = state.m[p];
        auto& v = state.v[p];
        for (size_t i = 0; i < t.numel(); ++i) {
            m[i] = b1 * m[i] + (1.0 - b1) * g[i];
            v[i] = b2 * v[i] + (1.0 - b2) * static_cast<double>(g[i]) * g[i];
            const double mhat = m[i] / bc1;
            const double vhat = v[i] / bc2;
            w[i] = static_cast<float>(w[i] - lr * mhat / (std::sqrt(vhat) + state.cfg.eps));
        }
    }
}

}  // namespace wgsr
