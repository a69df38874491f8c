// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "wgsr/wavelet.hpp"

namespace wgsr::ref {

// Straight serial counterparts of the OpenMP kernels, kept as the ground
// truth for equivalence tests and the benchmark baseline.

void conv2d_forward(const float* x, const float* w, const float* b, float* y,
                    int N, int IC, int H, int W, int OC, int KH, int KW,
                    int stride, int pad, int OH, int OW);

void filter_rows(const Plane& in, const std::vector<double>& h, int step, Plane& out);
void filter_cols(const Plane& in, const std::vector<double>& h, int step, Plane& out);

// Dense 2-D circular convolution with the separable kernel
// k[y][x] = fc[y] * fr[x] upsampled by `step` (a-trous zeros inserted);
// the O(H*W*L^2) oracle the fast path must match.
Plane circular_conv2d(const Plane& in, const std::vector<double>& fr,
                      const std::vector<double>& fc, int step);

}  // namespace wgsr::ref
