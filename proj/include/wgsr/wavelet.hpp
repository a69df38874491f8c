// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "wgsr/common.hpp"

namespace wgsr {

// Dense H x W plane of float64 samples, row-major.
struct Plane {
    int height = 0;
    int width = 0;
    std::vector<double> v;

    Plane() = default;
    Plane(int h, int w) : height(h), width(w), v(static_cast<size_t>(h) * w, 0.0) {}

    double& at(int y, int x) { return v[static_cast<size_t>(y) * width + x]; }
    double at(int y, int x) const { return v[static_cast<size_t>(y) * width + x]; }
    size_t numel() const { return v.size(); }
};

// Analysis/synthesis filter quadruple for one wavelet family. All four
// vectors are zero-padded to a common even length. `delay` is the circular
// reconstruction delay of the conv(dec, rec) halfband product.
struct WaveletFilter {
    std::string family;
    std::vector<double> dec_lo, dec_hi, rec_lo, rec_hi;
    int length = 0;
    int delay = 0;
    bool orthogonal = false;
};

// Supported family identifiers.
const std::vector<std::string>& supported_families();

// Construct the named filter. haar and db2 are generated analytically;
// the longer families come from the embedded coefficient table. Every
// constructed filter is checked against the halfband PR identity.
WaveletFilter make_filter(const std::string& family);

// Undecimated 2-D decomposition: every subband keeps the source H x W.
// Level 1 holds {LL, LH, HL, HH}; level 2 holds
// {L-LL, L-LH, L-HL, L-HH, LH, HL, HH}.
struct SubbandSet {
    int levels = 0;
    int height = 0;
    int width = 0;
    std::vector<std::string> labels;
    std::vector<Plane> planes;

    const Plane& at(std::string_view label) const;
    Plane& at(std::string_view label);
    bool has(std::string_view label) const;
};

const std::vector<std::string>& subband_labels(int levels);

SubbandSet swt2_forward(const Plane& plane, const WaveletFilter& filter, int levels);
Plane swt2_inverse(const SubbandSet& set, const WaveletFilter& filter);

namespace detail {
// 1-D circular convolution along rows/columns with a-trous step, used by
// both the float64 transform and the differentiable float32 version.
// out[n] = sum_k h[k] * in[(n - k*step) mod N] along the chosen axis.
void filter_rows(const Plane& in, const std::vector<double>& h, int step, Plane& out);
void filter_cols(const Plane& in, const std::vector<double>& h, int step, Plane& out);
// Adjoints (circular correlation): out[m] = sum_k h[k] * in[(m + k*step) mod N].
void filter_rows_adj(const Plane& in, const std::vector<double>& h, int step, Plane& out);
void filter_cols_adj(const Plane& in, const std::vector<double>& h, int step, Plane& out);
}  // namespace detail

}  // namespace wgsr
