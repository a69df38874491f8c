// SPDX-License-Identifier: Apache-2.0

#include "wgsr/tensor.hpp"
#include "wgsr/wavelet.hpp"

namespace wgsr::ad {

namespace {

Plane plane_from(const float* src, int h, int w) {
    Plane p(h, w);
    for (size_t i = 0; i < p.numel(); ++i) p.v[i] = src[i];
    return p;
}

// Adjoint of one analysis branch: row filter fr, column filter fc, step s.
Plane branch_adjoint(const Plane& g, const std::vector<double>& fr,
                     const std::vector<double>& fc, int step) {
    Plane t1, t2;
    detail::filter_cols_adj(g, fc, step, t1);
    detail::filter_rows_adj(t1, fr, step, t2);
    return t2;
}

}  // namespace

DiffSubbands swt_forward_diff(Tape& t, const Tensor& plane, const WaveletFilter& filter,
                              int levels) {
    if (plane.shape.c != 1)
        throw Error("swt_forward_diff: expected single-channel planes, got " +
                    plane.shape.str());
    const int N = plane.shape.n, H = plane.shape.h, W = plane.shape.w;

    DiffSubbands out;
    out.levels = levels;
    out.labels = subband_labels(levels);
    for (size_t b = 0; b < out.labels.size(); ++b)
        out.bands.push_back(Tensor::zeros(Shape{N, 1, H, W}, plane.needs_grad()));

    const size_t sz = static_cast<size_t>(H) * W;
    for (int n = 0; n < N; ++n) {
        Plane p = plane_from(plane.val() + n * sz, H, W);
        SubbandSet set = swt2_forward(p, filter, levels);
        for (size_t b = 0; b < set.planes.size(); ++b) {
            float* dst = out.bands[b].val() + n * sz;
            for (size_t i = 0; i < sz; ++i) dst[i] = static_cast<float>(set.planes[b].v[i]);
        }
    }

    if (plane.needs_grad()) {
        std::vector<Tensor> bands = out.bands;
        t.record([plane, bands, filter, levels, N, H, W, sz]() mutable {
            for (int n = 0; n < N; ++n) {
                auto band_grad = [&](size_t b) {
                    Plane g(H, W);
                    const auto& gv = bands[b].data->grad;
                    if (!gv.empty())
                        for (size_t i = 0; i < sz; ++i) g.v[i] = gv[n * sz + i];
                    return g;
                };
                Plane acc(H, W);
                auto add = [&](const Plane& p) {
                    for (size_t i = 0; i < sz; ++i) acc.v[i] += p.v[i];
                };
                if (levels == 1) {
                    add(branch_adjoint(band_grad(0), filter.dec_lo, filter.dec_lo, 1));
                    add(branch_adjoint(band_grad(1), filter.dec_hi, filter.dec_lo, 1));
                    add(branch_adjoint(band_grad(2), filter.dec_lo, filter.dec_hi, 1));
                    add(branch_adjoint(band_grad(3), filter.dec_hi, filter.dec_hi, 1));
                } else {
                    // level-2 bands feed the level-1 LL branch
                    Plane gll(H, W);
                    auto addll = [&](const Plane& p) {
                        for (size_t i = 0; i < sz; ++i) gll.v[i] += p.v[i];
                    };
                    addll(branch_adjoint(band_grad(0), filter.dec_lo, filter.dec_lo, 2));
                    addll(branch_adjoint(band_grad(1), filter.dec_hi, filter.dec_lo, 2));
                    addll(branch_adjoint(band_grad(2), filter.dec_lo, filter.dec_hi, 2));
                    addll(branch_adjoint(band_grad(3), filter.dec_hi, filter.dec_hi, 2));
                    add(branch_adjoint(gll, filter.dec_lo, filter.dec_lo, 1));
                    add(branch_adjoint(band_grad(4), filter.dec_hi, filter.dec_lo, 1));
                    add(branch_adjoint(band_grad(5), filter.dec_lo, filter.dec_hi, 1));
                    add(branch_adjoint(band_grad(6), filter.dec_hi, filter.dec_hi, 1));
                }
                float* gx = plane.grad() + n * sz;
                for (size_t i = 0; i < sz; ++i) gx[i] += static_cast<float>(acc.v[i]);
            }
        });
    }
    return out;
}

}  // namespace wgsr::ad
