// SPDX-License-Identifier: Apache-2.0

#include "wgsr/reference.hpp"

namespace wgsr::ref {

void conv2d_forward(const float* x, const float* w, const float* b, float* y,
                    int N, int IC, int H, int W, int OC, int KH, int KW,
                    int stride, int pad, int OH, int OW) {
    for (int n = 0; n < N; ++n)
        for (int oc = 0; oc < OC; ++oc)
            for (int oy = 0; oy < OH; ++oy)
                for (int ox = 0; ox < OW; ++ox) {
                    double acc = b ? b[oc] : 0.0;
                    for (int ic = 0; ic < IC; ++ic)
                        for (int ky = 0; ky < KH; ++ky) {
                            const int iy = oy * stride - pad + ky;
                            if (iy < 0 || iy >= H) continue;
                            for (int kx = 0; kx < KW; ++kx) {
                                const int ix = ox * stride - pad + kx;
                                if (ix < 0 || ix >= W) continue;
                                acc += static_cast<double>(
                                           x[((static_cast<size_t>(n) * IC + ic) * H + iy) * W +
                                             ix]) *
                                       w[((static_cast<size_t>(oc) * IC + ic) * KH + ky) * KW +
                                         kx];
                            }
                        }
                    y[((static_cast<size_t>(n) * OC + oc) * OH + oy) * OW + ox] =
                        static_cast<float>(acc);
                }
}

void filter_rows(const Plane& in, const std::vector<double>& h, int step, Plane& out) {
    out = Plane(in.height, in.width);
    const int W = in.width;
    for (int y = 0; y < in.height; ++y)
        for (int x = 0; x < W; ++x) {
            double acc = 0.0;
            for (size_t k = 0; k < h.size(); ++k) {
                int src = x - static_cast<int>(k) * step;
                src %= W;
                if (src < 0) src += W;
                acc += h[k] * in.at(y, src);
            }
            out.at(y, x) = acc;
        }
}

void filter_cols(const Plane& in, const std::vector<double>& h, int step, Plane& out) {
    out = Plane(in.height, in.width);
    const int H = in.height;
    for (int y = 0; y < H; ++y)
        for (int x = 0; x < in.width; ++x) {
            double acc = 0.0;
            for (size_t k = 0; k < h.size(); ++k) {
                int src = y - static_cast<int>(k) * step;
                src %= H;
                if (src < 0) src += H;
                acc += h[k] * in.at(src, x);
            }
            out.at(y, x) = acc;
        }
}

Plane circular_conv2d(const Plane& in, const std::vector<double>& fr,
                      const std::vector<double>& fc, int step) {
    Plane out(in.height, in.width);
    const int H = in.height, W = in.width;
    for (int y = 0; y < H; ++y)
        for (int x = 0; x < W; ++x) {
            double acc = 0.0;
            for (size_t ky = 0; ky < fc.size(); ++ky)
                for (size_t kx = 0; kx < fr.size(); ++kx) {
                    int sy = y - static_cast<int>(ky) * step;
                    int sx = x - static_cast<int>(kx) * step;
                    sy %= H;
                    if (sy < 0) sy += H;
                    sx %= W;
                    if (sx < 0) sx += W;
                    acc += fc[ky] * fr[kx] * in.at(sy, sx);
                }
            out.at(y, x) = acc;
        }
    return out;
}

}  // namespace wgsr::ref
