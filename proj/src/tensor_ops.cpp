// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "wgsr/tensor.hpp"

namespace wgsr::ad {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw Error(msg);
}

bool any_grad(std::initializer_list<const Tensor*> ts) {
    for (const auto* t : ts)
        if (t->needs_grad()) return true;
    return false;
}

}  // namespace

Tensor add(Tape& t, const Tensor& a, const Tensor& b) {
    require(a.shape == b.shape, "add: shape mismatch " + a.shape.str() + " vs " + b.shape.str());
    Tensor out = Tensor::zeros(a.shape, any_grad({&a, &b}));
    const size_t n = a.numel();
    for (size_t i = 0; i < n; ++i) out.val()[i] = a.val()[i] + b.val()[i];
    if (out.needs_grad())
        t.record([a, b, out]() mutable {
            const float* g = out.grad();
            if (a.needs_grad()) {
                float* ga = a.grad();
                for (size_t i = 0; i < a.numel(); ++i) ga[i] += g[i];
            }
            if (b.needs_grad()) {
                float* gb = b.grad();
                for (size_t i = 0; i < b.numel(); ++i) gb[i] += g[i];
            }
        });
    return out;
}

Tensor sub(Tape& t, const Tensor& a, const Tensor& b) { return add_scaled(t, a, b, -1.0f); }

Tensor scale(Tape& t, const Tensor& a, float s) {
    Tensor out = Tensor::zeros(a.shape, a.needs_grad());
    for (size_t i = 0; i < a.numel(); ++i) out.val()[i] = a.val()[i] * s;
    if (out.needs_grad())
        t.record([a, out, s]() mutable {
            const float* g = out.grad();
            float* ga = a.grad();
            for (size_t i = 0; i < a.numel(); ++i) ga[i] += s * g[i];
        });
    return out;
}

Tensor add_scaled(Tape& t, const Tensor& a, const Tensor& b, float s) {
    require(a.shape == b.shape,
            "add_scaled: shape mismatch " + a.shape.str() + " vs " + b.shape.str());
    Tensor out = Tensor::zeros(a.shape, any_grad({&a, &b}));
    for (size_t i = 0; i < a.numel(); ++i) out.val()[i] = a.val()[i] + s * b.val()[i];
    if (out.needs_grad())
        t.record([a, b, out, s]() mutable {
            const float* g = out.grad();
            if (a.needs_grad()) {
                float* ga = a.grad();
                for (size_t i = 0; i < a.numel(); ++i) ga[i] += g[i];
            }
            if (b.needs_grad()) {
                float* gb = b.grad();
                for (size_t i = 0; i < b.numel(); ++i) gb[i] += s * g[i];
            }
        });
    return out;
}

namespace kernels {

void conv2d_forward(const float* x, const float* w, const float* b, float* y,
                    int N, int IC, int H, int W, int OC, int KH, int KW,
                    int stride, int pad, int OH, int OW) {
#pragma omp parallel for collapse(2) schedule(static)
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
                                           x[((static_cast<size_t>(n) * IC + ic) * H + iy) * W + ix]) *
                                       w[((static_cast<size_t>(oc) * IC + ic) * KH + ky) * KW + kx];
                            }
                        }
                    y[((static_cast<size_t>(n) * OC + oc) * OH + oy) * OW + ox] =
                        static_cast<float>(acc);
                }
}

void conv2d_backward_input(const float* gy, const float* w, float* gx,
                           int N, int IC, int H, int W, int OC, int KH, int KW,
                           int stride, int pad, int OH, int OW) {
#pragma omp parallel for collapse(2) schedule(static)
    for (int n = 0; n < N; ++n)
        for (int ic = 0; ic < IC; ++ic)
            for (int iy = 0; iy < H; ++iy)
                for (int ix = 0; ix < W; ++ix) {
                    double acc = 0.0;
                    for (int oc = 0; oc < OC; ++oc)
                        for (int ky = 0; ky < KH; ++ky) {
                            const int ty = iy + pad - ky;
                            if (ty < 0 || ty % stride) continue;
                            const int oy = ty / stride;
                            if (oy >= OH) continue;
                            for (int kx = 0; kx < KW; ++kx) {
                                const int tx = ix + pad - kx;
                                if (tx < 0 || tx % stride) continue;
                                const int ox = tx / stride;
                                if (ox >= OW) continue;
                                acc += static_cast<double>(
                                           gy[((static_cast<size_t>(n) * OC + oc) * OH + oy) * OW + ox]) *
                                       w[((static_cast<size_t>(oc) * IC + ic) * KH + ky) * KW + kx];
                            }
                        }
                    gx[((static_cast<size_t>(n) * IC + ic) * H + iy) * W + ix] +=
                        static_cast<float>(acc);
                }
}

void conv2d_backward_weight(const float* gy, const float* x, float* gw,
                            int N, int IC, int H, int W, int OC, int KH, int KW,
                            int stride, int pad, int OH, int OW) {
    // One parallel iteration owns one weight element, so accumulation
    // order is fixed regardless of thread count.
#pragma omp parallel for collapse(2) schedule(static)
    for (int oc = 0; oc < OC; ++oc)
        for (int ic = 0; ic < IC; ++ic)
            for (int ky = 0; ky < KH; ++ky)
                for (int kx = 0; kx < KW; ++kx) {
                    double acc = 0.0;
                    for (int n = 0; n < N; ++n)
                        for (int oy = 0; oy < OH; ++oy) {
                            const int iy = oy * stride - pad + ky;
                            if (iy < 0 || iy >= H) continue;
                            for (int ox = 0; ox < OW; ++ox) {
                                const int ix = ox * stride - pad + kx;
                                if (ix < 0 || ix >= W) continue;
                                acc += static_cast<double>(
                                           gy[((static_cast<size_t>(n) * OC + oc) * OH + oy) * OW + ox]) *
                                       x[((static_cast<size_t>(n) * IC + ic) * H + iy) * W + ix];
                            }
                        }
                    gw[((static_cast<size_t>(oc) * IC + ic) * KH + ky) * KW + kx] +=
                        static_cast<float>(acc);
                }
}

}  // namespace kernels

Tensor conv2d(Tape& t, const Tensor& x, const Tensor& weight, const Tensor& bias,
              int stride, int padding) {
    require(stride == 1 || stride == 2, "conv2d: stride must be 1 or 2");
    require(weight.shape.c == x.shape.c,
            "conv2d: channel mismatch, input " + x.shape.str() + " vs weight " +
                weight.shape.str());
    const int k = weight.shape.h;
    require(k == weight.shape.w && (k == 1 || k == 3 || k == 4),
            "conv2d: kernel must be square 1, 3, or 4, got " + weight.shape.str());
    require(bias.shape == Shape{1, weight.shape.n, 1, 1},
            "conv2d: bias shape " + bias.shape.str() + " does not match " +
                std::to_string(weight.shape.n) + " output channels");
    const int N = x.shape.n, IC = x.shape.c, H = x.shape.h, W = x.shape.w;
    const int OC = weight.shape.n, KH = weight.shape.h, KW = weight.shape.w;
    const int OH = (H + 2 * padding - KH) / stride + 1;
    const int OW = (W + 2 * padding - KW) / stride + 1;
    require(OH > 0 && OW > 0, "conv2d: kernel larger than padded input");

    Tensor out = Tensor::zeros(Shape{N, OC, OH, OW}, any_grad({&x, &weight, &bias}));
    kernels::conv2d_forward(x.val(), weight.val(), bias.val(), out.val(), N, IC, H, W,
                            OC, KH, KW, stride, padding, OH, OW);
    if (out.needs_grad())
        t.record([x, weight, bias, out, stride, padding, N, IC, H, W, OC, KH, KW, OH,
                  OW]() mutable {
            const float* gy = out.grad();
            if (x.needs_grad())
                kernels::conv2d_backward_input(gy, weight.val(), x.grad(), N, IC, H, W,
                                               OC, KH, KW, stride, padding, OH, OW);
            if (weight.needs_grad())
                kernels::conv2d_backward_weight(gy, x.val(), weight.grad(), N, IC, H, W,
                                                OC, KH, KW, stride, padding, OH, OW);
            if (bias.needs_grad()) {
                float* gb = bias.grad();
                for (int oc = 0; oc < OC; ++oc) {
                    double acc = 0.0;
                    for (int n = 0; n < N; ++n)
                        for (int i = 0; i < OH * OW; ++i)
                            acc += gy[((static_cast<size_t>(n) * OC + oc) * OH * OW) + i];
                    gb[oc] += static_cast<float>(acc);
                }
            }
        });
    return out;
}

Tensor linear(Tape& t, const Tensor& x, const Tensor& weight, const Tensor& bias) {
    const int N = x.shape.n, F = x.shape.c;
    require(x.shape.h == 1 && x.shape.w == 1, "linear: input must be (n, f), got " + x.shape.str());
    require(weight.shape.c == F && weight.shape.h == 1 && weight.shape.w == 1,
            "linear: weight " + weight.shape.str() + " does not match input " + x.shape.str());
    const int O = weight.shape.n;
    require(bias.shape == Shape{1, O, 1, 1}, "linear: bias shape mismatch");

    Tensor out = Tensor::zeros(Shape{N, O, 1, 1}, any_grad({&x, &weight, &bias}));
    for (int n = 0; n < N; ++n)
        for (int o = 0; o < O; ++o) {
            double acc = bias.val()[o];
            for (int f = 0; f < F; ++f)
                acc += static_cast<double>(x.val()[static_cast<size_t>(n) * F + f]) *
                       weight.val()[static_cast<size_t>(o) * F + f];
            out.val()[static_cast<size_t>(n) * O + o] = static_cast<float>(acc);
        }
    if (out.needs_grad())
        t.record([x, weight, bias, out, N, F, O]() mutable {
            const float* gy = out.grad();
            if (x.needs_grad()) {
                float* gx = x.grad();
                for (int n = 0; n < N; ++n)
                    for (int f = 0; f < F; ++f) {
                        double acc = 0.0;
                        for (int o = 0; o < O; ++o)
                            acc += static_cast<double>(gy[static_cast<size_t>(n) * O + o]) *
                                   weight.val()[static_cast<size_t>(o) * F + f];
                        gx[static_cast<size_t>(n) * F + f] += static_cast<float>(acc);
                    }
            }
            if (weight.needs_grad()) {
                float* gw = weight.grad();
                for (int o = 0; o < O; ++o)
                    for (int f = 0; f < F; ++f) {
                        double acc = 0.0;
                        for (int n = 0; n < N; ++n)
                            acc += static_cast<double>(gy[static_cast<size_t>(n) * O + o]) *
                                   x.val()[static_cast<size_t>(n) * F + f];
                        gw[static_cast<size_t>(o) * F + f] += static_cast<float>(acc);
                    }
            }
            if (bias.needs_grad()) {
                float* gb = bias.grad();
                for (int o = 0; o < O; ++o) {
                    double acc = 0.0;
                    for (int n = 0; n < N; ++n) acc += gy[static_cast<size_t>(n) * O + o];
                    gb[o] += static_cast<float>(acc);
                }
            }
        });
    return out;
}

Tensor leaky_relu(Tape& t, const Tensor& x, float slope) {
    Tensor out = Tensor::zeros(x.shape, x.needs_grad());
    for (size_t i = 0; i < x.numel(); ++i) {
        const float v = x.val()[i];
        out.val()[i] = v >= 0.0f ? v : slope * v;
    }
    if (out.needs_grad())
        t.record([x, out, slope]() mutable {
            const float* g = out.grad();
            float* gx = x.grad();
            for (size_t i = 0; i < x.numel(); ++i)
                gx[i] += (x.val()[i] >= 0.0f ? 1.0f : slope) * g[i];
        });
    return out;
}

Tensor concat_channels(Tape& t, const std::vector<Tensor>& xs) {
    require(!xs.empty(), "concat_channels: empty input list");
    const Shape s0 = xs[0].shape;
    int ctotal = 0;
    bool needs = false;
    for (const auto& x : xs) {
        require(x.shape.n == s0.n && x.shape.h == s0.h && x.shape.w == s0.w,
                "concat_channels: spatial/batch mismatch " + x.shape.str() + " vs " + s0.str());
        ctotal += x.shape.c;
        needs = needs || x.needs_grad();
    }
    Tensor out = Tensor::zeros(Shape{s0.n, ctotal, s0.h, s0.w}, needs);
    const size_t plane = static_cast<size_t>(s0.h) * s0.w;
    for (int n = 0; n < s0.n; ++n) {
        size_t coff = 0;
        for (const auto& x : xs) {
            const size_t chunk = static_cast<size_t>(x.shape.c) * plane;
            std::copy(x.val() + static_cast<size_t>(n) * chunk,
                      x.val() + static_cast<size_t>(n + 1) * chunk,
                      out.val() + (static_cast<size_t>(n) * ctotal) * plane + coff);
            coff += chunk;
        }
    }
    if (needs)
        t.record([xs, out, s0, ctotal, plane]() mutable {
            const float* g = out.grad();
            for (int n = 0; n < s0.n; ++n) {
                size_t coff = 0;
                for (auto& x : xs) {
                    const size_t chunk = static_cast<size_t>(x.shape.c) * plane;
                    if (x.needs_grad()) {
                        float* gx = x.grad();
                        const float* gsrc = g + (static_cast<size_t>(n) * ctotal) * plane + coff;
                        for (size_t i = 0; i < chunk; ++i)
                            gx[static_cast<size_t>(n) * chunk + i] += gsrc[i];
                    }
                    coff += chunk;
                }
            }
        });
    return out;
}

Tensor nearest_upsample(Tape& t, const Tensor& x, int factor) {
    require(factor >= 1, "nearest_upsample: factor must be >= 1");
    const int N = x.shape.n, C = x.shape.c, H = x.shape.h, W = x.shape.w;
    Tensor out = Tensor::zeros(Shape{N, C, H * factor, W * factor}, x.needs_grad());
    const int OH = H * factor, OW = W * factor;
    for (int nc = 0; nc < N * C; ++nc)
        for (int oy = 0; oy < OH; ++oy)
            for (int ox = 0; ox < OW; ++ox)
                out.val()[(static_cast<size_t>(nc) * OH + oy) * OW + ox] =
                    x.val()[(static_cast<size_t>(nc) * H + oy / factor) * W + ox / factor];
    if (out.needs_grad())
        t.record([x, out, N, C, H, W, factor, OH, OW]() mutable {
            const float* g = out.grad();
            float* gx = x.grad();
            for (int nc = 0; nc < N * C; ++nc)
                for (int oy = 0; oy < OH; ++oy)
                    for (int ox = 0; ox < OW; ++ox)
                        gx[(static_cast<size_t>(nc) * H + oy / factor) * W + ox / factor] +=
                            g[(static_cast<size_t>(nc) * OH + oy) * OW + ox];
        });
    return out;
}

Tensor flatten(Tape& t, const Tensor& x) {
    Tensor out = Tensor::zeros(
        Shape{x.shape.n, x.shape.c * x.shape.h * x.shape.w, 1, 1}, x.needs_grad());
    std::copy(x.val(), x.val() + x.numel(), out.val());
    if (out.needs_grad())
        t.record([x, out]() mutable {
            const float* g = out.grad();
            float* gx = x.grad();
            for (size_t i = 0; i < x.numel(); ++i) gx[i] += g[i];
        });
    return out;
}

Tensor batch_mean(Tape& t, const Tensor& x) {
    Tensor out = Tensor::zeros(Shape{1, 1, 1, 1}, x.needs_grad());
    double acc = 0.0;
    for (size_t i = 0; i < x.numel(); ++i) acc += x.val()[i];
    out.val()[0] = static_cast<float>(acc / x.numel());
    if (out.needs_grad())
        t.record([x, out]() mutable {
            const float g = out.grad()[0] / static_cast<float>(x.numel());
            float* gx = x.grad();
            for (size_t i = 0; i < x.numel(); ++i) gx[i] += g;
        });
    return out;
}

Tensor l1(Tape& t, const Tensor& x, const Tensor& y) {
    require(x.shape == y.shape, "l1: shape mismatch " + x.shape.str() + " vs " + y.shape.str());
    Tensor out = Tensor::zeros(Shape{1, 1, 1, 1}, any_grad({&x, &y}));
    double acc = 0.0;
    for (size_t i = 0; i < x.numel(); ++i) acc += std::abs(static_cast<double>(x.val()[i]) - y.val()[i]);
    out.val()[0] = static_cast<float>(acc / x.numel());
    if (out.needs_grad())
        t.record([x, y, out]() mutable {
            const float g = out.grad()[0] / static_cast<float>(x.numel());
            for (size_t i = 0; i < x.numel(); ++i) {
                const float d = x.val()[i] - y.val()[i];
                const float s = (d > 0.0f) ? 1.0f : (d < 0.0f ? -1.0f : 0.0f);
                if (x.needs_grad()) x.grad()[i] += s * g;
                if (y.needs_grad()) y.grad()[i] -= s * g;
            }
        });
    return out;
}

Tensor bce_logits(Tape& t, const Tensor& logits, float target) {
    Tensor out = Tensor::zeros(Shape{1, 1, 1, 1}, logits.needs_grad());
    double acc = 0.0;
    for (size_t i = 0; i < logits.numel(); ++i) {
        const double z = logits.val()[i];
        acc += std::max(z, 0.0) - z * target + std::log1p(std::exp(-std::abs(z)));
    }
    out.val()[0] = static_cast<float>(acc / logits.numel());
    if (out.needs_grad())
        t.record([logits, out, target]() mutable {
            const float g = out.grad()[0] / static_cast<float>(logits.numel());
            float* gx = logits.grad();
            for (size_t i = 0; i < logits.numel(); ++i) {
                const double z = logits.val()[i];
                const double sig = 1.0 / (1.0 + std::exp(-z));
                gx[i] += static_cast<float>((sig - target)) * g;
            }
        });
    return out;
}

Tensor batch_norm(Tape& t, const Tensor& x, const Tensor& gamma, const Tensor& beta,
                  bool use_batch_stats, float eps) {
    const int N = x.shape.n, C = x.shape.c, H = x.shape.h, W = x.shape.w;
    require(gamma.shape == Shape{1, C, 1, 1} && beta.shape == Shape{1, C, 1, 1},
            "batch_norm: affine parameter shape mismatch");
    Tensor out = Tensor::zeros(x.shape, any_grad({&x, &gamma, &beta}));
    const size_t plane = static_cast<size_t>(H) * W;

    if (!use_batch_stats) {
        for (int n = 0; n < N; ++n)
            for (int c = 0; c < C; ++c) {
                const float gm = gamma.val()[c], bt = beta.val()[c];
                const size_t base = (static_cast<size_t>(n) * C + c) * plane;
                for (size_t i = 0; i < plane; ++i)
                    out.val()[base + i] = gm * x.val()[base + i] + bt;
            }
        if (out.needs_grad())
            t.record([x, gamma, beta, out, N, C, plane]() mutable {
                const float* g = out.grad();
                for (int c = 0; c < C; ++c) {
                    double dg = 0.0, db = 0.0;
                    for (int n = 0; n < N; ++n) {
                        const size_t base = (static_cast<size_t>(n) * C + c) * plane;
                        for (size_t i = 0; i < plane; ++i) {
                            dg += static_cast<double>(g[base + i]) * x.val()[base + i];
                            db += g[base + i];
                            if (x.needs_grad())
                                x.grad()[base + i] += gamma.val()[c] * g[base + i];
                        }
                    }
                    if (gamma.needs_grad()) gamma.grad()[c] += static_cast<float>(dg);
                    if (beta.needs_grad()) beta.grad()[c] += static_cast<float>(db);
                }
            });
        return out;
    }

    const size_t m = static_cast<size_t>(N) * plane;
    std::vector<float> mean(C), inv_std(C), xhat(x.numel());
    for (int c = 0; c < C; ++c) {
        double mu = 0.0;
        for (int n = 0; n < N; ++n) {
            const size_t base = (static_cast<size_t>(n) * C + c) * plane;
            for (size_t i = 0; i < plane; ++i) mu += x.val()[base + i];
        }
        mu /= static_cast<double>(m);
        double var = 0.0;
        for (int n = 0; n < N; ++n) {
            const size_t base = (static_cast<size_t>(n) * C + c) * plane;
            for (size_t i = 0; i < plane; ++i) {
                const double d = x.val()[base + i] - mu;
                var += d * d;
            }
        }
        var /= static_cast<double>(m);
        mean[c] = static_cast<float>(mu);
        inv_std[c] = static_cast<float>(1.0 / std::sqrt(var + eps));
        for (int n = 0; n < N; ++n) {
            const size_t base = (static_cast<size_t>(n) * C + c) * plane;
            for (size_t i = 0; i < plane; ++i) {
                xhat[base + i] = (x.val()[base + i] - mean[c]) * inv_std[c];
                out.val()[base + i] = gamma.val()[c] * xhat[base + i] + beta.val()[c];
            }
        }
    }
    if (out.needs_grad())
        t.record([x, gamma, beta, out, xhat = std::move(xhat), inv_std = std::move(inv_std),
                  N, C, plane, m]() mutable {
            const float* g = out.grad();
            for (int c = 0; c < C; ++c) {
                double sum_g = 0.0, sum_gx = 0.0;
                for (int n = 0; n < N; ++n) {
                    const size_t base = (static_cast<size_t>(n) * C + c) * plane;
                    for (size_t i = 0; i < plane; ++i) {
                        sum_g += g[base + i];
                        sum_gx += static_cast<double>(g[base + i]) * xhat[base + i];
                    }
                }
                if (gamma.needs_grad()) gamma.grad()[c] += static_cast<float>(sum_gx);
                if (beta.needs_grad()) beta.grad()[c] += static_cast<float>(sum_g);
                if (x.needs_grad()) {
                    const double gm = gamma.val()[c], istd = inv_std[c];
                    for (int n = 0; n < N; ++n) {
                        const size_t base = (static_cast<size_t>(n) * C + c) * plane;
                        for (size_t i = 0; i < plane; ++i) {
                            const double gi = g[base + i];
                            x.grad()[base + i] += static_cast<float>(
                                gm * istd *
                                (gi - sum_g / static_cast<double>(m) -
                                 xhat[base + i] * sum_gx / static_cast<double>(m)));
                        }
                    }
                }
            }
        });
    return out;
}

}  // namespace wgsr::ad
