// SPDX-License-Identifier: Apache-2.0

#include "wgsr/image.hpp"

#include <algorithm>
#include <cmath>

namespace wgsr {

Plane ImageTensor::channel(int c) const {
    Plane p(height, width);
    const size_t off = static_cast<size_t>(c) * height * width;
    std::copy(data.begin() + off, data.begin() + off + p.numel(), p.v.begin());
    return p;
}

namespace {

// BT.601 studio-range matrix, inputs and outputs in [0, 1].
constexpr double kYR = 65.481 / 255.0, kYG = 128.553 / 255.0, kYB = 24.966 / 255.0;
constexpr double kCbR = -37.797 / 255.0, kCbG = -74.203 / 255.0, kCbB = 112.0 / 255.0;
constexpr double kCrR = 112.0 / 255.0, kCrG = -93.786 / 255.0, kCrB = -18.214 / 255.0;
constexpr double kYOff = 16.0 / 255.0, kCOff = 128.0 / 255.0;

void require_colorspace(const ImageTensor& img, Colorspace cs, const char* op) {
    if (img.colorspace != cs)
        throw Error(std::string(op) + ": wrong colorspace tag");
}

}  // namespace

ImageTensor rgb_to_ycbcr(const ImageTensor& img) {
    require_colorspace(img, Colorspace::RGB, "rgb_to_ycbcr");
    ImageTensor out(img.height, img.width, 3, Colorspace::YCbCr);
    const size_t n = static_cast<size_t>(img.height) * img.width;
    for (size_t i = 0; i < n; ++i) {
        const double r = img.data[i], g = img.data[n + i], b = img.data[2 * n + i];
        out.data[i] = kYOff + kYR * r + kYG * g + kYB * b;
        out.data[n + i] = kCOff + kCbR * r + kCbG * g + kCbB * b;
        out.data[2 * n + i] = kCOff + kCrR * r + kCrG * g + kCrB * b;
    }
    return out;
}

ImageTensor ycbcr_to_rgb(const ImageTensor& img) {
    require_colorspace(img, Colorspace::YCbCr, "ycbcr_to_rgb");
    // Inverse of the forward 3x3, computed in closed form.
    const double m[3][3] = {{kYR, kYG, kYB}, {kCbR, kCbG, kCbB}, {kCrR, kCrG, kCrB}};
    double inv[3][3];
    const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                       m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                       m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    inv[0][0] = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) / det;
    inv[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) / det;
    inv[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / det;
    inv[1][0] = (m[1][2] * m[2][0] - m[1][0] * m[2][2]) / det;
    inv[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / det;
    inv[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / det;
    inv[2][0] = (m[1][0] * m[2][1] - m[1][1] * m[2][0]) / det;
    inv[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) / det;
    inv[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / det;

    ImageTensor out(img.height, img.width, 3, Colorspace::RGB);
    const size_t n = static_cast<size_t>(img.height) * img.width;
    for (size_t i = 0; i < n; ++i) {
        const double y = img.data[i] - kYOff;
        const double cb = img.data[n + i] - kCOff;
        const double cr = img.data[2 * n + i] - kCOff;
        out.data[i] = inv[0][0] * y + inv[0][1] * cb + inv[0][2] * cr;
        out.data[n + i] = inv[1][0] * y + inv[1][1] * cb + inv[1][2] * cr;
        out.data[2 * n + i] = inv[2][0] * y + inv[2][1] * cb + inv[2][2] * cr;
    }
    return out;
}

ImageTensor extract_y(const ImageTensor& img) {
    if (img.channels != 3)
        throw Error("extract_y: input is already single-channel");
    const ImageTensor* src = &img;
    ImageTensor converted;
    if (img.colorspace == Colorspace::RGB) {
        converted = rgb_to_ycbcr(img);
        src = &converted;
    }
    ImageTensor out(img.height, img.width, 1, Colorspace::Y);
    const size_t n = static_cast<size_t>(img.height) * img.width;
    std::copy(src->data.begin(), src->data.begin() + n, out.data.begin());
    return out;
}

namespace {

double cubic(double x) {
    constexpr double a = -0.5;
    x = std::abs(x);
    if (x <= 1.0) return (a + 2.0) * x * x * x - (a + 3.0) * x * x + 1.0;
    if (x < 2.0) return a * x * x * x - 5.0 * a * x * x + 8.0 * a * x - 4.0 * a;
    return 0.0;
}

// Mirror index into [0, n) with symmetric (half-sample) extension.
int mirror(int i, int n) {
    const int period = 2 * n;
    i %= period;
    if (i < 0) i += period;
    return (i < n) ? i : period - 1 - i;
}

struct ResampleTap {
    int first = 0;
    std::vector<double> w;
};

// Per-output-position taps for one axis, MATLAB imresize semantics:
// u = (x + 0.5)/scale - 0.5, widened antialiasing kernel on downscale,
// weights normalized to unit sum.
std::vector<ResampleTap> build_taps(int in_n, int out_n, double scale) {
    const double kscale = (scale < 1.0) ? scale : 1.0;
    const double support = 2.0 / kscale;
    std::vector<ResampleTap> taps(out_n);
    for (int x = 0; x < out_n; ++x) {
        const double u = (x + 0.5) / scale - 0.5;
        const int first = static_cast<int>(std::floor(u - support)) + 1;
        const int last = static_cast<int>(std::floor(u + support));
        ResampleTap t;
        t.first = first;
        t.w.resize(last - first + 1);
        double sum = 0.0;
        for (int i = first; i <= last; ++i) {
            const double wv = kscale * cubic(kscale * (u - i));
            t.w[i - first] = wv;
            sum += wv;
        }
        for (auto& wv : t.w) wv /= sum;
        taps[x] = std::move(t);
    }
    return taps;
}

}  // namespace

ImageTensor bicubic_resize(const ImageTensor& img, double scale) {
    if (!(scale > 0.0)) throw Error("bicubic_resize: scale must be positive");
    const int out_h = static_cast<int>(std::ceil(img.height * scale));
    const int out_w = static_cast<int>(std::ceil(img.width * scale));
    const auto row_taps = build_taps(img.width, out_w, scale);
    const auto col_taps = build_taps(img.height, out_h, scale);

    // rows pass
    ImageTensor mid(img.height, out_w, img.channels, img.colorspace);
    for (int c = 0; c < img.channels; ++c) {
#pragma omp parallel for schedule(static)
        for (int y = 0; y < img.height; ++y) {
            for (int x = 0; x < out_w; ++x) {
                const auto& t = row_taps[x];
                double acc = 0.0;
                for (size_t k = 0; k < t.w.size(); ++k)
                    acc += t.w[k] * img.at(c, y, mirror(t.first + static_cast<int>(k), img.width));
                mid.at(c, y, x) = acc;
            }
        }
    }
    // cols pass
    ImageTensor out(out_h, out_w, img.channels, img.colorspace);
    for (int c = 0; c < img.channels; ++c) {
#pragma omp parallel for schedule(static)
        for (int y = 0; y < out_h; ++y) {
            const auto& t = col_taps[y];
            for (int x = 0; x < out_w; ++x) {
                double acc = 0.0;
                for (size_t k = 0; k < t.w.size(); ++k)
                    acc += t.w[k] * mid.at(c, mirror(t.first + static_cast<int>(k), img.height), x);
                out.at(c, y, x) = acc;
            }
        }
    }
    return out;
}

}  // namespace wgsr
