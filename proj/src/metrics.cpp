// SPDX-License-Identifier: Apache-2.0

#include "wgsr/metrics.hpp"

#include <cmath>
#include <vector>

namespace wgsr {

namespace {

Plane shaved(const Plane& p, int shave) {
    if (shave == 0) return p;
    if (2 * shave >= p.height || 2 * shave >= p.width)
        throw Error("metrics: shave border larger than image");
    Plane out(p.height - 2 * shave, p.width - 2 * shave);
    for (int y = 0; y < out.height; ++y)
        for (int x = 0; x < out.width; ++x)
            out.v[static_cast<size_t>(y) * out.width + x] =
                p.v[static_cast<size_t>(y + shave) * p.width + (x + shave)];
    return out;
}

double mse_to_db(double mse, double peak) {
    if (mse == 0.0) return kPsnrCap;
    return 10.0 * std::log10(peak * peak / mse);
}

std::vector<double> gaussian_window11() {
    std::vector<double> w(11 * 11);
    const double sigma = 1.5;
    double sum = 0.0;
    for (int y = 0; y < 11; ++y)
        for (int x = 0; x < 11; ++x) {
            const double dy = y - 5, dx = x - 5;
            w[y * 11 + x] = std::exp(-(dy * dy + dx * dx) / (2.0 * sigma * sigma));
            sum += w[y * 11 + x];
        }
    for (auto& v : w) v /= sum;
    return w;
}

}  // namespace

double psnr(const Plane& a, const Plane& b, double peak, int shave) {
    if (a.height != b.height || a.width != b.width)
        throw Error("psnr: shape mismatch");
    const Plane pa = shaved(a, shave), pb = shaved(b, shave);
    double acc = 0.0;
    for (size_t i = 0; i < pa.numel(); ++i) {
        const double d = pa.v[i] - pb.v[i];
        acc += d * d;
    }
    return mse_to_db(acc / pa.numel(), peak);
}

double ssim(const Plane& a, const Plane& b, double peak, int shave) {
    if (a.height != b.height || a.width != b.width)
        throw Error("ssim: shape mismatch");
    const Plane pa = shaved(a, shave), pb = shaved(b, shave);
    if (pa.height < 11 || pa.width < 11)
        throw Error("ssim: image smaller than the 11x11 window");

    static const std::vector<double> win = gaussian_window11();
    const double c1 = (0.01 * peak) * (0.01 * peak);
    const double c2 = (0.03 * peak) * (0.03 * peak);
    const int oh = pa.height - 10, ow = pa.width - 10;

    double total = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : total)
    for (int oy = 0; oy < oh; ++oy)
        for (int ox = 0; ox < ow; ++ox) {
            double mu_a = 0.0, mu_b = 0.0;
            for (int ky = 0; ky < 11; ++ky)
                for (int kx = 0; kx < 11; ++kx) {
                    const double wv = win[ky * 11 + kx];
                    mu_a += wv * pa.v[static_cast<size_t>(oy + ky) * pa.width + ox + kx];
                    mu_b += wv * pb.v[static_cast<size_t>(oy + ky) * pb.width + ox + kx];
                }
            double var_a = 0.0, var_b = 0.0, cov = 0.0;
            for (int ky = 0; ky < 11; ++ky)
                for (int kx = 0; kx < 11; ++kx) {
                    const double wv = win[ky * 11 + kx];
                    const double da =
                        pa.v[static_cast<size_t>(oy + ky) * pa.width + ox + kx] - mu_a;
                    const double db =
                        pb.v[static_cast<size_t>(oy + ky) * pb.width + ox + kx] - mu_b;
                    var_a += wv * da * da;
                    var_b += wv * db * db;
                    cov += wv * da * db;
                }
            total += ((2.0 * mu_a * mu_b + c1) * (2.0 * cov + c2)) /
                     ((mu_a * mu_a + mu_b * mu_b + c1) * (var_a + var_b + c2));
        }
    return total / (static_cast<double>(oh) * ow);
}

double lr_psnr(const ImageTensor& sr_rgb, const ImageTensor& lr_rgb) {
    if (sr_rgb.height != 4 * lr_rgb.height || sr_rgb.width != 4 * lr_rgb.width)
        throw Error("lr_psnr: SR dimensions must be exactly 4x the LR dimensions");
    if (sr_rgb.channels != lr_rgb.channels)
        throw Error("lr_psnr: channel count mismatch");
    const ImageTensor down = bicubic_resize(sr_rgb, 0.25);
    double acc = 0.0;
    for (size_t i = 0; i < down.data.size(); ++i) {
        const double d = down.data[i] - lr_rgb.data[i];
        acc += d * d;
    }
    return mse_to_db(acc / down.data.size(), 1.0);
}

EvalRecord evaluate_pair(const std::string& name, const ImageTensor& sr_rgb,
                         const ImageTensor& hr_rgb, const ImageTensor& lr_rgb,
                         int shave) {
    if (sr_rgb.height != hr_rgb.height || sr_rgb.width != hr_rgb.width)
        throw Error("evaluate_pair: SR/HR shape mismatch");
    EvalRecord rec;
    rec.image = name;
    const Plane sy = extract_y(sr_rgb).channel(0);
    const Plane hy = extract_y(hr_rgb).channel(0);
    rec.psnr_y = psnr(sy, hy, 1.0, shave);
    rec.ssim_y = ssim(sy, hy, 1.0, shave);
    rec.lr_psnr = lr_psnr(sr_rgb, lr_rgb);
    rec.lr_consistent = rec.lr_psnr >= kLrConsistencyDb;
    return rec;
}

}  // namespace wgsr
