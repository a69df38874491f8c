// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <random>

#include <doctest.h>

#include "wgsr/metrics.hpp"

using namespace wgsr;

namespace {

Plane random_plane(int h, int w, uint64_t seed, double lo = 0.0, double hi = 1.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    Plane p(h, w);
    for (auto& v : p.v) v = dist(rng);
    return p;
}

ImageTensor smooth_rgb(int h, int w) {
    ImageTensor img(h, w, 3, Colorspace::RGB);
    for (int c = 0; c < 3; ++c)
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x)
                img.at(c, y, x) = 0.5 + 0.2 * std::sin(2.0 * M_PI * (y + c) / h) *
                                            std::cos(2.0 * M_PI * x / w);
    return img;
}

}  // namespace

TEST_CASE("psnr anchors") {
    const Plane a = random_plane(8, 8, 1);
    CHECK(psnr(a, a) == kPsnrCap);

    Plane b = a;
    for (auto& v : b.v) v += 0.1;
    CHECK(psnr(a, b) == doctest::Approx(20.0).epsilon(1e-9));

    // symmetry and shift invariance under a common offset
    const Plane c = random_plane(8, 8, 2);
    CHECK(psnr(a, c) == psnr(c, a));
    Plane a2 = a, c2 = c;
    for (auto& v : a2.v) v += 0.05;
    for (auto& v : c2.v) v += 0.05;
    CHECK(psnr(a2, c2) == doctest::Approx(psnr(a, c)).epsilon(1e-12));

    // direct mse oracle
    double mse = 0.0;
    for (size_t i = 0; i < a.numel(); ++i) {
        const double d = a.v[i] - c.v[i];
        mse += d * d;
    }
    mse /= a.numel();
    CHECK(psnr(a, c) == doctest::Approx(10.0 * std::log10(1.0 / mse)).epsilon(1e-12));

    CHECK_THROWS_AS(psnr(a, random_plane(8, 9, 3)), Error);
}

TEST_CASE("psnr shave trims the border") {
    Plane a = random_plane(10, 10, 4);
    Plane b = a;
    b.v[0] = a.v[0] + 0.7;  // corrupt only the border corner
    CHECK(psnr(a, b) < kPsnrCap);
    CHECK(psnr(a, b, 1.0, 1) == kPsnrCap);
}

TEST_CASE("ssim anchors and symmetry") {
    const Plane a = random_plane(16, 16, 5);
    CHECK(ssim(a, a) == doctest::Approx(1.0).epsilon(1e-12));

    Plane inv(16, 16);
    for (size_t i = 0; i < a.numel(); ++i) inv.v[i] = 1.0 - a.v[i];
    const double s = ssim(a, inv);
    CHECK(s < 1.0);
    CHECK(s >= -1.0);
    CHECK(ssim(a, inv) == ssim(inv, a));

    CHECK_THROWS_AS(ssim(random_plane(8, 8, 6), random_plane(8, 8, 7)), Error);
}

TEST_CASE("ssim matches a dense direct evaluation on 16x16") {
    const Plane a = random_plane(16, 16, 8);
    const Plane b = random_plane(16, 16, 9);

    // explicit gaussian weights
    std::vector<double> w(121);
    double wsum = 0.0;
    for (int y = 0; y < 11; ++y)
        for (int x = 0; x < 11; ++x) {
            const double dy = y - 5, dx = x - 5;
            w[y * 11 + x] = std::exp(-(dy * dy + dx * dx) / 4.5);
            wsum += w[y * 11 + x];
        }
    for (auto& v : w) v /= wsum;

    const double c1 = 1e-4, c2 = 9e-4;
    double total = 0.0;
    for (int oy = 0; oy < 6; ++oy)
        for (int ox = 0; ox < 6; ++ox) {
            double ma = 0, mb = 0;
            for (int y = 0; y < 11; ++y)
                for (int x = 0; x < 11; ++x) {
                    ma += w[y * 11 + x] * a.at(oy + y, ox + x);
                    mb += w[y * 11 + x] * b.at(oy + y, ox + x);
                }
            double va = 0, vb = 0, cov = 0;
            for (int y = 0; y < 11; ++y)
                for (int x = 0; x < 11; ++x) {
                    const double da = a.at(oy + y, ox + x) - ma;
                    const double db = b.at(oy + y, ox + x) - mb;
                    va += w[y * 11 + x] * da * da;
                    vb += w[y * 11 + x] * db * db;
                    cov += w[y * 11 + x] * da * db;
                }
            total += (2 * ma * mb + c1) * (2 * cov + c2) /
                     ((ma * ma + mb * mb + c1) * (va + vb + c2));
        }
    CHECK(ssim(a, b) == doctest::Approx(total / 36.0).epsilon(1e-12));
}

TEST_CASE("lr_psnr protocol") {
    const ImageTensor hr = smooth_rgb(64, 64);
    const ImageTensor lr = bicubic_resize(hr, 0.25);

    // bicubic-upsampled smooth LR is LR-consistent
    const ImageTensor up = bicubic_resize(lr, 4.0);
    CHECK(lr_psnr(up, lr) >= 45.0);

    // sr = hr gives the round-trip value
    double mse = 0.0;
    const ImageTensor down = bicubic_resize(hr, 0.25);
    for (size_t i = 0; i < down.data.size(); ++i) {
        const double d = down.data[i] - lr.data[i];
        mse += d * d;
    }
    CHECK(mse == 0.0);  // identical pipeline => identical result
    CHECK(lr_psnr(hr, lr) == kPsnrCap);

    // heavy noise breaks LR-consistency
    ImageTensor noisy = up;
    std::mt19937_64 rng(10);
    std::normal_distribution<double> noise(0.0, 0.1);
    for (auto& v : noisy.data) v += noise(rng);
    CHECK(lr_psnr(noisy, lr) < 45.0);

    CHECK_THROWS_AS(lr_psnr(hr, bicubic_resize(hr, 0.5)), Error);
}

TEST_CASE("lr_consistent flips exactly at the 45 dB gate") {
    const ImageTensor hr = smooth_rgb(32, 32);
    const ImageTensor lr = bicubic_resize(hr, 0.25);
    const ImageTensor up = bicubic_resize(lr, 4.0);
    const EvalRecord good = evaluate_pair("good", up, hr, lr);
    CHECK(good.lr_consistent == (good.lr_psnr >= 45.0));

    ImageTensor noisy = up;
    std::mt19937_64 rng(11);
    std::normal_distribution<double> noise(0.0, 0.15);
    for (auto& v : noisy.data) v += noise(rng);
    const EvalRecord bad = evaluate_pair("bad", noisy, hr, lr);
    CHECK(bad.lr_consistent == (bad.lr_psnr >= 45.0));
    CHECK_FALSE(bad.lr_consistent);
    CHECK(bad.psnr_y < good.psnr_y);
    CHECK(bad.ssim_y < good.ssim_y);
}
