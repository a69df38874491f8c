// SPDX-License-Identifier: Apache-2.0
//
// Benchmark: OpenMP kernels vs. the serial reference implementations.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <vector>

#include "wgsr/reference.hpp"
#include "wgsr/tensor.hpp"

using namespace wgsr;

namespace wgsr::ad::kernels {
void conv2d_forward(const float* x, const float* w, const float* b, float* y, int N,
                    int IC, int H, int W, int OC, int KH, int KW, int stride, int pad,
                    int OH, int OW);
}

namespace {

double timed(const std::function<void()>& fn, int reps) {
    fn();  // warm-up
    const auto t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r) fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count() / reps;
}

}  // namespace

int main() {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<float> dist(-1.0f, 1.0f);

    {
        const int N = 2, IC = 16, H = 64, W = 64, OC = 16, K = 3;
        std::vector<float> x(static_cast<size_t>(N) * IC * H * W), w(OC * IC * K * K),
            b(OC), y_omp(static_cast<size_t>(N) * OC * H * W), y_ref(y_omp.size());
        for (auto& v : x) v = dist(rng);
        for (auto& v : w) v = dist(rng);
        for (auto& v : b) v = dist(rng);

        const double t_omp = timed(
            [&] {
                ad::kernels::conv2d_forward(x.data(), w.data(), b.data(), y_omp.data(),
                                            N, IC, H, W, OC, K, K, 1, 1, H, W);
            },
            5);
        const double t_ref = timed(
            [&] {
                ref::conv2d_forward(x.data(), w.data(), b.data(), y_ref.data(), N, IC,
                                    H, W, OC, K, K, 1, 1, H, W);
            },
            5);
        double max_abs = 0.0;
        for (size_t i = 0; i < y_omp.size(); ++i)
            max_abs = std::max(max_abs, std::abs(static_cast<double>(y_omp[i]) - y_ref[i]));
        std::printf("conv2d 2x16x64x64 k3   omp %8.3f ms   serial %8.3f ms   "
                    "speedup %.2fx   max|diff| %.3g\n",
                    t_omp * 1e3, t_ref * 1e3, t_ref / t_omp, max_abs);
    }

    {
        const int H = 256, W = 256;
        Plane in(H, W), out_omp, out_ref;
        for (auto& v : in.v) v = dist(rng);
        const WaveletFilter f = make_filter("sym7");

        const double t_omp =
            timed([&] { detail::filter_rows(in, f.dec_lo, 1, out_omp); }, 20);
        const double t_ref = timed([&] { ref::filter_rows(in, f.dec_lo, 1, out_ref); }, 20);
        double max_abs = 0.0;
        for (size_t i = 0; i < out_omp.numel(); ++i)
            max_abs = std::max(max_abs, std::abs(out_omp.v[i] - out_ref.v[i]));
        std::printf("swt rows 256x256 sym7  omp %8.3f ms   serial %8.3f ms   "
                    "speedup %.2fx   max|diff| %.3g\n",
                    t_omp * 1e3, t_ref * 1e3, t_ref / t_omp, max_abs);
    }

    {
        const int H = 128, W = 128;
        Plane in(H, W);
        for (auto& v : in.v) v = dist(rng);
        const WaveletFilter f = make_filter("db7");

        SubbandSet set_fast;
        const double t_fast = timed([&] { set_fast = swt2_forward(in, f, 1); }, 10);
        SubbandSet set_ref = set_fast;
        const double t_ref = timed(
            [&] {
                // separable-oracle path: dense 2-D circular convolutions
                set_ref.at("LL") = ref::circular_conv2d(in, f.dec_lo, f.dec_lo, 1);
                set_ref.at("LH") = ref::circular_conv2d(in, f.dec_hi, f.dec_lo, 1);
                set_ref.at("HL") = ref::circular_conv2d(in, f.dec_lo, f.dec_hi, 1);
                set_ref.at("HH") = ref::circular_conv2d(in, f.dec_hi, f.dec_hi, 1);
            },
            3);
        double max_abs = 0.0;
        for (const char* lbl : {"LL", "LH", "HL", "HH"})
            for (size_t i = 0; i < in.numel(); ++i)
                max_abs = std::max(
                    max_abs, std::abs(set_fast.at(lbl).v[i] - set_ref.at(lbl).v[i]));
        std::printf("swt2 128x128 db7       fast %7.3f ms   dense  %8.3f ms   "
                    "speedup %.2fx   max|diff| %.3g\n",
                    t_fast * 1e3, t_ref * 1e3, t_ref / t_fast, max_abs);
    }
    return 0;
}
