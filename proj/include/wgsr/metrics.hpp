// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "wgsr/image.hpp"
#include "wgsr/wavelet.hpp"

namespace wgsr {

// Reported when the mean squared error is exactly zero.
inline constexpr double kPsnrCap = 99.0;
// Low-resolution consistency gate, in dB.
inline constexpr double kLrConsistencyDb = 45.0;

struct EvalRecord {
    std::string image;
    double psnr_y = 0.0;
    double ssim_y = 0.0;
    double lr_psnr = 0.0;
    bool lr_consistent = false;  // always == (lr_psnr >= kLrConsistencyDb)
};

// 10*log10(peak^2 / MSE); returns kPsnrCap when MSE == 0. shave trims a
// border of that many pixels from both planes first.
double psnr(const Plane& a, const Plane& b, double peak = 1.0, int shave = 0);

// Single-scale SSIM, 11x11 Gaussian window sigma 1.5, C1=(0.01*peak)^2,
// C2=(0.03*peak)^2, averaged over valid (fully interior) window positions.
double ssim(const Plane& a, const Plane& b, double peak = 1.0, int shave = 0);

// PSNR over all RGB channels between bicubic_resize(sr, 1/4) and lr.
double lr_psnr(const ImageTensor& sr_rgb, const ImageTensor& lr_rgb);

EvalRecord evaluate_pair(const std::string& name, const ImageTensor& sr_rgb,
                         const ImageTensor& hr_rgb, const ImageTensor& lr_rgb,
                         int shave = 0);

}  // namespace wgsr
