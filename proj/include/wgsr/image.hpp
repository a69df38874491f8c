// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "wgsr/common.hpp"
#include "wgsr/wavelet.hpp"

namespace wgsr {

enum class Colorspace { RGB, YCbCr, Y };

// Planar (channel-major) raster with nominal value range [0, 1].
struct ImageTensor {
    int height = 0;
    int width = 0;
    int channels = 0;
    Colorspace colorspace = Colorspace::RGB;
    std::vector<double> data;  // channels * height * width

    ImageTensor() = default;
    ImageTensor(int h, int w, int c, Colorspace cs)
        : height(h), width(w), channels(c), colorspace(cs),
          data(static_cast<size_t>(c) * h * w, 0.0) {}

    double& at(int c, int y, int x) {
        return data[(static_cast<size_t>(c) * height + y) * width + x];
    }
    double at(int c, int y, int x) const {
        return data[(static_cast<size_t>(c) * height + y) * width + x];
    }
    Plane channel(int c) const;
};

// ITU-R BT.601 studio-range conversions (the MATLAB rgb2ycbcr convention).
ImageTensor rgb_to_ycbcr(const ImageTensor& img);
ImageTensor ycbcr_to_rgb(const ImageTensor& img);

// Luma plane; RGB input is converted first, chroma is discarded.
ImageTensor extract_y(const ImageTensor& img);

// MATLAB-imresize-compatible separable cubic resampling (a = -0.5),
// antialiased when downscaling, symmetric edge extension.
// Output dimensions are ceil(input * scale).
ImageTensor bicubic_resize(const ImageTensor& img, double scale);

// 8-bit PNG I/O, values scaled to/from [0, 1]. 16-bit input is rejected.
ImageTensor load_png(const std::string& path);
void save_png(const ImageTensor& img, const std::string& path);

// 16-bit grayscale PNG used by the subband dump; values taken as [0, 65535].
void save_png16(const std::vector<uint16_t>& gray, int height, int width,
                const std::string& path);

}  // namespace wgsr
