// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "wgsr/image.hpp"
#include "wgsr/tensor.hpp"

namespace wgsr {

struct ImagePair {
    std::string name;
    ImageTensor lr;  // RGB, [0,1]
    ImageTensor hr;  // RGB, exactly 4x the LR dimensions
};

// Paired training images. `root/HR` must hold PNGs; if `root/LR` exists,
// files pair by identical name, otherwise LR is synthesized by bicubic 1/4
// downsampling. Pairs are sorted by filename.
class Dataset {
public:
    static Dataset load(const std::string& root);
    // Wraps already-decoded pairs (tests, single-image overfit).
    static Dataset from_pairs(std::vector<ImagePair> pairs);

    size_t size() const { return pairs_.size(); }
    const ImagePair& at(size_t i) const { return pairs_.at(i); }

private:
    std::vector<ImagePair> pairs_;
};

// LR crop of `patch` pixels at a uniformly random valid offset; HR crop at
// exactly 4x the offset and 4x the size.
std::pair<ImageTensor, ImageTensor> crop_pair(const ImageTensor& lr, const ImageTensor& hr,
                                              int patch, std::mt19937_64& rng);

// Seeded batch sampler: the sequence of (image index, offset) draws is a
// pure function of the seed.
class BatchSampler {
public:
    BatchSampler(const Dataset& data, int patch, int batch, uint64_t seed)
        : data_(data), patch_(patch), batch_(batch), rng_(seed) {}
    // Stacked crops as (batch, 3, patch, patch) / (batch, 3, 4*patch, 4*patch)
    // float tensors in [0,1].
    std::pair<ad::Tensor, ad::Tensor> next();

private:
    const Dataset& data_;
    int patch_, batch_;
    std::mt19937_64 rng_;
};

// Planar [0,1] image batch <-> tensor helpers.
ad::Tensor to_tensor(const std::vector<ImageTensor>& batch);
ImageTensor to_image(const ad::Tensor& t, int item, Colorspace cs);

}  // namespace wgsr
