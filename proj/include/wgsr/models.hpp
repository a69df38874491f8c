// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "wgsr/tensor.hpp"

namespace wgsr {

// Ordered, named parameter collection; iteration order is construction
// order and defines the checkpoint layout.
struct Params {
    std::vector<std::pair<std::string, ad::Tensor>> items;

    ad::Tensor& add(const std::string& name, ad::Tensor t);
    ad::Tensor& at(const std::string& name);
    const ad::Tensor& at(const std::string& name) const;
    bool has(const std::string& name) const;
    size_t count_scalars() const;
    void zero_grads();
};

struct GeneratorConfig {
    int num_blocks = 2;   // residual-in-residual dense blocks (23 at full scale)
    int features = 16;    // trunk width (64 at full scale)
    int scale = 4;        // the only supported upsampling factor
    float slope = 0.2f;   // leaky-relu slope inside dense blocks

    void validate() const;
    int growth() const { return features / 2; }
};

struct DiscriminatorConfig {
    int conv_layers = 9;      // paper-faithful layer count; 5 in tiny mode
    int base_features = 8;    // 64 at full scale; widths double up to 8x base
    int input_height = 128;   // detail-subband resolution seen by conv1
    int input_width = 128;
    int linear_hidden = 100;
    float head_slope = 0.2f;  // leaky-relu between the two linear layers
    bool use_batch_stats = true;

    void validate() const;
};

// Reduced-scale RRDB generator: dense residual blocks with residual
// scaling 0.2, global residual, two nearest+conv upsampling stages.
struct Generator {
    GeneratorConfig cfg;
    Params params;
    ad::Tensor forward(ad::Tape& tape, const ad::Tensor& lr_batch) const;
};

Generator build_generator(const GeneratorConfig& cfg, uint64_t rng_seed);

// Discriminator over the concatenated [LH, HL, HH] detail subbands:
// convolutions alternating 3x3/stride-1 with 4x4/stride-2, batch norm and
// ReLU between, then two linear layers with LeakyReLU, one logit per sample.
struct Discriminator {
    DiscriminatorConfig cfg;
    Params params;
    ad::Tensor forward(ad::Tape& tape, const ad::Tensor& details) const;
};

Discriminator build_swt_discriminator(const DiscriminatorConfig& cfg, uint64_t rng_seed);

// [LH, HL, HH] of a decomposition as a (1, 3, H, W) tensor, raw values.
ad::Tensor detail_concat(const SubbandSet& set);

}  // namespace wgsr
