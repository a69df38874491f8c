// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string_view>

#include "wgsr/models.hpp"
#include "wgsr/tensor.hpp"
#include "wgsr/wavelet.hpp"

namespace wgsr {

// Per-subband fidelity weights plus the adversarial/perceptual scales.
struct LossWeights {
    std::vector<std::pair<std::string, double>> subband;
    double adv = 0.0;
    double perc = 0.0;

    double at(std::string_view label) const;
    void set(const std::string& label, double value);
    // Keys must exactly match the active decomposition's labels and every
    // weight must be finite and >= 0.
    void validate_for(int levels) const;
};

// The empirically searched weight tables for 1- and 2-level decompositions.
LossWeights default_weights(int levels);

// Weighted sum over subbands of the mean-absolute difference between the
// decompositions of the two Y-plane batches. With raw_sum the per-item
// l1 is an unnormalized sum instead of a mean.
ad::Tensor swt_fidelity_loss(ad::Tape& t, const ad::Tensor& sr_y, const ad::Tensor& hr_y,
                             const WaveletFilter& filter, int levels,
                             const LossWeights& w, bool raw_sum = false);

// Generator adversarial term, as printed:
//   -E[log(1 - sigmoid(d_real))] - E[log sigmoid(d_fake)]
// With relativistic = true the relativistic-average variant is used instead.
ad::Tensor adversarial_generator_loss(ad::Tape& t, const ad::Tensor& d_real_logits,
                                      const ad::Tensor& d_fake_logits,
                                      bool relativistic = false);

//   -E[log sigmoid(d_real)] - E[log(1 - sigmoid(d_fake))]
ad::Tensor discriminator_loss(ad::Tape& t, const ad::Tensor& d_real_logits,
                              const ad::Tensor& d_fake_logits);

// Fixed-parameter (frozen, seeded) 3-stage strided conv stack standing in
// for a pretrained perceptual network; pluggable behind this interface.
struct PerceptualExtractor {
    Params params;
    float slope = 0.2f;
    std::vector<ad::Tensor> features(ad::Tape& t, const ad::Tensor& rgb) const;
};

PerceptualExtractor build_perceptual_extractor(uint64_t rng_seed);

// Mean l1 over the stacked feature maps of both inputs.
ad::Tensor perceptual_loss(ad::Tape& t, const ad::Tensor& sr_rgb, const ad::Tensor& hr_rgb,
                           const PerceptualExtractor& extractor);

// L_G = L_SWT + adv * L_adv + perc * L_perc; throws on non-finite inputs.
ad::Tensor total_generator_loss(ad::Tape& t, const ad::Tensor& l_swt,
                                const ad::Tensor& l_adv_g, const ad::Tensor& l_perc,
                                const LossWeights& w);

}  // namespace wgsr
