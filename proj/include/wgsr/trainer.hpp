// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "wgsr/adam.hpp"
#include "wgsr/config.hpp"
#include "wgsr/dataset.hpp"
#include "wgsr/losses.hpp"
#include "wgsr/models.hpp"

namespace wgsr {

struct TrainLogRow {
    int iter = 0;
    double fid = 0.0;    // L_SWT, or RGB l1 under the fidelity ablation
    double adv_g = 0.0;
    double d = 0.0;
    double perc = 0.0;
    double total = 0.0;  // L_G
};

// Column names track the active ablation domains.
std::string train_log_header(const TrainConfig& cfg);
void write_train_log(const std::vector<TrainLogRow>& rows, const TrainConfig& cfg,
                     const std::string& path);

// Studio-range BT.601 luma as a differentiable (n,1,h,w) map; implemented
// as a fixed 1x1 convolution so gradients flow back into the RGB batch.
ad::Tensor luma(ad::Tape& t, const ad::Tensor& rgb);

// [LH, HL, HH] of a differentiable decomposition as one (n,3,h,w) tensor.
ad::Tensor detail_tensor(ad::Tape& t, const ad::DiffSubbands& bands);

// lr halved once at the configured step.
double lr_at(const TrainConfig& cfg, int iter);

// Seeds for the trainer's independently seeded components, all derived
// from cfg.seed so one seed pins the whole run.
uint64_t seed_generator(const TrainConfig& cfg);
uint64_t seed_discriminator(const TrainConfig& cfg);
uint64_t seed_extractor(const TrainConfig& cfg);
uint64_t seed_sampler(const TrainConfig& cfg);

// Phase 1: RGB-domain l1 minimization standing in for pretrained weights.
// Saves a checkpoint to ckpt_path; returns the per-iteration pixel l1.
// A non-finite loss aborts after saving the last good parameters.
std::vector<double> pretrain_pixel(Generator& gen, const Dataset& data,
                                   const TrainConfig& cfg, const std::string& ckpt_path);

// Phase 2: the adversarial loop. Per iteration the discriminator is
// updated on the detached generator output, then the generator on the
// combined objective; the discriminator is never constructed when the
// adversarial weight is zero. Writes gen.ckpt, disc.ckpt (when built) and
// train_log.csv under out_dir.
std::vector<TrainLogRow> train_gan(Generator& gen, const Dataset& data,
                                   const TrainConfig& cfg, const std::string& out_dir);

}  // namespace wgsr
