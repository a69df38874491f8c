// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wgsr/losses.hpp"
#include "wgsr/models.hpp"

namespace wgsr {

enum class LossDomain { SWT, RGB };
enum class PercKind { Off, Feature };

struct TrainConfig {
    // data / loop
    int patch = 32;          // LR crop edge; HR crops are 4x
    int batch = 4;
    int iters = 1000;
    int pretrain_iters = 500;
    double lr = 1e-4;
    int lr_halve_step = 50000;
    int d_steps = 1;         // discriminator updates per generator update

    // optimizer
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;

    // decomposition + losses
    std::string wavelet = "sym7";
    int levels = 1;
    LossWeights weights;     // defaults for `levels`, then overrides, at finalize
    std::vector<std::pair<std::string, double>> lambda_overrides;
    bool raw_sum_l1 = false;
    bool relativistic = false;

    // ablation switches
    LossDomain fidelity_domain = LossDomain::SWT;
    LossDomain adv_domain = LossDomain::SWT;
    PercKind perc_kind = PercKind::Feature;

    // models
    GeneratorConfig gen;
    DiscriminatorConfig disc;
    bool batch_stats = true;  // false gives run-to-run determinism

    uint64_t seed = 0;
    bool seed_set = false;

    // Applies one "key=value" assignment; unknown keys are an error.
    void apply(const std::string& assignment);
    // Resolves defaults that depend on other fields and validates everything.
    void finalize();
    // Canonical "key=value" lines; hashing this ties artifacts to a config.
    std::string serialize() const;
    uint64_t hash() const;  // FNV-1a of serialize()
};

// Reads a flat key=value file ('#' comments, blank lines ignored) and then
// applies overrides in order.
TrainConfig load_config(const std::optional<std::string>& path,
                        const std::vector<std::string>& overrides);

}  // namespace wgsr
