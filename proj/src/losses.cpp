// SPDX-License-Identifier: Apache-2.0

#include "wgsr/losses.hpp"

#include <cmath>
#include <random>

namespace wgsr {

using ad::Shape;
using ad::Tape;
using ad::Tensor;

double LossWeights::at(std::string_view label) const {
    for (const auto& [k, v] : subband)
        if (k == label) return v;
    throw Error("loss weights: no entry for subband '" + std::string(label) + "'");
}

void LossWeights::set(const std::string& label, double value) {
    for (auto& [k, v] : subband)
        if (k == label) {
            v = value;
            return;
        }
    subband.emplace_back(label, value);
}

void LossWeights::validate_for(int levels) const {
    const auto want = subband_labels(levels);
    if (subband.size() != want.size())
        throw Error("loss weights: expected " + std::to_string(want.size()) +
                    " subband weights for " + std::to_string(levels) + " level(s), got " +
                    std::to_string(subband.size()));
    for (const auto& label : want) {
        bool found = false;
        for (const auto& [k, v] : subband)
            if (k == label) {
                if (!std::isfinite(v) || v < 0.0)
                    throw Error("loss weights: invalid value for '" + label + "'");
                found = true;
            }
        if (!found) throw Error("loss weights: missing subband '" + label + "'");
    }
    if (!std::isfinite(adv) || adv < 0.0 || !std::isfinite(perc) || perc < 0.0)
        throw Error("loss weights: adv/perc must be finite and >= 0");
}

LossWeights default_weights(int levels) {
    LossWeights w;
    w.adv = 0.005;
    w.perc = 1.0;
    if (levels == 1) {
        w.subband = {{"LL", 0.1}, {"LH", 0.01}, {"HL", 0.01}, {"HH", 0.05}};
    } else if (levels == 2) {
        w.subband = {{"L-LL", 0.1}, {"L-LH", 0.01}, {"L-HL", 0.01}, {"L-HH", 0.05},
                     {"LH", 0.1},   {"HL", 0.1},    {"HH", 0.05}};
    } else {
        throw Error("default_weights: levels must be 1 or 2");
    }
    return w;
}

namespace {

// out = x - mean(ref), broadcast; gradient flows into both arguments.
Tensor sub_mean_of(Tape& t, const Tensor& x, const Tensor& ref) {
    double mu = 0.0;
    for (size_t i = 0; i < ref.numel(); ++i) mu += ref.val()[i];
    mu /= static_cast<double>(ref.numel());
    Tensor out = Tensor::zeros(x.shape, x.needs_grad() || ref.needs_grad());
    for (size_t i = 0; i < x.numel(); ++i)
        out.val()[i] = static_cast<float>(x.val()[i] - mu);
    if (out.needs_grad())
        t.record([x, ref, out]() mutable {
            const float* g = out.grad();
            if (x.needs_grad()) {
                float* gx = x.grad();
                for (size_t i = 0; i < x.numel(); ++i) gx[i] += g[i];
            }
            if (ref.needs_grad()) {
                double gsum = 0.0;
                for (size_t i = 0; i < x.numel(); ++i) gsum += g[i];
                const float gr = static_cast<float>(-gsum / ref.numel());
                float* grf = ref.grad();
                for (size_t i = 0; i < ref.numel(); ++i) grf[i] += gr;
            }
        });
    return out;
}

}  // namespace

ad::Tensor swt_fidelity_loss(Tape& t, const Tensor& sr_y, const Tensor& hr_y,
                             const WaveletFilter& filter, int levels,
                             const LossWeights& w, bool raw_sum) {
    if (!(sr_y.shape == hr_y.shape))
        throw Error("swt_fidelity_loss: shape mismatch " + sr_y.shape.str() + " vs " +
                    hr_y.shape.str());
    w.validate_for(levels);

    const auto sr_bands = ad::swt_forward_diff(t, sr_y, filter, levels);
    const auto hr_bands = ad::swt_forward_diff(t, hr_y, filter, levels);

    // Per-item element count converts the batch-mean l1 back to the paper's
    // per-image raw sum when requested.
    const float per_item =
        static_cast<float>(static_cast<size_t>(sr_y.shape.h) * sr_y.shape.w);

    Tensor total = Tensor::scalar_of(0.0f);
    for (size_t b = 0; b < sr_bands.labels.size(); ++b) {
        const double lambda = w.at(sr_bands.labels[b]);
        Tensor term = ad::l1(t, sr_bands.bands[b], hr_bands.bands[b]);
        const float s = static_cast<float>(lambda) * (raw_sum ? per_item : 1.0f);
        total = ad::add_scaled(t, total, term, s);
    }
    return total;
}

ad::Tensor adversarial_generator_loss(Tape& t, const Tensor& d_real_logits,
                                      const Tensor& d_fake_logits, bool relativistic) {
    if (!(d_real_logits.shape == d_fake_logits.shape))
        throw Error("adversarial_generator_loss: logit shape mismatch " +
                    d_real_logits.shape.str() + " vs " + d_fake_logits.shape.str());
    if (relativistic) {
        // -E[log sigmoid(fake - mean real)] - E[log(1 - sigmoid(real - mean fake))]
        Tensor rel_fake = sub_mean_of(t, d_fake_logits, d_real_logits);
        Tensor rel_real = sub_mean_of(t, d_real_logits, d_fake_logits);
        return ad::add(t, ad::bce_logits(t, rel_fake, 1.0f),
                       ad::bce_logits(t, rel_real, 0.0f));
    }
    // -E[log(1 - sigmoid(real))] - E[log sigmoid(fake)]
    return ad::add(t, ad::bce_logits(t, d_real_logits, 0.0f),
                   ad::bce_logits(t, d_fake_logits, 1.0f));
}

ad::Tensor discriminator_loss(Tape& t, const Tensor& d_real_logits,
                              const Tensor& d_fake_logits) {
    if (!(d_real_logits.shape == d_fake_logits.shape))
        throw Error("discriminator_loss: logit shape mismatch " +
                    d_real_logits.shape.str() + " vs " + d_fake_logits.shape.str());
    // -E[log sigmoid(real)] - E[log(1 - sigmoid(fake))]
    return ad::add(t, ad::bce_logits(t, d_real_logits, 1.0f),
                   ad::bce_logits(t, d_fake_logits, 0.0f));
}

std::vector<ad::Tensor> PerceptualExtractor::features(Tape& t, const Tensor& rgb) const {
    std::vector<Tensor> out;
    Tensor x = rgb;
    for (int s = 0; s < 3; ++s) {
        const std::string name = "stage" + std::to_string(s);
        x = ad::conv2d(t, x, params.at(name + ".w"), params.at(name + ".b"), 2, 1);
        x = ad::leaky_relu(t, x, slope);
        out.push_back(x);
    }
    return out;
}

PerceptualExtractor build_perceptual_extractor(uint64_t rng_seed) {
    PerceptualExtractor e;
    std::mt19937_64 rng(rng_seed);
    int ic = 3;
    const int widths[3] = {8, 16, 32};
    for (int s = 0; s < 3; ++s) {
        const int oc = widths[s];
        const double std = std::sqrt(2.0 / (static_cast<double>(ic) * 9));
        std::normal_distribution<double> dist(0.0, std);
        std::vector<float> wv(static_cast<size_t>(oc) * ic * 9);
        for (auto& v : wv) v = static_cast<float>(dist(rng));
        const std::string name = "stage" + std::to_string(s);
        // frozen: no gradient into the extractor itself
        e.params.add(name + ".w", Tensor::from(Shape{oc, ic, 3, 3}, std::move(wv), false));
        e.params.add(name + ".b", Tensor::zeros(Shape{1, oc, 1, 1}, false));
        ic = oc;
    }
    return e;
}

ad::Tensor perceptual_loss(Tape& t, const Tensor& sr_rgb, const Tensor& hr_rgb,
                           const PerceptualExtractor& extractor) {
    if (!(sr_rgb.shape == hr_rgb.shape))
        throw Error("perceptual_loss: shape mismatch " + sr_rgb.shape.str() + " vs " +
                    hr_rgb.shape.str());
    const auto fs = extractor.features(t, sr_rgb);
    const auto fh = extractor.features(t, hr_rgb);

    size_t total_elems = 0;
    for (const auto& f : fs) total_elems += f.numel();

    // Mean l1 over the stacked maps == element-count weighted mix of the
    // per-stage means.
    Tensor total = Tensor::scalar_of(0.0f);
    for (size_t s = 0; s < fs.size(); ++s) {
        Tensor term = ad::l1(t, fs[s], fh[s]);
        const float frac = static_cast<float>(fs[s].numel()) / total_elems;
        total = ad::add_scaled(t, total, term, frac);
    }
    return total;
}

ad::Tensor total_generator_loss(Tape& t, const Tensor& l_swt, const Tensor& l_adv_g,
                                const Tensor& l_perc, const LossWeights& w) {
    for (const Tensor* l : {&l_swt, &l_adv_g, &l_perc})
        if (l->numel() != 1 || !std::isfinite(l->val()[0]))
            throw Error("total_generator_loss: non-finite or non-scalar loss term");
    Tensor out = ad::add_scaled(t, l_swt, l_adv_g, static_cast<float>(w.adv));
    return ad::add_scaled(t, out, l_perc, static_cast<float>(w.perc));
}

}  // namespace wgsr
