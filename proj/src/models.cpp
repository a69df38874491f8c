// SPDX-License-Identifier: Apache-2.0

#include "wgsr/models.hpp"

#include <cmath>
#include <random>

namespace wgsr {

using ad::Shape;
using ad::Tape;
using ad::Tensor;

ad::Tensor& Params::add(const std::string& name, ad::Tensor t) {
    if (has(name)) throw Error("duplicate parameter '" + name + "'");
    items.emplace_back(name, std::move(t));
    return items.back().second;
}

ad::Tensor& Params::at(const std::string& name) {
    for (auto& [n, t] : items)
        if (n == name) return t;
    throw Error("no parameter '" + name + "'");
}

const ad::Tensor& Params::at(const std::string& name) const {
    for (const auto& [n, t] : items)
        if (n == name) return t;
    throw Error("no parameter '" + name + "'");
}

bool Params::has(const std::string& name) const {
    for (const auto& [n, t] : items)
        if (n == name) return true;
    return false;
}

size_t Params::count_scalars() const {
    size_t total = 0;
    for (const auto& [n, t] : items) total += t.numel();
    return total;
}

void Params::zero_grads() {
    for (auto& [n, t] : items) t.zero_grad();
}

void GeneratorConfig::validate() const {
    if (num_blocks < 1) throw Error("generator: num_blocks must be >= 1");
    if (features < 4) throw Error("generator: features must be >= 4");
    if (scale != 4) throw Error("generator: only scale 4 is supported");
}

void DiscriminatorConfig::validate() const {
    if (conv_layers != 9 && conv_layers != 5)
        throw Error("discriminator: conv_layers must be 9 (paper) or 5 (tiny)");
    if (base_features < 2) throw Error("discriminator: base_features must be >= 2");
    const int down = 1 << (conv_layers / 2);
    if (input_height % down || input_width % down)
        throw Error("discriminator: input dims must be divisible by " + std::to_string(down));
}

namespace {

class Init {
public:
    explicit Init(uint64_t seed) : rng_(seed) {}

    // He-style fan-in scaled normal draw for a conv/linear weight.
    Tensor conv_weight(int oc, int ic, int k, double gain = 1.0) {
        const double std = gain * std::sqrt(2.0 / (static_cast<double>(ic) * k * k));
        return draw(Shape{oc, ic, k, k}, std);
    }
    Tensor linear_weight(int out, int in, double gain = 1.0) {
        const double std = gain * std::sqrt(2.0 / in);
        return draw(Shape{out, in, 1, 1}, std);
    }
    Tensor bias(int n) { return Tensor::zeros(Shape{1, n, 1, 1}, true); }
    Tensor ones(int n) { return Tensor::full(Shape{1, n, 1, 1}, 1.0f, true); }

private:
    Tensor draw(Shape s, double std) {
        std::normal_distribution<double> dist(0.0, std);
        std::vector<float> v(s.numel());
        for (auto& x : v) x = static_cast<float>(dist(rng_));
        return Tensor::from(s, std::move(v), true);
    }
    std::mt19937_64 rng_;
};

void add_conv(Params& p, Init& init, const std::string& name, int oc, int ic, int k,
              double gain = 1.0) {
    p.add(name + ".w", init.conv_weight(oc, ic, k, gain));
    p.add(name + ".b", init.bias(oc));
}

Tensor run_conv(Tape& t, const Params& p, const std::string& name, const Tensor& x,
                int stride, int pad) {
    return ad::conv2d(t, x, p.at(name + ".w"), p.at(name + ".b"), stride, pad);
}

// One dense block: 5 convs with dense connectivity, residual scaling 0.2.
Tensor dense_block(Tape& t, const Params& p, const std::string& prefix, const Tensor& x,
                   float slope) {
    std::vector<Tensor> feats = {x};
    Tensor cur;
    for (int i = 0; i < 5; ++i) {
        Tensor in = feats.size() == 1 ? feats[0] : ad::concat_channels(t, feats);
        cur = run_conv(t, p, prefix + ".conv" + std::to_string(i), in, 1, 1);
        if (i < 4) cur = ad::leaky_relu(t, cur, slope);
        feats.push_back(cur);
    }
    return ad::add_scaled(t, x, cur, 0.2f);
}

Tensor rrdb(Tape& t, const Params& p, const std::string& prefix, const Tensor& x,
            float slope) {
    Tensor y = dense_block(t, p, prefix + ".db0", x, slope);
    y = dense_block(t, p, prefix + ".db1", y, slope);
    y = dense_block(t, p, prefix + ".db2", y, slope);
    return ad::add_scaled(t, x, y, 0.2f);
}

struct DiscLayer {
    int kernel, stride, width;
};

std::vector<DiscLayer> disc_layout(const DiscriminatorConfig& cfg) {
    std::vector<DiscLayer> layers;
    const int f = cfg.base_features;
    if (cfg.conv_layers == 9) {
        const int widths[9] = {f, f, 2 * f, 2 * f, 4 * f, 4 * f, 8 * f, 8 * f, 8 * f};
        for (int i = 0; i < 9; ++i)
            layers.push_back({i % 2 ? 4 : 3, i % 2 ? 2 : 1, widths[i]});
    } else {
        const int widths[5] = {f, 2 * f, 4 * f, 8 * f, 8 * f};
        for (int i = 0; i < 5; ++i)
            layers.push_back({i % 2 ? 4 : 3, i % 2 ? 2 : 1, widths[i]});
    }
    return layers;
}

}  // namespace

Generator build_generator(const GeneratorConfig& cfg, uint64_t rng_seed) {
    cfg.validate();
    Generator g;
    g.cfg = cfg;
    Init init(rng_seed);
    const int F = cfg.features, G = cfg.growth();

    add_conv(g.params, init, "conv_first", F, 3, 3);
    for (int b = 0; b < cfg.num_blocks; ++b)
        for (int d = 0; d < 3; ++d) {
            const std::string prefix =
                "block" + std::to_string(b) + ".db" + std::to_string(d);
            for (int i = 0; i < 5; ++i) {
                const int ic = (i == 0) ? F : F + i * G;
                const int oc = (i == 4) ? F : G;
                // final conv of each dense branch starts small
                add_conv(g.params, init, prefix + ".conv" + std::to_string(i), oc, ic, 3,
                         i == 4 ? 0.1 : 1.0);
            }
        }
    add_conv(g.params, init, "trunk", F, F, 3, 0.1);
    add_conv(g.params, init, "up1", F, F, 3);
    add_conv(g.params, init, "up2", F, F, 3);
    add_conv(g.params, init, "hr", F, F, 3);
    add_conv(g.params, init, "last", 3, F, 3);
    return g;
}

ad::Tensor Generator::forward(Tape& t, const Tensor& lr_batch) const {
    if (lr_batch.shape.c != 3)
        throw Error("generator: expected 3-channel input, got " + lr_batch.shape.str());
    Tensor feat = run_conv(t, params, "conv_first", lr_batch, 1, 1);
    Tensor x = feat;
    for (int b = 0; b < cfg.num_blocks; ++b)
        x = rrdb(t, params, "block" + std::to_string(b), x, cfg.slope);
    x = run_conv(t, params, "trunk", x, 1, 1);
    x = ad::add(t, feat, x);  // global residual
    x = ad::nearest_upsample(t, x, 2);
    x = ad::leaky_relu(t, run_conv(t, params, "up1", x, 1, 1), cfg.slope);
    x = ad::nearest_upsample(t, x, 2);
    x = ad::leaky_relu(t, run_conv(t, params, "up2", x, 1, 1), cfg.slope);
    x = ad::leaky_relu(t, run_conv(t, params, "hr", x, 1, 1), cfg.slope);
    return run_conv(t, params, "last", x, 1, 1);
}

Discriminator build_swt_discriminator(const DiscriminatorConfig& cfg, uint64_t rng_seed) {
    cfg.validate();
    Discriminator d;
    d.cfg = cfg;
    Init init(rng_seed);
    const auto layers = disc_layout(cfg);

    int ic = 3, h = cfg.input_height, w = cfg.input_width;
    for (size_t i = 0; i < layers.size(); ++i) {
        const auto& l = layers[i];
        add_conv(d.params, init, "conv" + std::to_string(i), l.width, ic, l.kernel);
        if (i > 0) {
            d.params.add("bn" + std::to_string(i) + ".g", init.ones(l.width));
            d.params.add("bn" + std::to_string(i) + ".b", init.bias(l.width));
        }
        ic = l.width;
        if (l.stride == 2) {
            h /= 2;
            w /= 2;
        }
    }
    const int flat = ic * h * w;
    d.params.add("fc0.w", init.linear_weight(cfg.linear_hidden, flat));
    d.params.add("fc0.b", init.bias(cfg.linear_hidden));
    d.params.add("fc1.w", init.linear_weight(1, cfg.linear_hidden));
    d.params.add("fc1.b", init.bias(1));
    return d;
}

ad::Tensor Discriminator::forward(Tape& t, const Tensor& details) const {
    if (details.shape.c != 3)
        throw Error("discriminator: expected 3 detail channels, got " +
                    details.shape.str());
    if (details.shape.h != cfg.input_height || details.shape.w != cfg.input_width)
        throw Error("discriminator: built for " + std::to_string(cfg.input_height) + "x" +
                    std::to_string(cfg.input_width) + " inputs, got " +
                    details.shape.str());
    const auto layers = disc_layout(cfg);
    Tensor x = details;
    for (size_t i = 0; i < layers.size(); ++i) {
        const auto& l = layers[i];
        x = run_conv(t, params, "conv" + std::to_string(i), x, l.stride, 1);
        if (i > 0)
            x = ad::batch_norm(t, x, params.at("bn" + std::to_string(i) + ".g"),
                               params.at("bn" + std::to_string(i) + ".b"),
                               cfg.use_batch_stats);
        x = ad::leaky_relu(t, x, 0.0f);  // plain ReLU between conv stages
    }
    x = ad::flatten(t, x);
    x = ad::linear(t, x, params.at("fc0.w"), params.at("fc0.b"));
    x = ad::leaky_relu(t, x, cfg.head_slope);
    return ad::linear(t, x, params.at("fc1.w"), params.at("fc1.b"));
}

ad::Tensor detail_concat(const SubbandSet& set) {
    const char* want[3] = {"LH", "HL", "HH"};
    for (const char* l : want)
        if (!set.has(l)) throw Error(std::string("detail_concat: missing subband ") + l);
    const int H = set.height, W = set.width;
    Tensor out = Tensor::zeros(Shape{1, 3, H, W});
    const size_t sz = static_cast<size_t>(H) * W;
    for (int c = 0; c < 3; ++c) {
        const Plane& p = set.at(want[c]);
        for (size_t i = 0; i < sz; ++i)
            out.val()[c * sz + i] = static_cast<float>(p.v[i]);
    }
    return out;
}

}  // namespace wgsr
