// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "grad_check.hpp"
#include "wgsr/models.hpp"
#include "wgsr/trainer.hpp"

using namespace wgsr;
using ad::Shape;
using ad::Tape;
using ad::Tensor;

TEST_CASE("generator output is 4x the input resolution") {
    GeneratorConfig cfg;
    cfg.num_blocks = 1;
    cfg.features = 8;
    const Generator gen = build_generator(cfg, 1);
    auto in = testing::random_tensors({{2, 3, 6, 5}}, 2, 0.0f, 1.0f);
    Tape t;
    const Tensor out = gen.forward(t, in[0]);
    CHECK(out.shape == Shape{2, 3, 24, 20});
    CHECK_THROWS_AS(gen.forward(t, Tensor::zeros(Shape{1, 1, 6, 6})), Error);
}

TEST_CASE("same seed gives identical parameters, different seeds differ") {
    GeneratorConfig cfg;
    cfg.num_blocks = 1;
    cfg.features = 8;
    const Generator a = build_generator(cfg, 7);
    const Generator b = build_generator(cfg, 7);
    const Generator c = build_generator(cfg, 8);
    REQUIRE(a.params.items.size() == b.params.items.size());
    bool same_ab = true, same_ac = true;
    for (size_t i = 0; i < a.params.items.size(); ++i) {
        same_ab = same_ab &&
                  a.params.items[i].second.data->val == b.params.items[i].second.data->val;
        same_ac = same_ac &&
                  a.params.items[i].second.data->val == c.params.items[i].second.data->val;
    }
    CHECK(same_ab);
    CHECK(!same_ac);
}

TEST_CASE("zeroed residual blocks reduce the generator to its skip path") {
    GeneratorConfig cfg;
    cfg.num_blocks = 2;
    cfg.features = 8;
    Generator gen = build_generator(cfg, 3);
    // zero every dense-block conv and the trunk: the RRDB chain then passes
    // features through unchanged and the trunk residual contributes nothing
    for (auto& [name, tns] : gen.params.items)
        if (name.find("block") == 0 || name.find("trunk") == 0)
            std::fill(tns.data->val.begin(), tns.data->val.end(), 0.0f);

    auto in = testing::random_tensors({{1, 3, 5, 5}}, 4, 0.0f, 1.0f);
    Tape t;
    const Tensor full = gen.forward(t, in[0]);

    // upsampling path applied directly to conv_first features
    Tensor x = ad::conv2d(t, in[0], gen.params.at("conv_first.w"),
                          gen.params.at("conv_first.b"), 1, 1);
    x = ad::nearest_upsample(t, x, 2);
    x = ad::leaky_relu(t, ad::conv2d(t, x, gen.params.at("up1.w"),
                                     gen.params.at("up1.b"), 1, 1), cfg.slope);
    x = ad::nearest_upsample(t, x, 2);
    x = ad::leaky_relu(t, ad::conv2d(t, x, gen.params.at("up2.w"),
                                     gen.params.at("up2.b"), 1, 1), cfg.slope);
    x = ad::leaky_relu(t, ad::conv2d(t, x, gen.params.at("hr.w"),
                                     gen.params.at("hr.b"), 1, 1), cfg.slope);
    x = ad::conv2d(t, x, gen.params.at("last.w"), gen.params.at("last.b"), 1, 1);

    for (size_t i = 0; i < full.numel(); ++i) CHECK(full.val()[i] == x.val()[i]);
}

TEST_CASE("discriminator produces one logit per sample") {
    DiscriminatorConfig cfg;
    cfg.conv_layers = 5;
    cfg.base_features = 4;
    cfg.input_height = 32;
    cfg.input_width = 32;
    const Discriminator d = build_swt_discriminator(cfg, 5);
    auto in = testing::random_tensors({{3, 3, 32, 32}}, 6);
    Tape t;
    const Tensor out = d.forward(t, in[0]);
    CHECK(out.shape == Shape{3, 1, 1, 1});
    CHECK_THROWS_AS(d.forward(t, Tensor::zeros(Shape{1, 3, 16, 16})), Error);
    CHECK_THROWS_AS(d.forward(t, Tensor::zeros(Shape{1, 1, 32, 32})), Error);
}

TEST_CASE("discriminator config validation") {
    DiscriminatorConfig cfg;
    cfg.conv_layers = 7;
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg.conv_layers = 9;
    cfg.input_height = 100;  // not divisible by 16
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg.input_height = 128;
    cfg.input_width = 128;
    CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("9-layer discriminator downsamples by 16") {
    DiscriminatorConfig cfg;  // defaults: 9 layers, 128x128, base 8
    const Discriminator d = build_swt_discriminator(cfg, 9);
    auto in = testing::random_tensors({{1, 3, 128, 128}}, 10);
    Tape t;
    CHECK(d.forward(t, in[0]).shape == Shape{1, 1, 1, 1});
    // widths follow the f,f,2f,...,8f doubling: final conv has 64 channels
    CHECK(d.params.at("conv8.w").shape.n == 64);
    CHECK(d.params.at("fc0.w").shape.c == 64 * 8 * 8);
}

TEST_CASE("without batch stats the discriminator is per-sample deterministic") {
    DiscriminatorConfig cfg;
    cfg.conv_layers = 5;
    cfg.base_features = 4;
    cfg.input_height = 32;
    cfg.input_width = 32;
    cfg.use_batch_stats = false;
    const Discriminator d = build_swt_discriminator(cfg, 11);
    auto in = testing::random_tensors({{2, 3, 32, 32}}, 12);
    Tape t;
    const Tensor batch = d.forward(t, in[0]);
    const size_t item = static_cast<size_t>(3) * 32 * 32;
    Tensor first = Tensor::from(Shape{1, 3, 32, 32},
                                std::vector<float>(in[0].val(), in[0].val() + item));
    const Tensor solo = d.forward(t, first);
    CHECK(batch.val()[0] == solo.val()[0]);
}

TEST_CASE("detail_concat stacks LH, HL, HH in order") {
    const WaveletFilter f = make_filter("haar");
    Plane p(8, 8);
    for (size_t i = 0; i < p.numel(); ++i) p.v[i] = static_cast<double>(i) / 64.0;
    const SubbandSet set = swt2_forward(p, f, 1);
    const Tensor d = detail_concat(set);
    CHECK(d.shape == Shape{1, 3, 8, 8});
    const char* want[3] = {"LH", "HL", "HH"};
    for (int c = 0; c < 3; ++c)
        for (size_t i = 0; i < p.numel(); ++i)
            CHECK(d.val()[c * 64 + i] ==
                  doctest::Approx(set.at(want[c]).v[i]).epsilon(1e-6));
}

TEST_CASE("parameter bookkeeping") {
    Params p;
    p.add("a", Tensor::zeros(Shape{2, 3, 1, 1}, true));
    CHECK_THROWS_AS(p.add("a", Tensor::zeros(Shape{1, 1, 1, 1})), Error);
    CHECK_THROWS_AS(p.at("missing"), Error);
    CHECK(p.count_scalars() == 6);
}
