// SPDX-License-Identifier: Apache-2.0
//
// wgsr — wavelet-guided super-resolution toolkit CLI.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "wgsr/checkpoint.hpp"
#include "wgsr/config.hpp"
#include "wgsr/dataset.hpp"
#include "wgsr/metrics.hpp"
#include "wgsr/trainer.hpp"

namespace fs = std::filesystem;
using namespace wgsr;

namespace {

struct CommonOpts {
    std::optional<std::string> config;
    std::vector<std::string> sets;
    uint64_t seed = 0;
    std::string data;
    std::string out = "out";
};

void add_train_opts(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config, "flat key=value config file");
    cmd->add_option("--set", o.sets, "override, e.g. --set lambda.LL=0.2")
        ->take_all();
    cmd->add_option("--seed", o.seed, "run seed (recorded in all artifacts)")
        ->required();
    cmd->add_option("--data", o.data, "dataset root containing HR/ (and optional LR/)")
        ->required();
    cmd->add_option("--out", o.out, "output directory");
}

TrainConfig make_cfg(const CommonOpts& o) {
    std::vector<std::string> overrides = o.sets;
    overrides.push_back("seed=" + std::to_string(o.seed));
    TrainConfig cfg = load_config(o.config, overrides);
    return cfg;
}

void write_cfg(const TrainConfig& cfg, const std::string& out_dir) {
    fs::create_directories(out_dir);
    std::ofstream os(fs::path(out_dir) / "config.txt");
    os << "# config hash " << std::hex << cfg.hash() << std::dec << "\n"
       << cfg.serialize();
}

ImageTensor upscale_with(const Generator& gen, const ImageTensor& lr) {
    ad::Tape tape;
    ad::Tensor x = to_tensor({lr});
    ad::Tensor sr = gen.forward(tape, x);
    ImageTensor img = to_image(sr, 0, Colorspace::RGB);
    for (auto& v : img.data) v = std::clamp(v, 0.0, 1.0);
    return img;
}

int cmd_pretrain(const CommonOpts& o) {
    TrainConfig cfg = make_cfg(o);
    write_cfg(cfg, o.out);
    Dataset data = Dataset::load(o.data);
    Generator gen = build_generator(cfg.gen, seed_generator(cfg));
    const auto trace =
        pretrain_pixel(gen, data, cfg, (fs::path(o.out) / "pretrain.ckpt").string());
    if (!trace.empty())
        std::printf("pretrain: %zu iters, l1 %.6f -> %.6f\n", trace.size(),
                    trace.front(), trace.back());
    return 0;
}

int cmd_train(const CommonOpts& o, const std::string& init) {
    TrainConfig cfg = make_cfg(o);
    write_cfg(cfg, o.out);
    Dataset data = Dataset::load(o.data);
    Generator gen = build_generator(cfg.gen, seed_generator(cfg));
    if (!init.empty()) {
        load_checkpoint(gen.params, init);
    } else if (cfg.pretrain_iters > 0) {
        pretrain_pixel(gen, data, cfg, (fs::path(o.out) / "pretrain.ckpt").string());
    }
    const auto log = train_gan(gen, data, cfg, o.out);
    if (!log.empty())
        std::printf("train: %zu iters, L_G %.6f -> %.6f\n", log.size(),
                    log.front().total, log.back().total);
    std::printf("train: wrote %s\n", (fs::path(o.out) / "train_log.csv").c_str());
    return 0;
}

int cmd_evaluate(const std::string& sr_dir, const std::string& data_root,
                 const std::string& ckpt, const std::string& out_csv, int shave,
                 const CommonOpts& o) {
    Dataset data = Dataset::load(data_root);

    std::optional<Generator> gen;
    if (!ckpt.empty()) {
        TrainConfig cfg = load_config(o.config, o.sets);
        gen = build_generator(cfg.gen, 0);
        load_checkpoint(gen->params, ckpt);
    }

    std::vector<EvalRecord> recs(data.size());
    // per-image work is independent; output order is by filename regardless
#pragma omp parallel for schedule(dynamic)
    for (size_t i = 0; i < data.size(); ++i) {
        const auto& pair = data.at(i);
        ImageTensor sr;
        if (gen)
            sr = upscale_with(*gen, pair.lr);
        else
            sr = load_png((fs::path(sr_dir) / pair.name).string());
        recs[i] = evaluate_pair(pair.name, sr, pair.hr, pair.lr, shave);
    }

    std::ofstream os(out_csv);
    if (!os) throw Error("evaluate: cannot open '" + out_csv + "'");
    os << "image,psnr_y,ssim_y,lr_psnr,lr_consistent\n";
    double mp = 0, ms = 0, ml = 0;
    char buf[256];
    for (const auto& r : recs) {
        std::snprintf(buf, sizeof(buf), "%s,%.4f,%.5f,%.4f,%d\n", r.image.c_str(),
                      r.psnr_y, r.ssim_y, r.lr_psnr, r.lr_consistent ? 1 : 0);
        os << buf;
        mp += r.psnr_y;
        ms += r.ssim_y;
        ml += r.lr_psnr;
    }
    const double n = static_cast<double>(recs.size());
    std::snprintf(buf, sizeof(buf), "mean,%.4f,%.5f,%.4f,\n", mp / n, ms / n, ml / n);
    os << buf;
    std::printf("evaluate: %zu images, mean psnr_y %.4f dB -> %s\n", recs.size(),
                mp / n, out_csv.c_str());
    return 0;
}

int cmd_decompose(const std::string& input, const std::string& family, int levels,
                  const std::string& dump_dir) {
    ImageTensor img = load_png(input);
    const Plane y = extract_y(img).channel(0);
    const WaveletFilter filter = make_filter(family);
    const SubbandSet set = swt2_forward(y, filter, levels);

    fs::create_directories(dump_dir);
    std::ofstream side(fs::path(dump_dir) / "ranges.txt");
    side << "# subband min max (16-bit PNGs are affinely mapped to this range)\n";
    for (size_t b = 0; b < set.labels.size(); ++b) {
        const Plane& p = set.planes[b];
        double lo = p.v[0], hi = p.v[0];
        for (const double v : p.v) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        const double span = hi > lo ? hi - lo : 1.0;
        std::vector<uint16_t> gray(p.numel());
        for (size_t i = 0; i < p.numel(); ++i)
            gray[i] = static_cast<uint16_t>(
                std::lround((p.v[i] - lo) / span * 65535.0));
        const std::string name = set.labels[b] + ".png";
        save_png16(gray, p.height, p.width, (fs::path(dump_dir) / name).string());
        side << set.labels[b] << " " << lo << " " << hi << "\n";
        std::printf("decompose: %s [%g, %g]\n", set.labels[b].c_str(), lo, hi);
    }
    return 0;
}

int cmd_psnr(const std::string& a_path, const std::string& b_path, int shave) {
    const ImageTensor a = load_png(a_path), b = load_png(b_path);
    const Plane ya = extract_y(a).channel(0), yb = extract_y(b).channel(0);
    std::printf("psnr_y  %.4f dB\n", psnr(ya, yb, 1.0, shave));
    std::printf("ssim_y  %.5f\n", ssim(ya, yb, 1.0, shave));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"wavelet-guided GAN super-resolution toolkit"};
    app.require_subcommand(1);

    CommonOpts pre_o, tr_o;
    auto* pre = app.add_subcommand("pretrain", "pixel-l1 generator pretraining");
    add_train_opts(pre, pre_o);

    auto* tr = app.add_subcommand("train", "wavelet-guided adversarial training");
    add_train_opts(tr, tr_o);
    std::string init_ckpt;
    tr->add_option("--init", init_ckpt, "generator checkpoint to start from");

    auto* ev = app.add_subcommand("evaluate", "PSNR/SSIM/LR-PSNR over a dataset");
    CommonOpts ev_o;
    std::string sr_dir, ev_ckpt, ev_csv = "eval.csv";
    int ev_shave = 0;
    ev->add_option("--data", ev_o.data, "dataset root (HR/ and optional LR/)")->required();
    ev->add_option("--sr", sr_dir, "directory of SR images named like the HR ones");
    ev->add_option("--checkpoint", ev_ckpt, "generate SR with this generator instead");
    ev->add_option("--config", ev_o.config, "config describing the checkpointed model");
    ev->add_option("--set", ev_o.sets, "config override")->take_all();
    ev->add_option("--out", ev_csv, "output CSV path");
    ev->add_option("--shave", ev_shave, "border pixels to ignore in PSNR/SSIM");

    auto* de = app.add_subcommand("decompose", "dump SWT subbands as 16-bit PNGs");
    std::string de_in, de_family = "sym7", de_dir = "subbands";
    int de_levels = 1;
    de->add_option("--input", de_in, "input PNG")->required();
    de->add_option("--family", de_family, "wavelet family");
    de->add_option("--levels", de_levels, "decomposition levels (1 or 2)");
    de->add_option("--dump-subbands", de_dir, "output directory");

    auto* ps = app.add_subcommand("psnr", "Y-channel PSNR/SSIM of two PNGs");
    std::string ps_a, ps_b;
    int ps_shave = 0;
    ps->add_option("a", ps_a, "first image")->required();
    ps->add_option("b", ps_b, "second image")->required();
    ps->add_option("--shave", ps_shave, "border pixels to ignore");

    CLI11_PARSE(app, argc, argv);

    try {
        if (pre->parsed()) return cmd_pretrain(pre_o);
        if (tr->parsed()) return cmd_train(tr_o, init_ckpt);
        if (ev->parsed()) {
            if (sr_dir.empty() == ev_ckpt.empty())
                throw Error("evaluate: give exactly one of --sr or --checkpoint");
            return cmd_evaluate(sr_dir, ev_o.data, ev_ckpt, ev_csv, ev_shave, ev_o);
        }
        if (de->parsed()) return cmd_decompose(de_in, de_family, de_levels, de_dir);
        if (ps->parsed()) return cmd_psnr(ps_a, ps_b, ps_shave);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
