// SPDX-License-Identifier: Apache-2.0

#include "wgsr/trainer.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "wgsr/checkpoint.hpp"

namespace wgsr {

using ad::Tape;
using ad::Tensor;

std::string train_log_header(const TrainConfig& cfg) {
    const char* fd = cfg.fidelity_domain == LossDomain::SWT ? "L_SWT" : "L_RGB";
    const char* ad_ = cfg.adv_domain == LossDomain::SWT ? "SWT" : "RGB";
    std::ostringstream os;
    os << "iter," << fd << ",L_adv_G_" << ad_ << ",L_D_" << ad_ << ",L_perc,L_G";
    return os.str();
}

void write_train_log(const std::vector<TrainLogRow>& rows, const TrainConfig& cfg,
                     const std::string& path) {
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw Error("trainer: cannot open log '" + path + "'");
    os << train_log_header(cfg) << "\n";
    char buf[192];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof(buf), "%d,%.9g,%.9g,%.9g,%.9g,%.9g\n", r.iter, r.fid,
                      r.adv_g, r.d, r.perc, r.total);
        os << buf;
    }
}

ad::Tensor luma(Tape& t, const Tensor& rgb) {
    if (rgb.shape.c != 3) throw Error("luma: expected an RGB batch");
    static const std::vector<float> kW = {65.481f / 255.0f, 128.553f / 255.0f,
                                          24.966f / 255.0f};
    Tensor w = Tensor::from(ad::Shape{1, 3, 1, 1}, kW, false);
    Tensor b = Tensor::full(ad::Shape{1, 1, 1, 1}, 16.0f / 255.0f, false);
    return ad::conv2d(t, rgb, w, b, 1, 0);
}

ad::Tensor detail_tensor(Tape& t, const ad::DiffSubbands& bands) {
    return ad::concat_channels(t, {bands.at("LH"), bands.at("HL"), bands.at("HH")});
}

double lr_at(const TrainConfig& cfg, int iter) {
    return iter < cfg.lr_halve_step ? cfg.lr : cfg.lr * 0.5;
}

uint64_t seed_generator(const TrainConfig& cfg) { return cfg.seed; }
uint64_t seed_discriminator(const TrainConfig& cfg) { return cfg.seed + 1; }
uint64_t seed_extractor(const TrainConfig& cfg) { return cfg.seed + 2; }
uint64_t seed_sampler(const TrainConfig& cfg) { return cfg.seed + 3; }

namespace {

void require_finite(double v, const char* what) {
    if (!std::isfinite(v))
        throw Error(std::string("trainer: non-finite ") + what + " — aborting");
}

}  // namespace

std::vector<double> pretrain_pixel(Generator& gen, const Dataset& data,
                                   const TrainConfig& cfg, const std::string& ckpt_path) {
    BatchSampler sampler(data, cfg.patch, cfg.batch, seed_sampler(cfg));
    AdamState state = AdamState::init_for(gen.params, {cfg.beta1, cfg.beta2, cfg.eps});
    std::vector<double> trace;
    for (int it = 1; it <= cfg.pretrain_iters; ++it) {
        auto [lr_batch, hr_batch] = sampler.next();
        Tape tape;
        Tensor sr = gen.forward(tape, lr_batch);
        Tensor loss = ad::l1(tape, sr, hr_batch);
        const double v = loss.scalar();
        if (!std::isfinite(v)) {
            save_checkpoint(gen.params, ckpt_path);
            throw Error("trainer: non-finite pretrain loss at iteration " +
                        std::to_string(it) + "; last good checkpoint saved");
        }
        trace.push_back(v);
        gen.params.zero_grads();
        tape.backward(loss);
        adam_step(gen.params, state, cfg.lr);
    }
    save_checkpoint(gen.params, ckpt_path);
    return trace;
}

std::vector<TrainLogRow> train_gan(Generator& gen, const Dataset& data,
                                   const TrainConfig& cfg, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);

    const WaveletFilter filter = make_filter(cfg.wavelet);
    const bool use_adv = cfg.weights.adv > 0.0;
    const bool use_perc = cfg.perc_kind == PercKind::Feature && cfg.weights.perc > 0.0;
    const bool swt_fid = cfg.fidelity_domain == LossDomain::SWT;
    const bool swt_adv = cfg.adv_domain == LossDomain::SWT;

    Discriminator disc;
    AdamState dstate;
    if (use_adv) {
        disc = build_swt_discriminator(cfg.disc, seed_discriminator(cfg));
        dstate = AdamState::init_for(disc.params, {cfg.beta1, cfg.beta2, cfg.eps});
    }
    PerceptualExtractor extractor;
    if (use_perc) extractor = build_perceptual_extractor(seed_extractor(cfg));

    BatchSampler sampler(data, cfg.patch, cfg.batch, seed_sampler(cfg));
    AdamState gstate = AdamState::init_for(gen.params, {cfg.beta1, cfg.beta2, cfg.eps});

    // Discriminator input under the active adversarial domain; `rgb` must
    // be non-tracking for the D phase and tracking for the G phase.
    auto disc_input = [&](Tape& tape, const Tensor& rgb) {
        if (!swt_adv) return rgb;
        Tensor y = luma(tape, rgb);
        return detail_tensor(tape, ad::swt_forward_diff(tape, y, filter, 1));
    };

    std::vector<TrainLogRow> log;
    for (int it = 1; it <= cfg.iters; ++it) {
        const double lr = lr_at(cfg, it);
        auto [lr_batch, hr_batch] = sampler.next();
        TrainLogRow row;
        row.iter = it;

        Tape gtape;
        Tensor sr = gen.forward(gtape, lr_batch);

        if (use_adv) {
            // D phase on the detached generator output; gradients cannot
            // reach the generator because the fake input does not track.
            for (int k = 0; k < cfg.d_steps; ++k) {
                Tape dtape;
                Tensor d_real = disc.forward(dtape, disc_input(dtape, hr_batch));
                Tensor d_fake = disc.forward(dtape, disc_input(dtape, sr.detached()));
                Tensor l_d = discriminator_loss(dtape, d_real, d_fake);
                row.d = l_d.scalar();
                require_finite(row.d, "discriminator loss");
                disc.params.zero_grads();
                dtape.backward(l_d);
                adam_step(disc.params, dstate, lr);
            }
        }

        // G phase
        Tensor l_fid;
        if (swt_fid) {
            Tensor sr_y = luma(gtape, sr);
            Tensor hr_y = luma(gtape, hr_batch);
            l_fid = swt_fidelity_loss(gtape, sr_y, hr_y, filter, cfg.levels, cfg.weights,
                                      cfg.raw_sum_l1);
        } else {
            l_fid = ad::l1(gtape, sr, hr_batch);
        }
        Tensor l_adv = Tensor::scalar_of(0.0f);
        if (use_adv) {
            Tensor d_real = disc.forward(gtape, disc_input(gtape, hr_batch));
            Tensor d_fake = disc.forward(gtape, disc_input(gtape, sr));
            l_adv = adversarial_generator_loss(gtape, d_real, d_fake, cfg.relativistic);
        }
        Tensor l_perc = Tensor::scalar_of(0.0f);
        if (use_perc) l_perc = perceptual_loss(gtape, sr, hr_batch, extractor);

        Tensor l_g = total_generator_loss(gtape, l_fid, l_adv, l_perc, cfg.weights);
        row.fid = l_fid.scalar();
        row.adv_g = l_adv.scalar();
        row.perc = l_perc.scalar();
        row.total = l_g.scalar();
        require_finite(row.total, "generator loss");

        gen.params.zero_grads();
        if (use_adv) disc.params.zero_grads();  // G backward touches D too
        gtape.backward(l_g);
        adam_step(gen.params, gstate, lr);

        log.push_back(row);
    }

    save_checkpoint(gen.params, (fs::path(out_dir) / "gen.ckpt").string());
    if (use_adv) save_checkpoint(disc.params, (fs::path(out_dir) / "disc.ckpt").string());
    write_train_log(log, cfg, (fs::path(out_dir) / "train_log.csv").string());
    return log;
}

}  // namespace wgsr
