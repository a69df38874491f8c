// SPDX-License-Identifier: Apache-2.0

#include "wgsr/dataset.hpp"

#include <algorithm>
#include <filesystem>

namespace wgsr {

namespace fs = std::filesystem;

Dataset Dataset::load(const std::string& root) {
    const fs::path hr_dir = fs::path(root) / "HR";
    const fs::path lr_dir = fs::path(root) / "LR";
    if (!fs::is_directory(hr_dir))
        throw Error("dataset: '" + hr_dir.string() + "' is not a directory");
    const bool have_lr = fs::is_directory(lr_dir);

    std::vector<std::string> names;
    for (const auto& e : fs::directory_iterator(hr_dir))
        if (e.is_regular_file() && e.path().extension() == ".png")
            names.push_back(e.path().filename().string());
    std::sort(names.begin(), names.end());
    if (names.empty()) throw Error("dataset: no PNG files under '" + hr_dir.string() + "'");

    std::vector<ImagePair> pairs;
    for (const auto& name : names) {
        ImagePair p;
        p.name = name;
        p.hr = load_png((hr_dir / name).string());
        if (have_lr) {
            const fs::path lp = lr_dir / name;
            if (!fs::is_regular_file(lp))
                throw Error("dataset: missing LR counterpart for '" + name + "'");
            p.lr = load_png(lp.string());
        } else {
            p.lr = bicubic_resize(p.hr, 0.25);
        }
        if (p.hr.height != 4 * p.lr.height || p.hr.width != 4 * p.lr.width)
            throw Error("dataset: '" + name + "' HR dimensions are not 4x the LR ones");
        pairs.push_back(std::move(p));
    }
    return from_pairs(std::move(pairs));
}

Dataset Dataset::from_pairs(std::vector<ImagePair> pairs) {
    if (pairs.empty()) throw Error("dataset: empty pair list");
    Dataset d;
    d.pairs_ = std::move(pairs);
    return d;
}

namespace {

ImageTensor crop(const ImageTensor& img, int oy, int ox, int size) {
    ImageTensor out(size, size, img.channels, img.colorspace);
    for (int c = 0; c < img.channels; ++c)
        for (int y = 0; y < size; ++y)
            for (int x = 0; x < size; ++x) out.at(c, y, x) = img.at(c, oy + y, ox + x);
    return out;
}

}  // namespace

std::pair<ImageTensor, ImageTensor> crop_pair(const ImageTensor& lr, const ImageTensor& hr,
                                              int patch, std::mt19937_64& rng) {
    if (hr.height != 4 * lr.height || hr.width != 4 * lr.width)
        throw Error("crop_pair: HR dimensions must be exactly 4x the LR ones");
    if (lr.height < patch || lr.width < patch)
        throw Error("crop_pair: LR image smaller than the requested patch");
    std::uniform_int_distribution<int> dy(0, lr.height - patch), dx(0, lr.width - patch);
    const int oy = dy(rng), ox = dx(rng);
    return {crop(lr, oy, ox, patch), crop(hr, 4 * oy, 4 * ox, 4 * patch)};
}

std::pair<ad::Tensor, ad::Tensor> BatchSampler::next() {
    std::vector<ImageTensor> lrs, hrs;
    std::uniform_int_distribution<size_t> pick(0, data_.size() - 1);
    for (int b = 0; b < batch_; ++b) {
        const auto& pair = data_.at(pick(rng_));
        auto [lc, hc] = crop_pair(pair.lr, pair.hr, patch_, rng_);
        lrs.push_back(std::move(lc));
        hrs.push_back(std::move(hc));
    }
    return {to_tensor(lrs), to_tensor(hrs)};
}

ad::Tensor to_tensor(const std::vector<ImageTensor>& batch) {
    if (batch.empty()) throw Error("to_tensor: empty batch");
    const int C = batch[0].channels, H = batch[0].height, W = batch[0].width;
    ad::Tensor out = ad::Tensor::zeros(ad::Shape{static_cast<int>(batch.size()), C, H, W});
    const size_t item = static_cast<size_t>(C) * H * W;
    for (size_t n = 0; n < batch.size(); ++n) {
        const auto& img = batch[n];
        if (img.channels != C || img.height != H || img.width != W)
            throw Error("to_tensor: ragged batch");
        for (size_t i = 0; i < item; ++i)
            out.val()[n * item + i] = static_cast<float>(img.data[i]);
    }
    return out;
}

ImageTensor to_image(const ad::Tensor& t, int item, Colorspace cs) {
    if (item < 0 || item >= t.shape.n) throw Error("to_image: batch index out of range");
    ImageTensor img(t.shape.h, t.shape.w, t.shape.c, cs);
    const size_t sz = static_cast<size_t>(t.shape.c) * t.shape.h * t.shape.w;
    for (size_t i = 0; i < sz; ++i) img.data[i] = t.val()[item * sz + i];
    return img;
}

}  // namespace wgsr
