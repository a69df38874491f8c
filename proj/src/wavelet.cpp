// SPDX-License-Identifier: Apache-2.0

#include "wgsr/wavelet.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "wavelet_coeffs.hpp"

namespace wgsr {

namespace {

constexpr double kSqrt2 = 1.4142135623730950488016887242097;

std::vector<double> padded_even(std::vector<double> v, size_t len) {
    v.resize(len, 0.0);
    return v;
}

// Halfband PR check: conv(dec_lo, rec_lo) + conv(dec_hi, rec_hi) must be a
// single spike of height 2. Returns its position (the circular delay).
int verify_pr(const WaveletFilter& f) {
    const size_t L = f.dec_lo.size();
    std::vector<double> t(2 * L - 1, 0.0);
    for (size_t i = 0; i < L; ++i)
        for (size_t j = 0; j < L; ++j)
            t[i + j] += f.dec_lo[i] * f.rec_lo[j] + f.dec_hi[i] * f.rec_hi[j];
    int peak = -1;
    for (size_t n = 0; n < t.size(); ++n) {
        if (std::abs(t[n] - 2.0) < 1e-8) {
            if (peak >= 0) throw Error("wavelet filter '" + f.family + "' fails PR check (two peaks)");
            peak = static_cast<int>(n);
        } else if (std::abs(t[n]) > 1e-8) {
            throw Error("wavelet filter '" + f.family + "' fails PR check");
        }
    }
    if (peak < 0) throw Error("wavelet filter '" + f.family + "' fails PR check (no peak)");
    return peak;
}

WaveletFilter from_lowpass(const std::string& family, std::vector<double> dec_lo,
                           std::vector<double> rec_lo, bool orthogonal) {
    size_t len = std::max(dec_lo.size(), rec_lo.size());
    if (len % 2) ++len;
    WaveletFilter f;
    f.family = family;
    f.orthogonal = orthogonal;
    f.length = static_cast<int>(len);
    f.dec_lo = padded_even(std::move(dec_lo), len);
    f.rec_lo = padded_even(std::move(rec_lo), len);
    f.dec_hi.resize(len);
    f.rec_hi.resize(len);
    for (size_t k = 0; k < len; ++k) {
        const double s = (k % 2) ? -1.0 : 1.0;
        f.dec_hi[k] = s * f.rec_lo[k];
        f.rec_hi[k] = -s * f.dec_lo[k];
    }
    f.delay = verify_pr(f);
    return f;
}

WaveletFilter orthogonal_filter(const std::string& family, std::vector<double> dec_lo) {
    std::vector<double> rec_lo(dec_lo.rbegin(), dec_lo.rend());
    return from_lowpass(family, std::move(dec_lo), std::move(rec_lo), true);
}

}  // namespace

const std::vector<std::string>& supported_families() {
    static const std::vector<std::string> fams = {
        "haar", "db2", "db7", "db19", "sym7", "sym19", "bior2.6", "bior4.4"};
    return fams;
}

WaveletFilter make_filter(const std::string& family) {
    if (family == "haar") {
        return orthogonal_filter(family, {1.0 / kSqrt2, 1.0 / kSqrt2});
    }
    if (family == "db2") {
        const double s3 = std::sqrt(3.0);
        const double d = 4.0 * kSqrt2;
        return orthogonal_filter(
            family, {(1 + s3) / d, (3 + s3) / d, (3 - s3) / d, (1 - s3) / d});
    }
    if (family == "db7") return orthogonal_filter(family, coeffs::db7_dec_lo);
    if (family == "db19") return orthogonal_filter(family, coeffs::db19_dec_lo);
    if (family == "sym7") return orthogonal_filter(family, coeffs::sym7_dec_lo);
    if (family == "sym19") return orthogonal_filter(family, coeffs::sym19_dec_lo);
    if (family == "bior2.6")
        return from_lowpass(family, coeffs::bior2_6_dec_lo, coeffs::bior2_6_rec_lo, false);
    if (family == "bior4.4")
        return from_lowpass(family, coeffs::bior4_4_dec_lo, coeffs::bior4_4_rec_lo, false);

    std::ostringstream msg;
    msg << "unknown wavelet family '" << family << "'; supported:";
    for (const auto& f : supported_families()) msg << ' ' << f;
    throw Error(msg.str());
}

namespace detail {

void filter_rows(const Plane& in, const std::vector<double>& h, int step, Plane& out) {
    const int H = in.height, W = in.width;
    const int L = static_cast<int>(h.size());
    out.height = H;
    out.width = W;
    out.v.assign(static_cast<size_t>(H) * W, 0.0);
#pragma omp parallel for schedule(static)
    for (int y = 0; y < H; ++y) {
        const double* src = &in.v[static_cast<size_t>(y) * W];
        double* dst = &out.v[static_cast<size_t>(y) * W];
        for (int x = 0; x < W; ++x) {
            double acc = 0.0;
            for (int k = 0; k < L; ++k) {
                int i = (x - k * step) % W;
                if (i < 0) i += W;
                acc += h[k] * src[i];
            }
            dst[x] = acc;
        }
    }
}

void filter_cols(const Plane& in, const std::vector<double>& h, int step, Plane& out) {
    const int H = in.height, W = in.width;
    const int L = static_cast<int>(h.size());
    out.height = H;
    out.width = W;
    out.v.assign(static_cast<size_t>(H) * W, 0.0);
#pragma omp parallel for schedule(static)
    for (int y = 0; y < H; ++y) {
        double* dst = &out.v[static_cast<size_t>(y) * W];
        for (int x = 0; x < W; ++x) {
            double acc = 0.0;
            for (int k = 0; k < L; ++k) {
                int i = (y - k * step) % H;
                if (i < 0) i += H;
                acc += h[k] * in.v[static_cast<size_t>(i) * W + x];
            }
            dst[x] = acc;
        }
    }
}

void filter_rows_adj(const Plane& in, const std::vector<double>& h, int step, Plane& out) {
    const int H = in.height, W = in.width;
    const int L = static_cast<int>(h.size());
    out.height = H;
    out.width = W;
    out.v.assign(static_cast<size_t>(H) * W, 0.0);
#pragma omp parallel for schedule(static)
    for (int y = 0; y < H; ++y) {
        const double* src = &in.v[static_cast<size_t>(y) * W];
        double* dst = &out.v[static_cast<size_t>(y) * W];
        for (int x = 0; x < W; ++x) {
            double acc = 0.0;
            for (int k = 0; k < L; ++k) acc += h[k] * src[(x + k * step) % W];
            dst[x] = acc;
        }
    }
}

void filter_cols_adj(const Plane& in, const std::vector<double>& h, int step, Plane& out) {
    const int H = in.height, W = in.width;
    const int L = static_cast<int>(h.size());
    out.height = H;
    out.width = W;
    out.v.assign(static_cast<size_t>(H) * W, 0.0);
#pragma omp parallel for schedule(static)
    for (int y = 0; y < H; ++y) {
        double* dst = &out.v[static_cast<size_t>(y) * W];
        for (int x = 0; x < W; ++x) {
            double acc = 0.0;
            for (int k = 0; k < L; ++k)
                acc += h[k] * in.v[static_cast<size_t>((y + k * step) % H) * W + x];
            dst[x] = acc;
        }
    }
}

}  // namespace detail

const std::vector<std::string>& subband_labels(int levels) {
    static const std::vector<std::string> l1 = {"LL", "LH", "HL", "HH"};
    static const std::vector<std::string> l2 = {"L-LL", "L-LH", "L-HL", "L-HH",
                                                "LH",   "HL",   "HH"};
    if (levels == 1) return l1;
    if (levels == 2) return l2;
    throw Error("swt levels must be 1 or 2, got " + std::to_string(levels));
}

const Plane& SubbandSet::at(std::string_view label) const {
    for (size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == label) return planes[i];
    throw Error("subband set has no '" + std::string(label) + "' plane");
}

Plane& SubbandSet::at(std::string_view label) {
    for (size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == label) return planes[i];
    throw Error("subband set has no '" + std::string(label) + "' plane");
}

bool SubbandSet::has(std::string_view label) const {
    return std::find(labels.begin(), labels.end(), label) != labels.end();
}

namespace {

struct LevelBands {
    Plane ll, lh, hl, hh;
};

// One undecimated analysis level with a-trous step. LH is the horizontal
// high-pass (detail along x), HL the vertical one.
LevelBands analyze(const Plane& x, const WaveletFilter& f, int step) {
    Plane ax, dx, tmp;
    detail::filter_rows(x, f.dec_lo, step, ax);
    detail::filter_rows(x, f.dec_hi, step, dx);
    LevelBands b;
    detail::filter_cols(ax, f.dec_lo, step, b.ll);
    detail::filter_cols(dx, f.dec_lo, step, b.lh);
    detail::filter_cols(ax, f.dec_hi, step, b.hl);
    detail::filter_cols(dx, f.dec_hi, step, b.hh);
    return b;
}

Plane shifted_half(const Plane& a, const Plane& b, int dy, int dx) {
    const int H = a.height, W = a.width;
    Plane out(H, W);
    for (int y = 0; y < H; ++y) {
        const int sy = (y + dy) % H;
        for (int x = 0; x < W; ++x) {
            const int sx = (x + dx) % W;
            out.at(y, x) =
                0.25 * (a.at(sy, sx) + b.at(sy, sx));
        }
    }
    return out;
}

Plane synthesize(const LevelBands& b, const WaveletFilter& f, int step) {
    // Per axis: conv with rec filters doubles the signal and delays it by
    // filter.delay * step; undo both after combining the four branches.
    Plane t1, t2, lo_sum, hi_sum;
    detail::filter_cols(b.ll, f.rec_lo, step, t1);
    detail::filter_cols(b.hl, f.rec_hi, step, t2);
    lo_sum = t1;
    for (size_t i = 0; i < lo_sum.v.size(); ++i) lo_sum.v[i] += t2.v[i];
    detail::filter_cols(b.lh, f.rec_lo, step, t1);
    detail::filter_cols(b.hh, f.rec_hi, step, t2);
    hi_sum = t1;
    for (size_t i = 0; i < hi_sum.v.size(); ++i) hi_sum.v[i] += t2.v[i];

    Plane xa, xd;
    detail::filter_rows(lo_sum, f.rec_lo, step, xa);
    detail::filter_rows(hi_sum, f.rec_hi, step, xd);
    const int d = f.delay * step;
    return shifted_half(xa, xd, d % xa.height, d % xa.width);
}

}  // namespace

SubbandSet swt2_forward(const Plane& plane, const WaveletFilter& filter, int levels) {
    if (levels != 1 && levels != 2)
        throw Error("swt levels must be 1 or 2, got " + std::to_string(levels));
    SubbandSet set;
    set.levels = levels;
    set.height = plane.height;
    set.width = plane.width;
    set.labels = subband_labels(levels);

    LevelBands b1 = analyze(plane, filter, 1);
    if (levels == 1) {
        set.planes = {std::move(b1.ll), std::move(b1.lh), std::move(b1.hl),
                      std::move(b1.hh)};
    } else {
        LevelBands b2 = analyze(b1.ll, filter, 2);
        set.planes = {std::move(b2.ll), std::move(b2.lh), std::move(b2.hl),
                      std::move(b2.hh), std::move(b1.lh), std::move(b1.hl),
                      std::move(b1.hh)};
    }
    return set;
}

Plane swt2_inverse(const SubbandSet& set, const WaveletFilter& filter) {
    const auto& expect = subband_labels(set.levels);
    if (set.labels != expect || set.planes.size() != expect.size())
        throw Error("subband set labels do not match a level-" +
                    std::to_string(set.levels) + " decomposition");

    if (set.levels == 1) {
        LevelBands b{set.at("LL"), set.at("LH"), set.at("HL"), set.at("HH")};
        return synthesize(b, filter, 1);
    }
    LevelBands inner{set.at("L-LL"), set.at("L-LH"), set.at("L-HL"), set.at("L-HH")};
    Plane ll = synthesize(inner, filter, 2);
    LevelBands outer{std::move(ll), set.at("LH"), set.at("HL"), set.at("HH")};
    return synthesize(outer, filter, 1);
}

}  // namespace wgsr
