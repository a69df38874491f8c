// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <random>

#include <doctest.h>

#include "wgsr/reference.hpp"
#include "wgsr/wavelet.hpp"

using namespace wgsr;

namespace {

Plane random_plane(int h, int w, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Plane p(h, w);
    for (auto& v : p.v) v = dist(rng);
    return p;
}

Plane shifted(const Plane& p, int dy, int dx) {
    Plane out(p.height, p.width);
    for (int y = 0; y < p.height; ++y)
        for (int x = 0; x < p.width; ++x)
            out.at((y + dy) % p.height, (x + dx) % p.width) = p.at(y, x);
    return out;
}

double max_abs_diff(const Plane& a, const Plane& b) {
    double m = 0.0;
    for (size_t i = 0; i < a.numel(); ++i) m = std::max(m, std::abs(a.v[i] - b.v[i]));
    return m;
}

}  // namespace

TEST_CASE("filter construction invariants") {
    for (const auto& family : supported_families()) {
        CAPTURE(family);
        const WaveletFilter f = make_filter(family);
        CHECK(f.length % 2 == 0);
        CHECK(f.dec_lo.size() == static_cast<size_t>(f.length));
        CHECK(f.dec_hi.size() == static_cast<size_t>(f.length));
        CHECK(f.rec_lo.size() == static_cast<size_t>(f.length));
        CHECK(f.rec_hi.size() == static_cast<size_t>(f.length));

        // lowpass sums sqrt(2); highpass sums 0
        double slo = 0.0, shi = 0.0;
        for (const double v : f.dec_lo) slo += v;
        for (const double v : f.dec_hi) shi += v;
        CHECK(slo == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
        CHECK(std::abs(shi) < 1e-10);

        if (f.orthogonal) {
            double energy = 0.0;
            for (const double v : f.dec_lo) energy += v * v;
            CHECK(energy == doctest::Approx(1.0).epsilon(1e-12));
        }

        // halfband perfect-reconstruction identity:
        // conv(dec_lo, rec_lo) + conv(dec_hi, rec_hi) = 2*delta[delay]
        const size_t L = f.dec_lo.size();
        std::vector<double> sum(2 * L - 1, 0.0);
        for (size_t i = 0; i < L; ++i)
            for (size_t j = 0; j < L; ++j) {
                sum[i + j] += f.dec_lo[i] * f.rec_lo[j];
                sum[i + j] += f.dec_hi[i] * f.rec_hi[j];
            }
        for (size_t n = 0; n < sum.size(); ++n) {
            const double want = (static_cast<int>(n) == f.delay) ? 2.0 : 0.0;
            CHECK(std::abs(sum[n] - want) < 1e-10);
        }
    }
}

TEST_CASE("haar and db2 analytic coefficients") {
    const WaveletFilter haar = make_filter("haar");
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(haar.dec_lo[0] == doctest::Approx(r).epsilon(1e-15));
    CHECK(haar.dec_lo[1] == doctest::Approx(r).epsilon(1e-15));

    const WaveletFilter db2 = make_filter("db2");
    const double s = 4.0 * std::sqrt(2.0), t = std::sqrt(3.0);
    CHECK(db2.dec_lo[0] == doctest::Approx((1 + t) / s).epsilon(1e-14));
    CHECK(db2.dec_lo[1] == doctest::Approx((3 + t) / s).epsilon(1e-14));
    CHECK(db2.dec_lo[2] == doctest::Approx((3 - t) / s).epsilon(1e-14));
    CHECK(db2.dec_lo[3] == doctest::Approx((1 - t) / s).epsilon(1e-14));
}

TEST_CASE("unknown family is an error") {
    CHECK_THROWS_AS(make_filter("db3"), Error);
    CHECK_THROWS_AS(make_filter(""), Error);
}

TEST_CASE("round-trip reconstruction across families, levels, parities") {
    int seed = 100;
    for (const auto& family : supported_families()) {
        const WaveletFilter f = make_filter(family);
        for (int levels : {1, 2})
            for (int hw : {16, 17, 32}) {
                CAPTURE(family);
                CAPTURE(levels);
                CAPTURE(hw);
                const Plane p = random_plane(hw, hw + (hw % 2), seed++);
                const SubbandSet set = swt2_forward(p, f, levels);
                const Plane back = swt2_inverse(set, f);
                CHECK(max_abs_diff(p, back) < 1e-9);
            }
    }
}

TEST_CASE("level-1 subbands match the dense circular-convolution oracle") {
    for (const auto& family : {"haar", "db2", "sym7", "bior4.4"}) {
        const WaveletFilter f = make_filter(family);
        const Plane p = random_plane(16, 16, 7);
        const SubbandSet set = swt2_forward(p, f, 1);
        CAPTURE(family);
        CHECK(max_abs_diff(set.at("LL"), ref::circular_conv2d(p, f.dec_lo, f.dec_lo, 1)) < 1e-10);
        CHECK(max_abs_diff(set.at("LH"), ref::circular_conv2d(p, f.dec_hi, f.dec_lo, 1)) < 1e-10);
        CHECK(max_abs_diff(set.at("HL"), ref::circular_conv2d(p, f.dec_lo, f.dec_hi, 1)) < 1e-10);
        CHECK(max_abs_diff(set.at("HH"), ref::circular_conv2d(p, f.dec_hi, f.dec_hi, 1)) < 1e-10);
    }
}

TEST_CASE("shift-equivariance is bitwise") {
    std::mt19937_64 rng(11);
    const auto& families = supported_families();
    for (int trial = 0; trial < 8; ++trial) {
        const auto& family = families[rng() % families.size()];
        const WaveletFilter f = make_filter(family);
        const int h = 16 + static_cast<int>(rng() % 17);
        const int w = 16 + static_cast<int>(rng() % 17);
        const int dy = static_cast<int>(rng() % h), dx = static_cast<int>(rng() % w);
        const Plane p = random_plane(h, w, 1000 + trial);
        const int levels = 1 + static_cast<int>(rng() % 2);

        const SubbandSet a = swt2_forward(shifted(p, dy, dx), f, levels);
        const SubbandSet b = swt2_forward(p, f, levels);
        CAPTURE(family);
        for (size_t i = 0; i < a.planes.size(); ++i) {
            const Plane want = shifted(b.planes[i], dy, dx);
            bool equal = true;
            for (size_t j = 0; j < want.numel(); ++j)
                equal = equal && a.planes[i].v[j] == want.v[j];
            CHECK(equal);
        }
    }
}

TEST_CASE("transform is linear") {
    const WaveletFilter f = make_filter("db7");
    const Plane a = random_plane(20, 24, 1), b = random_plane(20, 24, 2);
    Plane combo(20, 24);
    for (size_t i = 0; i < combo.numel(); ++i) combo.v[i] = 2.0 * a.v[i] - 3.0 * b.v[i];
    const SubbandSet sa = swt2_forward(a, f, 2), sb = swt2_forward(b, f, 2),
                     sc = swt2_forward(combo, f, 2);
    for (size_t p = 0; p < sc.planes.size(); ++p)
        for (size_t i = 0; i < combo.numel(); ++i)
            CHECK(sc.planes[p].v[i] ==
                  doctest::Approx(2.0 * sa.planes[p].v[i] - 3.0 * sb.planes[p].v[i])
                      .epsilon(1e-10));
}

TEST_CASE("orthogonal level-1 energy is twice the input energy") {
    // The undecimated analysis pair is a tight frame with bound 2 per axis
    // (QMF autocorrelations cancel at odd lags and double at even lags), so
    // one separable 2-D level multiplies total energy by 4.
    for (const auto& family : {"haar", "db2", "db19", "sym19"}) {
        const WaveletFilter f = make_filter(family);
        const Plane p = random_plane(32, 32, 21);
        double ein = 0.0;
        for (const double v : p.v) ein += v * v;
        const SubbandSet set = swt2_forward(p, f, 1);
        double eout = 0.0;
        for (const auto& plane : set.planes)
            for (const double v : plane.v) eout += v * v;
        CAPTURE(family);
        CHECK(eout == doctest::Approx(4.0 * ein).epsilon(1e-10));
    }
}

TEST_CASE("level-2 detail planes equal level-1 details bitwise") {
    const WaveletFilter f = make_filter("sym7");
    const Plane p = random_plane(24, 24, 5);
    const SubbandSet l1 = swt2_forward(p, f, 1);
    const SubbandSet l2 = swt2_forward(p, f, 2);
    for (const char* lbl : {"LH", "HL", "HH"}) {
        bool equal = true;
        for (size_t i = 0; i < p.numel(); ++i)
            equal = equal && l1.at(lbl).v[i] == l2.at(lbl).v[i];
        CHECK(equal);
    }
}

TEST_CASE("subband labels and bad level arguments") {
    CHECK(subband_labels(1) == std::vector<std::string>{"LL", "LH", "HL", "HH"});
    CHECK(subband_labels(2) ==
          std::vector<std::string>{"L-LL", "L-LH", "L-HL", "L-HH", "LH", "HL", "HH"});
    const WaveletFilter f = make_filter("haar");
    const Plane p = random_plane(8, 8, 3);
    CHECK_THROWS_AS(swt2_forward(p, f, 0), Error);
    CHECK_THROWS_AS(swt2_forward(p, f, 3), Error);
    const SubbandSet set = swt2_forward(p, f, 1);
    CHECK_THROWS_AS(set.at("L-LL"), Error);
}

TEST_CASE("a-trous filtering matches the serial reference") {
    const WaveletFilter f = make_filter("bior2.6");
    const Plane p = random_plane(19, 23, 9);
    for (int step : {1, 2}) {
        Plane fast, slow;
        detail::filter_rows(p, f.dec_lo, step, fast);
        ref::filter_rows(p, f.dec_lo, step, slow);
        CHECK(max_abs_diff(fast, slow) == 0.0);
        detail::filter_cols(p, f.dec_hi, step, fast);
        ref::filter_cols(p, f.dec_hi, step, slow);
        CHECK(max_abs_diff(fast, slow) == 0.0);
    }
}
