// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "wgsr/common.hpp"
#include "wgsr/wavelet.hpp"

namespace wgsr::ad {

// Up to 4 dimensions, NCHW. Weights reuse the layout as (out, in, kh, kw).
struct Shape {
    int n = 1, c = 1, h = 1, w = 1;
    size_t numel() const {
        return static_cast<size_t>(n) * c * static_cast<size_t>(h) * w;
    }
    bool operator==(const Shape&) const = default;
    std::string str() const;
};

struct TensorData {
    std::vector<float> val;
    std::vector<float> grad;  // allocated on first use
    bool needs_grad = false;
};

// Value-semantics handle onto shared storage; ops record backward closures
// on an explicit Tape.
class Tensor {
public:
    Shape shape;
    std::shared_ptr<TensorData> data;

    Tensor() = default;
    static Tensor zeros(Shape s, bool needs_grad = false);
    static Tensor full(Shape s, float value, bool needs_grad = false);
    static Tensor from(Shape s, std::vector<float> values, bool needs_grad = false);
    static Tensor scalar_of(float value);

    bool defined() const { return static_cast<bool>(data); }
    size_t numel() const { return shape.numel(); }
    float* val() { return data->val.data(); }
    const float* val() const { return data->val.data(); }
    bool needs_grad() const { return data && data->needs_grad; }

    // Gradient slot, allocated (zeroed) on demand; same shape as values.
    // Const because it mutates the shared storage, not the handle.
    float* grad() const;
    const std::vector<float>& grad_vec() const { return data->grad; }
    void zero_grad();

    float scalar() const;      // requires numel() == 1
    Tensor detached() const;   // shares values, drops gradient participation
};

// Ordered list of backward closures; record order is topological order.
class Tape {
public:
    void record(std::function<void()> fn) { nodes_.push_back(std::move(fn)); }
    // Seeds d(seed)/d(seed) = 1 and runs every closure in reverse record
    // order. A tape can only be walked once.
    void backward(Tensor& seed);
    size_t size() const { return nodes_.size(); }

private:
    std::vector<std::function<void()>> nodes_;
    bool walked_ = false;
};

// ---- differentiable operations ----

Tensor add(Tape& t, const Tensor& a, const Tensor& b);
Tensor sub(Tape& t, const Tensor& a, const Tensor& b);
Tensor scale(Tape& t, const Tensor& a, float s);
Tensor add_scaled(Tape& t, const Tensor& a, const Tensor& b, float s);  // a + s*b

// Cross-correlation with zero padding; stride 1 or 2.
// x: (n, ic, h, w), weight: (oc, ic, kh, kw), bias: (oc).
Tensor conv2d(Tape& t, const Tensor& x, const Tensor& weight, const Tensor& bias,
              int stride, int padding);

// x: (n, f) flattened features, weight: (out, f), bias: (out).
Tensor linear(Tape& t, const Tensor& x, const Tensor& weight, const Tensor& bias);

Tensor leaky_relu(Tape& t, const Tensor& x, float slope);
Tensor concat_channels(Tape& t, const std::vector<Tensor>& xs);
Tensor nearest_upsample(Tape& t, const Tensor& x, int factor);
Tensor flatten(Tape& t, const Tensor& x);  // (n,c,h,w) -> (n, c*h*w)

// Scalar mean over every element (float64 accumulation).
Tensor batch_mean(Tape& t, const Tensor& x);
// Mean absolute difference (float64 accumulation).
Tensor l1(Tape& t, const Tensor& x, const Tensor& y);
// Mean of max(z,0) - z*target + log(1 + exp(-|z|)) over elements.
Tensor bce_logits(Tape& t, const Tensor& logits, float target);

// Per-channel batch normalization over (n, h, w) with learned affine.
// With use_batch_stats = false the op degenerates to the affine map alone,
// making outputs per-sample independent.
Tensor batch_norm(Tape& t, const Tensor& x, const Tensor& gamma, const Tensor& beta,
                  bool use_batch_stats, float eps = 1e-5f);

// ---- differentiable SWT ----

struct DiffSubbands {
    int levels = 0;
    std::vector<std::string> labels;
    std::vector<Tensor> bands;  // each (n, 1, h, w)
    const Tensor& at(std::string_view label) const;
};

// Same subband values as swt2_forward (computed in float64, stored as
// float32), batched over single-channel planes; backward is the adjoint
// under the same circular extension.
DiffSubbands swt_forward_diff(Tape& t, const Tensor& plane, const WaveletFilter& filter,
                              int levels);

}  // namespace wgsr::ad
