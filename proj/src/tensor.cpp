// SPDX-License-Identifier: Apache-2.0

#include "wgsr/tensor.hpp"

#include <sstream>

namespace wgsr::ad {

std::string Shape::str() const {
    std::ostringstream os;
    os << '(' << n << ',' << c << ',' << h << ',' << w << ')';
    return os.str();
}

Tensor Tensor::zeros(Shape s, bool needs_grad) {
    Tensor t;
    t.shape = s;
    t.data = std::make_shared<TensorData>();
    t.data->val.assign(s.numel(), 0.0f);
    t.data->needs_grad = needs_grad;
    return t;
}

Tensor Tensor::full(Shape s, float value, bool needs_grad) {
    Tensor t = zeros(s, needs_grad);
    for (auto& v : t.data->val) v = value;
    return t;
}

Tensor Tensor::from(Shape s, std::vector<float> values, bool needs_grad) {
    if (values.size() != s.numel())
        throw Error("tensor init size mismatch for shape " + s.str());
    Tensor t;
    t.shape = s;
    t.data = std::make_shared<TensorData>();
    t.data->val = std::move(values);
    t.data->needs_grad = needs_grad;
    return t;
}

Tensor Tensor::scalar_of(float value) { return full(Shape{1, 1, 1, 1}, value); }

float* Tensor::grad() const {
    if (data->grad.size() != numel()) data->grad.assign(numel(), 0.0f);
    return data->grad.data();
}

void Tensor::zero_grad() {
    if (!data->grad.empty()) std::fill(data->grad.begin(), data->grad.end(), 0.0f);
}

float Tensor::scalar() const {
    if (numel() != 1) throw Error("scalar() on non-scalar tensor " + shape.str());
    return data->val[0];
}

Tensor Tensor::detached() const {
    Tensor t;
    t.shape = shape;
    t.data = std::make_shared<TensorData>();
    t.data->val = data->val;
    t.data->needs_grad = false;
    return t;
}

void Tape::backward(Tensor& seed) {
    if (walked_) throw Error("tape backward called twice without reset");
    if (seed.numel() != 1) throw Error("backward seed must be scalar, got " + seed.shape.str());
    if (!seed.needs_grad())
        throw Error("backward seed is detached from the tape");
    walked_ = true;
    seed.grad()[0] = 1.0f;
    for (auto it = nodes_.rbegin(); it != nodes_.rend(); ++it) (*it)();
}

const Tensor& DiffSubbands::at(std::string_view label) const {
    for (size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == label) return bands[i];
    throw Error("no '" + std::string(label) + "' subband");
}

}  // namespace wgsr::ad
