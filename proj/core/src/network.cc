// Copyright 2026 The nhplan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nhplan/network.h"

#include <cmath>
#include <string>

#include "nhplan/errors.h"

namespace nhplan {

std::string_view ActivationName(Activation activation) {
  switch (activation) {
    case Activation::kTanh:
      return "tanh";
    case Activation::kRelu:
      return "relu";
    case Activation::kLinear:
      return "linear";
  }
  return "?";
}

Activation ParseActivation(std::string_view name) {
  for (auto a : {Activation::kTanh, Activation::kRelu, Activation::kLinear}) {
    if (ActivationName(a) == name) return a;
  }
  throw IoError("unknown activation '" + std::string(name) + "'");
}

template <typename T>
Mlp<T>::Mlp(int input_dim,
            const std::vector<std::pair<int, Activation>>& layers,
            int side_layer, int side_dim)
    : input_dim_(input_dim), side_layer_(side_layer), side_dim_(side_dim) {
  if (input_dim <= 0 || layers.empty()) {
    throw ContractViolation("Mlp: need a positive input size and >= 1 layer");
  }
  if (side_layer >= static_cast<int>(layers.size()) ||
      (side_layer >= 0) != (side_dim > 0)) {
    throw ContractViolation("Mlp: inconsistent side-input wiring");
  }
  Eigen::Index total = 0;
  int prev = input_dim;
  for (int l = 0; l < static_cast<int>(layers.size()); ++l) {
    const auto [width, activation] = layers[l];
    if (width <= 0) throw ContractViolation("Mlp: layer width must be > 0");
    const int in = prev + (l == side_layer ? side_dim : 0);
    layers_.push_back({in, width, activation});
    offsets_.push_back(total);
    total += static_cast<Eigen::Index>(in) * width + width;
    prev = width;
  }
  params_ = Vector::Zero(total);
}

template <typename T>
void Mlp<T>::set_parameters(const Vector& params) {
  if (params.size() != params_.size()) {
    throw ContractViolation("Mlp::set_parameters: size mismatch");
  }
  params_ = params;
  ++version_;
}

template <typename T>
Eigen::Map<const typename Mlp<T>::Matrix> Mlp<T>::weights(int layer) const {
  const LayerShape& s = layers_.at(layer);
  return {params_.data() + offsets_[layer], s.out, s.in};
}

template <typename T>
Eigen::Map<const typename Mlp<T>::Vector> Mlp<T>::bias(int layer) const {
  const LayerShape& s = layers_.at(layer);
  return {params_.data() + offsets_[layer] + Eigen::Index{s.out} * s.in,
          s.out};
}

template <typename T>
Eigen::Map<typename Mlp<T>::Matrix> Mlp<T>::mutable_weights(int layer) {
  const LayerShape& s = layers_.at(layer);
  ++version_;
  return {params_.data() + offsets_[layer], s.out, s.in};
}

template <typename T>
Eigen::Map<typename Mlp<T>::Vector> Mlp<T>::mutable_bias(int layer) {
  const LayerShape& s = layers_.at(layer);
  ++version_;
  return {params_.data() + offsets_[layer] + Eigen::Index{s.out} * s.in,
          s.out};
}

template <typename T>
bool Mlp<T>::SameArchitecture(const Mlp& other) const {
  if (input_dim_ != other.input_dim_ || side_layer_ != other.side_layer_ ||
      side_dim_ != other.side_dim_ || layers_.size() != other.layers_.size()) {
    return false;
  }
  for (size_t l = 0; l < layers_.size(); ++l) {
    if (layers_[l].in != other.layers_[l].in ||
        layers_[l].out != other.layers_[l].out ||
        layers_[l].activation != other.layers_[l].activation) {
      return false;
    }
  }
  return true;
}

template <typename T>
typename Mlp<T>::Matrix Mlp<T>::Forward(const Matrix& input,
                                        const Matrix* side,
                                        Cache* cache) const {
  if (input.rows() != input_dim_ || !input.allFinite()) {
    throw ContractViolation("Mlp::Forward: input must be finite with " +
                            std::to_string(input_dim_) + " rows");
  }
  if (side_layer_ >= 0) {
    if (side == nullptr || side->rows() != side_dim_ ||
        side->cols() != input.cols()) {
      throw ContractViolation("Mlp::Forward: side input shape mismatch");
    }
  }
  const int num_layers = static_cast<int>(layers_.size());
  if (cache != nullptr) {
    cache->owner = this;
    cache->version = version_;
    cache->inputs.resize(num_layers);
    cache->outputs.resize(num_layers);
  }

  Matrix h;
  for (int l = 0; l < num_layers; ++l) {
    const Matrix* in = l == 0 ? &input : &h;
    Matrix joined;
    if (l == side_layer_) {
      joined.resize(layers_[l].in, input.cols());
      joined.topRows(in->rows()) = *in;
      joined.bottomRows(side_dim_) = *side;
      in = &joined;
    }
    Matrix z = weights(l) * *in;
    z.colwise() += bias(l);
    switch (layers_[l].activation) {
      case Activation::kTanh:
        z = z.array().tanh();
        break;
      case Activation::kRelu:
        z = z.cwiseMax(T(0));
        break;
      case Activation::kLinear:
        break;
    }
    if (cache != nullptr) {
      cache->inputs[l] = in == &h ? std::move(h) : *in;
      cache->outputs[l] = z;
    }
    h = std::move(z);
  }
  return h;
}

template <typename T>
void Mlp<T>::Backward(const Cache& cache, const Matrix& d_output,
                      Vector* grads, Matrix* d_input, Matrix* d_side) const {
  if (cache.owner != this || cache.version != version_ ||
      cache.outputs.size() != layers_.size()) {
    throw ContractViolation("Mlp::Backward: stale or foreign cache");
  }
  if (d_output.rows() != output_dim() ||
      d_output.cols() != cache.outputs.back().cols()) {
    throw ContractViolation("Mlp::Backward: d_output shape mismatch");
  }
  if (d_side != nullptr && side_layer_ < 0) {
    throw ContractViolation("Mlp::Backward: network has no side input");
  }
  if (grads != nullptr) grads->setZero(params_.size());

  Matrix delta = d_output;
  for (int l = static_cast<int>(layers_.size()) - 1; l >= 0; --l) {
    const Matrix& y = cache.outputs[l];
    switch (layers_[l].activation) {
      case Activation::kTanh:
        delta.array() *= T(1) - y.array().square();
        break;
      case Activation::kRelu:
        delta.array() *= (y.array() > T(0)).template cast<T>();
        break;
      case Activation::kLinear:
        break;
    }
    const LayerShape& s = layers_[l];
    if (grads != nullptr) {
      Eigen::Map<Matrix> gw(grads->data() + offsets_[l], s.out, s.in);
      gw.noalias() = delta * cache.inputs[l].transpose();
      grads->segment(offsets_[l] + Eigen::Index{s.out} * s.in, s.out) =
          delta.rowwise().sum();
    }

    const bool need_lower = d_input != nullptr ||
                            (grads != nullptr && l > 0) ||
                            (d_side != nullptr && l >= side_layer_);
    if (!need_lower) break;

    Matrix d_in = weights(l).transpose() * delta;
    if (l == side_layer_) {
      if (d_side != nullptr) *d_side = d_in.bottomRows(side_dim_);
      delta = d_in.topRows(s.in - side_dim_);
    } else {
      delta = std::move(d_in);
    }
    if (l == 0 && d_input != nullptr) *d_input = std::move(delta);
  }
}

template <typename T>
ActorNet<T>::ActorNet(int hidden, int obs_dim, int action_dim)
    : mlp_(obs_dim,
           {{hidden, Activation::kTanh},
            {hidden, Activation::kTanh},
            {hidden, Activation::kTanh},
            {action_dim, Activation::kTanh}}) {}

template <typename T>
CriticNet<T>::CriticNet(int hidden, int obs_dim, int action_dim)
    : mlp_(obs_dim,
           {{hidden, Activation::kTanh},
            {hidden, Activation::kTanh},
            {hidden, Activation::kTanh},
            {1, Activation::kLinear}},
           /*side_layer=*/1, action_dim) {}

template <typename T>
void AdamStep(typename Mlp<T>::Vector& params,
              const typename Mlp<T>::Vector& grads, AdamState<T>& state,
              Objective objective) {
  if (grads.size() != params.size() ||
      state.first_moment.size() != params.size() ||
      state.second_moment.size() != params.size()) {
    throw ContractViolation("AdamStep: shape mismatch");
  }
  ++state.t;
  const T sign = objective == Objective::kMaximize ? T(-1) : T(1);
  const T b1 = static_cast<T>(state.beta1);
  const T b2 = static_cast<T>(state.beta2);
  state.first_moment = b1 * state.first_moment + (T(1) - b1) * sign * grads;
  state.second_moment =
      b2 * state.second_moment + (T(1) - b2) * grads.array().square().matrix();
  const double t = static_cast<double>(state.t);
  const T step = static_cast<T>(state.lr / (1.0 - std::pow(state.beta1, t)));
  const T v_scale = static_cast<T>(1.0 / (1.0 - std::pow(state.beta2, t)));
  params.array() -=
      step * state.first_moment.array() /
      ((state.second_moment.array() * v_scale).sqrt() +
       static_cast<T>(state.epsilon));
}

template class Mlp<float>;
template class Mlp<double>;
template class ActorNet<float>;
template class ActorNet<double>;
template class CriticNet<float>;
template class CriticNet<double>;
template void AdamStep<float>(Mlp<float>::Vector&, const Mlp<float>::Vector&,
                              AdamState<float>&, Objective);
template void AdamStep<double>(Mlp<double>::Vector&,
                               const Mlp<double>::Vector&, AdamState<double>&,
                               Objective);

}  // namespace nhplan
