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

#ifndef NHPLAN_NETWORK_H_
#define NHPLAN_NETWORK_H_

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace nhplan {

enum class Activation { kTanh, kRelu, kLinear };

std::string_view ActivationName(Activation activation);
Activation ParseActivation(std::string_view name);

struct LayerShape {
  int in = 0;  // includes side inputs for the injection layer
  int out = 0;
  Activation activation = Activation::kTanh;
};

// Fully connected feed-forward network operating on column batches.
//
// All weights and biases live in one flat vector (per layer: the out x in
// weight matrix in column-major order, then the bias), so optimizers,
// target-network blending and checkpoints work on a single array. An
// optional side input can be concatenated below the activations entering
// one hidden layer; the critic uses this to feed the action into its second
// hidden layer.
template <typename T>
class Mlp {
 public:
  using Scalar = T;
  using Matrix = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<T, Eigen::Dynamic, 1>;

  // Activations recorded by Forward for a later Backward.
  struct Cache {
    const Mlp* owner = nullptr;
    std::uint64_t version = 0;
    std::vector<Matrix> inputs;   // per layer, side input already appended
    std::vector<Matrix> outputs;  // per layer, post-activation
  };

  Mlp() = default;
  // `layers` lists (width, activation) from the first hidden layer to the
  // output layer. `side_layer` is the index of the layer receiving
  // `side_dim` extra inputs, or -1.
  Mlp(int input_dim, const std::vector<std::pair<int, Activation>>& layers,
      int side_layer = -1, int side_dim = 0);

  // `input` is input_dim x batch, `side` side_dim x batch (or null when the
  // network has no side input). Returns output_dim x batch.
  Matrix Forward(const Matrix& input, const Matrix* side = nullptr,
                 Cache* cache = nullptr) const;

  // Backpropagates `d_output` (dL/d output, output_dim x batch) through the
  // pass recorded in `cache`. Each of `grads`, `d_input`, `d_side` may be
  // null; the pass stops as soon as nothing further is requested.
  void Backward(const Cache& cache, const Matrix& d_output, Vector* grads,
                Matrix* d_input = nullptr, Matrix* d_side = nullptr) const;

  // Weights ~ N(0, weight_variance), biases = bias_value.
  template <typename Urbg>
  void Initialize(Urbg& rng, double weight_variance, double bias_value);

  int input_dim() const { return input_dim_; }
  int output_dim() const { return layers_.empty() ? 0 : layers_.back().out; }
  int side_layer() const { return side_layer_; }
  int side_dim() const { return side_dim_; }
  const std::vector<LayerShape>& layers() const { return layers_; }
  Eigen::Index num_parameters() const { return params_.size(); }

  const Vector& parameters() const { return params_; }
  // Mutable access invalidates outstanding caches.
  Vector& mutable_parameters() {
    ++version_;
    return params_;
  }
  void set_parameters(const Vector& params);

  Eigen::Map<const Matrix> weights(int layer) const;
  Eigen::Map<const Vector> bias(int layer) const;
  Eigen::Map<Matrix> mutable_weights(int layer);
  Eigen::Map<Vector> mutable_bias(int layer);

  // Same layer layout (shapes, activations, side wiring).
  bool SameArchitecture(const Mlp& other) const;

 private:
  int input_dim_ = 0;
  int side_layer_ = -1;
  int side_dim_ = 0;
  std::vector<LayerShape> layers_;
  std::vector<Eigen::Index> offsets_;  // start of each layer's weights
  Vector params_;
  std::uint64_t version_ = 0;
};

template <typename T>
template <typename Urbg>
void Mlp<T>::Initialize(Urbg& rng, double weight_variance, double bias_value) {
  std::normal_distribution<double> normal(0.0, std::sqrt(weight_variance));
  for (int l = 0; l < static_cast<int>(layers_.size()); ++l) {
    auto w = mutable_weights(l);
    for (Eigen::Index i = 0; i < w.size(); ++i) {
      w.data()[i] = static_cast<T>(normal(rng));
    }
    mutable_bias(l).setConstant(static_cast<T>(bias_value));
  }
}

// obs (6) -> 3 x hidden tanh -> action (2) tanh.
template <typename T>
class ActorNet {
 public:
  using Matrix = typename Mlp<T>::Matrix;
  using Vector = typename Mlp<T>::Vector;
  using Cache = typename Mlp<T>::Cache;

  static constexpr double kWeightVariance = 0.3;
  static constexpr double kBias = 0.1;

  ActorNet() : ActorNet(200) {}
  explicit ActorNet(int hidden, int obs_dim = 6, int action_dim = 2);

  template <typename Urbg>
  void Initialize(Urbg& rng) {
    mlp_.Initialize(rng, kWeightVariance, kBias);
  }

  Matrix Forward(const Matrix& obs, Cache* cache = nullptr) const {
    return mlp_.Forward(obs, nullptr, cache);
  }
  void Backward(const Cache& cache, const Matrix& d_action,
                Vector* grads) const {
    mlp_.Backward(cache, d_action, grads);
  }

  const Mlp<T>& mlp() const { return mlp_; }
  Mlp<T>& mlp() { return mlp_; }

 private:
  Mlp<T> mlp_;
};

// obs (6) -> hidden tanh -> [hidden ; action] -> hidden tanh -> hidden tanh
// -> Q (1) linear.
template <typename T>
class CriticNet {
 public:
  using Matrix = typename Mlp<T>::Matrix;
  using Vector = typename Mlp<T>::Vector;
  using Cache = typename Mlp<T>::Cache;

  static constexpr double kWeightVariance = 0.1;
  static constexpr double kBias = 0.1;

  CriticNet() : CriticNet(200) {}
  explicit CriticNet(int hidden, int obs_dim = 6, int action_dim = 2);

  template <typename Urbg>
  void Initialize(Urbg& rng) {
    mlp_.Initialize(rng, kWeightVariance, kBias);
  }

  // Returns 1 x batch.
  Matrix Forward(const Matrix& obs, const Matrix& action,
                 Cache* cache = nullptr) const {
    return mlp_.Forward(obs, &action, cache);
  }
  void Backward(const Cache& cache, const Matrix& d_q, Vector* grads,
                Matrix* d_obs, Matrix* d_action) const {
    mlp_.Backward(cache, d_q, grads, d_obs, d_action);
  }

  const Mlp<T>& mlp() const { return mlp_; }
  Mlp<T>& mlp() { return mlp_; }

 private:
  Mlp<T> mlp_;
};

enum class Objective { kMinimize, kMaximize };

template <typename T>
struct AdamState {
  using Vector = typename Mlp<T>::Vector;

  AdamState() = default;
  AdamState(Eigen::Index n, double learning_rate)
      : first_moment(Vector::Zero(n)),
        second_moment(Vector::Zero(n)),
        lr(learning_rate) {}

  Vector first_moment;
  Vector second_moment;
  std::int64_t t = 0;
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// One bias-corrected ADAM update. kMaximize ascends the objective.
template <typename T>
void AdamStep(typename Mlp<T>::Vector& params,
              const typename Mlp<T>::Vector& grads, AdamState<T>& state,
              Objective objective = Objective::kMinimize);

extern template class Mlp<float>;
extern template class Mlp<double>;
extern template class ActorNet<float>;
extern template class ActorNet<double>;
extern template class CriticNet<float>;
extern template class CriticNet<double>;

}  // namespace nhplan

#endif  // NHPLAN_NETWORK_H_
