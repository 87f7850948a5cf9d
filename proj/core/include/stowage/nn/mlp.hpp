#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "stowage/rng.hpp"

namespace stowage::nn {

enum class Activation { kTanh, kRelu };

inline Activation parse_activation(std::string_view name) {
  if (name == "tanh") return Activation::kTanh;
  if (name == "relu") return Activation::kRelu;
  throw std::invalid_argument("unknown activation '" + std::string(name) + "'");
}

inline std::string_view to_string(Activation a) { return a == Activation::kTanh ? "tanh" : "relu"; }

struct NetworkSpec {
  int input_dim = 1;
  std::vector<int> hidden{256, 256};
  Activation activation = Activation::kTanh;
  int output_dim = 1;
};

template <typename S>
using Matrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <typename S>
using Vector = Eigen::Matrix<S, Eigen::Dynamic, 1>;

// Fully connected network with a linear output layer.
//
// All weights and biases live in one flat parameter vector so optimizers,
// finite-difference checks and natural-gradient steps can treat the network as
// a point in R^n. Batches are column-major: one sample per column.
template <typename S>
class Mlp {
 public:
  struct Cache {
    // layer inputs: [0] = network input, [l] = activation of hidden layer l
    std::vector<Matrix<S>> inputs;
  };

  Mlp() = default;

  // Glorot-uniform weights, zero biases. Row r of the output layer is scaled by
  // output_gains[r] when given (e.g. 0.01 for policy logits).
  Mlp(NetworkSpec spec, Rng& rng, std::span<const double> output_gains = {}) : spec_(std::move(spec)) {
    std::vector<int> widths{spec_.input_dim};
    widths.insert(widths.end(), spec_.hidden.begin(), spec_.hidden.end());
    widths.push_back(spec_.output_dim);
    std::size_t offset = 0;
    for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
      Layer layer{widths[l], widths[l + 1], offset, 0};
      offset += static_cast<std::size_t>(layer.in) * layer.out;
      layer.bias_offset = offset;
      offset += static_cast<std::size_t>(layer.out);
      layers_.push_back(layer);
    }
    params_ = Vector<S>::Zero(static_cast<Eigen::Index>(offset));
    for (std::size_t l = 0; l < layers_.size(); ++l) {
      const Layer& layer = layers_[l];
      const double limit = std::sqrt(6.0 / (layer.in + layer.out));
      auto w = weights(l);
      for (Eigen::Index c = 0; c < w.cols(); ++c) {
        for (Eigen::Index r = 0; r < w.rows(); ++r) {
          double gain = 1.0;
          if (l + 1 == layers_.size() && static_cast<std::size_t>(r) < output_gains.size()) {
            gain = output_gains[r];
          }
          w(r, c) = static_cast<S>(gain * limit * (2.0 * rng.uniform01() - 1.0));
        }
      }
    }
  }

  const NetworkSpec& spec() const noexcept { return spec_; }
  Eigen::Index parameter_count() const noexcept { return params_.size(); }
  Vector<S>& parameters() noexcept { return params_; }
  const Vector<S>& parameters() const noexcept { return params_; }

  Matrix<S> forward(const Matrix<S>& input, Cache* cache = nullptr) const {
    if (cache) cache->inputs.assign(1, input);
    Matrix<S> h = input;
    for (std::size_t l = 0; l < layers_.size(); ++l) {
      Matrix<S> z = weights(l) * h;
      z.colwise() += bias(l);
      if (l + 1 == layers_.size()) return z;
      activate(z);
      if (cache) cache->inputs.push_back(z);
      h = std::move(z);
    }
    return h;
  }

  // Gradient of sum(output_grad .* output) with respect to the parameters.
  Vector<S> backward(const Cache& cache, const Matrix<S>& output_grad) const {
    Vector<S> grad = Vector<S>::Zero(params_.size());
    Matrix<S> delta = output_grad;
    for (std::size_t l = layers_.size(); l-- > 0;) {
      const Layer& layer = layers_[l];
      const Matrix<S>& in = cache.inputs[l];
      Eigen::Map<Matrix<S>>(grad.data() + layer.weight_offset, layer.out, layer.in).noalias() =
          delta * in.transpose();
      grad.segment(layer.bias_offset, layer.out) = delta.rowwise().sum();
      if (l == 0) break;
      Matrix<S> back = weights(l).transpose() * delta;
      delta = back.cwiseProduct(derivative(in));
    }
    return grad;
  }

  // Directional derivative of the outputs along `tangent` in parameter space.
  Matrix<S> jvp(const Cache& cache, const Vector<S>& tangent) const {
    Matrix<S> dh;  // tangent of the current layer input; zero for the network input
    for (std::size_t l = 0; l < layers_.size(); ++l) {
      const Layer& layer = layers_[l];
      Eigen::Map<const Matrix<S>> dw(tangent.data() + layer.weight_offset, layer.out, layer.in);
      Matrix<S> dz = dw * cache.inputs[l];
      if (l > 0) dz.noalias() += weights(l) * dh;
      dz.colwise() += tangent.segment(layer.bias_offset, layer.out);
      if (l + 1 == layers_.size()) return dz;
      dh = dz.cwiseProduct(derivative(cache.inputs[l + 1]));
    }
    return {};
  }

 private:
  struct Layer {
    int in = 0;
    int out = 0;
    std::size_t weight_offset = 0;
    std::size_t bias_offset = 0;
  };

  Eigen::Map<Matrix<S>> weights(std::size_t l) {
    return {params_.data() + layers_[l].weight_offset, layers_[l].out, layers_[l].in};
  }
  Eigen::Map<const Matrix<S>> weights(std::size_t l) const {
    return {params_.data() + layers_[l].weight_offset, layers_[l].out, layers_[l].in};
  }
  auto bias(std::size_t l) const { return params_.segment(layers_[l].bias_offset, layers_[l].out); }

  void activate(Matrix<S>& z) const {
    if (spec_.activation == Activation::kTanh) {
      z = z.array().tanh().matrix();
    } else {
      z = z.cwiseMax(S(0));
    }
  }

  // Activation derivative expressed through the activation output.
  Matrix<S> derivative(const Matrix<S>& h) const {
    if (spec_.activation == Activation::kTanh) return (S(1) - h.array().square()).matrix();
    return (h.array() > S(0)).template cast<S>().matrix();
  }

  NetworkSpec spec_;
  std::vector<Layer> layers_;
  Vector<S> params_;
};

// Adam on a flat parameter vector.
template <typename S>
class Adam {
 public:
  Adam() = default;
  Adam(Eigen::Index n, double learning_rate, double beta1 = 0.9, double beta2 = 0.999,
       double epsilon = 1e-8)
      : lr_(learning_rate), beta1_(beta1), beta2_(beta2), eps_(epsilon),
        m_(Vector<S>::Zero(n)), v_(Vector<S>::Zero(n)) {}

  // Descends along grad. Rescales grad first when its norm exceeds
  // max_grad_norm (<= 0 disables clipping).
  void step(Vector<S>& params, Vector<S> grad, double max_grad_norm = 0.0) {
    if (max_grad_norm > 0.0) {
      const double norm = static_cast<double>(grad.norm());
      if (norm > max_grad_norm) grad *= static_cast<S>(max_grad_norm / norm);
    }
    ++t_;
    m_ = S(beta1_) * m_ + S(1 - beta1_) * grad;
    v_ = S(beta2_) * v_ + S(1 - beta2_) * grad.cwiseProduct(grad);
    const double c1 = 1.0 - std::pow(beta1_, t_);
    const double c2 = 1.0 - std::pow(beta2_, t_);
    params.array() -= S(lr_ / c1) * m_.array() / ((v_.array() / S(c2)).sqrt() + S(eps_));
  }

  void set_learning_rate(double lr) noexcept { lr_ = lr; }

 private:
  double lr_ = 3e-4;
  double beta1_ = 0.9;
  double beta2_ = 0.999;
  double eps_ = 1e-8;
  long t_ = 0;
  Vector<S> m_;
  Vector<S> v_;
};

}  // namespace stowage::nn
