#pragma once

#include <algorithm>
#include <cmath>
#include <functional>

#include <Eigen/Dense>

#include "stowage/nn/mlp.hpp"
#include "stowage/rng.hpp"

namespace numerics {

using VectorD = Eigen::VectorXd;
using MatrixD = Eigen::MatrixXd;

// Central finite-difference gradient of f at x.
inline VectorD fd_gradient(const std::function<double(const VectorD&)>& f, VectorD x, double h = 1e-6) {
  VectorD g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double keep = x(i);
    x(i) = keep + h;
    const double up = f(x);
    x(i) = keep - h;
    const double down = f(x);
    x(i) = keep;
    g(i) = (up - down) / (2 * h);
  }
  return g;
}

inline double relative_error(const VectorD& a, const VectorD& b) {
  const double scale = std::max({a.norm(), b.norm(), 1e-12});
  return (a - b).norm() / scale;
}

inline MatrixD random_matrix(stowage::Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  MatrixD m(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) m(r, c) = rng.normal();
  }
  return m;
}

inline stowage::nn::Mlp<double> small_net(stowage::Rng& rng, int in, int out, int width = 32,
                                          stowage::nn::Activation act = stowage::nn::Activation::kTanh) {
  return stowage::nn::Mlp<double>({in, {width, width}, act, out}, rng);
}

}  // namespace numerics
