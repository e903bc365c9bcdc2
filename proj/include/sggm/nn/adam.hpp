//
// Project sggm - Copyright 2026 The sggm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SGGM_NN_ADAM_HPP_
#define SGGM_NN_ADAM_HPP_

#include <map>
#include <utility>

#include "sggm/nn/tensor.hpp"

namespace sggm::nn {

struct AdamConfig {
  double lr = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

/// Adam with bias correction. step() consumes and zeroes the gradients.
class Adam {
 public:
  explicit Adam(AdamConfig cfg = {}) : cfg_(cfg) {}

  void step(ParameterStore& store) {
    ++t_;
    const double bc1 = 1.0 - std::pow(cfg_.beta1, static_cast<double>(t_));
    const double bc2 = 1.0 - std::pow(cfg_.beta2, static_cast<double>(t_));
    for (auto& [name, p] : store.entries()) {
      if (!p.trainable) {
        p.zero_grad();
        continue;
      }
      auto& [m, v] = moments_[name];
      if (m.size() == 0) {
        m = Mat::Zero(p.value.rows(), p.value.cols());
        v = Mat::Zero(p.value.rows(), p.value.cols());
      }
      m = cfg_.beta1 * m + (1.0 - cfg_.beta1) * p.grad;
      v = cfg_.beta2 * v + (1.0 - cfg_.beta2) * p.grad.cwiseProduct(p.grad);
      const Mat mhat = m / bc1;
      const Mat vhat = v / bc2;
      p.value -= cfg_.lr * (mhat.array() / (vhat.array().sqrt() + cfg_.eps)).matrix();
      p.zero_grad();
    }
  }

  const AdamConfig& config() const { return cfg_; }
  long long steps_taken() const { return t_; }

 private:
  AdamConfig cfg_;
  long long t_ = 0;
  std::map<std::string, std::pair<Mat, Mat>> moments_;
};

}  // namespace sggm::nn

#endif  // SGGM_NN_ADAM_HPP_
