//
// Project sggm - Copyright 2026 The sggm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SGGM_NN_TENSOR_HPP_
#define SGGM_NN_TENSOR_HPP_

#include <map>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "sggm/nn/rng.hpp"

namespace sggm::nn {

using Mat = Eigen::MatrixXd;

/// Named trainable matrix with a gradient accumulator of the same shape.
struct Tensor {
  std::string name;
  Mat value;
  Mat grad;
  bool trainable = true;

  void zero_grad() { grad.setZero(); }
};

/// Name-addressed parameter map. std::map keeps iteration order (and thus
/// checkpoints and optimizer sweeps) deterministic; node-based storage keeps
/// Tensor addresses stable.
class ParameterStore {
 public:
  Tensor& create(const std::string& name, Eigen::Index rows, Eigen::Index cols,
                 bool trainable = true) {
    auto [it, inserted] = map_.try_emplace(name);
    if (!inserted)
      throw std::invalid_argument("ParameterStore: duplicate name " + name);
    Tensor& t = it->second;
    t.name = name;
    t.value = Mat::Zero(rows, cols);
    t.grad = Mat::Zero(rows, cols);
    t.trainable = trainable;
    return t;
  }

  Tensor& at(const std::string& name) {
    auto it = map_.find(name);
    if (it == map_.end())
      throw std::out_of_range("ParameterStore: unknown name " + name);
    return it->second;
  }
  const Tensor& at(const std::string& name) const {
    auto it = map_.find(name);
    if (it == map_.end())
      throw std::out_of_range("ParameterStore: unknown name " + name);
    return it->second;
  }

  bool contains(const std::string& name) const { return map_.count(name) > 0; }

  std::map<std::string, Tensor>& entries() { return map_; }
  const std::map<std::string, Tensor>& entries() const { return map_; }

  void zero_grads() {
    for (auto& [name, t] : map_) t.zero_grad();
  }

  std::size_t tensor_count() const { return map_.size(); }

  std::size_t scalar_count() const {
    std::size_t n = 0;
    for (const auto& [name, t] : map_) n += static_cast<std::size_t>(t.value.size());
    return n;
  }

 private:
  std::map<std::string, Tensor> map_;
};

/// uniform(-1/sqrt(fan_in), +1/sqrt(fan_in)); fan_in = rows of the weight.
inline void init_uniform_fan_in(Tensor& t, Rng& rng) {
  const double a = 1.0 / std::sqrt(static_cast<double>(t.value.rows()));
  for (Eigen::Index c = 0; c < t.value.cols(); ++c)
    for (Eigen::Index r = 0; r < t.value.rows(); ++r)
      t.value(r, c) = rng.uniform(-a, a);
}

}  // namespace sggm::nn

#endif  // SGGM_NN_TENSOR_HPP_
