//
// Project sggm - Copyright 2026 The sggm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "sggm/train/loss.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sggm::train {

double build_loss(const std::vector<Eigen::VectorXd>& estimated,
                  const std::vector<int>& true_indices) {
  if (estimated.size() != true_indices.size())
    throw std::invalid_argument("build_loss: misaligned lengths");
  double loss = 0.0;
  for (std::size_t t = 0; t < estimated.size(); ++t) {
    const int idx = true_indices[t];
    if (idx < 0 || idx >= estimated[t].size())
      throw std::invalid_argument("build_loss: true index out of range");
    loss -= std::log(std::max(estimated[t][idx], kProbClamp));
  }
  return loss;
}

double isomer_loss(const std::vector<double>& true_flags,
                   const Eigen::VectorXd& estimated) {
  if (static_cast<Eigen::Index>(true_flags.size()) != estimated.size())
    throw std::invalid_argument("isomer_loss: misaligned lengths");
  double loss = 0.0;
  for (Eigen::Index i = 0; i < estimated.size(); ++i) {
    const double p = true_flags[static_cast<std::size_t>(i)];
    const double q = std::clamp(estimated[i], kProbClamp, 1.0 - kProbClamp);
    loss -= p * std::log(q) + (1.0 - p) * std::log(1.0 - q);
  }
  return loss;
}

double kl_loss(const Eigen::VectorXd& mu, const Eigen::VectorXd& sigma) {
  if (mu.size() != sigma.size())
    throw std::invalid_argument("kl_loss: misaligned lengths");
  double total = 0.0;
  for (Eigen::Index j = 0; j < mu.size(); ++j) {
    const double s2 = sigma[j] * sigma[j];
    total += 1.0 + std::log(s2) - mu[j] * mu[j] - s2;
  }
  return -0.5 * total;
}

}  // namespace sggm::train
