//
// Project sggm - Copyright 2026 The sggm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SGGM_TRAIN_LOSS_HPP_
#define SGGM_TRAIN_LOSS_HPP_

#include <vector>

#include <Eigen/Dense>

namespace sggm::train {

inline constexpr double kProbClamp = 1e-12;

struct LossBreakdown {
  double build = 0.0;
  double isomer = 0.0;
  double kl = 0.0;
  double total(double beta) const { return build + isomer + beta * kl; }
};

/// Sum over steps of -log(estimated probability of the true action).
double build_loss(const std::vector<Eigen::VectorXd>& estimated,
                  const std::vector<int>& true_indices);

/// Binary cross-entropy summed over isomers; estimates are clamped to
/// [1e-12, 1 - 1e-12] before the logs.
double isomer_loss(const std::vector<double>& true_flags,
                   const Eigen::VectorXd& estimated);

/// Closed-form KL of N(mu, diag sigma^2) against the standard normal.
double kl_loss(const Eigen::VectorXd& mu, const Eigen::VectorXd& sigma);

}  // namespace sggm::train

#endif  // SGGM_TRAIN_LOSS_HPP_
