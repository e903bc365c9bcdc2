//
// Project sggm - Copyright 2026 The sggm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SGGM_TRAIN_TRAINER_HPP_
#define SGGM_TRAIN_TRAINER_HPP_

#include <stdexcept>

#include "sggm/nn/adam.hpp"
#include "sggm/train/loss.hpp"
#include "sggm/train/pairs.hpp"

namespace sggm::train {

struct TrainConfig {
  double beta = 0.1;
  double lr = 1e-4;
  int epochs = 20;
  int batch_size = 32;
  int workers = 1;
  std::uint64_t seed = 0;
};

struct EpochStats {
  double build = 0.0;
  double isomer = 0.0;
  double kl = 0.0;
  double total = 0.0;
};

/// Raised when a loss goes non-finite; carries diagnostics for the CLI.
class NumericalError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Teacher-forced loss for one pair on the caller's tape. The true action is
/// always applied regardless of the estimate. When `total_out` is non-null it
/// receives the scalar total (build + isomer + beta * kl) for backward.
LossBreakdown pair_loss(nn::Tape& t, const Model& m, const Pair& pair,
                        const Eigen::VectorXd& eps, double beta,
                        nn::Var* total_out);

/// Per-property mean/std over the dataset (molecule and scaffold values
/// separately), installed into the model's meta tensors. Constant properties
/// get unit scale.
void fit_property_stats(Model& m, const PairDataset& ds);

/// Shuffled mini-batches, mean-over-batch gradients, Adam updates. Worker
/// partitioning and gradient reduction order are deterministic for a fixed
/// worker count; workers = 1 is bit-reproducible.
class Trainer {
 public:
  Trainer(Model& m, const TrainConfig& cfg)
      : model_(m), cfg_(cfg),
        adam_(nn::AdamConfig{cfg.lr, 0.9, 0.999, 1e-8}) {}

  EpochStats run_epoch(const PairDataset& ds, int epoch);

  const TrainConfig& config() const { return cfg_; }

 private:
  Model& model_;
  TrainConfig cfg_;
  nn::Adam adam_;
};

/// Posterior-mean encoding (eps = 0) followed by a greedy build.
chem::MolGraph reconstruct(const Model& m, const Pair& pair);

}  // namespace sggm::train

#endif  // SGGM_TRAIN_TRAINER_HPP_
