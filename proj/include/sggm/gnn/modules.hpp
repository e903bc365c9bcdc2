//
// Project sggm - Copyright 2026 The sggm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SGGM_GNN_MODULES_HPP_
#define SGGM_GNN_MODULES_HPP_

#include <string>
#include <vector>

#include "sggm/gnn/features.hpp"
#include "sggm/nn/rng.hpp"
#include "sggm/nn/tape.hpp"

namespace sggm::gnn {

struct LinearParams {
  nn::Tensor* w = nullptr;
  nn::Tensor* b = nullptr;
};

struct GruParams {
  nn::Tensor *wr, *ur, *br, *wu, *uu, *bu, *wn, *un, *bn;
};

/// One conditioned message-passing round: ReLU message MLP + GRU node update.
struct PropagateRound {
  LinearParams msg;
  GruParams gru;
};

/// k rounds with distinct parameter sets.
struct PropagateStack {
  std::vector<PropagateRound> rounds;
};

/// Gated pooling: mean_v sigmoid(r2(h_v)) .* r1(h_v).
struct ReadoutParams {
  LinearParams r1, r2;
};

LinearParams make_linear(nn::ParameterStore& store, nn::Rng& rng,
                         const std::string& prefix, int in, int out);
GruParams make_gru(nn::ParameterStore& store, nn::Rng& rng,
                   const std::string& prefix, int dim);
PropagateStack make_propagate(nn::ParameterStore& store, nn::Rng& rng,
                              const std::string& prefix, int rounds, int hidden,
                              int cond_dim);
ReadoutParams make_readout(nn::ParameterStore& store, nn::Rng& rng,
                           const std::string& prefix, int hidden, int out);

nn::Var apply_linear(nn::Tape& t, nn::Var x, const LinearParams& p);
nn::GruParamVars gru_vars(nn::Tape& t, const GruParams& p);

/// Node update over the directed edge lists; isolated nodes receive a zero
/// message. Edge features pass through unchanged. `cond` is a (1, C) row,
/// C may be 0.
nn::Var propagate_round(nn::Tape& t, nn::Var nodes, nn::Var edges,
                        const DirectedEdges& de, nn::Var cond,
                        const PropagateRound& p);
nn::Var propagate(nn::Tape& t, nn::Var nodes, nn::Var edges,
                  const DirectedEdges& de, nn::Var cond,
                  const PropagateStack& p);
nn::Var readout(nn::Tape& t, nn::Var nodes, const ReadoutParams& p);

}  // namespace sggm::gnn

#endif  // SGGM_GNN_MODULES_HPP_
