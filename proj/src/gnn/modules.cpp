//
// Project sggm - Copyright 2026 The sggm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "sggm/gnn/modules.hpp"

#include <stdexcept>

namespace sggm::gnn {

LinearParams make_linear(nn::ParameterStore& store, nn::Rng& rng,
                         const std::string& prefix, int in, int out) {
  LinearParams p;
  p.w = &store.create(prefix + ".weight", in, out);
  p.b = &store.create(prefix + ".bias", 1, out);
  nn::init_uniform_fan_in(*p.w, rng);
  return p;
}

GruParams make_gru(nn::ParameterStore& store, nn::Rng& rng,
                   const std::string& prefix, int dim) {
  GruParams p{};
  auto weight = [&](const char* name) {
    nn::Tensor* t = &store.create(prefix + "." + name, dim, dim);
    nn::init_uniform_fan_in(*t, rng);
    return t;
  };
  auto bias = [&](const char* name) {
    return &store.create(prefix + "." + name, 1, dim);
  };
  p.wr = weight("w_r");
  p.ur = weight("u_r");
  p.br = bias("b_r");
  p.wu = weight("w_u");
  p.uu = weight("u_u");
  p.bu = bias("b_u");
  p.wn = weight("w_n");
  p.un = weight("u_n");
  p.bn = bias("b_n");
  return p;
}

PropagateStack make_propagate(nn::ParameterStore& store, nn::Rng& rng,
                              const std::string& prefix, int rounds, int hidden,
                              int cond_dim) {
  PropagateStack s;
  for (int r = 0; r < rounds; ++r) {
    const std::string base = prefix + "." + std::to_string(r);
    PropagateRound round;
    round.msg = make_linear(store, rng, base + ".mlp_m", 3 * hidden + cond_dim, hidden);
    round.gru = make_gru(store, rng, base + ".gru", hidden);
    s.rounds.push_back(round);
  }
  return s;
}

ReadoutParams make_readout(nn::ParameterStore& store, nn::Rng& rng,
                           const std::string& prefix, int hidden, int out) {
  ReadoutParams p;
  p.r1 = make_linear(store, rng, prefix + ".mlp_r1", hidden, out);
  p.r2 = make_linear(store, rng, prefix + ".mlp_r2", hidden, out);
  return p;
}

nn::Var apply_linear(nn::Tape& t, nn::Var x, const LinearParams& p) {
  return nn::affine(x, t.leaf(*p.w), t.leaf(*p.b));
}

nn::GruParamVars gru_vars(nn::Tape& t, const GruParams& p) {
  return {t.leaf(*p.wr), t.leaf(*p.ur), t.leaf(*p.br),
          t.leaf(*p.wu), t.leaf(*p.uu), t.leaf(*p.bu),
          t.leaf(*p.wn), t.leaf(*p.un), t.leaf(*p.bn)};
}

nn::Var propagate_round(nn::Tape& t, nn::Var nodes, nn::Var edges,
                        const DirectedEdges& de, nn::Var cond,
                        const PropagateRound& p) {
  const int n = static_cast<int>(nodes.rows());
  nn::Var msum;
  if (de.count() == 0) {
    msum = t.constant(nn::Mat::Zero(n, nodes.cols()));
  } else {
    std::vector<nn::Var> parts = {nn::gather_rows(nodes, de.src),
                                  nn::gather_rows(nodes, de.dst),
                                  nn::gather_rows(edges, de.bond)};
    if (cond.cols() > 0)
      parts.push_back(nn::broadcast_row(cond, static_cast<int>(de.count())));
    nn::Var m = nn::relu(apply_linear(t, nn::concat_cols(parts), p.msg));
    msum = nn::scatter_sum_rows(m, de.dst, n);
  }
  return nn::gru_cell(msum, nodes, gru_vars(t, p.gru));
}

nn::Var propagate(nn::Tape& t, nn::Var nodes, nn::Var edges,
                  const DirectedEdges& de, nn::Var cond,
                  const PropagateStack& p) {
  nn::Var h = nodes;
  for (const PropagateRound& round : p.rounds)
    h = propagate_round(t, h, edges, de, cond, round);
  return h;
}

nn::Var readout(nn::Tape& t, nn::Var nodes, const ReadoutParams& p) {
  if (nodes.rows() == 0) throw std::invalid_argument("readout: empty node set");
  nn::Var gate = nn::sigmoid(apply_linear(t, nodes, p.r2));
  nn::Var val = apply_linear(t, nodes, p.r1);
  return nn::mean_rows(nn::cmul(gate, val));
}

}  // namespace sggm::gnn
