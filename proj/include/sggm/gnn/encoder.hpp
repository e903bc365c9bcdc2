//
// Project sggm - Copyright 2026 The sggm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SGGM_GNN_ENCODER_HPP_
#define SGGM_GNN_ENCODER_HPP_

#include "sggm/model.hpp"

namespace sggm::gnn {

/// Tape-level embedded graph: one feature row per atom / per bond.
struct EmbeddedGraph {
  nn::Var nodes;
  nn::Var edges;
  DirectedEdges de;
};

/// Raw extended-family features through the shared single-layer embeddings.
EmbeddedGraph embed_graph(nn::Tape& t, const Model& m, const chem::MolGraph& g);

struct LatentVars {
  nn::Var z, mu, sigma, log_var;
};

/// embed -> propagate^(k_init) conditioned on ytilde -> gated readout (2H) ->
/// mu, sigma = exp(s/2), z = mu + sigma .* eps. `eps` may be empty for the
/// posterior mean (z = mu).
LatentVars encode_graph(nn::Tape& t, const Model& m, const chem::MolGraph& g,
                        const Eigen::VectorXd& ytilde_norm,
                        const Eigen::VectorXd& eps);

/// Plain-value forms of the spec operations (fresh no-grad tape inside).
FeatureState embed(const Model& m, const chem::MolGraph& g);

struct LatentVector {
  Eigen::VectorXd z, mu, sigma;
};

LatentVector encode(const Model& m, const chem::MolGraph& g,
                    const Eigen::VectorXd& ytilde_norm, nn::Rng& rng);
LatentVector encode_mean(const Model& m, const chem::MolGraph& g,
                         const Eigen::VectorXd& ytilde_norm);

/// Gated readout of a plain feature matrix with the encoder's parameters
/// (exposed for unit tests).
Eigen::VectorXd readout_values(const Model& m, const nn::Mat& node_features);

}  // namespace sggm::gnn

#endif  // SGGM_GNN_ENCODER_HPP_
