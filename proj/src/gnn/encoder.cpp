//
// Project sggm - Copyright 2026 The sggm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "sggm/gnn/encoder.hpp"

#include <stdexcept>

namespace sggm::gnn {

EmbeddedGraph embed_graph(nn::Tape& t, const Model& m, const chem::MolGraph& g) {
  if (g.empty()) throw std::invalid_argument("embed: empty graph");
  EmbeddedGraph out;
  out.nodes = apply_linear(t, t.constant(raw_node_features(g)), m.embed_node);
  out.edges = apply_linear(t, t.constant(raw_edge_features(g)), m.embed_edge);
  out.de = DirectedEdges::from(g);
  return out;
}

LatentVars encode_graph(nn::Tape& t, const Model& m, const chem::MolGraph& g,
                        const Eigen::VectorXd& ytilde_norm,
                        const Eigen::VectorXd& eps) {
  if (ytilde_norm.size() != m.config().cond_init_dim())
    throw std::invalid_argument("encode: condition length mismatch");
  EmbeddedGraph emb = embed_graph(t, m, g);
  nn::Var cond = t.constant(ytilde_norm.transpose());
  nn::Var h = propagate(t, emb.nodes, emb.edges, emb.de, cond, m.enc_prop);
  nn::Var hg = readout(t, h, m.enc_readout);

  LatentVars out;
  out.mu = apply_linear(t, hg, m.mlp_mu);
  out.log_var = apply_linear(t, hg, m.mlp_sigma);
  out.sigma = nn::exp_op(nn::scale(out.log_var, 0.5));
  if (eps.size() == 0) {
    out.z = out.mu;
  } else {
    if (eps.size() != m.config().latent_dim)
      throw std::invalid_argument("encode: eps length mismatch");
    out.z = nn::add(out.mu, nn::cmul(out.sigma, t.constant(eps.transpose())));
  }
  return out;
}

FeatureState embed(const Model& m, const chem::MolGraph& g) {
  nn::Tape t(false);
  EmbeddedGraph emb = embed_graph(t, m, g);
  FeatureState fs;
  fs.node_features = emb.nodes.value();
  fs.edge_features = emb.edges.value();
  return fs;
}

namespace {

LatentVector encode_impl(const Model& m, const chem::MolGraph& g,
                         const Eigen::VectorXd& ytilde_norm,
                         const Eigen::VectorXd& eps) {
  nn::Tape t(false);
  LatentVars v = encode_graph(t, m, g, ytilde_norm, eps);
  LatentVector out;
  out.z = v.z.value().row(0).transpose();
  out.mu = v.mu.value().row(0).transpose();
  out.sigma = v.sigma.value().row(0).transpose();
  return out;
}

}  // namespace

LatentVector encode(const Model& m, const chem::MolGraph& g,
                    const Eigen::VectorXd& ytilde_norm, nn::Rng& rng) {
  return encode_impl(m, g, ytilde_norm, rng.normal_vector(m.config().latent_dim));
}

LatentVector encode_mean(const Model& m, const chem::MolGraph& g,
                         const Eigen::VectorXd& ytilde_norm) {
  return encode_impl(m, g, ytilde_norm, Eigen::VectorXd());
}

Eigen::VectorXd readout_values(const Model& m, const nn::Mat& node_features) {
  nn::Tape t(false);
  nn::Var out = readout(t, t.constant(node_features), m.enc_readout);
  return out.value().row(0).transpose();
}

}  // namespace sggm::gnn
