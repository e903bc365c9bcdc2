//
// Project sggm - Copyright 2026 The sggm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SGGM_MODEL_HPP_
#define SGGM_MODEL_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "sggm/gnn/modules.hpp"

namespace sggm {

struct ModelConfig {
  int hidden_dim = 128;
  int latent_dim = 128;
  int k_init = 3;   // whole-molecule / scaffold initial propagation rounds
  int k_build = 2;  // rounds inside addNode / addEdge / selectNode / selectIsomer
  int max_added_atoms = 60;
  std::vector<std::string> property_names;
  std::uint64_t seed = 0;

  int property_count() const { return static_cast<int>(property_names.size()); }
  /// Condition length during encoding and scaffold init: ytilde = (y, y_S).
  int cond_init_dim() const { return 2 * property_count(); }
  /// Condition length during building: ztilde = (z, y, y_S).
  int cond_build_dim() const { return latent_dim + 2 * property_count(); }
};

/// All trainable modules plus non-trainable meta tensors (hyperparameters,
/// property names, normalization statistics). Every propagate/readout owner
/// gets its own parameter set; propagation rounds do not share weights.
class Model {
 public:
  explicit Model(ModelConfig cfg);

  static Model from_checkpoint(const std::string& path);
  void save(const std::string& path) const;

  const ModelConfig& config() const { return cfg_; }
  nn::ParameterStore& store() { return store_; }
  const nn::ParameterStore& store() const { return store_; }

  void set_property_stats(const Eigen::VectorXd& mol_mean,
                          const Eigen::VectorXd& mol_std,
                          const Eigen::VectorXd& scaf_mean,
                          const Eigen::VectorXd& scaf_std);
  Eigen::VectorXd mol_mean() const;
  Eigen::VectorXd mol_std() const;
  Eigen::VectorXd scaf_mean() const;
  Eigen::VectorXd scaf_std() const;
  Eigen::VectorXd normalize_mol(const Eigen::VectorXd& y) const;
  Eigen::VectorXd normalize_scaffold(const Eigen::VectorXd& y) const;
  /// ytilde = concat(normalized y, normalized y_S).
  Eigen::VectorXd make_ytilde(const Eigen::VectorXd& y,
                              const Eigen::VectorXd& y_scaffold) const;

  // Shared embedding.
  gnn::LinearParams embed_node, embed_edge;
  // Encoder.
  gnn::PropagateStack enc_prop;
  gnn::ReadoutParams enc_readout;  // output dim 2 * hidden
  gnn::LinearParams mlp_mu, mlp_sigma;
  // Scaffold initial propagation.
  gnn::PropagateStack scaf_prop;
  // addNode.
  gnn::PropagateStack an_prop;
  gnn::ReadoutParams an_readout;
  gnn::LinearParams an_l0, an_l1, an_l2;
  // addEdge.
  gnn::PropagateStack ae_prop;
  gnn::ReadoutParams ae_readout;
  gnn::LinearParams ae_l0, ae_l1, ae_l2;
  // selectNode.
  gnn::PropagateStack sn_prop;
  gnn::LinearParams sn_mlp;
  // initNode / initEdge.
  gnn::ReadoutParams in_readout;
  gnn::LinearParams in_l1, in_l2;
  gnn::ReadoutParams ie_readout;
  gnn::LinearParams ie_l1, ie_l2;
  // selectIsomer.
  gnn::PropagateStack si_prop;
  gnn::LinearParams si_mlp;

 private:
  void build(nn::Rng& rng);

  ModelConfig cfg_;
  nn::ParameterStore store_;
};

}  // namespace sggm

#endif  // SGGM_MODEL_HPP_
