//
// Project sggm - Copyright 2026 The sggm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "sggm/model.hpp"

#include <stdexcept>

#include "sggm/chem/mol_graph.hpp"
#include "sggm/nn/checkpoint.hpp"

namespace sggm {

namespace {

std::string join_names(const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out.push_back(',');
    out += names[i];
  }
  return out;
}

std::vector<std::string> split_names(const std::string& joined) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= joined.size() && !joined.empty()) {
    const std::size_t comma = joined.find(',', start);
    if (comma == std::string::npos) {
      out.push_back(joined.substr(start));
      break;
    }
    out.push_back(joined.substr(start, comma - start));
    start = comma + 1;
  }
  return out;
}

}  // namespace

Model::Model(ModelConfig cfg) : cfg_(std::move(cfg)) {
  nn::Rng rng(nn::Rng::mix(cfg_.seed, 0x706172616d73ULL));
  build(rng);
}

void Model::build(nn::Rng& rng) {
  const int h = cfg_.hidden_dim;
  const int latent = cfg_.latent_dim;
  const int ci = cfg_.cond_init_dim();
  const int cb = cfg_.cond_build_dim();
  auto& s = store_;

  embed_node = gnn::make_linear(s, rng, "embed.node", gnn::kNodeRawDim, h);
  embed_edge = gnn::make_linear(s, rng, "embed.edge", gnn::kEdgeRawDim, h);

  enc_prop = gnn::make_propagate(s, rng, "encoder.propagate", cfg_.k_init, h, ci);
  enc_readout = gnn::make_readout(s, rng, "encoder.readout", h, 2 * h);
  mlp_mu = gnn::make_linear(s, rng, "encoder.mlp_mu", 2 * h, latent);
  mlp_sigma = gnn::make_linear(s, rng, "encoder.mlp_sigma", 2 * h, latent);

  scaf_prop = gnn::make_propagate(s, rng, "scaffold_init.propagate", cfg_.k_init, h, ci);

  an_prop = gnn::make_propagate(s, rng, "addNode.propagate", cfg_.k_build, h, cb);
  an_readout = gnn::make_readout(s, rng, "addNode.readout", h, h);
  an_l0 = gnn::make_linear(s, rng, "addNode.mlp.0", h + cb, h);
  an_l1 = gnn::make_linear(s, rng, "addNode.mlp.1", h, h);
  an_l2 = gnn::make_linear(s, rng, "addNode.mlp.2", h, chem::kNumElements + 1);

  ae_prop = gnn::make_propagate(s, rng, "addEdge.propagate", cfg_.k_build, h, cb);
  ae_readout = gnn::make_readout(s, rng, "addEdge.readout", h, h);
  ae_l0 = gnn::make_linear(s, rng, "addEdge.mlp.0", h + cb, h);
  ae_l1 = gnn::make_linear(s, rng, "addEdge.mlp.1", h, h);
  ae_l2 = gnn::make_linear(s, rng, "addEdge.mlp.2", h, chem::kNumBondOrders + 1);

  sn_prop = gnn::make_propagate(s, rng, "selectNode.propagate", cfg_.k_build, h, cb);
  sn_mlp = gnn::make_linear(s, rng, "selectNode.mlp_sn", 2 * h + cb, 1);

  in_readout = gnn::make_readout(s, rng, "initNode.readout", h, h);
  in_l1 = gnn::make_linear(s, rng, "initNode.mlp_i1", chem::kNumElements, h);
  in_l2 = gnn::make_linear(s, rng, "initNode.mlp_i2", 2 * h, h);

  ie_readout = gnn::make_readout(s, rng, "initEdge.readout", h, h);
  ie_l1 = gnn::make_linear(s, rng, "initEdge.mlp_i1", chem::kNumBondOrders, h);
  ie_l2 = gnn::make_linear(s, rng, "initEdge.mlp_i2", 2 * h, h);

  si_prop = gnn::make_propagate(s, rng, "selectIsomer.propagate", cfg_.k_build, h, cb);
  si_mlp = gnn::make_linear(s, rng, "selectIsomer.mlp_s", h + cb, 1);

  // Non-trainable metadata: enough to rebuild the model from a checkpoint.
  const int p = cfg_.property_count();
  nn::Tensor& hp = s.create("meta.hparams", 1, 6, false);
  hp.value << cfg_.hidden_dim, cfg_.latent_dim, cfg_.k_init, cfg_.k_build,
      cfg_.max_added_atoms, p;
  const std::string joined = join_names(cfg_.property_names);
  nn::Tensor& names = s.create("meta.property_names", 1,
                               static_cast<Eigen::Index>(joined.size()), false);
  for (std::size_t i = 0; i < joined.size(); ++i)
    names.value(0, static_cast<Eigen::Index>(i)) =
        static_cast<double>(static_cast<unsigned char>(joined[i]));
  s.create("meta.prop_mean_mol", 1, p, false);
  s.create("meta.prop_std_mol", 1, p, false).value.setOnes();
  s.create("meta.prop_mean_scaf", 1, p, false);
  s.create("meta.prop_std_scaf", 1, p, false).value.setOnes();
}

void Model::set_property_stats(const Eigen::VectorXd& mol_mean,
                               const Eigen::VectorXd& mol_std,
                               const Eigen::VectorXd& scaf_mean,
                               const Eigen::VectorXd& scaf_std) {
  const int p = cfg_.property_count();
  if (mol_mean.size() != p || mol_std.size() != p || scaf_mean.size() != p ||
      scaf_std.size() != p)
    throw std::invalid_argument("set_property_stats: size mismatch");
  store_.at("meta.prop_mean_mol").value = mol_mean.transpose();
  store_.at("meta.prop_std_mol").value = mol_std.transpose();
  store_.at("meta.prop_mean_scaf").value = scaf_mean.transpose();
  store_.at("meta.prop_std_scaf").value = scaf_std.transpose();
}

Eigen::VectorXd Model::mol_mean() const {
  return store_.at("meta.prop_mean_mol").value.row(0).transpose();
}
Eigen::VectorXd Model::mol_std() const {
  return store_.at("meta.prop_std_mol").value.row(0).transpose();
}
Eigen::VectorXd Model::scaf_mean() const {
  return store_.at("meta.prop_mean_scaf").value.row(0).transpose();
}
Eigen::VectorXd Model::scaf_std() const {
  return store_.at("meta.prop_std_scaf").value.row(0).transpose();
}

Eigen::VectorXd Model::normalize_mol(const Eigen::VectorXd& y) const {
  return (y - mol_mean()).cwiseQuotient(mol_std());
}
Eigen::VectorXd Model::normalize_scaffold(const Eigen::VectorXd& y) const {
  return (y - scaf_mean()).cwiseQuotient(scaf_std());
}

Eigen::VectorXd Model::make_ytilde(const Eigen::VectorXd& y,
                                   const Eigen::VectorXd& y_scaffold) const {
  const int p = cfg_.property_count();
  if (y.size() != p || y_scaffold.size() != p)
    throw std::invalid_argument("make_ytilde: property vector length mismatch");
  Eigen::VectorXd out(2 * p);
  out.head(p) = normalize_mol(y);
  out.tail(p) = normalize_scaffold(y_scaffold);
  return out;
}

void Model::save(const std::string& path) const {
  nn::save_checkpoint(store_, path);
}

Model Model::from_checkpoint(const std::string& path) {
  auto raw = nn::read_checkpoint(path);
  auto hp = raw.find("meta.hparams");
  auto pn = raw.find("meta.property_names");
  if (hp == raw.end() || pn == raw.end())
    throw std::runtime_error("checkpoint: missing meta tensors");

  ModelConfig cfg;
  cfg.hidden_dim = static_cast<int>(hp->second(0, 0));
  cfg.latent_dim = static_cast<int>(hp->second(0, 1));
  cfg.k_init = static_cast<int>(hp->second(0, 2));
  cfg.k_build = static_cast<int>(hp->second(0, 3));
  cfg.max_added_atoms = static_cast<int>(hp->second(0, 4));
  std::string joined;
  for (Eigen::Index i = 0; i < pn->second.cols(); ++i)
    joined.push_back(static_cast<char>(static_cast<int>(pn->second(0, i))));
  cfg.property_names = split_names(joined);
  if (static_cast<int>(cfg.property_names.size()) !=
      static_cast<int>(hp->second(0, 5)))
    throw std::runtime_error("checkpoint: property name count mismatch");

  Model model(cfg);
  nn::load_checkpoint(model.store_, path);
  return model;
}

}  // namespace sggm
