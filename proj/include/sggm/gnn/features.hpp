//
// Project sggm - Copyright 2026 The sggm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SGGM_GNN_FEATURES_HPP_
#define SGGM_GNN_FEATURES_HPP_

#include <vector>

#include "sggm/chem/mol_graph.hpp"
#include "sggm/nn/tensor.hpp"

namespace sggm::gnn {

/// Raw node channels over the extended atom family: element one-hot (8),
/// chirality one-hot (3), charge scalar, aromatic flag.
inline constexpr int kNodeRawDim = chem::kNumElements + chem::kNumChirality + 2;
/// Raw edge channels over the extended bond family: order one-hot (3),
/// stereo one-hot (5).
inline constexpr int kEdgeRawDim = chem::kNumBondOrders + chem::kNumBondStereo;

nn::Mat raw_node_features(const chem::MolGraph& g);  // (N, 13)
nn::Mat raw_edge_features(const chem::MolGraph& g);  // (E, 8)

/// Basic-family one-hots used by the node/edge initialization modules.
nn::Mat element_onehot(int element_index);  // (1, 8)
nn::Mat order_onehot(int order_index);      // (1, 3)

/// Embedded per-atom / per-bond vectors for a (transient) graph.
struct FeatureState {
  nn::Mat node_features;  // (N, hidden)
  nn::Mat edge_features;  // (E, hidden)
  int scaffold_size = 0;
};

/// Gather/scatter index lists for message passing; each undirected bond
/// contributes both directions.
struct DirectedEdges {
  std::vector<int> src, dst, bond;

  static DirectedEdges from(const chem::MolGraph& g) {
    DirectedEdges de;
    for (int b = 0; b < g.bond_count(); ++b) de.add(g.bond(b).u, g.bond(b).v, b);
    return de;
  }

  void add(int u, int v, int b) {
    src.push_back(u);
    dst.push_back(v);
    bond.push_back(b);
    src.push_back(v);
    dst.push_back(u);
    bond.push_back(b);
  }

  std::size_t count() const { return src.size(); }
};

}  // namespace sggm::gnn

#endif  // SGGM_GNN_FEATURES_HPP_
