//
// Project sggm - Copyright 2026 The sggm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "sggm/gnn/features.hpp"

namespace sggm::gnn {

nn::Mat raw_node_features(const chem::MolGraph& g) {
  nn::Mat out = nn::Mat::Zero(g.atom_count(), kNodeRawDim);
  for (int i = 0; i < g.atom_count(); ++i) {
    const chem::Atom& a = g.atom(i);
    out(i, static_cast<int>(a.element)) = 1.0;
    out(i, chem::kNumElements + static_cast<int>(a.chirality)) = 1.0;
    out(i, chem::kNumElements + chem::kNumChirality) = static_cast<double>(a.charge);
    out(i, chem::kNumElements + chem::kNumChirality + 1) = a.aromatic ? 1.0 : 0.0;
  }
  return out;
}

nn::Mat raw_edge_features(const chem::MolGraph& g) {
  nn::Mat out = nn::Mat::Zero(g.bond_count(), kEdgeRawDim);
  for (int i = 0; i < g.bond_count(); ++i) {
    const chem::Bond& b = g.bond(i);
    out(i, static_cast<int>(b.order)) = 1.0;
    out(i, chem::kNumBondOrders + static_cast<int>(b.stereo)) = 1.0;
  }
  return out;
}

nn::Mat element_onehot(int element_index) {
  nn::Mat out = nn::Mat::Zero(1, chem::kNumElements);
  out(0, element_index) = 1.0;
  return out;
}

nn::Mat order_onehot(int order_index) {
  nn::Mat out = nn::Mat::Zero(1, chem::kNumBondOrders);
  out(0, order_index) = 1.0;
  return out;
}

}  // namespace sggm::gnn
