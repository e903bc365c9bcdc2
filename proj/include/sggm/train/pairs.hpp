//
// Project sggm - Copyright 2026 The sggm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SGGM_TRAIN_PAIRS_HPP_
#define SGGM_TRAIN_PAIRS_HPP_

#include <string>
#include <vector>

#include "sggm/gen/builder.hpp"
#include "sggm/props/properties.hpp"

namespace sggm::train {

/// One (scaffold, whole-molecule) training pair. `full` keeps the annotated
/// molecule for the encoder; `build_target` reorders atoms scaffold-first,
/// drops stereo and (off-scaffold) charges so a basic-family trace can replay
/// it exactly.
struct Pair {
  chem::MolGraph full;
  chem::MolGraph build_target;
  chem::MolGraph scaffold;
  gen::TrueTrace trace;
  std::vector<chem::MolGraph> isomers;
  std::vector<double> isomer_flags;  // 1.0 iff consistent with `full`'s tags
  Eigen::VectorXd y, y_scaffold;
};

struct PairDataset {
  std::vector<Pair> pairs;
  int dropped_acyclic = 0;
  int dropped_duplicates = 0;
  std::vector<std::string> errors;
};

/// Scaffold extraction + trace derivation + isomer supervision + property
/// vectors. Acyclic molecules are dropped with a count; (S, G) pairs are
/// deduplicated by canonical code.
PairDataset make_pairs(const std::vector<chem::MolGraph>& molecules,
                       const props::PropertySet& properties);

/// True action sequence: for each non-scaffold atom (ascending), AddNode, then
/// AddEdge+SelectNode for each lower-index neighbor (ascending), AddEdge-STOP;
/// one final AddNode-STOP.
gen::TrueTrace derive_trace(const chem::MolGraph& target, int scaffold_size);

}  // namespace sggm::train

#endif  // SGGM_TRAIN_PAIRS_HPP_
