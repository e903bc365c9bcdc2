//
// Project sggm - Copyright 2026 The sggm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SGGM_CHEM_SCAFFOLD_HPP_
#define SGGM_CHEM_SCAFFOLD_HPP_

#include <vector>

#include "sggm/chem/mol_graph.hpp"

namespace sggm::chem {

/// Bemis-Murcko scaffold: repeatedly delete terminal atoms that are not in any
/// ring, keeping exocyclic atoms double-bonded to a ring atom. Acyclic inputs
/// yield the empty graph. Implicit hydrogens are recomputed and stereo tags
/// that lost their candidacy are dropped. When `atom_map` is given it receives
/// the original index of each scaffold atom (scaffold order preserves input
/// order).
MolGraph extract_scaffold(const MolGraph& g, std::vector<int>* atom_map = nullptr);

/// True iff mapped atoms have equal elements and every bond of `s` maps to a
/// bond of `g` with equal order. `node_map[i]` is the g-atom for s-atom i;
/// throws std::out_of_range on invalid indices.
bool is_supergraph(const MolGraph& g, const MolGraph& s,
                   const std::vector<int>& node_map);

}  // namespace sggm::chem

#endif  // SGGM_CHEM_SCAFFOLD_HPP_
