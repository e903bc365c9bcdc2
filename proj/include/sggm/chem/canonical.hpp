//
// Project sggm - Copyright 2026 The sggm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SGGM_CHEM_CANONICAL_HPP_
#define SGGM_CHEM_CANONICAL_HPP_

#include <string>
#include <vector>

#include "sggm/chem/mol_graph.hpp"

namespace sggm::chem {

/// Byte string identifying a MolGraph up to atom-index permutation.
/// Incorporates element, charge, chirality, implicit-H count, bond order and
/// bond stereo; the aromatic flag is perception-level and excluded.
using CanonicalCode = std::string;

/// Morgan-style refinement ranks computed without stereo tags and without
/// individualization. Equal ranks mark possibly-equivalent atoms; stereo
/// perception treats neighbors with tied ranks as indistinguishable.
std::vector<int> achiral_ranks(const MolGraph& g);

/// Permutation-invariant code via iterative refinement plus deterministic
/// trial individualization over the first non-singleton class.
CanonicalCode canonical_code(const MolGraph& g);

std::string code_to_hex(const CanonicalCode& code);

}  // namespace sggm::chem

#endif  // SGGM_CHEM_CANONICAL_HPP_
