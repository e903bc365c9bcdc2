//
// Project sggm - Copyright 2026 The sggm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SGGM_CHEM_STEREO_HPP_
#define SGGM_CHEM_STEREO_HPP_

#include <vector>

#include "sggm/chem/mol_graph.hpp"

namespace sggm::chem {

/// Tetrahedral stereocenter test by rank distinctness: four neighbor classes
/// (implicit H counts as one, at most one), all incident bonds single, and
/// all heavy-neighbor achiral ranks pairwise distinct. Ignores any tag the
/// atom already carries.
bool is_tetrahedral_candidate(const MolGraph& g, const std::vector<int>& ranks,
                              int atom);

/// Cis/trans candidate test: a non-ring double bond whose endpoints each have
/// two substituent classes of distinct rank (implicit H is its own class).
bool is_stereo_bond_candidate(const MolGraph& g, const std::vector<int>& ranks,
                              const std::vector<bool>& ring_bonds, int bond);

/// For endpoint `u` of double bond (u, partner): the substituent of highest
/// achiral rank. Returns the atom index, -1 if the implicit hydrogen is the
/// only other substituent... (H always ranks lowest), or -2 on a rank tie.
int higher_ranked_substituent(const MolGraph& g, const std::vector<int>& ranks,
                              int u, int partner);

/// All assignments of {R,S} to untagged candidate centers and {cis,trans} to
/// untagged candidate double bonds; already-tagged elements keep their tags.
/// Capped at 32 entries in enumeration order (atom candidates by index first,
/// then bond candidates; bit 0 of the enumeration counter drives the first
/// candidate, 0 -> R/cis). Returns {g} when there are no candidates.
std::vector<MolGraph> enumerate_stereoisomers(const MolGraph& g);

MolGraph strip_stereo(const MolGraph& g);
bool has_stereo(const MolGraph& g);

/// Clear tags that no longer sit on valid candidates (used after scaffold
/// extraction removes substituents).
void drop_invalid_stereo(MolGraph& g);

}  // namespace sggm::chem

#endif  // SGGM_CHEM_STEREO_HPP_
