//
// Project sggm - Copyright 2026 The sggm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SGGM_CHEM_SMILES_HPP_
#define SGGM_CHEM_SMILES_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

#include "sggm/chem/mol_graph.hpp"

namespace sggm::chem {

class SmilesError : public std::runtime_error {
 public:
  SmilesError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Supported subset:
///   atoms     C N O F P S Cl Br, aromatic c n o s p
///   brackets  [symbol (@|@@)? (H digit?)? ((+|-) digits? | ++ | --)?]
///   bonds     - = # (default single), directional / and backslash
///   branches  ( ... ), ring closures 1-9 and %nn
/// Aromatic rings are kekulized into alternating single/double bonds; implicit
/// hydrogens come from default valences (bracket atoms take their explicit H
/// count); @/@@ and /\ markers become rank-canonical tags.
MolGraph parse_smiles(std::string_view text);

/// Kekulized, H-suppressed output. Re-parsing yields the same canonical code.
std::string write_smiles(const MolGraph& g);

}  // namespace sggm::chem

#endif  // SGGM_CHEM_SMILES_HPP_
