//
// Project sggm - Copyright 2026 The sggm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SGGM_CHEM_MOL_GRAPH_HPP_
#define SGGM_CHEM_MOL_GRAPH_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sggm::chem {

/// Basic atom family A = (C, N, O, F, P, S, Cl, Br); indices are stable and
/// define the decoder's action space.
enum class Element : std::uint8_t { C = 0, N, O, F, P, S, Cl, Br };
inline constexpr int kNumElements = 8;

/// Basic bond family B = (single, double, triple); indices stable.
enum class BondOrder : std::uint8_t { Single = 0, Double, Triple };
inline constexpr int kNumBondOrders = 3;

/// Tetrahedral tag. R/S here are rank-parity classes derived from achiral
/// canonical ranks, not CIP assignments (see canonical.hpp).
enum class Chirality : std::uint8_t { None = 0, R, S };
inline constexpr int kNumChirality = 3;

/// Double-bond configuration tag. The pipeline produces Cis/Trans (rank-based);
/// E/Z are representable for completeness of the extended family.
enum class BondStereo : std::uint8_t { None = 0, E, Z, Cis, Trans };
inline constexpr int kNumBondStereo = 5;

struct Atom {
  Element element = Element::C;
  Chirality chirality = Chirality::None;
  std::int8_t charge = 0;
  bool aromatic = false;
  std::uint8_t hcount = 0;  // implicit hydrogens, never explicit nodes
};

struct Bond {
  int u = -1;  // endpoint indices, u < v
  int v = -1;
  BondOrder order = BondOrder::Single;
  BondStereo stereo = BondStereo::None;
};

struct AdjEntry {
  int neighbor;
  int bond;
};

/// Undirected simple molecular graph with H-suppressed atoms.
class MolGraph {
 public:
  int add_atom(const Atom& a) {
    atoms_.push_back(a);
    adj_.emplace_back();
    return static_cast<int>(atoms_.size()) - 1;
  }

  /// Throws std::invalid_argument on self-loops, duplicate bonds, or
  /// out-of-range endpoints.
  int add_bond(int u, int v, BondOrder order, BondStereo stereo = BondStereo::None);

  int atom_count() const { return static_cast<int>(atoms_.size()); }
  int bond_count() const { return static_cast<int>(bonds_.size()); }
  bool empty() const { return atoms_.empty(); }

  Atom& atom(int i) { return atoms_.at(i); }
  const Atom& atom(int i) const { return atoms_.at(i); }
  Bond& bond(int i) { return bonds_.at(i); }
  const Bond& bond(int i) const { return bonds_.at(i); }

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<Bond>& bonds() const { return bonds_; }

  /// Neighbors of an atom in bond-insertion order.
  const std::vector<AdjEntry>& adjacency(int i) const { return adj_.at(i); }
  int degree(int i) const { return static_cast<int>(adj_.at(i).size()); }

  /// Index of the bond joining u and v, or -1.
  int find_bond(int u, int v) const;
  bool has_bond(int u, int v) const { return find_bond(u, v) >= 0; }

 private:
  std::vector<Atom> atoms_;
  std::vector<Bond> bonds_;
  std::vector<std::vector<AdjEntry>> adj_;
};

std::string_view element_symbol(Element e);
std::optional<Element> element_from_symbol(std::string_view s);

/// Maximum valence used by check_validity: C4 N3 O2 F1 P5 S6 Cl1 Br1.
int max_valence(Element e);

/// Maximum valence adjusted for formal charge (N+ binds 4, O- binds 1, ...).
int effective_max_valence(Element e, int charge);

/// Lowest default valence >= bond_sum for implicit-H filling (S: 2,4,6;
/// P: 3,5; others: single value). Returns -1 if bond_sum exceeds them all.
int default_valence_fill(Element e, int bond_sum);

double atomic_weight(Element e);
inline constexpr double kHydrogenWeight = 1.008;

int bond_order_value(BondOrder o);
int bond_order_sum(const MolGraph& g, int atom);

bool is_connected(const MolGraph& g);

/// True iff every atom's bond-order sum plus implicit H count is within its
/// charge-adjusted maximum valence and the graph is connected. Total function;
/// the empty graph is not a molecule and yields false.
bool check_validity(const MolGraph& g);

/// Bonds lying on some cycle (non-bridges).
std::vector<bool> ring_bond_mask(const MolGraph& g);
/// Atoms incident to at least one ring bond.
std::vector<bool> ring_atom_mask(const MolGraph& g);

/// Cyclomatic number |E| - |V| + #components.
int ring_count(const MolGraph& g);

int connected_component_count(const MolGraph& g);

/// Refill hcount on every atom from its bond-order sum and charge.
void recompute_implicit_hydrogens(MolGraph& g);

}  // namespace sggm::chem

#endif  // SGGM_CHEM_MOL_GRAPH_HPP_
