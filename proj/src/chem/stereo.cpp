//
// Project sggm - Copyright 2026 The sggm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "sggm/chem/stereo.hpp"

#include <algorithm>

#include "sggm/chem/canonical.hpp"

namespace sggm::chem {

bool is_tetrahedral_candidate(const MolGraph& g, const std::vector<int>& ranks,
                              int atom) {
  const Atom& a = g.atom(atom);
  if (a.hcount > 1) return false;
  const int deg = g.degree(atom);
  if (deg + a.hcount != 4) return false;
  std::vector<int> r;
  for (const auto& e : g.adjacency(atom)) {
    if (g.bond(e.bond).order != BondOrder::Single) return false;
    r.push_back(ranks[e.neighbor]);
  }
  std::sort(r.begin(), r.end());
  return std::adjacent_find(r.begin(), r.end()) == r.end();
}

namespace {

// Substituent classes of `u` other than `partner`: heavy neighbors plus the
// implicit H. Exactly two distinct-rank classes qualify for cis/trans.
bool endpoint_qualifies(const MolGraph& g, const std::vector<int>& ranks,
                        int u, int partner) {
  const Atom& a = g.atom(u);
  std::vector<int> r;
  for (const auto& e : g.adjacency(u))
    if (e.neighbor != partner) r.push_back(ranks[e.neighbor]);
  if (a.hcount >= 2) return false;
  if (a.hcount == 1) r.push_back(-1);
  return r.size() == 2 && r[0] != r[1];
}

}  // namespace

bool is_stereo_bond_candidate(const MolGraph& g, const std::vector<int>& ranks,
                              const std::vector<bool>& ring_bonds, int bond) {
  const Bond& b = g.bond(bond);
  if (b.order != BondOrder::Double || ring_bonds[bond]) return false;
  return endpoint_qualifies(g, ranks, b.u, b.v) &&
         endpoint_qualifies(g, ranks, b.v, b.u);
}

int higher_ranked_substituent(const MolGraph& g, const std::vector<int>& ranks,
                              int u, int partner) {
  int best_atom = -1;
  int best_rank = g.atom(u).hcount >= 1 ? -1 : std::numeric_limits<int>::min();
  bool tie = false;
  for (const auto& e : g.adjacency(u)) {
    if (e.neighbor == partner) continue;
    if (ranks[e.neighbor] > best_rank) {
      best_rank = ranks[e.neighbor];
      best_atom = e.neighbor;
      tie = false;
    } else if (ranks[e.neighbor] == best_rank) {
      tie = true;
    }
  }
  return tie ? -2 : best_atom;
}

std::vector<MolGraph> enumerate_stereoisomers(const MolGraph& g) {
  const auto ranks = achiral_ranks(g);
  const auto rings = ring_bond_mask(g);

  std::vector<int> atom_cands, bond_cands;
  for (int i = 0; i < g.atom_count(); ++i)
    if (g.atom(i).chirality == Chirality::None &&
        is_tetrahedral_candidate(g, ranks, i))
      atom_cands.push_back(i);
  for (int i = 0; i < g.bond_count(); ++i)
    if (g.bond(i).stereo == BondStereo::None &&
        is_stereo_bond_candidate(g, ranks, rings, i))
      bond_cands.push_back(i);

  const int m = static_cast<int>(atom_cands.size() + bond_cands.size());
  if (m == 0) return {g};

  const long long total = m >= 6 ? 32 : (1LL << m);
  std::vector<MolGraph> isomers;
  isomers.reserve(static_cast<size_t>(total));
  for (long long k = 0; k < total; ++k) {
    MolGraph iso = g;
    int j = 0;
    for (int a : atom_cands) {
      iso.atom(a).chirality = ((k >> j) & 1) ? Chirality::S : Chirality::R;
      ++j;
    }
    for (int b : bond_cands) {
      iso.bond(b).stereo = ((k >> j) & 1) ? BondStereo::Trans : BondStereo::Cis;
      ++j;
    }
    isomers.push_back(std::move(iso));
  }
  return isomers;
}

MolGraph strip_stereo(const MolGraph& g) {
  MolGraph out = g;
  for (int i = 0; i < out.atom_count(); ++i)
    out.atom(i).chirality = Chirality::None;
  for (int i = 0; i < out.bond_count(); ++i)
    out.bond(i).stereo = BondStereo::None;
  return out;
}

bool has_stereo(const MolGraph& g) {
  for (const Atom& a : g.atoms())
    if (a.chirality != Chirality::None) return true;
  for (const Bond& b : g.bonds())
    if (b.stereo != BondStereo::None) return true;
  return false;
}

void drop_invalid_stereo(MolGraph& g) {
  const auto ranks = achiral_ranks(g);
  const auto rings = ring_bond_mask(g);
  for (int i = 0; i < g.atom_count(); ++i)
    if (g.atom(i).chirality != Chirality::None &&
        !is_tetrahedral_candidate(g, ranks, i))
      g.atom(i).chirality = Chirality::None;
  for (int i = 0; i < g.bond_count(); ++i)
    if (g.bond(i).stereo != BondStereo::None &&
        !is_stereo_bond_candidate(g, ranks, rings, i))
      g.bond(i).stereo = BondStereo::None;
}

}  // namespace sggm::chem
