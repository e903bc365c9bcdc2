//
// Project sggm - Copyright 2026 The sggm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "sggm/chem/scaffold.hpp"

#include <stdexcept>

#include "sggm/chem/stereo.hpp"

namespace sggm::chem {

MolGraph extract_scaffold(const MolGraph& g, std::vector<int>* atom_map) {
  const int n = g.atom_count();
  const auto in_ring = ring_atom_mask(g);
  std::vector<bool> keep(n, true);

  bool changed = true;
  while (changed) {
    changed = false;
    for (int a = 0; a < n; ++a) {
      if (!keep[a] || in_ring[a]) continue;
      int kept_degree = 0;
      bool retained_by_double = false;
      for (const auto& e : g.adjacency(a)) {
        if (!keep[e.neighbor]) continue;
        ++kept_degree;
        if (g.bond(e.bond).order == BondOrder::Double && in_ring[e.neighbor])
          retained_by_double = true;
      }
      if (kept_degree <= 1 && !retained_by_double) {
        keep[a] = false;
        changed = true;
      }
    }
  }

  MolGraph s;
  std::vector<int> new_index(n, -1);
  if (atom_map) atom_map->clear();
  for (int a = 0; a < n; ++a) {
    if (!keep[a]) continue;
    new_index[a] = s.add_atom(g.atom(a));
    if (atom_map) atom_map->push_back(a);
  }
  for (const Bond& b : g.bonds()) {
    if (keep[b.u] && keep[b.v])
      s.add_bond(new_index[b.u], new_index[b.v], b.order, b.stereo);
  }
  recompute_implicit_hydrogens(s);
  if (!s.empty()) drop_invalid_stereo(s);
  return s;
}

bool is_supergraph(const MolGraph& g, const MolGraph& s,
                   const std::vector<int>& node_map) {
  if (static_cast<int>(node_map.size()) != s.atom_count())
    throw std::out_of_range("is_supergraph: node_map size mismatch");
  std::vector<bool> used(g.atom_count(), false);
  for (int i = 0; i < s.atom_count(); ++i) {
    const int t = node_map[i];
    if (t < 0 || t >= g.atom_count())
      throw std::out_of_range("is_supergraph: node_map index out of range");
    if (used[t]) return false;
    used[t] = true;
    if (g.atom(t).element != s.atom(i).element) return false;
  }
  for (const Bond& b : s.bonds()) {
    const int bond = g.find_bond(node_map[b.u], node_map[b.v]);
    if (bond < 0 || g.bond(bond).order != b.order) return false;
  }
  return true;
}

}  // namespace sggm::chem
