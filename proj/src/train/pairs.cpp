//
// Project sggm - Copyright 2026 The sggm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "sggm/train/pairs.hpp"

#include <algorithm>
#include <set>
#include <utility>

namespace sggm::train {

namespace {

// Scaffold atoms first (in extraction order), remaining atoms in input order.
chem::MolGraph reorder_scaffold_first(const chem::MolGraph& g,
                                      const std::vector<int>& scaffold_map) {
  const int n = g.atom_count();
  std::vector<int> new_of_old(n, -1);
  int next = 0;
  for (int old : scaffold_map) new_of_old[old] = next++;
  for (int old = 0; old < n; ++old)
    if (new_of_old[old] < 0) new_of_old[old] = next++;

  chem::MolGraph out;
  std::vector<int> old_of_new(n);
  for (int old = 0; old < n; ++old) old_of_new[new_of_old[old]] = old;
  for (int i = 0; i < n; ++i) out.add_atom(g.atom(old_of_new[i]));
  // Bonds sorted by (max endpoint, min endpoint) in the new order so edge
  // insertion matches the build sequence.
  std::vector<std::array<int, 3>> bonds;
  for (int b = 0; b < g.bond_count(); ++b) {
    const chem::Bond& bd = g.bond(b);
    const int u = new_of_old[bd.u], v = new_of_old[bd.v];
    bonds.push_back({std::max(u, v), std::min(u, v), b});
  }
  std::sort(bonds.begin(), bonds.end());
  for (const auto& [hi, lo, b] : bonds)
    out.add_bond(lo, hi, g.bond(b).order, g.bond(b).stereo);
  return out;
}

void neutralize_added_atoms(chem::MolGraph& g, int scaffold_size) {
  for (int i = scaffold_size; i < g.atom_count(); ++i) {
    g.atom(i).charge = 0;
    g.atom(i).aromatic = false;
  }
  chem::recompute_implicit_hydrogens(g);
}

bool isomer_matches_tags(const chem::MolGraph& iso, const chem::MolGraph& ref) {
  for (int i = 0; i < ref.atom_count(); ++i) {
    if (ref.atom(i).chirality != chem::Chirality::None &&
        iso.atom(i).chirality != ref.atom(i).chirality)
      return false;
  }
  for (int b = 0; b < ref.bond_count(); ++b) {
    if (ref.bond(b).stereo == chem::BondStereo::None) continue;
    const int ib = iso.find_bond(ref.bond(b).u, ref.bond(b).v);
    if (ib < 0 || iso.bond(ib).stereo != ref.bond(b).stereo) return false;
  }
  return true;
}

}  // namespace

gen::TrueTrace derive_trace(const chem::MolGraph& target, int scaffold_size) {
  gen::TrueTrace trace;
  for (int w = scaffold_size; w < target.atom_count(); ++w) {
    trace.push_back({gen::ActionKind::AddNode,
                     static_cast<int>(target.atom(w).element)});
    std::vector<std::pair<int, int>> earlier;  // (partner, order index)
    for (const auto& e : target.adjacency(w))
      if (e.neighbor < w)
        earlier.emplace_back(e.neighbor,
                             static_cast<int>(target.bond(e.bond).order));
    std::sort(earlier.begin(), earlier.end());
    for (const auto& [partner, order] : earlier) {
      trace.push_back({gen::ActionKind::AddEdge, order});
      trace.push_back({gen::ActionKind::SelectNode, partner});
    }
    trace.push_back({gen::ActionKind::AddEdge, gen::kAddEdgeStop});
  }
  trace.push_back({gen::ActionKind::AddNode, gen::kAddNodeStop});
  return trace;
}

PairDataset make_pairs(const std::vector<chem::MolGraph>& molecules,
                       const props::PropertySet& properties) {
  PairDataset ds;
  std::set<std::pair<chem::CanonicalCode, chem::CanonicalCode>> seen;

  for (std::size_t idx = 0; idx < molecules.size(); ++idx) {
    const chem::MolGraph& g = molecules[idx];
    std::vector<int> scaffold_map;
    chem::MolGraph scaffold_raw = extract_scaffold(g, &scaffold_map);
    if (scaffold_raw.empty()) {
      ++ds.dropped_acyclic;
      continue;
    }

    Pair pair;
    pair.full = reorder_scaffold_first(g, scaffold_map);
    pair.build_target = chem::strip_stereo(pair.full);
    neutralize_added_atoms(pair.build_target, scaffold_raw.atom_count());

    // Scaffold = untagged prefix of the build target.
    chem::MolGraph s;
    for (int i = 0; i < scaffold_raw.atom_count(); ++i)
      s.add_atom(pair.build_target.atom(i));
    for (const chem::Bond& b : pair.build_target.bonds())
      if (b.u < scaffold_raw.atom_count() && b.v < scaffold_raw.atom_count())
        s.add_bond(b.u, b.v, b.order);
    chem::recompute_implicit_hydrogens(s);
    pair.scaffold = std::move(s);

    auto key = std::make_pair(canonical_code(pair.scaffold),
                              canonical_code(pair.full));
    if (!seen.insert(std::move(key)).second) {
      ++ds.dropped_duplicates;
      continue;
    }

    pair.trace = derive_trace(pair.build_target, pair.scaffold.atom_count());
    pair.isomers = chem::enumerate_stereoisomers(pair.build_target);
    pair.isomer_flags.reserve(pair.isomers.size());
    for (const chem::MolGraph& iso : pair.isomers)
      pair.isomer_flags.push_back(isomer_matches_tags(iso, pair.full) ? 1.0 : 0.0);

    try {
      pair.y = properties.compute(pair.full);
      pair.y_scaffold = properties.compute(pair.scaffold);
    } catch (const std::exception& e) {
      ds.errors.push_back("molecule " + std::to_string(idx + 1) +
                          ": property computation failed: " + e.what());
      continue;
    }
    ds.pairs.push_back(std::move(pair));
  }
  return ds;
}

}  // namespace sggm::train
