//
// Project sggm - Copyright 2026 The sggm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "sggm/chem/mol_graph.hpp"

#include <algorithm>
#include <array>
#include <queue>
#include <utility>

namespace sggm::chem {

int MolGraph::add_bond(int u, int v, BondOrder order, BondStereo stereo) {
  if (u < 0 || v < 0 || u >= atom_count() || v >= atom_count())
    throw std::invalid_argument("add_bond: endpoint out of range");
  if (u == v) throw std::invalid_argument("add_bond: self-loop");
  if (has_bond(u, v)) throw std::invalid_argument("add_bond: duplicate bond");
  Bond b;
  b.u = std::min(u, v);
  b.v = std::max(u, v);
  b.order = order;
  b.stereo = stereo;
  bonds_.push_back(b);
  const int idx = static_cast<int>(bonds_.size()) - 1;
  adj_[u].push_back({v, idx});
  adj_[v].push_back({u, idx});
  return idx;
}

int MolGraph::find_bond(int u, int v) const {
  if (u < 0 || v < 0 || u >= atom_count() || v >= atom_count()) return -1;
  const auto& a = adj_[u];
  for (const auto& e : a)
    if (e.neighbor == v) return e.bond;
  return -1;
}

namespace {

constexpr std::array<std::string_view, kNumElements> kSymbols = {
    "C", "N", "O", "F", "P", "S", "Cl", "Br"};

constexpr std::array<int, kNumElements> kMaxValence = {4, 3, 2, 1, 5, 6, 1, 1};

constexpr std::array<double, kNumElements> kWeights = {
    12.011, 14.007, 15.999, 18.998, 30.974, 32.060, 35.450, 79.904};

}  // namespace

std::string_view element_symbol(Element e) {
  return kSymbols[static_cast<int>(e)];
}

std::optional<Element> element_from_symbol(std::string_view s) {
  for (int i = 0; i < kNumElements; ++i)
    if (kSymbols[i] == s) return static_cast<Element>(i);
  return std::nullopt;
}

int max_valence(Element e) { return kMaxValence[static_cast<int>(e)]; }

int effective_max_valence(Element e, int charge) {
  // Charged N/O/P/S shift their bonding capacity with the charge sign
  // (N+ binds 4, O- binds 1); carbocations/anions and charged halogens
  // only ever lose capacity.
  switch (e) {
    case Element::N:
    case Element::O:
    case Element::P:
    case Element::S:
      return std::max(0, max_valence(e) + charge);
    default:
      return std::max(0, max_valence(e) - std::abs(charge));
  }
}

int default_valence_fill(Element e, int bond_sum) {
  switch (e) {
    case Element::S:
      for (int v : {2, 4, 6})
        if (bond_sum <= v) return v;
      return -1;
    case Element::P:
      for (int v : {3, 5})
        if (bond_sum <= v) return v;
      return -1;
    default: {
      const int v = max_valence(e);
      return bond_sum <= v ? v : -1;
    }
  }
}

double atomic_weight(Element e) { return kWeights[static_cast<int>(e)]; }

int bond_order_value(BondOrder o) { return static_cast<int>(o) + 1; }

int bond_order_sum(const MolGraph& g, int atom) {
  int s = 0;
  for (const auto& e : g.adjacency(atom)) s += bond_order_value(g.bond(e.bond).order);
  return s;
}

int connected_component_count(const MolGraph& g) {
  const int n = g.atom_count();
  std::vector<bool> seen(n, false);
  int comps = 0;
  for (int start = 0; start < n; ++start) {
    if (seen[start]) continue;
    ++comps;
    std::queue<int> q;
    q.push(start);
    seen[start] = true;
    while (!q.empty()) {
      int a = q.front();
      q.pop();
      for (const auto& e : g.adjacency(a)) {
        if (!seen[e.neighbor]) {
          seen[e.neighbor] = true;
          q.push(e.neighbor);
        }
      }
    }
  }
  return comps;
}

bool is_connected(const MolGraph& g) {
  if (g.empty()) return false;
  return connected_component_count(g) == 1;
}

bool check_validity(const MolGraph& g) {
  if (g.empty()) return false;
  for (int i = 0; i < g.atom_count(); ++i) {
    const Atom& a = g.atom(i);
    const int total = bond_order_sum(g, i) + a.hcount;
    if (total > effective_max_valence(a.element, a.charge)) return false;
  }
  return is_connected(g);
}

namespace {

// Tarjan bridge search, iterative to be safe on long chains.
void find_bridges(const MolGraph& g, std::vector<bool>& is_bridge) {
  const int n = g.atom_count();
  is_bridge.assign(g.bond_count(), false);
  std::vector<int> disc(n, -1), low(n, 0);
  int timer = 0;
  struct Frame {
    int atom;
    int parent_bond;
    size_t edge_pos;
  };
  for (int root = 0; root < n; ++root) {
    if (disc[root] >= 0) continue;
    std::vector<Frame> stack;
    stack.push_back({root, -1, 0});
    disc[root] = low[root] = timer++;
    while (!stack.empty()) {
      Frame& f = stack.back();
      const auto& adj = g.adjacency(f.atom);
      if (f.edge_pos < adj.size()) {
        const AdjEntry e = adj[f.edge_pos++];
        if (e.bond == f.parent_bond) continue;
        if (disc[e.neighbor] < 0) {
          disc[e.neighbor] = low[e.neighbor] = timer++;
          stack.push_back({e.neighbor, e.bond, 0});
        } else {
          low[f.atom] = std::min(low[f.atom], disc[e.neighbor]);
        }
      } else {
        stack.pop_back();
        if (!stack.empty()) {
          Frame& p = stack.back();
          low[p.atom] = std::min(low[p.atom], low[f.atom]);
          if (low[f.atom] > disc[p.atom]) is_bridge[f.parent_bond] = true;
        }
      }
    }
  }
}

}  // namespace

std::vector<bool> ring_bond_mask(const MolGraph& g) {
  std::vector<bool> is_bridge;
  find_bridges(g, is_bridge);
  std::vector<bool> ring(g.bond_count());
  for (int i = 0; i < g.bond_count(); ++i) ring[i] = !is_bridge[i];
  return ring;
}

std::vector<bool> ring_atom_mask(const MolGraph& g) {
  const auto ring_bonds = ring_bond_mask(g);
  std::vector<bool> mask(g.atom_count(), false);
  for (int i = 0; i < g.bond_count(); ++i) {
    if (ring_bonds[i]) {
      mask[g.bond(i).u] = true;
      mask[g.bond(i).v] = true;
    }
  }
  return mask;
}

int ring_count(const MolGraph& g) {
  return g.bond_count() - g.atom_count() + connected_component_count(g);
}

void recompute_implicit_hydrogens(MolGraph& g) {
  for (int i = 0; i < g.atom_count(); ++i) {
    Atom& a = g.atom(i);
    const int sum = bond_order_sum(g, i);
    if (a.charge == 0) {
      const int fill = default_valence_fill(a.element, sum);
      a.hcount = static_cast<std::uint8_t>(fill < 0 ? 0 : fill - sum);
    } else {
      const int cap = effective_max_valence(a.element, a.charge);
      a.hcount = static_cast<std::uint8_t>(std::max(0, cap - sum));
    }
  }
}

}  // namespace sggm::chem
