//
// Project sggm - Copyright 2026 The sggm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "sggm/chem/canonical.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace sggm::chem {

namespace {

using Sig = std::vector<std::int64_t>;

// Dense ids 0..k-1 in lexicographic signature order.
std::vector<int> assign_dense(const std::vector<Sig>& sigs) {
  const int n = static_cast<int>(sigs.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return sigs[a] < sigs[b]; });
  std::vector<int> colors(n, 0);
  int c = 0;
  for (int i = 0; i < n; ++i) {
    if (i > 0 && sigs[order[i]] != sigs[order[i - 1]]) ++c;
    colors[order[i]] = c;
  }
  return colors;
}

int class_count(const std::vector<int>& colors) {
  if (colors.empty()) return 0;
  return *std::max_element(colors.begin(), colors.end()) + 1;
}

std::vector<int> refine(const MolGraph& g, std::vector<int> colors, bool use_stereo) {
  const int n = g.atom_count();
  int classes = class_count(colors);
  while (true) {
    std::vector<Sig> sigs(n);
    for (int v = 0; v < n; ++v) {
      Sig neigh;
      for (const auto& e : g.adjacency(v)) {
        const Bond& b = g.bond(e.bond);
        std::int64_t key = static_cast<std::int64_t>(b.order);
        if (use_stereo) key = key * 8 + static_cast<std::int64_t>(b.stereo);
        neigh.push_back(key * (n + 1) + colors[e.neighbor]);
      }
      std::sort(neigh.begin(), neigh.end());
      sigs[v].push_back(colors[v]);
      sigs[v].insert(sigs[v].end(), neigh.begin(), neigh.end());
    }
    std::vector<int> next = assign_dense(sigs);
    const int nc = class_count(next);
    if (nc == classes) return next;
    classes = nc;
    colors = std::move(next);
  }
}

std::vector<int> initial_colors(const MolGraph& g, bool use_stereo) {
  const int n = g.atom_count();
  std::vector<Sig> sigs(n);
  for (int v = 0; v < n; ++v) {
    const Atom& a = g.atom(v);
    sigs[v] = {static_cast<std::int64_t>(a.element), a.charge, a.hcount,
               g.degree(v)};
    if (use_stereo) sigs[v].push_back(static_cast<std::int64_t>(a.chirality));
  }
  return assign_dense(sigs);
}

void put_u16(std::string& out, unsigned v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
}

std::string serialize(const MolGraph& g, const std::vector<int>& colors) {
  const int n = g.atom_count();
  std::string out;
  out.reserve(8 + 4 * n + 6 * g.bond_count());
  put_u16(out, static_cast<unsigned>(n));
  put_u16(out, static_cast<unsigned>(g.bond_count()));
  std::vector<int> atom_of_color(n);
  for (int v = 0; v < n; ++v) atom_of_color[colors[v]] = v;
  for (int c = 0; c < n; ++c) {
    const Atom& a = g.atom(atom_of_color[c]);
    out.push_back(static_cast<char>(a.element));
    out.push_back(static_cast<char>(a.charge + 0x40));
    out.push_back(static_cast<char>(a.chirality));
    out.push_back(static_cast<char>(a.hcount));
  }
  std::vector<std::array<unsigned, 4>> edges;
  edges.reserve(g.bond_count());
  for (const Bond& b : g.bonds()) {
    const unsigned cu = static_cast<unsigned>(colors[b.u]);
    const unsigned cv = static_cast<unsigned>(colors[b.v]);
    edges.push_back({std::min(cu, cv), std::max(cu, cv),
                     static_cast<unsigned>(b.order),
                     static_cast<unsigned>(b.stereo)});
  }
  std::sort(edges.begin(), edges.end());
  for (const auto& e : edges) {
    put_u16(out, e[0]);
    put_u16(out, e[1]);
    out.push_back(static_cast<char>(e[2]));
    out.push_back(static_cast<char>(e[3]));
  }
  return out;
}

std::string canon_rec(const MolGraph& g, const std::vector<int>& colors, int& budget) {
  if (--budget < 0)
    throw std::runtime_error("canonical_code: symmetry budget exceeded");
  const int n = g.atom_count();
  const int classes = class_count(colors);
  if (classes == n) return serialize(g, colors);

  // First non-singleton class by color value.
  std::vector<int> size_of(classes, 0);
  for (int c : colors) ++size_of[c];
  int target = 0;
  while (size_of[target] < 2) ++target;

  std::string best;
  for (int v = 0; v < n; ++v) {
    if (colors[v] != target) continue;
    std::vector<int> split(n);
    for (int u = 0; u < n; ++u) split[u] = 2 * colors[u] + 1;
    split[v] -= 1;  // v now precedes the rest of its class
    std::string s = canon_rec(g, refine(g, std::move(split), true), budget);
    if (best.empty() || s < best) best = std::move(s);
  }
  return best;
}

}  // namespace

std::vector<int> achiral_ranks(const MolGraph& g) {
  if (g.empty()) return {};
  return refine(g, initial_colors(g, false), false);
}

CanonicalCode canonical_code(const MolGraph& g) {
  if (g.empty()) return CanonicalCode("\x00\x00\x00\x00", 4);
  int budget = 100000;
  return canon_rec(g, refine(g, initial_colors(g, true), true), budget);
}

std::string code_to_hex(const CanonicalCode& code) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(code.size() * 2);
  for (unsigned char c : code) {
    out.push_back(digits[c >> 4]);
    out.push_back(digits[c & 0xf]);
  }
  return out;
}

}  // namespace sggm::chem
