//
// Project sggm - Copyright 2026 The sggm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "sggm/props/properties.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sggm::props {

double molecular_weight(const chem::MolGraph& g) {
  double w = 0.0;
  for (const chem::Atom& a : g.atoms())
    w += chem::atomic_weight(a.element) + chem::kHydrogenWeight * a.hcount;
  return w;
}

double heavy_atom_count(const chem::MolGraph& g) {
  return static_cast<double>(g.atom_count());
}

double ring_count_value(const chem::MolGraph& g) {
  if (g.empty()) return 0.0;
  return static_cast<double>(chem::ring_count(g));
}

double heteroatom_count(const chem::MolGraph& g) {
  int n = 0;
  for (const chem::Atom& a : g.atoms())
    if (a.element != chem::Element::C) ++n;
  return static_cast<double>(n);
}

std::string atom_neighbor_signature(const chem::MolGraph& g, int atom) {
  std::vector<std::string> tokens;
  for (const auto& e : g.adjacency(atom)) {
    const char bond_char =
        g.bond(e.bond).order == chem::BondOrder::Single   ? '-'
        : g.bond(e.bond).order == chem::BondOrder::Double ? '='
                                                          : '#';
    tokens.push_back(std::string(1, bond_char) +
                     std::string(chem::element_symbol(g.atom(e.neighbor).element)));
  }
  std::sort(tokens.begin(), tokens.end());
  std::string out;
  for (const auto& t : tokens) out += t;
  return out;
}

ContributionTable ContributionTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("contribution table: cannot open " + path);
  return parse(in, path);
}

ContributionTable ContributionTable::parse(std::istream& in,
                                           const std::string& origin) {
  ContributionTable table;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string col;
    while (std::getline(ss, col, ',')) cols.push_back(col);
    const auto bad = [&](const std::string& why) {
      return std::runtime_error("contribution table " + origin + " line " +
                                std::to_string(line_no) + ": " + why);
    };
    if (cols.size() == 2 && cols[0] == "default") {
      try {
        table.default_value = std::stod(cols[1]);
      } catch (...) {
        throw bad("bad default value");
      }
      continue;
    }
    if (cols.size() != 5) throw bad("expected 5 columns");
    Entry e;
    e.element = cols[0];
    if (e.element != "*" && !chem::element_from_symbol(e.element))
      throw bad("unknown element " + cols[0]);
    if (cols[1] == "*")
      e.aromatic = -1;
    else if (cols[1] == "0" || cols[1] == "1")
      e.aromatic = cols[1][0] - '0';
    else
      throw bad("aromatic must be 0, 1, or *");
    e.signature = cols[2];
    if (cols[3] == "*")
      e.hcount = -1;
    else {
      try {
        e.hcount = std::stoi(cols[3]);
      } catch (...) {
        throw bad("bad H-count");
      }
    }
    try {
      e.value = std::stod(cols[4]);
    } catch (...) {
      throw bad("bad value");
    }
    table.entries.push_back(std::move(e));
  }
  return table;
}

double ContributionTable::evaluate(const chem::MolGraph& g) const {
  double total = 0.0;
  for (int i = 0; i < g.atom_count(); ++i) {
    const chem::Atom& a = g.atom(i);
    bool matched = false;
    for (const Entry& e : entries) {
      if (e.element != "*" &&
          *chem::element_from_symbol(e.element) != a.element)
        continue;
      if (e.aromatic >= 0 && (a.aromatic ? 1 : 0) != e.aromatic) continue;
      if (e.hcount >= 0 && a.hcount != e.hcount) continue;
      if (e.signature != "*" && atom_neighbor_signature(g, i) != e.signature)
        continue;
      total += e.value;
      matched = true;
      break;
    }
    if (!matched) total += default_value;
  }
  return total;
}

PropertySet PropertySet::from_names(const std::vector<std::string>& names) {
  PropertySet set;
  for (const std::string& name : names) {
    set.names_.push_back(name);
    if (name == "mw") {
      set.fns_.emplace_back(&molecular_weight);
    } else if (name == "heavy_atoms") {
      set.fns_.emplace_back(&heavy_atom_count);
    } else if (name == "rings") {
      set.fns_.emplace_back(&ring_count_value);
    } else if (name == "heteroatoms") {
      set.fns_.emplace_back(&heteroatom_count);
    } else if (const auto at = name.find('@'); at != std::string::npos) {
      auto table = std::make_shared<ContributionTable>(
          ContributionTable::load(name.substr(at + 1)));
      set.names_.back() = name.substr(0, at);
      set.fns_.emplace_back(
          [table](const chem::MolGraph& g) { return table->evaluate(g); });
    } else {
      throw std::invalid_argument("unknown property: " + name);
    }
  }
  return set;
}

Eigen::VectorXd PropertySet::compute(const chem::MolGraph& g) const {
  Eigen::VectorXd out(static_cast<Eigen::Index>(fns_.size()));
  for (std::size_t i = 0; i < fns_.size(); ++i)
    out[static_cast<Eigen::Index>(i)] = fns_[i](g);
  return out;
}

}  // namespace sggm::props
