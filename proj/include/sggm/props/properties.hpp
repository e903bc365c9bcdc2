//
// Project sggm - Copyright 2026 The sggm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SGGM_PROPS_PROPERTIES_HPP_
#define SGGM_PROPS_PROPERTIES_HPP_

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sggm/chem/mol_graph.hpp"

namespace sggm::props {

/// Standard atomic weights (IUPAC 2021, 5 significant digits) plus 1.008 per
/// implicit hydrogen.
double molecular_weight(const chem::MolGraph& g);

double heavy_atom_count(const chem::MolGraph& g);
/// Cyclomatic number |E| - |V| + #components.
double ring_count_value(const chem::MolGraph& g);
double heteroatom_count(const chem::MolGraph& g);

/// Sorted per-neighbor tokens "<bond char><element>", e.g. "-C-C=O".
std::string atom_neighbor_signature(const chem::MolGraph& g, int atom);

/// Additive atom-contribution scheme loaded from a file:
///   # comment
///   default,<value>
///   element,aromatic,neighbor-signature,H-count,value
/// with '*' wildcards for aromatic / signature / H-count. First matching entry
/// wins; unmatched atoms contribute the default.
class ContributionTable {
 public:
  struct Entry {
    std::string element;  // symbol or "*"
    int aromatic = -1;    // 0, 1, or -1 for '*'
    std::string signature;  // exact signature or "*"
    int hcount = -1;        // -1 for '*'
    double value = 0.0;
  };

  static ContributionTable load(const std::string& path);
  static ContributionTable parse(std::istream& in, const std::string& origin);

  double evaluate(const chem::MolGraph& g) const;

  double default_value = 0.0;
  std::vector<Entry> entries;
};

/// Named property calculators. Builtins: mw, heavy_atoms, rings, heteroatoms.
/// "name@file" loads a contribution table (e.g. "tpsa@tables/tpsa.csv").
class PropertySet {
 public:
  static PropertySet from_names(const std::vector<std::string>& names);

  Eigen::VectorXd compute(const chem::MolGraph& g) const;
  const std::vector<std::string>& names() const { return names_; }
  int count() const { return static_cast<int>(names_.size()); }

 private:
  std::vector<std::string> names_;
  std::vector<std::function<double(const chem::MolGraph&)>> fns_;
};

}  // namespace sggm::props

#endif  // SGGM_PROPS_PROPERTIES_HPP_
