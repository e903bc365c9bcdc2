//
// Project sggm - Copyright 2026 The sggm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SGGM_PROPS_METRICS_HPP_
#define SGGM_PROPS_METRICS_HPP_

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sggm/chem/canonical.hpp"
#include "sggm/nn/rng.hpp"
#include "sggm/props/properties.hpp"

namespace sggm::props {

struct MetricsReport {
  long long generated = 0;
  long long valid = 0;
  long long unique_graphs = 0;
  long long novel = 0;
  std::optional<double> validity, uniqueness, novelty;
  /// Per-property mean absolute difference over valid molecules.
  std::vector<std::pair<std::string, std::optional<double>>> mad;

  std::string to_text() const;
  std::string to_csv() const;
};

/// validity = valid/generated; uniqueness = distinct codes among valid /
/// valid; novelty = unique codes not in training / unique codes. MAD is
/// computed per property against each molecule's own target (skipped when
/// `targets` is empty). Empty denominators yield unset optionals. Codes
/// include stereo tags unless `ignore_stereo`.
MetricsReport evaluate(const std::vector<chem::MolGraph>& generated,
                       const std::set<chem::CanonicalCode>& training_codes,
                       const std::vector<Eigen::VectorXd>& targets,
                       const PropertySet& properties,
                       bool ignore_stereo = false);

struct ScaffoldSplit {
  std::vector<chem::MolGraph> seen;
  std::vector<chem::MolGraph> unseen;
  std::set<chem::CanonicalCode> unseen_codes;
};

/// Partitions the corpus's distinct nonempty scaffolds: `n_unseen` classes are
/// held out of training, `n_seen` drawn from the remainder; disjoint by
/// canonical code. Throws when there are not enough distinct scaffolds.
ScaffoldSplit scaffold_split(const std::vector<chem::MolGraph>& molecules,
                             int n_seen, int n_unseen, nn::Rng& rng);

/// Generations whose MW target falls below the scaffold's own weight are
/// unnatural and get filtered; the boundary itself passes.
bool mw_target_filter(const chem::MolGraph& scaffold, double target_mw);

}  // namespace sggm::props

#endif  // SGGM_PROPS_METRICS_HPP_
