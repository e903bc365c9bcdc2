//
// Project sggm - Copyright 2026 The sggm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "sggm/props/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "sggm/chem/scaffold.hpp"
#include "sggm/chem/stereo.hpp"

namespace sggm::props {

namespace {

std::string ratio_text(const std::optional<double>& v) {
  if (!v) return "-";
  std::ostringstream ss;
  ss.precision(4);
  ss << std::fixed << *v;
  return ss.str();
}

std::string ratio_csv(const std::optional<double>& v) {
  return v ? ratio_text(v) : "nan";
}

}  // namespace

std::string MetricsReport::to_text() const {
  std::ostringstream ss;
  ss << "generated:  " << generated << "\n"
     << "valid:      " << valid << "  (validity " << ratio_text(validity) << ")\n"
     << "unique:     " << unique_graphs << "  (uniqueness " << ratio_text(uniqueness)
     << ")\n"
     << "novel:      " << novel << "  (novelty " << ratio_text(novelty) << ")\n";
  for (const auto& [name, value] : mad)
    ss << "MAD[" << name << "]: " << ratio_text(value) << "\n";
  return ss.str();
}

std::string MetricsReport::to_csv() const {
  std::ostringstream head, row;
  head << "generated,valid,unique,novel,validity,uniqueness,novelty";
  row << generated << ',' << valid << ',' << unique_graphs << ',' << novel << ','
      << ratio_csv(validity) << ',' << ratio_csv(uniqueness) << ','
      << ratio_csv(novelty);
  for (const auto& [name, value] : mad) {
    head << ",mad_" << name;
    row << ',' << ratio_csv(value);
  }
  return head.str() + "\n" + row.str() + "\n";
}

MetricsReport evaluate(const std::vector<chem::MolGraph>& generated,
                       const std::set<chem::CanonicalCode>& training_codes,
                       const std::vector<Eigen::VectorXd>& targets,
                       const PropertySet& properties, bool ignore_stereo) {
  if (!targets.empty() && targets.size() != generated.size())
    throw std::invalid_argument("evaluate: targets size mismatch");

  MetricsReport r;
  r.generated = static_cast<long long>(generated.size());

  std::set<chem::CanonicalCode> unique_codes;
  std::vector<double> abs_diff_sums(properties.count(), 0.0);
  long long valid_with_targets = 0;

  for (std::size_t i = 0; i < generated.size(); ++i) {
    const chem::MolGraph& g = generated[i];
    if (!chem::check_validity(g)) continue;
    ++r.valid;
    const chem::CanonicalCode code =
        canonical_code(ignore_stereo ? chem::strip_stereo(g) : g);
    unique_codes.insert(code);
    if (!targets.empty()) {
      ++valid_with_targets;
      const Eigen::VectorXd achieved = properties.compute(g);
      for (int p = 0; p < properties.count(); ++p)
        abs_diff_sums[p] += std::abs(achieved[p] - targets[i][p]);
    }
  }
  r.unique_graphs = static_cast<long long>(unique_codes.size());
  for (const auto& code : unique_codes)
    if (!training_codes.count(code)) ++r.novel;

  if (r.generated > 0)
    r.validity = static_cast<double>(r.valid) / static_cast<double>(r.generated);
  if (r.valid > 0)
    r.uniqueness =
        static_cast<double>(r.unique_graphs) / static_cast<double>(r.valid);
  if (r.unique_graphs > 0)
    r.novelty = static_cast<double>(r.novel) / static_cast<double>(r.unique_graphs);

  for (int p = 0; p < properties.count(); ++p) {
    std::optional<double> value;
    if (!targets.empty() && valid_with_targets > 0)
      value = abs_diff_sums[p] / static_cast<double>(valid_with_targets);
    r.mad.emplace_back(properties.names()[p], value);
  }
  return r;
}

ScaffoldSplit scaffold_split(const std::vector<chem::MolGraph>& molecules,
                             int n_seen, int n_unseen, nn::Rng& rng) {
  std::vector<chem::MolGraph> distinct;
  std::set<chem::CanonicalCode> seen_codes;
  for (const chem::MolGraph& g : molecules) {
    chem::MolGraph s = extract_scaffold(g);
    if (s.empty()) continue;
    chem::CanonicalCode code = canonical_code(s);
    if (seen_codes.insert(code).second) distinct.push_back(std::move(s));
  }
  if (static_cast<int>(distinct.size()) < n_seen + n_unseen)
    throw std::runtime_error("scaffold_split: insufficient distinct scaffolds (" +
                             std::to_string(distinct.size()) + " < " +
                             std::to_string(n_seen + n_unseen) + ")");

  // Fisher-Yates with the provided stream.
  for (std::size_t i = distinct.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.next_u64() % i);
    std::swap(distinct[i - 1], distinct[j]);
  }

  ScaffoldSplit split;
  for (int i = 0; i < n_unseen; ++i) {
    split.unseen_codes.insert(canonical_code(distinct[i]));
    split.unseen.push_back(std::move(distinct[i]));
  }
  for (int i = n_unseen; i < n_unseen + n_seen; ++i)
    split.seen.push_back(std::move(distinct[i]));
  return split;
}

bool mw_target_filter(const chem::MolGraph& scaffold, double target_mw) {
  return target_mw >= molecular_weight(scaffold);
}

}  // namespace sggm::props
