//
// Project sggm - Copyright 2026 The sggm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SGGM_GEN_BUILDER_HPP_
#define SGGM_GEN_BUILDER_HPP_

#include <vector>

#include "sggm/chem/scaffold.hpp"
#include "sggm/chem/stereo.hpp"
#include "sggm/gnn/encoder.hpp"

namespace sggm::gen {

inline constexpr int kAddNodeStop = chem::kNumElements;   // index 8 of 0..8
inline constexpr int kAddEdgeStop = chem::kNumBondOrders; // index 3 of 0..3

enum class ActionKind { AddNode, AddEdge, SelectNode, SelectIsomer };

enum class Policy { Sample, Greedy };

struct BuildAction {
  ActionKind kind;
  int chosen = -1;           // element / bond-order / atom / isomer index
  bool forced = false;       // cap- or mask-forced stop, no free choice
  Eigen::VectorXd probs;     // estimated probabilities (empty when no model call)
};

struct BuildTrace {
  std::vector<BuildAction> steps;
};

/// True-action step for teacher forcing.
struct TraceStep {
  ActionKind kind;
  int chosen;
};
using TrueTrace = std::vector<TraceStep>;

/// Graph under construction plus its tape-resident features. Scaffold atoms
/// occupy indices 0..scaffold_size-1 and are never modified; the last added
/// atom is always the highest index.
struct TransientGraph {
  chem::MolGraph graph;
  nn::Var node_feats;  // (N, hidden)
  nn::Var edge_feats;  // (E, hidden)
  gnn::DirectedEdges de;
  int scaffold_size = 0;
  int last_added = -1;
  int edges_before_last = 0;
};

struct SelectNodeProbs {
  nn::Var allowed_probs;       // (1, |allowed|) softmax over unmasked atoms
  std::vector<int> allowed;    // candidate atom indices, ascending
  Eigen::VectorXd full_probs;  // length N-1; zeros at masked positions
};

/// Stage machinery shared by generation and teacher-forced training. All
/// probability heads run k_build propagation rounds with their own parameters
/// conditioned on ztilde; only init_node/init_edge mutate the stored features.
class Builder {
 public:
  Builder(nn::Tape& t, const Model& m, const chem::MolGraph& scaffold,
          const Eigen::VectorXd& ytilde_norm, nn::Var ztilde);

  nn::Var add_node_probs();  // (1, 9)
  nn::Var add_edge_probs();  // (1, 4); requires last_added
  /// Throws std::runtime_error when every candidate is masked.
  SelectNodeProbs select_node_probs();

  void apply_add_node(int element_index);
  void apply_add_edge(int partner, int order_index);

  /// Atoms that selectNode may still connect to the last added atom.
  std::vector<int> selectable_atoms() const;

  const TransientGraph& state() const { return state_; }
  const chem::MolGraph& graph() const { return state_.graph; }

 private:
  nn::Var head(const gnn::PropagateStack& prop, const gnn::ReadoutParams& ro,
               const gnn::LinearParams& l0, const gnn::LinearParams& l1,
               const gnn::LinearParams& l2);

  nn::Tape& t_;
  const Model& m_;
  nn::Var ztilde_;
  TransientGraph state_;
};

struct BuildResult {
  chem::MolGraph graph;
  BuildTrace trace;
};

/// Runs the node/edge addition loop from the scaffold. Never enforces chemical
/// validity (beyond the structural duplicate-edge mask) unless `valence_mask`
/// is set; the returned graph always contains the scaffold as its index
/// prefix. `ztilde` is the raw concat(z, normalized y, normalized y_S).
BuildResult build(const Model& m, const chem::MolGraph& scaffold,
                  const Eigen::VectorXd& ztilde, nn::Rng& rng, Policy policy,
                  int max_added_atoms, bool valence_mask = false);

struct IsomerChoice {
  chem::MolGraph graph;
  int index = 0;
  Eigen::VectorXd normalized_probs;
  Eigen::VectorXd raw_probs;
};

/// Scores every stereoisomer of `g` (sigmoid head), normalizes, and picks one.
IsomerChoice select_isomer(const Model& m, const chem::MolGraph& g,
                           const Eigen::VectorXd& ztilde, nn::Rng& rng,
                           Policy policy);

struct Generated {
  chem::MolGraph graph;
  BuildTrace trace;
  IsomerChoice isomer;
};

/// n independent draws z ~ N(0, I) decoded via build + select_isomer.
/// Deterministic per (seed, index); validity is not enforced.
std::vector<Generated> generate(const Model& m, const chem::MolGraph& scaffold,
                                const Eigen::VectorXd& y,
                                const Eigen::VectorXd& y_scaffold,
                                std::uint64_t seed, int n, Policy policy,
                                int workers = 1, bool valence_mask = false);

/// Pure graph replay of a true-action sequence (no model, no features).
chem::MolGraph replay_trace(const chem::MolGraph& scaffold,
                            const TrueTrace& trace);

}  // namespace sggm::gen

#endif  // SGGM_GEN_BUILDER_HPP_
