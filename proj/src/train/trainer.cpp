//
// Project sggm - Copyright 2026 The sggm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "sggm/train/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

namespace sggm::train {

namespace {

nn::Var sum_vars(nn::Tape& t, const std::vector<nn::Var>& vs) {
  if (vs.empty()) return t.constant(nn::Mat::Zero(1, 1));
  nn::Var acc = vs[0];
  for (std::size_t i = 1; i < vs.size(); ++i) acc = nn::add(acc, vs[i]);
  return acc;
}

}  // namespace

LossBreakdown pair_loss(nn::Tape& t, const Model& m, const Pair& pair,
                        const Eigen::VectorXd& eps, double beta,
                        nn::Var* total_out) {
  const Eigen::VectorXd ytilde = m.make_ytilde(pair.y, pair.y_scaffold);
  gnn::LatentVars enc = gnn::encode_graph(t, m, pair.full, ytilde, eps);

  nn::Var ztilde = ytilde.size() == 0
                       ? enc.z
                       : nn::concat_cols({enc.z, t.constant(ytilde.transpose())});

  gen::Builder builder(t, m, pair.scaffold, ytilde, ztilde);
  std::vector<nn::Var> step_losses;
  int pending_order = -1;
  for (const gen::TraceStep& step : pair.trace) {
    switch (step.kind) {
      case gen::ActionKind::AddNode: {
        nn::Var p = builder.add_node_probs();
        step_losses.push_back(nn::neg(nn::log_op(nn::pick(p, step.chosen))));
        if (step.chosen != gen::kAddNodeStop) builder.apply_add_node(step.chosen);
        break;
      }
      case gen::ActionKind::AddEdge: {
        nn::Var p = builder.add_edge_probs();
        step_losses.push_back(nn::neg(nn::log_op(nn::pick(p, step.chosen))));
        pending_order = step.chosen;
        break;
      }
      case gen::ActionKind::SelectNode: {
        gen::SelectNodeProbs sel = builder.select_node_probs();
        const auto it = std::find(sel.allowed.begin(), sel.allowed.end(), step.chosen);
        if (it == sel.allowed.end())
          throw std::logic_error("pair_loss: true partner is masked");
        const int pos = static_cast<int>(it - sel.allowed.begin());
        step_losses.push_back(
            nn::neg(nn::log_op(nn::pick(sel.allowed_probs, pos))));
        builder.apply_add_edge(step.chosen, pending_order);
        pending_order = -1;
        break;
      }
      case gen::ActionKind::SelectIsomer:
        break;
    }
  }
  nn::Var build = sum_vars(t, step_losses);

  std::vector<nn::Var> iso_losses;
  for (std::size_t i = 0; i < pair.isomers.size(); ++i) {
    gnn::EmbeddedGraph emb = gnn::embed_graph(t, m, pair.isomers[i]);
    nn::Var h = gnn::propagate(t, emb.nodes, emb.edges, emb.de, ztilde, m.si_prop);
    nn::Var logit =
        gnn::apply_linear(t, nn::concat_cols({nn::mean_rows(h), ztilde}), m.si_mlp);
    nn::Var q = nn::clamp(nn::sigmoid(logit), kProbClamp, 1.0 - kProbClamp);
    iso_losses.push_back(pair.isomer_flags[i] > 0.5
                             ? nn::neg(nn::log_op(q))
                             : nn::neg(nn::log_op(nn::one_minus(q))));
  }
  nn::Var isomer = sum_vars(t, iso_losses);

  // -1/2 sum(1 + log sigma^2 - mu^2 - sigma^2), with log sigma^2 taken
  // directly from the head output.
  nn::Var term = nn::add(nn::add_const(enc.log_var, 1.0),
                         nn::neg(nn::add(nn::cmul(enc.mu, enc.mu),
                                         nn::exp_op(enc.log_var))));
  nn::Var kl = nn::scale(nn::sum_all(term), -0.5);

  nn::Var total = nn::add(nn::add(build, isomer), nn::scale(kl, beta));
  if (total_out) *total_out = total;

  LossBreakdown out;
  out.build = build.value()(0, 0);
  out.isomer = isomer.value()(0, 0);
  out.kl = kl.value()(0, 0);
  return out;
}

void fit_property_stats(Model& m, const PairDataset& ds) {
  const int p = m.config().property_count();
  if (p == 0 || ds.pairs.empty()) return;
  Eigen::VectorXd mol_mean = Eigen::VectorXd::Zero(p);
  Eigen::VectorXd scaf_mean = Eigen::VectorXd::Zero(p);
  for (const Pair& pair : ds.pairs) {
    mol_mean += pair.y;
    scaf_mean += pair.y_scaffold;
  }
  const double n = static_cast<double>(ds.pairs.size());
  mol_mean /= n;
  scaf_mean /= n;
  Eigen::VectorXd mol_var = Eigen::VectorXd::Zero(p);
  Eigen::VectorXd scaf_var = Eigen::VectorXd::Zero(p);
  for (const Pair& pair : ds.pairs) {
    mol_var += (pair.y - mol_mean).cwiseAbs2();
    scaf_var += (pair.y_scaffold - scaf_mean).cwiseAbs2();
  }
  auto to_std = [&](Eigen::VectorXd var) {
    var /= n;
    Eigen::VectorXd sd = var.cwiseSqrt();
    for (Eigen::Index i = 0; i < sd.size(); ++i)
      if (sd[i] < 1e-12) sd[i] = 1.0;
    return sd;
  };
  m.set_property_stats(mol_mean, to_std(mol_var), scaf_mean, to_std(scaf_var));
}

EpochStats Trainer::run_epoch(const PairDataset& ds, int epoch) {
  if (ds.pairs.empty()) throw std::invalid_argument("run_epoch: empty dataset");
  const int n = static_cast<int>(ds.pairs.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  nn::Rng shuffle_rng(nn::Rng::mix(nn::Rng::mix(cfg_.seed, 0x540ffULL), epoch));
  for (int i = n; i > 1; --i)
    std::swap(order[i - 1], order[shuffle_rng.next_u64() % i]);

  const int latent = model_.config().latent_dim;
  EpochStats stats;

  for (int start = 0; start < n; start += cfg_.batch_size) {
    const int bsz = std::min(cfg_.batch_size, n - start);
    const int workers = std::max(1, std::min(cfg_.workers, bsz));

    std::vector<nn::GradSink> sinks(workers);
    std::vector<EpochStats> partial(workers);
    std::vector<std::string> failures(workers);

    auto run_range = [&](int w, int lo, int hi) {
      for (int k = lo; k < hi; ++k) {
        const int idx = order[start + k];
        const Pair& pair = ds.pairs[idx];
        nn::Rng eps_rng(nn::Rng::mix(nn::Rng::mix(cfg_.seed, 0xe95ULL + epoch), idx));
        try {
          nn::Tape tape(true, &sinks[w]);
          nn::Var total;
          LossBreakdown lb = pair_loss(tape, model_, pair,
                                       eps_rng.normal_vector(latent), cfg_.beta,
                                       &total);
          if (!std::isfinite(lb.total(cfg_.beta))) {
            failures[w] = "non-finite loss on pair " + std::to_string(idx);
            return;
          }
          tape.backward(total);
          partial[w].build += lb.build;
          partial[w].isomer += lb.isomer;
          partial[w].kl += lb.kl;
          partial[w].total += lb.total(cfg_.beta);
        } catch (const std::exception& e) {
          failures[w] = "pair " + std::to_string(idx) + ": " + e.what();
          return;
        }
      }
    };

    if (workers == 1) {
      run_range(0, 0, bsz);
    } else {
      std::vector<std::thread> pool;
      for (int w = 0; w < workers; ++w) {
        const int lo = w * bsz / workers;
        const int hi = (w + 1) * bsz / workers;
        pool.emplace_back(run_range, w, lo, hi);
      }
      for (auto& th : pool) th.join();
    }
    for (const std::string& f : failures)
      if (!f.empty()) throw NumericalError("training aborted: " + f);

    for (nn::GradSink& sink : sinks) sink.flush(1.0 / static_cast<double>(bsz));
    adam_.step(model_.store());

    for (const EpochStats& ps : partial) {
      stats.build += ps.build;
      stats.isomer += ps.isomer;
      stats.kl += ps.kl;
      stats.total += ps.total;
    }
  }

  stats.build /= n;
  stats.isomer /= n;
  stats.kl /= n;
  stats.total /= n;
  return stats;
}

chem::MolGraph reconstruct(const Model& m, const Pair& pair) {
  const Eigen::VectorXd ytilde = m.make_ytilde(pair.y, pair.y_scaffold);
  gnn::LatentVector enc = gnn::encode_mean(m, pair.full, ytilde);
  Eigen::VectorXd ztilde(m.config().cond_build_dim());
  ztilde.head(m.config().latent_dim) = enc.z;
  ztilde.tail(2 * m.config().property_count()) = ytilde;
  nn::Rng rng(0);  // greedy policy draws nothing
  gen::BuildResult built =
      gen::build(m, pair.scaffold, ztilde, rng, gen::Policy::Greedy,
                 m.config().max_added_atoms);
  return built.graph;
}

}  // namespace sggm::train
