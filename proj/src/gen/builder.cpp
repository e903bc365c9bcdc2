//
// Project sggm - Copyright 2026 The sggm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "sggm/gen/builder.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace sggm::gen {

namespace {

int pick_index(const Eigen::VectorXd& probs, nn::Rng& rng, Policy policy) {
  if (policy == Policy::Greedy) {
    Eigen::Index best;
    probs.maxCoeff(&best);
    return static_cast<int>(best);
  }
  return rng.categorical(probs);
}

Eigen::VectorXd row_values(const nn::Var& v) {
  return v.value().row(0).transpose();
}

}  // namespace

Builder::Builder(nn::Tape& t, const Model& m, const chem::MolGraph& scaffold,
                 const Eigen::VectorXd& ytilde_norm, nn::Var ztilde)
    : t_(t), m_(m), ztilde_(ztilde) {
  if (scaffold.empty())
    throw std::invalid_argument("Builder: scaffold must be nonempty");
  if (ztilde_.cols() != m.config().cond_build_dim())
    throw std::invalid_argument("Builder: ztilde length mismatch");
  gnn::EmbeddedGraph emb = gnn::embed_graph(t, m, scaffold);
  nn::Var cond = t.constant(ytilde_norm.transpose());
  state_.graph = scaffold;
  state_.node_feats = gnn::propagate(t, emb.nodes, emb.edges, emb.de, cond, m.scaf_prop);
  state_.edge_feats = emb.edges;
  state_.de = emb.de;
  state_.scaffold_size = scaffold.atom_count();
}

nn::Var Builder::head(const gnn::PropagateStack& prop,
                      const gnn::ReadoutParams& ro,
                      const gnn::LinearParams& l0, const gnn::LinearParams& l1,
                      const gnn::LinearParams& l2) {
  nn::Var h = gnn::propagate(t_, state_.node_feats, state_.edge_feats,
                             state_.de, ztilde_, prop);
  nn::Var r = gnn::readout(t_, h, ro);
  nn::Var x = nn::concat_cols({r, ztilde_});
  x = nn::relu(gnn::apply_linear(t_, x, l0));
  x = nn::relu(gnn::apply_linear(t_, x, l1));
  return nn::softmax_row(gnn::apply_linear(t_, x, l2));
}

nn::Var Builder::add_node_probs() {
  return head(m_.an_prop, m_.an_readout, m_.an_l0, m_.an_l1, m_.an_l2);
}

nn::Var Builder::add_edge_probs() {
  if (state_.last_added < 0)
    throw std::logic_error("add_edge_probs: no atom added yet");
  return head(m_.ae_prop, m_.ae_readout, m_.ae_l0, m_.ae_l1, m_.ae_l2);
}

std::vector<int> Builder::selectable_atoms() const {
  std::vector<int> allowed;
  const int w = state_.last_added;
  for (int u = 0; u < state_.graph.atom_count(); ++u)
    if (u != w && !state_.graph.has_bond(u, w)) allowed.push_back(u);
  return allowed;
}

SelectNodeProbs Builder::select_node_probs() {
  const int w = state_.last_added;
  const int n = state_.graph.atom_count();
  if (w < 0 || n < 2)
    throw std::logic_error("select_node_probs: needs an added atom and |V| >= 2");

  // Propagation reads the pre-w state: nodes 0..w-1 and the bonds that existed
  // before w was appended. The logits then pair each candidate with the
  // stored feature of w itself.
  std::vector<int> pre_nodes(w);
  std::iota(pre_nodes.begin(), pre_nodes.end(), 0);
  std::vector<int> pre_edges(state_.edges_before_last);
  std::iota(pre_edges.begin(), pre_edges.end(), 0);
  gnn::DirectedEdges de_pre;
  de_pre.src.assign(state_.de.src.begin(),
                    state_.de.src.begin() + 2 * state_.edges_before_last);
  de_pre.dst.assign(state_.de.dst.begin(),
                    state_.de.dst.begin() + 2 * state_.edges_before_last);
  de_pre.bond.assign(state_.de.bond.begin(),
                     state_.de.bond.begin() + 2 * state_.edges_before_last);

  nn::Var nodes_pre = nn::gather_rows(state_.node_feats, pre_nodes);
  nn::Var edges_pre = nn::gather_rows(state_.edge_feats, pre_edges);
  nn::Var h = gnn::propagate(t_, nodes_pre, edges_pre, de_pre, ztilde_, m_.sn_prop);

  nn::Var hw = nn::gather_rows(state_.node_feats, {w});
  nn::Var logits = gnn::apply_linear(
      t_, nn::concat_cols({h, nn::broadcast_row(hw, w), nn::broadcast_row(ztilde_, w)}),
      m_.sn_mlp);  // (w, 1)

  SelectNodeProbs out;
  out.allowed = selectable_atoms();
  if (out.allowed.empty())
    throw std::runtime_error("select_node_probs: no selectable node");
  nn::Var allowed_logits = nn::gather_rows(logits, out.allowed);
  // (k,1) -> (1,k) via gather on the transposed layout is clumsy; use concat.
  std::vector<nn::Var> cells;
  cells.reserve(out.allowed.size());
  for (std::size_t i = 0; i < out.allowed.size(); ++i)
    cells.push_back(nn::gather_rows(allowed_logits, {static_cast<int>(i)}));
  nn::Var row = cells.size() == 1 ? cells[0] : nn::concat_cols(cells);
  out.allowed_probs = nn::softmax_row(row);

  out.full_probs = Eigen::VectorXd::Zero(n - 1);
  const auto& p = out.allowed_probs.value();
  for (std::size_t i = 0; i < out.allowed.size(); ++i)
    out.full_probs[out.allowed[i]] = p(0, static_cast<Eigen::Index>(i));
  return out;
}

void Builder::apply_add_node(int element_index) {
  if (element_index < 0 || element_index >= chem::kNumElements)
    throw std::invalid_argument("apply_add_node: bad element index");
  nn::Var r = gnn::readout(t_, state_.node_feats, m_.in_readout);
  nn::Var e = gnn::apply_linear(t_, t_.constant(gnn::element_onehot(element_index)),
                                m_.in_l1);
  nn::Var hw = gnn::apply_linear(t_, nn::concat_cols({r, e}), m_.in_l2);
  state_.node_feats = nn::concat_rows({state_.node_feats, hw});

  chem::Atom atom;
  atom.element = static_cast<chem::Element>(element_index);
  state_.last_added = state_.graph.add_atom(atom);
  state_.edges_before_last = state_.graph.bond_count();
}

void Builder::apply_add_edge(int partner, int order_index) {
  if (state_.last_added < 0)
    throw std::logic_error("apply_add_edge: no atom added yet");
  if (order_index < 0 || order_index >= chem::kNumBondOrders)
    throw std::invalid_argument("apply_add_edge: bad order index");
  const int w = state_.last_added;
  const int bond = state_.graph.add_bond(partner, w,
                                         static_cast<chem::BondOrder>(order_index));
  state_.de.add(std::min(partner, w), std::max(partner, w), bond);

  nn::Var r = gnn::readout(t_, state_.node_feats, m_.ie_readout);
  nn::Var e = gnn::apply_linear(t_, t_.constant(gnn::order_onehot(order_index)),
                                m_.ie_l1);
  nn::Var huv = gnn::apply_linear(t_, nn::concat_cols({r, e}), m_.ie_l2);
  state_.edge_feats = state_.edge_feats.rows() == 0
                          ? huv
                          : nn::concat_rows({state_.edge_feats, huv});
}

namespace {

Eigen::VectorXd masked_renormalized(const Eigen::VectorXd& probs,
                                    const std::vector<bool>& allowed) {
  Eigen::VectorXd out = probs;
  double total = 0.0;
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    if (!allowed[static_cast<std::size_t>(i)]) out[i] = 0.0;
    total += out[i];
  }
  if (total <= 0.0) return Eigen::VectorXd();
  return out / total;
}

}  // namespace

BuildResult build(const Model& m, const chem::MolGraph& scaffold,
                  const Eigen::VectorXd& ztilde, nn::Rng& rng, Policy policy,
                  int max_added_atoms, bool valence_mask) {
  const int p2 = 2 * m.config().property_count();
  if (ztilde.size() != m.config().cond_build_dim())
    throw std::invalid_argument("build: ztilde length mismatch");
  const Eigen::VectorXd ytilde = ztilde.tail(p2);

  nn::Tape tape(false);
  nn::Var zt = tape.constant(ztilde.transpose());
  Builder b(tape, m, scaffold, ytilde, zt);

  BuildResult out;
  int added = 0;
  while (true) {
    const Eigen::VectorXd p_an = row_values(b.add_node_probs());
    BuildAction act{ActionKind::AddNode, kAddNodeStop, false, p_an};
    if (added >= max_added_atoms) {
      act.forced = true;  // cap reached: termination regardless of the draw
    } else {
      act.chosen = pick_index(p_an, rng, policy);
    }
    out.trace.steps.push_back(act);
    if (act.chosen == kAddNodeStop) break;
    b.apply_add_node(act.chosen);
    ++added;

    while (true) {
      if (b.selectable_atoms().empty()) {
        out.trace.steps.push_back(
            {ActionKind::AddEdge, kAddEdgeStop, true, Eigen::VectorXd()});
        break;
      }
      const Eigen::VectorXd p_ae = row_values(b.add_edge_probs());
      BuildAction ae{ActionKind::AddEdge, -1, false, p_ae};
      if (valence_mask) {
        const int w = b.state().last_added;
        const int cap = chem::effective_max_valence(
            b.graph().atom(w).element, b.graph().atom(w).charge);
        const int used = chem::bond_order_sum(b.graph(), w);
        std::vector<bool> ok(chem::kNumBondOrders + 1, true);
        for (int k = 0; k < chem::kNumBondOrders; ++k)
          ok[k] = used + chem::bond_order_value(static_cast<chem::BondOrder>(k)) <= cap;
        const Eigen::VectorXd renorm = masked_renormalized(p_ae, ok);
        ae.chosen = renorm.size() == 0 ? kAddEdgeStop
                                       : pick_index(renorm, rng, policy);
      } else {
        ae.chosen = pick_index(p_ae, rng, policy);
      }
      out.trace.steps.push_back(ae);
      if (ae.chosen == kAddEdgeStop) break;

      SelectNodeProbs sel = b.select_node_probs();
      Eigen::VectorXd allowed_probs = row_values(sel.allowed_probs);
      if (valence_mask) {
        std::vector<bool> ok(sel.allowed.size(), true);
        bool any = false;
        for (std::size_t i = 0; i < sel.allowed.size(); ++i) {
          const int u = sel.allowed[i];
          const int cap = chem::effective_max_valence(b.graph().atom(u).element,
                                                      b.graph().atom(u).charge);
          ok[i] = chem::bond_order_sum(b.graph(), u) +
                      chem::bond_order_value(static_cast<chem::BondOrder>(ae.chosen)) <=
                  cap;
          any = any || ok[i];
        }
        if (!any) {
          out.trace.steps.push_back(
              {ActionKind::SelectNode, -1, true, Eigen::VectorXd()});
          break;
        }
        allowed_probs = masked_renormalized(allowed_probs, ok);
      }
      const int pos = pick_index(allowed_probs, rng, policy);
      const int partner = sel.allowed[pos];
      out.trace.steps.push_back(
          {ActionKind::SelectNode, partner, false, sel.full_probs});
      b.apply_add_edge(partner, ae.chosen);
    }
  }

  out.graph = b.graph();
  chem::recompute_implicit_hydrogens(out.graph);
  return out;
}

IsomerChoice select_isomer(const Model& m, const chem::MolGraph& g,
                           const Eigen::VectorXd& ztilde, nn::Rng& rng,
                           Policy policy) {
  std::vector<chem::MolGraph> isomers = chem::enumerate_stereoisomers(g);
  IsomerChoice out;
  out.raw_probs.resize(static_cast<Eigen::Index>(isomers.size()));

  nn::Tape tape(false);
  nn::Var zt = tape.constant(ztilde.transpose());
  for (std::size_t i = 0; i < isomers.size(); ++i) {
    gnn::EmbeddedGraph emb = gnn::embed_graph(tape, m, isomers[i]);
    nn::Var h = gnn::propagate(tape, emb.nodes, emb.edges, emb.de, zt, m.si_prop);
    nn::Var hi = nn::mean_rows(h);
    nn::Var logit = gnn::apply_linear(tape, nn::concat_cols({hi, zt}), m.si_mlp);
    out.raw_probs[static_cast<Eigen::Index>(i)] =
        nn::sigmoid(logit).value()(0, 0);
  }
  out.normalized_probs = out.raw_probs / out.raw_probs.sum();
  out.index = isomers.size() == 1 ? 0 : pick_index(out.normalized_probs, rng, policy);
  out.graph = std::move(isomers[static_cast<std::size_t>(out.index)]);
  return out;
}

std::vector<Generated> generate(const Model& m, const chem::MolGraph& scaffold,
                                const Eigen::VectorXd& y,
                                const Eigen::VectorXd& y_scaffold,
                                std::uint64_t seed, int n, Policy policy,
                                int workers, bool valence_mask) {
  if (!chem::check_validity(scaffold))
    throw std::invalid_argument("generate: scaffold fails validity check");
  const Eigen::VectorXd ytilde = m.make_ytilde(y, y_scaffold);
  const int latent = m.config().latent_dim;

  std::vector<Generated> out(static_cast<std::size_t>(n));
  auto task = [&](int i) {
    nn::Rng rng(nn::Rng::mix(seed, static_cast<std::uint64_t>(i)));
    Eigen::VectorXd ztilde(m.config().cond_build_dim());
    ztilde.head(latent) = rng.normal_vector(latent);
    ztilde.tail(2 * m.config().property_count()) = ytilde;
    Generated gen;
    BuildResult built = build(m, scaffold, ztilde, rng, policy,
                              m.config().max_added_atoms, valence_mask);
    gen.graph = built.graph;
    gen.trace = std::move(built.trace);
    gen.isomer = select_isomer(m, built.graph, ztilde, rng, policy);
    out[static_cast<std::size_t>(i)] = std::move(gen);
  };

  if (workers <= 1) {
    for (int i = 0; i < n; ++i) task(i);
  } else {
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) task(i);
      });
    for (auto& th : pool) th.join();
  }
  return out;
}

chem::MolGraph replay_trace(const chem::MolGraph& scaffold,
                            const TrueTrace& trace) {
  chem::MolGraph g = scaffold;
  int last = -1;
  int pending_order = -1;
  bool stopped = false;
  for (const TraceStep& s : trace) {
    if (stopped) break;
    switch (s.kind) {
      case ActionKind::AddNode:
        if (s.chosen == kAddNodeStop) {
          stopped = true;
          break;
        }
        {
          chem::Atom a;
          a.element = static_cast<chem::Element>(s.chosen);
          last = g.add_atom(a);
        }
        break;
      case ActionKind::AddEdge:
        pending_order = s.chosen;
        break;
      case ActionKind::SelectNode:
        if (pending_order < 0 || pending_order >= chem::kNumBondOrders)
          throw std::logic_error("replay_trace: SelectNode without bond type");
        g.add_bond(s.chosen, last, static_cast<chem::BondOrder>(pending_order));
        pending_order = -1;
        break;
      case ActionKind::SelectIsomer:
        break;
    }
  }
  chem::recompute_implicit_hydrogens(g);
  return g;
}

}  // namespace sggm::gen
