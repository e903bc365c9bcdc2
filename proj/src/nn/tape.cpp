//
// Project sggm - Copyright 2026 The sggm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "sggm/nn/tape.hpp"

#include <stdexcept>

namespace sggm::nn {

const Mat& Var::value() const {
  if (!tape_) throw std::logic_error("Var: undefined handle");
  return tape_->node(idx_).value;
}

void GradSink::add(Tensor& t, const Mat& g) {
  auto it = index_.find(&t);
  if (it == index_.end()) {
    index_.emplace(&t, items_.size());
    items_.emplace_back(&t, g);
  } else {
    items_[it->second].second += g;
  }
}

void GradSink::flush(double scale) {
  for (auto& [t, g] : items_) t->grad += scale * g;
}

void GradSink::clear() {
  items_.clear();
  index_.clear();
}

Var Tape::constant(Mat v) {
  nodes_.push_back(Node{std::move(v), {}, false, nullptr, nullptr});
  return Var(this, size() - 1);
}

Var Tape::leaf(Tensor& t) {
  Node n;
  n.value = t.value;
  n.requires_grad = grad_enabled_ && t.trainable;
  n.param = n.requires_grad ? &t : nullptr;
  nodes_.push_back(std::move(n));
  return Var(this, size() - 1);
}

Var Tape::make(Mat value, bool requires_grad,
               std::function<void(Tape&, const Mat&)> back) {
  Node n;
  n.value = std::move(value);
  n.requires_grad = grad_enabled_ && requires_grad;
  if (n.requires_grad) n.back = std::move(back);
  nodes_.push_back(std::move(n));
  return Var(this, size() - 1);
}

void Tape::add_grad(int idx, const Mat& g) {
  Node& p = nodes_[idx];
  if (!p.requires_grad || g.size() == 0) return;
  if (p.grad.size() == 0)
    p.grad = g;
  else
    p.grad += g;
}

void Tape::backward(const Var& root) {
  if (!grad_enabled_) throw std::logic_error("backward on a no-grad tape");
  if (root.tape() != this) throw std::logic_error("backward: foreign root");
  const Node& r = nodes_[root.index()];
  if (r.value.rows() != 1 || r.value.cols() != 1)
    throw std::invalid_argument("backward: root must be scalar");
  nodes_[root.index()].grad = Mat::Ones(1, 1);
  for (int i = root.index(); i >= 0; --i) {
    Node& n = nodes_[i];
    if (!n.requires_grad || n.grad.size() == 0) continue;
    if (n.back) n.back(*this, n.grad);
    if (n.param) {
      if (sink_)
        sink_->add(*n.param, n.grad);
      else
        n.param->grad += n.grad;
    }
  }
}

namespace {

Tape& tape_of(const Var& v) {
  if (!v.defined()) throw std::logic_error("op on undefined Var");
  return *v.tape();
}

bool rg(const Var& v) { return v.tape()->node(v.index()).requires_grad; }

void check_same_shape(const Var& a, const Var& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument(std::string(op) + ": shape mismatch");
}

}  // namespace

Var affine(Var x, Var w, Var b) {
  Tape& t = tape_of(x);
  if (x.cols() != w.rows() || w.cols() != b.cols() || b.rows() != 1)
    throw std::invalid_argument("affine: shape mismatch");
  Mat v = x.value() * w.value();
  v.rowwise() += b.value().row(0);
  const int xi = x.index(), wi = w.index(), bi = b.index();
  return t.make(std::move(v), rg(x) || rg(w) || rg(b),
                [xi, wi, bi](Tape& tp, const Mat& g) {
                  tp.add_grad(xi, g * tp.node(wi).value.transpose());
                  tp.add_grad(wi, tp.node(xi).value.transpose() * g);
                  tp.add_grad(bi, g.colwise().sum());
                });
}

Var matmul(Var a, Var b) {
  Tape& t = tape_of(a);
  if (a.cols() != b.rows()) throw std::invalid_argument("matmul: shape mismatch");
  const int ai = a.index(), bi = b.index();
  return t.make(a.value() * b.value(), rg(a) || rg(b),
                [ai, bi](Tape& tp, const Mat& g) {
                  tp.add_grad(ai, g * tp.node(bi).value.transpose());
                  tp.add_grad(bi, tp.node(ai).value.transpose() * g);
                });
}

Var add(Var a, Var b) {
  Tape& t = tape_of(a);
  check_same_shape(a, b, "add");
  const int ai = a.index(), bi = b.index();
  return t.make(a.value() + b.value(), rg(a) || rg(b),
                [ai, bi](Tape& tp, const Mat& g) {
                  tp.add_grad(ai, g);
                  tp.add_grad(bi, g);
                });
}

Var sub(Var a, Var b) {
  Tape& t = tape_of(a);
  check_same_shape(a, b, "sub");
  const int ai = a.index(), bi = b.index();
  return t.make(a.value() - b.value(), rg(a) || rg(b),
                [ai, bi](Tape& tp, const Mat& g) {
                  tp.add_grad(ai, g);
                  tp.add_grad(bi, -g);
                });
}

Var cmul(Var a, Var b) {
  Tape& t = tape_of(a);
  check_same_shape(a, b, "cmul");
  const int ai = a.index(), bi = b.index();
  return t.make(a.value().cwiseProduct(b.value()), rg(a) || rg(b),
                [ai, bi](Tape& tp, const Mat& g) {
                  tp.add_grad(ai, g.cwiseProduct(tp.node(bi).value));
                  tp.add_grad(bi, g.cwiseProduct(tp.node(ai).value));
                });
}

Var scale(Var a, double s) {
  Tape& t = tape_of(a);
  const int ai = a.index();
  return t.make(s * a.value(), rg(a),
                [ai, s](Tape& tp, const Mat& g) { tp.add_grad(ai, s * g); });
}

Var add_const(Var a, double c) {
  Tape& t = tape_of(a);
  const int ai = a.index();
  return t.make(a.value().array() + c, rg(a),
                [ai](Tape& tp, const Mat& g) { tp.add_grad(ai, g); });
}

Var one_minus(Var a) {
  Tape& t = tape_of(a);
  const int ai = a.index();
  return t.make(1.0 - a.value().array(), rg(a),
                [ai](Tape& tp, const Mat& g) { tp.add_grad(ai, -g); });
}

Var neg(Var a) { return scale(a, -1.0); }

Var relu(Var x) {
  Tape& t = tape_of(x);
  const int xi = x.index();
  return t.make(x.value().cwiseMax(0.0), rg(x),
                [xi](Tape& tp, const Mat& g) {
                  const Mat& v = tp.node(xi).value;
                  tp.add_grad(xi, (v.array() > 0.0).select(g, Mat::Zero(g.rows(), g.cols())));
                });
}

Var sigmoid(Var x) {
  Tape& t = tape_of(x);
  Mat v = (1.0 / (1.0 + (-x.value().array()).exp())).matrix();
  const int xi = x.index();
  Var out = t.make(std::move(v), rg(x), nullptr);
  const int oi = out.index();
  if (t.node(oi).requires_grad)
    t.node(oi).back = [xi, oi](Tape& tp, const Mat& g) {
      const auto s = tp.node(oi).value.array();
      tp.add_grad(xi, (g.array() * s * (1.0 - s)).matrix());
    };
  return out;
}

Var tanh_op(Var x) {
  Tape& t = tape_of(x);
  Mat v = x.value().array().tanh().matrix();
  const int xi = x.index();
  Var out = t.make(std::move(v), rg(x), nullptr);
  const int oi = out.index();
  if (t.node(oi).requires_grad)
    t.node(oi).back = [xi, oi](Tape& tp, const Mat& g) {
      const auto y = tp.node(oi).value.array();
      tp.add_grad(xi, (g.array() * (1.0 - y * y)).matrix());
    };
  return out;
}

Var exp_op(Var x) {
  Tape& t = tape_of(x);
  Mat v = x.value().array().exp().matrix();
  const int xi = x.index();
  Var out = t.make(std::move(v), rg(x), nullptr);
  const int oi = out.index();
  if (t.node(oi).requires_grad)
    t.node(oi).back = [xi, oi](Tape& tp, const Mat& g) {
      tp.add_grad(xi, g.cwiseProduct(tp.node(oi).value));
    };
  return out;
}

Var log_op(Var x) {
  Tape& t = tape_of(x);
  const int xi = x.index();
  return t.make(x.value().array().log().matrix(), rg(x),
                [xi](Tape& tp, const Mat& g) {
                  tp.add_grad(xi, g.cwiseQuotient(tp.node(xi).value));
                });
}

Var clamp(Var x, double lo, double hi) {
  Tape& t = tape_of(x);
  const int xi = x.index();
  return t.make(x.value().cwiseMax(lo).cwiseMin(hi), rg(x),
                [xi, lo, hi](Tape& tp, const Mat& g) {
                  const auto v = tp.node(xi).value.array();
                  const Mat inside =
                      ((v >= lo) && (v <= hi))
                          .select(g, Mat::Zero(g.rows(), g.cols()));
                  tp.add_grad(xi, inside);
                });
}

Var softmax_row(Var x) {
  Tape& t = tape_of(x);
  if (x.rows() != 1 || x.cols() == 0)
    throw std::invalid_argument("softmax_row: needs a nonempty row vector");
  Eigen::ArrayXXd a = x.value().array();
  a -= a.maxCoeff();
  a = a.exp();
  a /= a.sum();
  const int xi = x.index();
  Var out = t.make(a.matrix(), rg(x), nullptr);
  const int oi = out.index();
  if (t.node(oi).requires_grad)
    t.node(oi).back = [xi, oi](Tape& tp, const Mat& g) {
      const auto p = tp.node(oi).value.array();
      const double dot = (g.array() * p).sum();
      tp.add_grad(xi, (p * (g.array() - dot)).matrix());
    };
  return out;
}

Var concat_cols(const std::vector<Var>& xs) {
  if (xs.empty()) throw std::invalid_argument("concat_cols: empty list");
  Tape& t = tape_of(xs.front());
  const Eigen::Index n = xs.front().rows();
  Eigen::Index total = 0;
  bool any_rg = false;
  for (const Var& v : xs) {
    if (v.rows() != n) throw std::invalid_argument("concat_cols: row mismatch");
    total += v.cols();
    any_rg = any_rg || rg(v);
  }
  Mat out(n, total);
  Eigen::Index off = 0;
  std::vector<std::pair<int, Eigen::Index>> pieces;
  for (const Var& v : xs) {
    out.middleCols(off, v.cols()) = v.value();
    pieces.emplace_back(v.index(), v.cols());
    off += v.cols();
  }
  return t.make(std::move(out), any_rg,
                [pieces](Tape& tp, const Mat& g) {
                  Eigen::Index off = 0;
                  for (const auto& [idx, c] : pieces) {
                    if (c > 0) tp.add_grad(idx, g.middleCols(off, c));
                    off += c;
                  }
                });
}

Var concat_rows(const std::vector<Var>& xs) {
  if (xs.empty()) throw std::invalid_argument("concat_rows: empty list");
  Tape& t = tape_of(xs.front());
  const Eigen::Index c = xs.front().cols();
  Eigen::Index total = 0;
  bool any_rg = false;
  for (const Var& v : xs) {
    if (v.cols() != c) throw std::invalid_argument("concat_rows: col mismatch");
    total += v.rows();
    any_rg = any_rg || rg(v);
  }
  Mat out(total, c);
  Eigen::Index off = 0;
  std::vector<std::pair<int, Eigen::Index>> pieces;
  for (const Var& v : xs) {
    out.middleRows(off, v.rows()) = v.value();
    pieces.emplace_back(v.index(), v.rows());
    off += v.rows();
  }
  return t.make(std::move(out), any_rg,
                [pieces](Tape& tp, const Mat& g) {
                  Eigen::Index off = 0;
                  for (const auto& [idx, r] : pieces) {
                    if (r > 0) tp.add_grad(idx, g.middleRows(off, r));
                    off += r;
                  }
                });
}

Var gather_rows(Var x, std::vector<int> idx) {
  Tape& t = tape_of(x);
  Mat out(static_cast<Eigen::Index>(idx.size()), x.cols());
  for (std::size_t i = 0; i < idx.size(); ++i) out.row(i) = x.value().row(idx[i]);
  const int xi = x.index();
  const Eigen::Index rows = x.rows(), cols = x.cols();
  return t.make(std::move(out), rg(x),
                [xi, idx = std::move(idx), rows, cols](Tape& tp, const Mat& g) {
                  Mat gx = Mat::Zero(rows, cols);
                  for (std::size_t i = 0; i < idx.size(); ++i)
                    gx.row(idx[i]) += g.row(i);
                  tp.add_grad(xi, gx);
                });
}

Var scatter_sum_rows(Var x, std::vector<int> dst, int out_rows) {
  Tape& t = tape_of(x);
  if (static_cast<Eigen::Index>(dst.size()) != x.rows())
    throw std::invalid_argument("scatter_sum_rows: index size mismatch");
  Mat out = Mat::Zero(out_rows, x.cols());
  for (std::size_t i = 0; i < dst.size(); ++i) out.row(dst[i]) += x.value().row(i);
  const int xi = x.index();
  return t.make(std::move(out), rg(x),
                [xi, dst = std::move(dst)](Tape& tp, const Mat& g) {
                  Mat gx(static_cast<Eigen::Index>(dst.size()), g.cols());
                  for (std::size_t i = 0; i < dst.size(); ++i)
                    gx.row(i) = g.row(dst[i]);
                  tp.add_grad(xi, gx);
                });
}

Var broadcast_row(Var row, int n) {
  Tape& t = tape_of(row);
  if (row.rows() != 1) throw std::invalid_argument("broadcast_row: not a row");
  Mat out = row.value().replicate(n, 1);
  const int ri = row.index();
  return t.make(std::move(out), rg(row),
                [ri](Tape& tp, const Mat& g) { tp.add_grad(ri, g.colwise().sum()); });
}

Var mean_rows(Var x) {
  Tape& t = tape_of(x);
  if (x.rows() == 0) throw std::invalid_argument("mean_rows: empty");
  const double inv = 1.0 / static_cast<double>(x.rows());
  const int xi = x.index();
  const Eigen::Index rows = x.rows();
  return t.make(x.value().colwise().sum() * inv, rg(x),
                [xi, inv, rows](Tape& tp, const Mat& g) {
                  tp.add_grad(xi, (g * inv).replicate(rows, 1));
                });
}

Var sum_all(Var x) {
  Tape& t = tape_of(x);
  Mat out(1, 1);
  out(0, 0) = x.value().sum();
  const int xi = x.index();
  const Eigen::Index rows = x.rows(), cols = x.cols();
  return t.make(std::move(out), rg(x),
                [xi, rows, cols](Tape& tp, const Mat& g) {
                  tp.add_grad(xi, Mat::Constant(rows, cols, g(0, 0)));
                });
}

Var pick(Var row, int i) {
  Tape& t = tape_of(row);
  if (row.rows() != 1 || i < 0 || i >= row.cols())
    throw std::invalid_argument("pick: index out of range");
  Mat out(1, 1);
  out(0, 0) = row.value()(0, i);
  const int ri = row.index();
  const Eigen::Index cols = row.cols();
  return t.make(std::move(out), rg(row),
                [ri, i, cols](Tape& tp, const Mat& g) {
                  Mat gx = Mat::Zero(1, cols);
                  gx(0, i) = g(0, 0);
                  tp.add_grad(ri, gx);
                });
}

Var gru_cell(Var x, Var h, const GruParamVars& p) {
  check_same_shape(x, h, "gru_cell");
  Var r = sigmoid(add(affine(x, p.wr, p.br), matmul(h, p.ur)));
  Var u = sigmoid(add(affine(x, p.wu, p.bu), matmul(h, p.uu)));
  Var n = tanh_op(add(affine(x, p.wn, p.bn), cmul(r, matmul(h, p.un))));
  return add(cmul(one_minus(u), n), cmul(u, h));
}

}  // namespace sggm::nn
