//
// Project sggm - Copyright 2026 The sggm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SGGM_NN_TAPE_HPP_
#define SGGM_NN_TAPE_HPP_

#include <deque>
#include <functional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sggm/nn/tensor.hpp"

namespace sggm::nn {

class Tape;

/// Cheap handle to a tape node. Values are dense matrices; vectors are 1xN
/// rows by convention (feature sets stack one row per atom or bond).
class Var {
 public:
  Var() = default;
  const Mat& value() const;
  Eigen::Index rows() const { return value().rows(); }
  Eigen::Index cols() const { return value().cols(); }
  bool defined() const { return tape_ != nullptr; }
  Tape* tape() const { return tape_; }
  int index() const { return idx_; }

 private:
  Var(Tape* t, int i) : tape_(t), idx_(i) {}
  Tape* tape_ = nullptr;
  int idx_ = -1;
  friend class Tape;
};

/// Per-worker gradient accumulator: keeps parameter gradients out of the
/// shared store until a deterministic flush.
class GradSink {
 public:
  void add(Tensor& t, const Mat& g);
  /// Adds scale * accumulated into each tensor's grad, in insertion order.
  void flush(double scale = 1.0);
  void clear();

 private:
  std::vector<std::pair<Tensor*, Mat>> items_;
  std::unordered_map<Tensor*, std::size_t> index_;
};

/// Dynamic reverse-mode tape over Eigen matrices, rebuilt per forward pass.
class Tape {
 public:
  struct Node {
    Mat value;
    Mat grad;  // empty until touched by backward
    bool requires_grad = false;
    Tensor* param = nullptr;
    std::function<void(Tape&, const Mat&)> back;
  };

  explicit Tape(bool grad_enabled = true, GradSink* sink = nullptr)
      : grad_enabled_(grad_enabled), sink_(sink) {}

  bool grad_enabled() const { return grad_enabled_; }

  Var constant(Mat v);
  /// Parameter leaf; backward flushes into the tensor's grad (or the sink).
  Var leaf(Tensor& t);

  Var make(Mat value, bool requires_grad,
           std::function<void(Tape&, const Mat&)> back);

  /// Seeds d(root)/d(root) = 1 and sweeps the tape in reverse creation order.
  /// `root` must be 1x1.
  void backward(const Var& root);

  void add_grad(int idx, const Mat& g);

  const Node& node(int i) const { return nodes_[i]; }
  Node& node(int i) { return nodes_[i]; }
  int size() const { return static_cast<int>(nodes_.size()); }

 private:
  std::deque<Node> nodes_;
  bool grad_enabled_;
  GradSink* sink_;
};

// --- Expression ops (free functions) ---------------------------------------

/// x (n,in) * w (in,out) with row-broadcast bias b (1,out).
Var affine(Var x, Var w, Var b);
Var matmul(Var a, Var b);
Var add(Var a, Var b);
Var sub(Var a, Var b);
Var cmul(Var a, Var b);  // elementwise
Var scale(Var a, double s);
Var add_const(Var a, double c);
Var one_minus(Var a);
Var neg(Var a);
Var relu(Var x);
Var sigmoid(Var x);
Var tanh_op(Var x);
Var exp_op(Var x);
Var log_op(Var x);
Var clamp(Var x, double lo, double hi);
/// Row-wise softmax of a 1xN row; throws on an empty input.
Var softmax_row(Var x);
Var concat_cols(const std::vector<Var>& xs);
Var concat_rows(const std::vector<Var>& xs);
Var gather_rows(Var x, std::vector<int> idx);
/// out[dst[i]] += x.row(i); result has out_rows rows.
Var scatter_sum_rows(Var x, std::vector<int> dst, int out_rows);
Var broadcast_row(Var row, int n);
Var mean_rows(Var x);  // (n,c) -> (1,c)
Var sum_all(Var x);    // (n,c) -> (1,1)
Var pick(Var row, int i);  // (1,n) -> (1,1)

struct GruParamVars {
  Var wr, ur, br, wu, uu, bu, wn, un, bn;
};

/// Standard GRU cell applied row-wise: x and h are (n, hidden).
/// r = sig(xWr + hUr + br), u = sig(xWu + hUu + bu),
/// n = tanh(xWn + r .* (hUn) + bn), h' = (1-u) .* n + u .* h.
Var gru_cell(Var x, Var h, const GruParamVars& p);

}  // namespace sggm::nn

#endif  // SGGM_NN_TAPE_HPP_
