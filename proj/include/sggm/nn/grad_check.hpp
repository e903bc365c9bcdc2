//
// Project sggm - Copyright 2026 The sggm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SGGM_NN_GRAD_CHECK_HPP_
#define SGGM_NN_GRAD_CHECK_HPP_

#include <functional>

#include "sggm/nn/tensor.hpp"

namespace sggm::nn {

/// Central-difference verification of backward-pass gradients.
///
/// `f(true)` must run forward + backward, accumulating into store gradients,
/// and return the loss; `f(false)` only needs the forward value. Returns the
/// maximum over checked parameters of
///   |analytic - numeric| / max(1e-8, |analytic| + |numeric|).
/// `max_entries_per_tensor` == 0 checks every scalar; otherwise a
/// deterministic stride sample per tensor. Gradients are zeroed on return.
double grad_check(ParameterStore& store, const std::function<double(bool)>& f,
                  double h = 1e-5, int max_entries_per_tensor = 0);

}  // namespace sggm::nn

#endif  // SGGM_NN_GRAD_CHECK_HPP_
