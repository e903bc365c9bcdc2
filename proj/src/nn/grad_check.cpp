//
// Project sggm - Copyright 2026 The sggm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "sggm/nn/grad_check.hpp"

#include <algorithm>
#include <cmath>

namespace sggm::nn {

double grad_check(ParameterStore& store, const std::function<double(bool)>& f,
                  double h, int max_entries_per_tensor) {
  store.zero_grads();
  f(true);

  double worst = 0.0;
  for (auto& [name, p] : store.entries()) {
    if (!p.trainable) continue;
    const Eigen::Index n = p.value.size();
    Eigen::Index stride = 1;
    if (max_entries_per_tensor > 0 && n > max_entries_per_tensor)
      stride = (n + max_entries_per_tensor - 1) / max_entries_per_tensor;
    for (Eigen::Index i = 0; i < n; i += stride) {
      double* slot = p.value.data() + i;
      const double keep = *slot;
      *slot = keep + h;
      const double fp = f(false);
      *slot = keep - h;
      const double fm = f(false);
      *slot = keep;
      const double numeric = (fp - fm) / (2.0 * h);
      const double analytic = p.grad.data()[i];
      const double rel = std::abs(analytic - numeric) /
                         std::max(1e-8, std::abs(analytic) + std::abs(numeric));
      worst = std::max(worst, rel);
    }
  }
  store.zero_grads();
  return worst;
}

}  // namespace sggm::nn
