#include "stump/backprop.hpp"

#include <stdexcept>

namespace stump {

PixelGradient pullback_gradient(const DiagramGradient& dgrad, const PersistenceDiagram& diag) {
  if (dgrad.d_birth.size() != diag.dots.size() || dgrad.d_death.size() != diag.dots.size()) {
    throw std::invalid_argument("pullback_gradient: gradient size does not match diagram");
  }
  PixelGradient grad(diag.rows, diag.cols);
  const int n_pix = grad.size();
  auto scatter = [&](std::int32_t vertex, double value) {
    if (value == 0.0) return;
    if (vertex < 0 || vertex >= n_pix) {
      throw std::out_of_range("pullback_gradient: vertex index out of range");
    }
    grad[vertex] += value;
  };
  for (std::size_t i = 0; i < diag.dots.size(); ++i) {
    const Dot& dot = diag.dots[i];
    scatter(dot.birth_vertex, dgrad.d_birth[i]);
    scatter(dot.essential() ? diag.max_vertex : dot.death_vertex, dgrad.d_death[i]);
  }
  return grad;
}

PixelGradient compose_downsample_gradient(const PixelGradient& coarse_grad, const Weighting& w) {
  if (coarse_grad.rows() != w.coarse_rows || coarse_grad.cols() != w.coarse_cols) {
    throw std::invalid_argument("compose_downsample_gradient: coarse shape mismatch");
  }
  PixelGradient grad(w.rows, w.cols);
  for (int pr = 0; pr < w.coarse_rows; ++pr) {
    for (int pc = 0; pc < w.coarse_cols; ++pc) {
      double g = coarse_grad.at(pr, pc);
      if (g == 0.0) continue;
      const auto& omega = w.weights[static_cast<std::size_t>(w.coarse_index(pr, pc))];
      int r0 = w.patch_row0(pr), c0 = w.patch_col0(pc);
      int nr = w.patch_rows(pr), nc = w.patch_cols(pc);
      int k = 0;
      for (int r = 0; r < nr; ++r) {
        for (int c = 0; c < nc; ++c) {
          grad.at(r0 + r, c0 + c) += g * omega[static_cast<std::size_t>(k++)];
        }
      }
    }
  }
  return grad;
}

}  // namespace stump
