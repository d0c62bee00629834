#include "stump/downsample.hpp"

#include <stdexcept>

namespace stump {

Weighting sample_weighting(const DownsampleSpec& spec, int rows, int cols, Rng& rng) {
  if (spec.patch < 1) throw std::invalid_argument("patch size must be at least 1");
  Weighting w;
  w.rows = rows;
  w.cols = cols;
  w.patch = spec.patch;
  w.coarse_rows = (rows + spec.patch - 1) / spec.patch;
  w.coarse_cols = (cols + spec.patch - 1) / spec.patch;
  w.weights.resize(static_cast<std::size_t>(w.coarse_rows) * w.coarse_cols);

  for (int pr = 0; pr < w.coarse_rows; ++pr) {
    for (int pc = 0; pc < w.coarse_cols; ++pc) {
      int size = w.patch_rows(pr) * w.patch_cols(pc);
      auto& omega = w.weights[static_cast<std::size_t>(w.coarse_index(pr, pc))];
      omega.assign(static_cast<std::size_t>(size), 0.0);
      if (size == 1) {
        omega[0] = 1.0;
        continue;
      }
      switch (spec.measure) {
        case Measure::center:
          omega.assign(static_cast<std::size_t>(size), 1.0 / size);
          break;
        case Measure::vertex_uniform:
          omega[static_cast<std::size_t>(
              uniform_index(rng, static_cast<std::uint64_t>(size)))] = 1.0;
          break;
        case Measure::simplex_uniform: {
          double total = 0.0;
          for (double& x : omega) {
            x = exponential_unit(rng);
            total += x;
          }
          for (double& x : omega) x /= total;
          break;
        }
      }
    }
  }
  return w;
}

ScalarField downsample(const ScalarField& field, const Weighting& w) {
  if (field.rows() != w.rows || field.cols() != w.cols) {
    throw std::invalid_argument("downsample: weighting shape mismatch");
  }
  ScalarField coarse(w.coarse_rows, w.coarse_cols);
  for (int pr = 0; pr < w.coarse_rows; ++pr) {
    for (int pc = 0; pc < w.coarse_cols; ++pc) {
      const auto& omega = w.weights[static_cast<std::size_t>(w.coarse_index(pr, pc))];
      int r0 = w.patch_row0(pr), c0 = w.patch_col0(pc);
      int nr = w.patch_rows(pr), nc = w.patch_cols(pc);
      double acc = 0.0;
      int k = 0;
      for (int r = 0; r < nr; ++r) {
        for (int c = 0; c < nc; ++c) {
          acc += omega[static_cast<std::size_t>(k++)] * field.at(r0 + r, c0 + c);
        }
      }
      coarse.at(pr, pc) = acc;
    }
  }
  return coarse;
}

}  // namespace stump
