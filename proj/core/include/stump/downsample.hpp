#pragma once

#include <vector>

#include "stump/field.hpp"
#include "stump/rng.hpp"

namespace stump {

enum class Measure { center, vertex_uniform, simplex_uniform };

// Adjacent non-overlapping k x k patches; patches at the right and bottom
// edges are truncated when k does not divide the dimensions.  k = 1 makes
// downsampling the identity.
struct DownsampleSpec {
  int patch = 1;
  Measure measure = Measure::simplex_uniform;
};

// A sampled rule for averaging each patch: one probability-simplex weight
// vector per coarse cell, stored row-major within the patch.
struct Weighting {
  int rows = 0;
  int cols = 0;
  int patch = 1;
  int coarse_rows = 0;
  int coarse_cols = 0;
  std::vector<std::vector<double>> weights;  // indexed by coarse cell

  int coarse_index(int pr, int pc) const { return pr * coarse_cols + pc; }
  int patch_row0(int pr) const { return pr * patch; }
  int patch_col0(int pc) const { return pc * patch; }
  int patch_rows(int pr) const {
    int r0 = patch_row0(pr);
    return (r0 + patch <= rows) ? patch : rows - r0;
  }
  int patch_cols(int pc) const {
    int c0 = patch_col0(pc);
    return (c0 + patch <= cols) ? patch : cols - c0;
  }
};

// Draws weights per the spec's measure.  center: constant 1/|patch|;
// vertex_uniform: one-hot at a uniform patch pixel; simplex_uniform: uniform
// on the simplex via normalized exponentials (Dirichlet(1,...,1)).  Patches
// of one pixel consume no randomness under any measure, so k = 1 weightings
// are deterministic.
Weighting sample_weighting(const DownsampleSpec& spec, int rows, int cols, Rng& rng);

// f_omega: coarse cell value = <omega_i, patch values>.
ScalarField downsample(const ScalarField& field, const Weighting& w);

}  // namespace stump
