#pragma once

#include <cstdint>

#include "stump/field.hpp"

namespace stump {

// Synthetic inputs for the three optimization tasks.  Shapes follow the task
// descriptions; exact formulas are this library's own.  Coordinates are
// given as fractions: x along columns, y along rows.

// Bright plateau at `baseline` minus two overlapping radial depressions
// exp(-d^2/sigma^2).  The default sigma leaves the shallower well's dot just
// below lifetime 50 at 64x64, inside reach of the +-50 noise used by the
// wells task.
struct WellsParams {
  double x1 = 0.35, y1 = 0.5;
  double x2 = 0.65, y2 = 0.5;
  double sigma_frac = 0.16;  // of min(rows, cols)
  double depth = 200.0;
  double baseline = 255.0;
};
ScalarField gen_double_well(int rows, int cols, const WellsParams& params = {});

// Sum of Gaussians at points drawn from a centered circle, rescaled to
// [0, peak].  Points are placed one per equal arc with uniform jitter;
// independent draws leave seed-dependent gaps wide enough to break the ring,
// and the generators contract promises a dominant loop at the defaults.
struct CircleParams {
  int n_points = 20;
  double radius_frac = 0.26;  // of min(rows, cols)
  double sigma_frac = 0.075;
  double peak = 255.0;
};
ScalarField gen_circle(int rows, int cols, const CircleParams& params, std::uint64_t seed);
inline ScalarField gen_circle(int rows, int cols, std::uint64_t seed) {
  return gen_circle(rows, cols, CircleParams{}, seed);
}

// Gaussian bumps placed on a jittered ring, joined chain-wise by straight
// ridges at a fraction of the tallest bump; the field is the pointwise max
// of all parts.  One bump keeps the full peak, the others stop at
// minor_peak: the merge dots' lifetimes are minor_peak minus the saddle, so
// the spread between minor_peak and bridge height sets how much crest raising
// a merge task needs.
struct BlobsParams {
  int n_blobs = 3;
  double bridge_frac = 0.5;       // of peak
  double ring_frac = 0.28;        // blob centers sit near this radius
  double blob_sigma_frac = 0.105;
  double bridge_sigma_frac = 0.03;
  double flat_frac = 0.015;       // half-width of the flat ridge crest
  double peak = 255.0;
  double minor_peak = 185.0;      // height of every bump after the first
};
ScalarField gen_blobs(int rows, int cols, const BlobsParams& params, std::uint64_t seed);
inline ScalarField gen_blobs(int rows, int cols, std::uint64_t seed) {
  return gen_blobs(rows, cols, BlobsParams{}, seed);
}

}  // namespace stump
