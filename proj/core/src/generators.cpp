#include "stump/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "stump/rng.hpp"

namespace stump {

namespace {

void check_dims(int rows, int cols) {
  if (rows < 8 || cols < 8) {
    throw std::invalid_argument("generator grids must be at least 8x8");
  }
}

double sq(double x) { return x * x; }

}  // namespace

ScalarField gen_double_well(int rows, int cols, const WellsParams& params) {
  check_dims(rows, cols);
  const double m = std::min(rows, cols);
  const double sigma2 = sq(params.sigma_frac * m);
  const double cx1 = params.x1 * cols, cy1 = params.y1 * rows;
  const double cx2 = params.x2 * cols, cy2 = params.y2 * rows;
  ScalarField field(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      double d1 = sq(c - cx1) + sq(r - cy1);
      double d2 = sq(c - cx2) + sq(r - cy2);
      field.at(r, c) = params.baseline -
                       params.depth * (std::exp(-d1 / sigma2) + std::exp(-d2 / sigma2));
    }
  }
  return field;
}

ScalarField gen_circle(int rows, int cols, const CircleParams& params, std::uint64_t seed) {
  check_dims(rows, cols);
  if (params.n_points < 3) throw std::invalid_argument("gen_circle: need at least 3 points");
  const double m = std::min(rows, cols);
  const double radius = params.radius_frac * m;
  const double two_sigma2 = 2.0 * sq(params.sigma_frac * m);
  const double cx = 0.5 * cols, cy = 0.5 * rows;

  // One point per equal arc, jittered inside it.  This keeps the worst
  // angular gap below 1.4 arcs, so the ring of Gaussians always closes into
  // one dominant loop; fully independent angles do not guarantee that.
  Rng rng(seed);
  std::vector<double> px(static_cast<std::size_t>(params.n_points));
  std::vector<double> py(static_cast<std::size_t>(params.n_points));
  for (int i = 0; i < params.n_points; ++i) {
    double slot = i + 0.5 + uniform_in(rng, -0.2, 0.2);
    double angle = 2.0 * std::numbers::pi * slot / params.n_points;
    px[static_cast<std::size_t>(i)] = cx + radius * std::cos(angle);
    py[static_cast<std::size_t>(i)] = cy + radius * std::sin(angle);
  }

  ScalarField field(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      double acc = 0.0;
      for (int i = 0; i < params.n_points; ++i) {
        acc += std::exp(-(sq(c - px[static_cast<std::size_t>(i)]) +
                          sq(r - py[static_cast<std::size_t>(i)])) /
                        two_sigma2);
      }
      field.at(r, c) = acc;
    }
  }
  double lo = field.min_value(), hi = field.max_value();
  // Normalize before scaling so the extremes land exactly on 0 and peak.
  double range = hi - lo;
  for (int i = 0; i < field.size(); ++i) {
    field[i] = (field[i] - lo) / range * params.peak;
  }
  return field;
}

ScalarField gen_blobs(int rows, int cols, const BlobsParams& params, std::uint64_t seed) {
  check_dims(rows, cols);
  if (params.n_blobs < 2) throw std::invalid_argument("gen_blobs: need at least 2 blobs");
  const double m = std::min(rows, cols);
  const double cx = 0.5 * cols, cy = 0.5 * rows;
  const double blob_two_sigma2 = 2.0 * sq(params.blob_sigma_frac * m);
  const double bridge_two_sigma2 = 2.0 * sq(params.bridge_sigma_frac * m);
  const double flat = params.flat_frac * m;

  Rng rng(seed);
  std::vector<double> bx(static_cast<std::size_t>(params.n_blobs));
  std::vector<double> by(static_cast<std::size_t>(params.n_blobs));
  for (int i = 0; i < params.n_blobs; ++i) {
    double angle = 2.0 * std::numbers::pi * i / params.n_blobs + uniform_in(rng, -0.25, 0.25);
    double radius = params.ring_frac * m * (1.0 + uniform_in(rng, -0.1, 0.1));
    bx[static_cast<std::size_t>(i)] = cx + radius * std::cos(angle);
    by[static_cast<std::size_t>(i)] = cy + radius * std::sin(angle);
  }

  ScalarField field(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      double value = 0.0;
      for (int i = 0; i < params.n_blobs; ++i) {
        double height = i == 0 ? params.peak : params.minor_peak;
        double d2 = sq(c - bx[static_cast<std::size_t>(i)]) +
                    sq(r - by[static_cast<std::size_t>(i)]);
        value = std::max(value, height * std::exp(-d2 / blob_two_sigma2));
      }
      // Chain bridges between consecutive centers: flat crest of the stated
      // half-width, Gaussian falloff beyond it, value capped at bridge_frac
      // of the peak.
      for (int i = 0; i + 1 < params.n_blobs; ++i) {
        double ax = bx[static_cast<std::size_t>(i)], ay = by[static_cast<std::size_t>(i)];
        double ux = bx[static_cast<std::size_t>(i) + 1] - ax;
        double uy = by[static_cast<std::size_t>(i) + 1] - ay;
        double len2 = sq(ux) + sq(uy);
        double t = ((c - ax) * ux + (r - ay) * uy) / len2;
        t = std::clamp(t, 0.0, 1.0);
        double perp = std::sqrt(sq(c - (ax + t * ux)) + sq(r - (ay + t * uy)));
        double over = std::max(0.0, perp - flat);
        value = std::max(value, params.bridge_frac * params.peak *
                                    std::exp(-sq(over) / bridge_two_sigma2));
      }
      field.at(r, c) = value;
    }
  }
  return field;
}

}  // namespace stump
