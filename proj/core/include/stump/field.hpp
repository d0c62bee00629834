#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "stump/rng.hpp"

namespace stump {

// Dense 2D scalar field, row-major doubles.  Pixel (r, c) lives at linear
// index r * cols + c; that index doubles as the vertex id in the cubical
// complex, so everything downstream shares one addressing scheme.
class ScalarField {
 public:
  ScalarField() = default;
  ScalarField(int rows, int cols, double fill = 0.0);
  ScalarField(int rows, int cols, std::vector<double> values);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int size() const { return rows_ * cols_; }

  double& at(int r, int c) { return values_[static_cast<std::size_t>(r) * cols_ + c]; }
  double at(int r, int c) const { return values_[static_cast<std::size_t>(r) * cols_ + c]; }
  double& operator[](int i) { return values_[static_cast<std::size_t>(i)]; }
  double operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }

  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  bool same_shape(const ScalarField& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  double min_value() const;
  double max_value() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> values_;
};

// Gradients with respect to pixels have the same shape and addressing as the
// field they differentiate.
using PixelGradient = ScalarField;

// Sign flip of every pixel.  IEEE negation is exact, so negating twice
// restores the original bit for bit; superlevel tasks rely on this.
inline ScalarField negated(const ScalarField& field) {
  ScalarField out = field;
  for (int i = 0; i < out.size(); ++i) out[i] = -out[i];
  return out;
}

// Reads a field from disk.  Format is chosen by extension: ".png" accepts
// 8-bit and 16-bit grayscale (16-bit samples are scaled onto the 8-bit value
// range, 65535 -> 255.0), ".csv" reads one row per line with full-precision
// values.  Anything else, including color or oddly sized PNGs and ragged or
// non-numeric CSVs, throws std::runtime_error with a description.
ScalarField load_field(const std::string& path);

// Writes a field to disk, format again chosen by extension.  PNG output
// clamps to [0, 255] and rounds to the nearest integer (ties to even); CSV
// output uses shortest round-trip formatting so load_field(save_field(f))
// reproduces f bit for bit.
void save_field(const ScalarField& field, const std::string& path);

std::string field_to_csv(const ScalarField& field);
ScalarField field_from_csv(const std::string& text);

// Adds independent uniform noise in [-eps, eps] to every pixel, row-major
// draw order.  eps = 0 copies the input without consuming randomness.
ScalarField add_uniform_noise(const ScalarField& field, double eps, Rng& rng);

// Mean squared error against a reference of the same shape, and its gradient
// with respect to the first argument: (2 / P) * (f - ref).
double mse(const ScalarField& field, const ScalarField& reference);
PixelGradient mse_gradient(const ScalarField& field, const ScalarField& reference);

// Binary cross entropy after mapping values through p = clamp(v / 255, delta,
// 1 - delta) with delta = 1e-6.  The reference is mapped the same way and
// acts as the target probability.  Gradient is with respect to the raw
// (unmapped) first argument; pixels pinned at the clamp receive zero.
double binary_cross_entropy(const ScalarField& field, const ScalarField& reference);
PixelGradient binary_cross_entropy_gradient(const ScalarField& field,
                                            const ScalarField& reference);

// Tie-breaking ramp: out[i] = in[i] + i * eta with eta chosen so the largest
// offset is about 1e-9 of the value range.  Escalates eta until all output
// values are pairwise distinct, so downstream code may assume a generic
// field.
ScalarField make_generic(const ScalarField& field);

}  // namespace stump
