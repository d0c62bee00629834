#pragma once

#include <unistd.h>

#include <algorithm>
#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include "stump/field.hpp"
#include "stump/persistence.hpp"
#include "stump/rng.hpp"

namespace testutil {

using namespace stump;

// Field with well-separated pairwise-distinct values: a shuffled arithmetic
// progression.  Separation `scale` keeps finite-difference probes far from
// any tie or pairing switch.
inline ScalarField separated_field(int rows, int cols, Rng& rng, double scale = 4.0) {
  std::vector<double> vals(static_cast<std::size_t>(rows) * cols);
  for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = scale * static_cast<double>(i);
  std::shuffle(vals.begin(), vals.end(), rng);
  return ScalarField(rows, cols, vals);
}

inline ScalarField uniform_field(int rows, int cols, double lo, double hi, Rng& rng) {
  std::vector<double> vals(static_cast<std::size_t>(rows) * cols);
  for (double& v : vals) v = uniform_in(rng, lo, hi);
  return ScalarField(rows, cols, vals);
}

// (dim, birth, death) multiset for comparing diagrams that may disagree on
// vertex attribution.
inline std::vector<std::array<double, 3>> value_multiset(const PersistenceDiagram& diag) {
  std::vector<std::array<double, 3>> keys;
  keys.reserve(diag.dots.size());
  for (const Dot& dot : diag.dots)
    keys.push_back({static_cast<double>(dot.dim), dot.birth, dot.death});
  std::sort(keys.begin(), keys.end());
  return keys;
}

inline int count_dots(const PersistenceDiagram& diag, int dim, double life_min) {
  int n = 0;
  for (const Dot& dot : diag.dots)
    if (dot.dim == dim && dot.lifetime() > life_min) ++n;
  return n;
}

// Unique scratch directory under the system temp root.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            (tag + "_" + std::to_string(++counter) + "_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  std::string file(const std::string& name) const { return (path_ / name).string(); }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace testutil
