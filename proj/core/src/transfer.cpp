#include "stump/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "stump/backprop.hpp"

namespace stump {

namespace {

struct Projected {
  double value;
  bool is_diagonal;
  int index;  // dot index in its own diagram; -1 groups for diagonal points

  bool operator<(const Projected& other) const {
    if (value != other.value) return value < other.value;
    if (is_diagonal != other.is_diagonal) return !is_diagonal;  // real dots first
    return index < other.index;
  }
};

}  // namespace

DiagramMatching sliced_matching(const PersistenceDiagram& src, const PersistenceDiagram& dst,
                                int hom_dim, int n_proj, Rng& rng) {
  (void)rng;
  if (n_proj < 1) throw std::invalid_argument("sliced_matching: need at least one projection");
  DiagramMatching matching;
  matching.hom_dim = hom_dim;
  matching.n_proj = n_proj;
  matching.src_to_dst.resize(src.dots.size());
  matching.src_diagonal.assign(src.dots.size(), 0.0);

  std::vector<int> src_ids, dst_ids;
  for (std::size_t i = 0; i < src.dots.size(); ++i) {
    if (src.dots[i].dim == hom_dim && !src.dots[i].essential()) {
      src_ids.push_back(static_cast<int>(i));
    }
  }
  for (std::size_t i = 0; i < dst.dots.size(); ++i) {
    if (dst.dots[i].dim == hom_dim && !dst.dots[i].essential()) {
      dst_ids.push_back(static_cast<int>(i));
    }
  }
  if (src_ids.empty() && dst_ids.empty()) return matching;

  const std::size_t total = src_ids.size() + dst_ids.size();
  std::vector<Projected> side_a(total), side_b(total);
  std::map<std::pair<int, int>, int> pair_counts;
  std::vector<int> diagonal_counts(src_ids.size(), 0);

  for (int t = 0; t < n_proj; ++t) {
    double theta = std::numbers::pi * t / n_proj;
    double cx = std::cos(theta), cy = std::sin(theta);
    // Side A: real source dots plus diagonal projections of destination
    // dots; side B symmetrically.  A diagonal projection of (b, d) is the
    // midpoint ((b+d)/2, (b+d)/2).
    std::size_t k = 0;
    for (int id : src_ids) {
      const Dot& dot = src.dots[static_cast<std::size_t>(id)];
      side_a[k++] = {dot.birth * cx + dot.death * cy, false, id};
    }
    for (int id : dst_ids) {
      const Dot& dot = dst.dots[static_cast<std::size_t>(id)];
      double mid = 0.5 * (dot.birth + dot.death);
      side_a[k++] = {mid * (cx + cy), true, id};
    }
    k = 0;
    for (int id : dst_ids) {
      const Dot& dot = dst.dots[static_cast<std::size_t>(id)];
      side_b[k++] = {dot.birth * cx + dot.death * cy, false, id};
    }
    for (int id : src_ids) {
      const Dot& dot = src.dots[static_cast<std::size_t>(id)];
      double mid = 0.5 * (dot.birth + dot.death);
      side_b[k++] = {mid * (cx + cy), true, id};
    }
    std::sort(side_a.begin(), side_a.end());
    std::sort(side_b.begin(), side_b.end());
    for (std::size_t r = 0; r < total; ++r) {
      if (side_a[r].is_diagonal) continue;  // destination diagonal mass, untracked
      int s = side_a[r].index;
      if (side_b[r].is_diagonal) {
        int rank = static_cast<int>(std::lower_bound(src_ids.begin(), src_ids.end(), s) -
                                    src_ids.begin());
        ++diagonal_counts[static_cast<std::size_t>(rank)];
      } else {
        ++pair_counts[{s, side_b[r].index}];
      }
    }
  }

  for (const auto& [key, count] : pair_counts) {
    matching.src_to_dst[static_cast<std::size_t>(key.first)].push_back(
        {key.second, static_cast<double>(count) / n_proj});
  }
  for (std::size_t r = 0; r < src_ids.size(); ++r) {
    matching.src_diagonal[static_cast<std::size_t>(src_ids[r])] =
        static_cast<double>(diagonal_counts[r]) / n_proj;
  }
  return matching;
}

DiagramGradient transfer_gradient(const DiagramGradient& src_grad,
                                  const DiagramMatching& matching,
                                  const PersistenceDiagram& dst) {
  if (src_grad.d_birth.size() != matching.src_to_dst.size()) {
    throw std::invalid_argument("transfer_gradient: gradient does not match the matching");
  }
  DiagramGradient out;
  out.d_birth.assign(dst.dots.size(), 0.0);
  out.d_death.assign(dst.dots.size(), 0.0);
  for (std::size_t s = 0; s < matching.src_to_dst.size(); ++s) {
    for (const auto& [d, weight] : matching.src_to_dst[s]) {
      if (d < 0 || static_cast<std::size_t>(d) >= dst.dots.size()) {
        throw std::out_of_range("transfer_gradient: destination index out of range");
      }
      out.d_birth[static_cast<std::size_t>(d)] += weight * src_grad.d_birth[s];
      out.d_death[static_cast<std::size_t>(d)] += weight * src_grad.d_death[s];
    }
  }
  return out;
}

namespace {

void accumulate(ScalarField& acc, const ScalarField& term) {
  for (int i = 0; i < acc.size(); ++i) acc[i] += term[i];
}

}  // namespace

SmearHeatmap critical_smear(const ScalarField& field, const FunctionalSpec& funcspec,
                            const DownsampleSpec& downspec, double eps, int n_samples,
                            int n_proj, Rng& rng) {
  if (n_samples < 1) throw std::invalid_argument("critical_smear: need at least one sample");
  PersistenceDiagram ref = compute_persistence(build_filtration(make_generic(field)));
  DiagramGradient ref_grad = diagram_gradient(ref, funcspec);

  const std::uint64_t base_seed = rng();
  constexpr int kChunks = 8;
  std::vector<ScalarField> birth_acc(kChunks, ScalarField(field.rows(), field.cols()));
  std::vector<ScalarField> death_acc(kChunks, ScalarField(field.rows(), field.cols()));

  for (int chunk = 0; chunk < kChunks; ++chunk) {
    int lo = static_cast<int>(static_cast<long>(n_samples) * chunk / kChunks);
    int hi = static_cast<int>(static_cast<long>(n_samples) * (chunk + 1) / kChunks);
    for (int s = lo; s < hi; ++s) {
      Rng sample_rng(mix_seed(base_seed, static_cast<std::uint64_t>(s)));
      ScalarField noisy = add_uniform_noise(field, eps, sample_rng);
      Weighting w = sample_weighting(downspec, field.rows(), field.cols(), sample_rng);
      ScalarField coarse = make_generic(downsample(noisy, w));
      PersistenceDiagram sample_diag = compute_persistence(build_filtration(coarse));
      DiagramMatching matching =
          sliced_matching(ref, sample_diag, funcspec.hom_dim, n_proj, sample_rng);
      DiagramGradient moved = transfer_gradient(ref_grad, matching, sample_diag);

      DiagramGradient births{moved.d_birth, std::vector<double>(moved.d_death.size(), 0.0)};
      DiagramGradient deaths{std::vector<double>(moved.d_birth.size(), 0.0), moved.d_death};
      accumulate(birth_acc[static_cast<std::size_t>(chunk)],
                 compose_downsample_gradient(pullback_gradient(births, sample_diag), w));
      accumulate(death_acc[static_cast<std::size_t>(chunk)],
                 compose_downsample_gradient(pullback_gradient(deaths, sample_diag), w));
    }
  }

  // Pairwise reduction in a fixed tree so the total does not depend on how
  // chunks were scheduled.
  for (int stride = 1; stride < kChunks; stride *= 2) {
    for (int i = 0; i + stride < kChunks; i += 2 * stride) {
      accumulate(birth_acc[static_cast<std::size_t>(i)],
                 birth_acc[static_cast<std::size_t>(i + stride)]);
      accumulate(death_acc[static_cast<std::size_t>(i)],
                 death_acc[static_cast<std::size_t>(i + stride)]);
    }
  }
  SmearHeatmap heat{std::move(birth_acc[0]), std::move(death_acc[0]), n_samples};
  for (int i = 0; i < heat.birth_heat.size(); ++i) {
    heat.birth_heat[i] /= n_samples;
    heat.death_heat[i] /= n_samples;
  }
  return heat;
}

}  // namespace stump
