#pragma once

#include <utility>
#include <vector>

#include "stump/downsample.hpp"
#include "stump/field.hpp"
#include "stump/functional.hpp"
#include "stump/persistence.hpp"
#include "stump/rng.hpp"

namespace stump {

// Aggregate of per-slice rank matchings between two diagrams.  For each
// source dot: a list of (destination dot index, weight) pairs plus the
// weight matched to the diagonal; weights per source dot sum to 1 when the
// dot participates (finite, right dimension) and to 0 otherwise.
struct DiagramMatching {
  int hom_dim = 0;
  int n_proj = 0;
  std::vector<std::vector<std::pair<int, double>>> src_to_dst;
  std::vector<double> src_diagonal;
};

// Sliced matching with n_proj evenly spaced directions in [0, pi): project
// both diagrams onto each direction, augment each side with the diagonal
// projections of the other side's dots, sort, match by rank, and aggregate
// matches with weight 1/n_proj.  Essential dots do not participate (their
// death does not project); only dots of hom_dim are considered.  The rng is
// kept for future stochastic-direction variants and is currently unused.
DiagramMatching sliced_matching(const PersistenceDiagram& src, const PersistenceDiagram& dst,
                                int hom_dim, int n_proj, Rng& rng);

// Pushes a source diagram gradient through the matching: each destination
// dot accumulates weight-scaled source partials; diagonal mass is dropped.
DiagramGradient transfer_gradient(const DiagramGradient& src_grad,
                                  const DiagramMatching& matching,
                                  const PersistenceDiagram& dst);

struct SmearHeatmap {
  ScalarField birth_heat;
  ScalarField death_heat;
  int sample_count = 0;
};

// Critical-smear visualization: fix the diagram gradient of the input field,
// then repeatedly noise + downsample, match the reference diagram to the
// sample diagram, transfer the gradient, pull it back, and average the birth
// and death contributions separately over samples.  Samples draw from
// per-index sub-seeds, so sample s of an n-sample run equals sample s of any
// longer run with the same incoming rng state; accumulation happens in fixed
// chunks reduced pairwise, keeping the sum independent of evaluation order.
SmearHeatmap critical_smear(const ScalarField& field, const FunctionalSpec& funcspec,
                            const DownsampleSpec& downspec, double eps, int n_samples,
                            int n_proj, Rng& rng);

}  // namespace stump
