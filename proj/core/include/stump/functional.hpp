#pragma once

#include <limits>
#include <vector>

#include "stump/persistence.hpp"

namespace stump {

enum class Sign { minimize, maximize };
enum class EndpointMask { births_only, deaths_only, both };
enum class EssentialPolicy { exclude, clamp_to_max };

// Dot selection window in birth-lifetime coordinates.  All four bounds are
// strict, which makes the +-inf defaults behave uniformly and puts zero
// gradient on the boundary itself.
struct RegionSpec {
  double birth_min = -std::numeric_limits<double>::infinity();
  double birth_max = std::numeric_limits<double>::infinity();
  double life_min = 0.0;
  double life_max = std::numeric_limits<double>::infinity();

  bool contains(double birth, double life) const {
    return birth > birth_min && birth < birth_max && life > life_min && life < life_max;
  }
};

// Defines the topological functional: sum of (death - birth)^p over selected
// dots, negated under maximize so downstream code always descends.
struct FunctionalSpec {
  double p = 1.0;  // 1 and 2 are the supported/tested exponents
  RegionSpec region;
  int hom_dim = 0;
  Sign sign = Sign::minimize;
  EndpointMask endpoints = EndpointMask::both;
  EssentialPolicy essentials = EssentialPolicy::exclude;
};

// The convention used by the task presets: dimension-0 functionals clamp the
// essential death to the field maximum so component-counting tasks see every
// component; dimension-1 functionals drop essentials.
inline EssentialPolicy default_essential_policy(int hom_dim) {
  return hom_dim == 0 ? EssentialPolicy::clamp_to_max : EssentialPolicy::exclude;
}

// Partial derivatives of the functional per diagram dot, parallel to
// diag.dots.  Entries are zero for unselected dots and masked endpoints.
struct DiagramGradient {
  std::vector<double> d_birth;
  std::vector<double> d_death;
};

double wasserstein_norm(const PersistenceDiagram& diag, const FunctionalSpec& spec);
DiagramGradient diagram_gradient(const PersistenceDiagram& diag, const FunctionalSpec& spec);

// alpha * topo + (1 - alpha) * data; throws unless alpha is in [0, 1].
double mixed_loss(double topo, double data, double alpha);

}  // namespace stump
