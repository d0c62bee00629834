#include "stump/functional.hpp"

#include <cmath>
#include <stdexcept>

namespace stump {

namespace {

// Effective (birth, death) of a dot under the essential policy, or nullopt
// expressed as selected=false.
struct Selected {
  bool in = false;
  double birth = 0.0;
  double death = 0.0;
};

Selected select_dot(const Dot& dot, const PersistenceDiagram& diag,
                    const FunctionalSpec& spec) {
  Selected s;
  if (dot.dim != spec.hom_dim) return s;
  s.birth = dot.birth;
  s.death = dot.death;
  if (dot.essential()) {
    if (spec.essentials == EssentialPolicy::exclude) return s;
    s.death = diag.max_value;
  }
  s.in = spec.region.contains(s.birth, s.death - s.birth);
  return s;
}

}  // namespace

double wasserstein_norm(const PersistenceDiagram& diag, const FunctionalSpec& spec) {
  double acc = 0.0;
  for (const Dot& dot : diag.dots) {
    Selected s = select_dot(dot, diag, spec);
    if (!s.in) continue;
    acc += std::pow(s.death - s.birth, spec.p);
  }
  return spec.sign == Sign::maximize ? -acc : acc;
}

DiagramGradient diagram_gradient(const PersistenceDiagram& diag, const FunctionalSpec& spec) {
  DiagramGradient grad;
  grad.d_birth.assign(diag.dots.size(), 0.0);
  grad.d_death.assign(diag.dots.size(), 0.0);
  const double flip = spec.sign == Sign::maximize ? -1.0 : 1.0;
  for (std::size_t i = 0; i < diag.dots.size(); ++i) {
    Selected s = select_dot(diag.dots[i], diag, spec);
    if (!s.in) continue;
    double base = spec.p * std::pow(s.death - s.birth, spec.p - 1.0);
    if (spec.endpoints != EndpointMask::deaths_only) grad.d_birth[i] = -flip * base;
    if (spec.endpoints != EndpointMask::births_only) grad.d_death[i] = flip * base;
  }
  return grad;
}

double mixed_loss(double topo, double data, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("mixed_loss: alpha must be in [0, 1]");
  }
  return alpha * topo + (1.0 - alpha) * data;
}

}  // namespace stump
