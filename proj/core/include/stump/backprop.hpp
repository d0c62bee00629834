#pragma once

#include "stump/downsample.hpp"
#include "stump/functional.hpp"
#include "stump/persistence.hpp"

namespace stump {

// Scatters a diagram gradient onto the pixels of the diagram's grid: birth
// partials land on birth vertices, death partials on death vertices,
// accumulating when dots share a pixel.  A nonzero death partial on an
// essential dot (clamp_to_max policy) lands on the grid's max-value pixel.
PixelGradient pullback_gradient(const DiagramGradient& dgrad, const PersistenceDiagram& diag);

// Adjoint of the linear downsample map: source pixel v in patch i receives
// coarse_grad(i) * omega_i(v).
PixelGradient compose_downsample_gradient(const PixelGradient& coarse_grad, const Weighting& w);

}  // namespace stump
