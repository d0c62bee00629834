#pragma once

#include "stump/field.hpp"
#include "stump/persistence.hpp"

namespace stump {

// Test oracle: persistence of a small field computed from first principles.
// For every pair of value thresholds it derives persistent Betti numbers
// from ranks of boundary matrices over Z/2 and reads dot multiplicities off
// their differences.  Shares no code with compute_persistence beyond the
// diagram type; dots carry values only (vertex fields are -1).  Cost grows
// like (pixel count)^2 rank computations, so keep inputs small (<= 8x8).
PersistenceDiagram brute_force_diagram(const ScalarField& field);

}  // namespace stump
