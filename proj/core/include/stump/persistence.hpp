#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "stump/cubical.hpp"
#include "stump/field.hpp"

namespace stump {

// One birth-death pair.  Essential features carry death = +inf and
// death_vertex = -1.  Equal-value (zero persistence) pairs are dropped
// during reduction and never appear here.
struct Dot {
  int dim = 0;
  double birth = 0.0;
  double death = std::numeric_limits<double>::infinity();
  std::int32_t birth_vertex = -1;
  std::int32_t death_vertex = -1;

  bool essential() const { return std::isinf(death); }
  double lifetime() const { return death - birth; }
};

struct PersistenceDiagram {
  int rows = 0;
  int cols = 0;
  std::vector<Dot> dots;  // sorted by (dim, birth, death, birth_vertex)
  // Largest vertex value of the underlying field and the pixel attaining it;
  // used when a functional clamps essential deaths to the field maximum.
  double max_value = 0.0;
  std::int32_t max_vertex = -1;
};

// Boundary-matrix reduction over Z/2 with the twist/clearing optimization:
// squares are reduced first and the edges they pair with are cleared before
// the edge pass.  Throws if the cell order is not a filtration (a face
// appearing after its coface).
PersistenceDiagram compute_persistence(const CubicalFiltration& filt);

// Convenience wrapper: filtration plus reduction of the field exactly as
// given, so dot values read back verbatim.  Inputs with ties need an
// explicit make_generic first.
PersistenceDiagram diagram_of(const ScalarField& field);

// CSV rows "dim,birth,death,birth_vertex,death_vertex" after a header line,
// with "inf" for essential deaths and "none" for their missing vertex.
std::string diagram_to_csv(const PersistenceDiagram& diag);
void save_diagram(const PersistenceDiagram& diag, const std::string& path);

}  // namespace stump
