#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "stump/field.hpp"

namespace stump {

// One cell of the cubical complex on the pixel grid: vertices are pixels,
// edges join 4-neighbors, squares fill unit quads.  Under the lower-star
// (V-construction) rule a cell's value is the max of its vertex values and
// its critical vertex is the pixel attaining that max.
struct Cell {
  std::int32_t id = -1;               // geometric id, stable across sorts
  std::int8_t dim = 0;
  std::int8_t n_vertices = 0;
  std::int8_t n_faces = 0;
  std::int32_t critical_vertex = -1;  // pixel linear index
  double value = 0.0;
  std::array<std::int32_t, 4> vertices{};  // pixel linear indices
  std::array<std::int32_t, 4> faces{};     // ids of codimension-1 faces
};

// Cells sorted by (value, dim, id).  With distinct vertex values this is a
// valid filtration order: every face of a cell has value ≤ the cell's value,
// and equal-value faces (sharing the critical vertex) have smaller dim.
struct CubicalFiltration {
  int rows = 0;
  int cols = 0;
  std::vector<Cell> cells;

  int vertex_count() const { return rows * cols; }
  int edge_count() const { return rows * (cols - 1) + (rows - 1) * cols; }
  int square_count() const { return (rows - 1) * (cols - 1); }
  int cell_count() const { return vertex_count() + edge_count() + square_count(); }
};

// Cell-id layout, shared with tests: vertices first, then horizontal edges
// row by row, then vertical edges, then squares.
inline std::int32_t vertex_id(int rows, int cols, int r, int c) {
  (void)rows;
  return r * cols + c;
}
inline std::int32_t hedge_id(int rows, int cols, int r, int c) {
  (void)rows;
  return rows * cols + r * (cols - 1) + c;
}
inline std::int32_t vedge_id(int rows, int cols, int r, int c) {
  return rows * cols + rows * (cols - 1) + r * cols + c;
}
inline std::int32_t square_id(int rows, int cols, int r, int c) {
  return rows * cols + rows * (cols - 1) + (rows - 1) * cols + r * (cols - 1) + c;
}

// Builds the full filtration of a field.  Callers are expected to have run
// make_generic first; ties are still handled deterministically (smallest
// pixel index wins the critical vertex, sort falls back to dim then id).
CubicalFiltration build_filtration(const ScalarField& field);

// Rank transform: the pixel holding the k-th smallest value maps to k-1.
// Throws on duplicate values.  Persistence of the ordinal field has the same
// pairings as the original, which is the basis of several tests.
ScalarField ordinal_field(const ScalarField& field);

}  // namespace stump
