#include "stump/cubical.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace stump {

namespace {

Cell make_cell(const ScalarField& f, std::int32_t id, int dim,
               std::initializer_list<std::int32_t> verts,
               std::initializer_list<std::int32_t> faces) {
  Cell cell;
  cell.id = id;
  cell.dim = static_cast<std::int8_t>(dim);
  cell.n_vertices = static_cast<std::int8_t>(verts.size());
  cell.n_faces = static_cast<std::int8_t>(faces.size());
  int i = 0;
  for (std::int32_t v : verts) cell.vertices[i++] = v;
  i = 0;
  for (std::int32_t fid : faces) cell.faces[i++] = fid;
  cell.critical_vertex = cell.vertices[0];
  cell.value = f[cell.vertices[0]];
  for (int k = 1; k < cell.n_vertices; ++k) {
    double v = f[cell.vertices[k]];
    if (v > cell.value) {
      cell.value = v;
      cell.critical_vertex = cell.vertices[k];
    }
  }
  return cell;
}

}  // namespace

CubicalFiltration build_filtration(const ScalarField& field) {
  const int rows = field.rows();
  const int cols = field.cols();
  CubicalFiltration filt;
  filt.rows = rows;
  filt.cols = cols;
  filt.cells.reserve(static_cast<std::size_t>(filt.cell_count()));

  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      std::int32_t v = vertex_id(rows, cols, r, c);
      filt.cells.push_back(make_cell(field, v, 0, {v}, {}));
    }
  }
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c + 1 < cols; ++c) {
      std::int32_t a = vertex_id(rows, cols, r, c);
      std::int32_t b = vertex_id(rows, cols, r, c + 1);
      filt.cells.push_back(make_cell(field, hedge_id(rows, cols, r, c), 1, {a, b}, {a, b}));
    }
  }
  for (int r = 0; r + 1 < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      std::int32_t a = vertex_id(rows, cols, r, c);
      std::int32_t b = vertex_id(rows, cols, r + 1, c);
      filt.cells.push_back(make_cell(field, vedge_id(rows, cols, r, c), 1, {a, b}, {a, b}));
    }
  }
  for (int r = 0; r + 1 < rows; ++r) {
    for (int c = 0; c + 1 < cols; ++c) {
      std::int32_t v00 = vertex_id(rows, cols, r, c);
      std::int32_t v01 = vertex_id(rows, cols, r, c + 1);
      std::int32_t v10 = vertex_id(rows, cols, r + 1, c);
      std::int32_t v11 = vertex_id(rows, cols, r + 1, c + 1);
      filt.cells.push_back(make_cell(field, square_id(rows, cols, r, c), 2,
                                     {v00, v01, v10, v11},
                                     {hedge_id(rows, cols, r, c), hedge_id(rows, cols, r + 1, c),
                                      vedge_id(rows, cols, r, c), vedge_id(rows, cols, r, c + 1)}));
    }
  }

  std::sort(filt.cells.begin(), filt.cells.end(), [](const Cell& a, const Cell& b) {
    if (a.value != b.value) return a.value < b.value;
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.id < b.id;
  });
  return filt;
}

ScalarField ordinal_field(const ScalarField& field) {
  const int n = field.size();
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&field](int a, int b) { return field[a] < field[b]; });
  ScalarField out(field.rows(), field.cols());
  for (int rank = 0; rank < n; ++rank) {
    if (rank > 0 && field[order[rank]] == field[order[rank - 1]]) {
      throw std::invalid_argument("ordinal_field: duplicate values (run make_generic first)");
    }
    out[order[rank]] = static_cast<double>(rank);
  }
  return out;
}

}  // namespace stump
