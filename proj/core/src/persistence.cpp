#include "stump/persistence.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <stdexcept>

namespace stump {

namespace {

// Symmetric difference of two sorted position lists (Z/2 column addition).
void add_column(std::vector<std::int32_t>& col, const std::vector<std::int32_t>& other,
                std::vector<std::int32_t>& scratch) {
  scratch.clear();
  std::set_symmetric_difference(col.begin(), col.end(), other.begin(), other.end(),
                                std::back_inserter(scratch));
  col.swap(scratch);
}

}  // namespace

PersistenceDiagram compute_persistence(const CubicalFiltration& filt) {
  const int n = static_cast<int>(filt.cells.size());
  if (n != filt.cell_count()) {
    throw std::invalid_argument("compute_persistence: filtration has wrong cell count");
  }

  std::vector<std::int32_t> pos_of_id(static_cast<std::size_t>(n), -1);
  for (int p = 0; p < n; ++p) {
    std::int32_t id = filt.cells[static_cast<std::size_t>(p)].id;
    if (id < 0 || id >= n || pos_of_id[static_cast<std::size_t>(id)] != -1) {
      throw std::invalid_argument("compute_persistence: bad or duplicate cell id");
    }
    pos_of_id[static_cast<std::size_t>(id)] = p;
  }

  // pivot_owner[row] = position of the reduced column whose low entry is row;
  // vertex rows and edge rows never collide, so one array serves both passes.
  std::vector<std::int32_t> pivot_owner(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<std::int32_t>> columns(static_cast<std::size_t>(n));
  std::vector<char> cleared(static_cast<std::size_t>(n), 0);
  std::vector<std::int32_t> col, scratch;

  PersistenceDiagram diag;
  diag.rows = filt.rows;
  diag.cols = filt.cols;

  auto emit_pair = [&](const Cell& born, const Cell& died) {
    if (born.value == died.value) return;  // zero persistence
    Dot dot;
    dot.dim = born.dim;
    dot.birth = born.value;
    dot.death = died.value;
    dot.birth_vertex = born.critical_vertex;
    dot.death_vertex = died.critical_vertex;
    diag.dots.push_back(dot);
  };

  auto reduce_cells_of_dim = [&](int dim) {
    for (int p = 0; p < n; ++p) {
      const Cell& cell = filt.cells[static_cast<std::size_t>(p)];
      if (cell.dim != dim || cleared[static_cast<std::size_t>(p)]) continue;
      col.clear();
      for (int k = 0; k < cell.n_faces; ++k) {
        std::int32_t fp = pos_of_id[static_cast<std::size_t>(cell.faces[k])];
        if (fp >= p) {
          throw std::invalid_argument("compute_persistence: face after coface (not a filtration)");
        }
        col.push_back(fp);
      }
      std::sort(col.begin(), col.end());
      while (!col.empty()) {
        std::int32_t low = col.back();
        std::int32_t owner = pivot_owner[static_cast<std::size_t>(low)];
        if (owner < 0) {
          pivot_owner[static_cast<std::size_t>(low)] = p;
          columns[static_cast<std::size_t>(p)] = col;
          emit_pair(filt.cells[static_cast<std::size_t>(low)], cell);
          if (dim == 2) cleared[static_cast<std::size_t>(low)] = 1;
          break;
        }
        add_column(col, columns[static_cast<std::size_t>(owner)], scratch);
      }
      if (col.empty() && dim == 1) {
        // An edge whose column vanishes creates a 1-cycle that nothing above
        // it kills (the squares were already reduced).  Full grids never hit
        // this, but partial complexes fed through tests may.
        Dot dot;
        dot.dim = 1;
        dot.birth = cell.value;
        dot.birth_vertex = cell.critical_vertex;
        diag.dots.push_back(dot);
      }
    }
  };

  reduce_cells_of_dim(2);
  reduce_cells_of_dim(1);

  for (int p = 0; p < n; ++p) {
    const Cell& cell = filt.cells[static_cast<std::size_t>(p)];
    if (cell.dim != 0) continue;
    if (cell.value > diag.max_value || diag.max_vertex < 0) {
      diag.max_value = cell.value;
      diag.max_vertex = cell.critical_vertex;
    }
    if (pivot_owner[static_cast<std::size_t>(p)] < 0) {
      Dot dot;
      dot.dim = 0;
      dot.birth = cell.value;
      dot.birth_vertex = cell.critical_vertex;
      diag.dots.push_back(dot);
    }
  }

  std::sort(diag.dots.begin(), diag.dots.end(), [](const Dot& a, const Dot& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    if (a.birth != b.birth) return a.birth < b.birth;
    if (a.death != b.death) return a.death < b.death;
    return a.birth_vertex < b.birth_vertex;
  });
  return diag;
}

PersistenceDiagram diagram_of(const ScalarField& field) {
  return compute_persistence(build_filtration(field));
}

std::string diagram_to_csv(const PersistenceDiagram& diag) {
  std::string out = "dim,birth,death,birth_vertex,death_vertex\n";
  char buf[64];
  auto append_real = [&](double v) {
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    out.append(buf, res.ptr);
  };
  for (const Dot& dot : diag.dots) {
    out += std::to_string(dot.dim);
    out.push_back(',');
    append_real(dot.birth);
    out.push_back(',');
    if (dot.essential()) {
      out += "inf,";
    } else {
      append_real(dot.death);
      out.push_back(',');
    }
    out += std::to_string(dot.birth_vertex);
    out.push_back(',');
    out += dot.essential() ? "none" : std::to_string(dot.death_vertex);
    out.push_back('\n');
  }
  return out;
}

void save_diagram(const PersistenceDiagram& diag, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << diagram_to_csv(diag);
  if (!out) throw std::runtime_error("failed to write " + path);
}

}  // namespace stump
