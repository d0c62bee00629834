#include "stump/brute_force.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace stump {

namespace {

using Bits = std::vector<std::uint64_t>;

void set_bit(Bits& b, int i) { b[static_cast<std::size_t>(i) / 64] ^= 1ULL << (i % 64); }

int highest_bit(const Bits& b) {
  for (int w = static_cast<int>(b.size()) - 1; w >= 0; --w) {
    if (b[static_cast<std::size_t>(w)]) {
      return w * 64 + 63 - std::countl_zero(b[static_cast<std::size_t>(w)]);
    }
  }
  return -1;
}

void xor_into(Bits& a, const Bits& b) {
  for (std::size_t w = 0; w < a.size(); ++w) a[w] ^= b[w];
}

// Incremental GF(2) column rank.
class Gf2Rank {
 public:
  explicit Gf2Rank(int n_rows)
      : pivots_(static_cast<std::size_t>(n_rows)), rank_(0) {}

  void add(Bits col) {
    int hi;
    while ((hi = highest_bit(col)) >= 0) {
      Bits& pivot = pivots_[static_cast<std::size_t>(hi)];
      if (pivot.empty()) {
        pivot = std::move(col);
        ++rank_;
        return;
      }
      xor_into(col, pivot);
    }
  }

  int rank() const { return rank_; }

 private:
  std::vector<Bits> pivots_;
  int rank_;
};

struct BoundaryCell {
  double value;
  int level;          // 1-based index of value among sorted thresholds
  int face_count;
  int faces[4];       // row indices one dimension down
};

// Rank of the boundary matrix restricted to columns with level <= j, with
// rows of level <= row_cut removed, recorded for every j.  out[j] is that
// rank; out[0] = 0.
std::vector<int> masked_rank_profile(const std::vector<BoundaryCell>& cells,
                                     const std::vector<int>& row_levels, int row_cut,
                                     int n_levels) {
  std::vector<const BoundaryCell*> order(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) order[i] = &cells[i];
  std::sort(order.begin(), order.end(),
            [](const BoundaryCell* a, const BoundaryCell* b) { return a->level < b->level; });

  int n_rows = static_cast<int>(row_levels.size());
  std::size_t words = static_cast<std::size_t>(n_rows + 63) / 64;
  Gf2Rank elim(n_rows);
  std::vector<int> out(static_cast<std::size_t>(n_levels) + 1, 0);
  std::size_t next = 0;
  for (int j = 1; j <= n_levels; ++j) {
    while (next < order.size() && order[next]->level <= j) {
      Bits col(words, 0);
      for (int k = 0; k < order[next]->face_count; ++k) {
        int row = order[next]->faces[k];
        if (row_levels[static_cast<std::size_t>(row)] > row_cut) set_bit(col, row);
      }
      elim.add(std::move(col));
      ++next;
    }
    out[static_cast<std::size_t>(j)] = elim.rank();
  }
  return out;
}

}  // namespace

PersistenceDiagram brute_force_diagram(const ScalarField& field) {
  const int rows = field.rows();
  const int cols = field.cols();
  const int n_pix = field.size();

  std::vector<double> thresholds = field.values();
  std::sort(thresholds.begin(), thresholds.end());
  if (std::adjacent_find(thresholds.begin(), thresholds.end()) != thresholds.end()) {
    throw std::invalid_argument("brute_force_diagram: duplicate values (run make_generic first)");
  }
  const int n = n_pix;  // one threshold per pixel value

  auto level_of = [&thresholds](double v) {
    auto it = std::lower_bound(thresholds.begin(), thresholds.end(), v);
    return static_cast<int>(it - thresholds.begin()) + 1;
  };

  std::vector<int> vertex_level(static_cast<std::size_t>(n_pix));
  for (int i = 0; i < n_pix; ++i) vertex_level[static_cast<std::size_t>(i)] = level_of(field[i]);

  // Independent enumeration of edges and squares with their own dense
  // per-dimension row indexing (deliberately not shared with the cubical
  // module).
  std::vector<BoundaryCell> edges;
  std::vector<int> edge_level;
  auto push_edge = [&](int a, int b) {
    BoundaryCell e;
    e.value = std::max(field[a], field[b]);
    e.level = level_of(e.value);
    e.face_count = 2;
    e.faces[0] = a;
    e.faces[1] = b;
    edges.push_back(e);
    edge_level.push_back(e.level);
  };
  std::vector<std::vector<int>> hedge_index(static_cast<std::size_t>(rows),
                                            std::vector<int>(static_cast<std::size_t>(cols), -1));
  std::vector<std::vector<int>> vedge_index = hedge_index;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c + 1 < cols; ++c) {
      hedge_index[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
          static_cast<int>(edges.size());
      push_edge(r * cols + c, r * cols + c + 1);
    }
  }
  for (int r = 0; r + 1 < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      vedge_index[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
          static_cast<int>(edges.size());
      push_edge(r * cols + c, (r + 1) * cols + c);
    }
  }
  std::vector<BoundaryCell> squares;
  for (int r = 0; r + 1 < rows; ++r) {
    for (int c = 0; c + 1 < cols; ++c) {
      BoundaryCell s;
      s.value = std::max(std::max(field.at(r, c), field.at(r, c + 1)),
                         std::max(field.at(r + 1, c), field.at(r + 1, c + 1)));
      s.level = level_of(s.value);
      s.face_count = 4;
      s.faces[0] = hedge_index[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
      s.faces[1] = hedge_index[static_cast<std::size_t>(r + 1)][static_cast<std::size_t>(c)];
      s.faces[2] = vedge_index[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
      s.faces[3] = vedge_index[static_cast<std::size_t>(r)][static_cast<std::size_t>(c + 1)];
      squares.push_back(s);
    }
  }

  // Cumulative cell counts and unrestricted boundary ranks per level.
  std::vector<int> n0(static_cast<std::size_t>(n) + 1, 0), n1 = n0;
  for (int lv : vertex_level) ++n0[static_cast<std::size_t>(lv)];
  for (int lv : edge_level) ++n1[static_cast<std::size_t>(lv)];
  for (int j = 1; j <= n; ++j) {
    n0[static_cast<std::size_t>(j)] += n0[static_cast<std::size_t>(j) - 1];
    n1[static_cast<std::size_t>(j)] += n1[static_cast<std::size_t>(j) - 1];
  }
  std::vector<int> r1 = masked_rank_profile(edges, vertex_level, 0, n);
  std::vector<int> r2 = masked_rank_profile(squares, edge_level, 0, n);

  // Persistent Betti numbers: beta_k(i,j) = dim Z_k(K_i) - dim(Z_k(K_i) n
  // B_k(K_j)), the second term being rank d_{k+1}(K_j) minus its rank after
  // deleting the rows already present in K_i.
  auto betti_table = [&](int k) {
    std::vector<std::vector<int>> beta(static_cast<std::size_t>(n) + 1,
                                       std::vector<int>(static_cast<std::size_t>(n) + 1, 0));
    const std::vector<int>& rk = (k == 0) ? r1 : r2;  // rank of d_{k+1}
    for (int i = 0; i <= n; ++i) {
      int z;
      if (k == 0) {
        z = n0[static_cast<std::size_t>(i)];  // d_0 = 0
      } else {
        // dim Z_1(K_i) = #edges(K_i) - rank d_1(K_i)
        z = n1[static_cast<std::size_t>(i)] - r1[static_cast<std::size_t>(i)];
      }
      std::vector<int> masked = masked_rank_profile((k == 0) ? edges : squares,
                                                    (k == 0) ? vertex_level : edge_level, i, n);
      for (int j = i; j <= n; ++j) {
        int boundaries_inside =
            rk[static_cast<std::size_t>(j)] - masked[static_cast<std::size_t>(j)];
        beta[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = z - boundaries_inside;
      }
    }
    return beta;
  };

  PersistenceDiagram diag;
  diag.rows = rows;
  diag.cols = cols;
  diag.max_value = thresholds.back();

  for (int k = 0; k <= 1; ++k) {
    auto beta = betti_table(k);
    for (int i = 1; i <= n; ++i) {
      for (int j = i + 1; j <= n; ++j) {
        int mult = beta[static_cast<std::size_t>(i)][static_cast<std::size_t>(j) - 1] -
                   beta[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -
                   beta[static_cast<std::size_t>(i) - 1][static_cast<std::size_t>(j) - 1] +
                   beta[static_cast<std::size_t>(i) - 1][static_cast<std::size_t>(j)];
        if (mult < 0) throw std::logic_error("brute_force_diagram: negative multiplicity");
        for (int m = 0; m < mult; ++m) {
          Dot dot;
          dot.dim = k;
          dot.birth = thresholds[static_cast<std::size_t>(i) - 1];
          dot.death = thresholds[static_cast<std::size_t>(j) - 1];
          dot.birth_vertex = -1;
          diag.dots.push_back(dot);
        }
      }
      int essential = beta[static_cast<std::size_t>(i)][static_cast<std::size_t>(n)] -
                      beta[static_cast<std::size_t>(i) - 1][static_cast<std::size_t>(n)];
      if (essential < 0) throw std::logic_error("brute_force_diagram: negative multiplicity");
      for (int m = 0; m < essential; ++m) {
        Dot dot;
        dot.dim = k;
        dot.birth = thresholds[static_cast<std::size_t>(i) - 1];
        dot.birth_vertex = -1;
        diag.dots.push_back(dot);
      }
    }
  }

  std::sort(diag.dots.begin(), diag.dots.end(), [](const Dot& a, const Dot& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    if (a.birth != b.birth) return a.birth < b.birth;
    return a.death < b.death;
  });
  return diag;
}

}  // namespace stump
