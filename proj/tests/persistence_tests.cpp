#include <cmath>
#include <string>

#include "doctest.h"
#include "helpers.hpp"
#include "stump/brute_force.hpp"
#include "stump/persistence.hpp"

using namespace stump;

TEST_CASE("1x3 field [0,2,1]: one essential component and one finite merge") {
  PersistenceDiagram diag = compute_persistence(build_filtration(ScalarField(1, 3, {0, 2, 1})));
  REQUIRE(diag.dots.size() == 2);

  const Dot& essential = diag.dots[0];
  CHECK(essential.dim == 0);
  CHECK(essential.birth == 0.0);
  CHECK(essential.essential());
  CHECK(essential.birth_vertex == 0);

  const Dot& finite = diag.dots[1];
  CHECK(finite.dim == 0);
  CHECK(finite.birth == 1.0);
  CHECK(finite.death == 2.0);
  CHECK(finite.birth_vertex == 2);
  CHECK(finite.death_vertex == 1);
}

TEST_CASE("strictly monotone 1xN has only the essential dot") {
  PersistenceDiagram diag = compute_persistence(build_filtration(ScalarField(1, 5, {0, 1, 2, 3, 4})));
  REQUIRE(diag.dots.size() == 1);
  CHECK(diag.dots[0].essential());
  CHECK(diag.dots[0].birth == 0.0);
  CHECK(diag.dots[0].birth_vertex == 0);
}

TEST_CASE("[[1,2],[3,4]] collapses to a single essential dot") {
  // Every dim-0 merge and the square's cycle-fill happen at equal values, so
  // all finite pairs have zero persistence and are dropped.
  PersistenceDiagram diag = compute_persistence(build_filtration(ScalarField(2, 2, {1, 2, 3, 4})));
  REQUIRE(diag.dots.size() == 1);
  CHECK(diag.dots[0].dim == 0);
  CHECK(diag.dots[0].birth == 1.0);
  CHECK(diag.dots[0].essential());
  CHECK(diag.dots[0].birth_vertex == 0);
  CHECK(diag.max_value == 4.0);
  CHECK(diag.max_vertex == 3);
}

TEST_CASE("diagram records the global max for essential-death clamping") {
  Rng rng(47);
  ScalarField f = testutil::separated_field(4, 4, rng);
  PersistenceDiagram diag = diagram_of(f);
  int argmax = 0;
  for (std::size_t i = 1; i < f.values().size(); ++i)
    if (f[i] > f[argmax]) argmax = static_cast<int>(i);
  CHECK(diag.max_vertex == argmax);
  CHECK(diag.max_value == f[argmax]);
}

TEST_CASE("dim-1 dot tracks a low ring around a high center") {
  // Low center: every small cycle is filled the moment it closes, so no
  // dim-1 dot survives the zero-persistence drop.
  ScalarField flat(3, 3, {10, 11, 12, 17, 1, 13, 16, 15, 14});
  PersistenceDiagram diag = diagram_of(flat);
  CHECK(testutil::count_dots(diag, 1, -1.0) == 0);

  // High center: the ring closes at its max (17, vertex 3) and is filled
  // only when the center (100, vertex 4) arrives with its four squares.
  ScalarField crater(3, 3, {10, 11, 12, 17, 100, 13, 16, 15, 14});
  PersistenceDiagram diag2 = diagram_of(crater);
  REQUIRE(testutil::count_dots(diag2, 1, -1.0) == 1);
  for (const Dot& dot : diag2.dots)
    if (dot.dim == 1) {
      CHECK(dot.birth == 17.0);
      CHECK(dot.death == 100.0);
      CHECK(dot.birth_vertex == 3);
      CHECK(dot.death_vertex == 4);
    }
}

TEST_CASE("brute-force oracle agrees on small random fields") {
  Rng rng(53);
  for (int trial = 0; trial < 25; ++trial) {
    ScalarField f = testutil::separated_field(4, 4, rng, 1.0);
    auto fast = testutil::value_multiset(compute_persistence(build_filtration(f)));
    auto slow = testutil::value_multiset(brute_force_diagram(f));
    REQUIRE(fast.size() == slow.size());
    for (std::size_t i = 0; i < fast.size(); ++i) {
      CHECK(fast[i][0] == slow[i][0]);
      CHECK(fast[i][1] == doctest::Approx(slow[i][1]).epsilon(1e-12));
      if (std::isinf(fast[i][2]))
        CHECK(std::isinf(slow[i][2]));
      else
        CHECK(fast[i][2] == doctest::Approx(slow[i][2]).epsilon(1e-12));
    }
  }
}

TEST_CASE("diagram CSV schema") {
  PersistenceDiagram diag = diagram_of(ScalarField(1, 3, {0, 2, 1}));
  std::string csv = diagram_to_csv(diag);
  CHECK(csv.rfind("dim,birth,death,birth_vertex,death_vertex\n", 0) == 0);
  CHECK(csv.find("inf") != std::string::npos);
  CHECK(csv.find("none") != std::string::npos);
}

TEST_CASE("filtration with out-of-order faces is rejected") {
  // compute_persistence validates the face-before-coface invariant; feed it a
  // deliberately corrupted ordering.
  CubicalFiltration filt = build_filtration(ScalarField(1, 2, {0, 1}));
  std::swap(filt.cells[1], filt.cells[2]);  // vertex 1 now after its edge
  CHECK_THROWS_AS(compute_persistence(filt), std::invalid_argument);
}
