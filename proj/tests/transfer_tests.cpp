#include <cmath>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "stump/backprop.hpp"
#include "stump/generators.hpp"
#include "stump/transfer.hpp"

using namespace stump;

namespace {

PersistenceDiagram dots_diagram(std::vector<std::pair<double, double>> pts, int dim = 0) {
  PersistenceDiagram diag;
  diag.rows = 4;
  diag.cols = 4;
  int v = 0;
  for (auto [b, d] : pts) {
    Dot dot;
    dot.dim = dim;
    dot.birth = b;
    dot.death = d;
    dot.birth_vertex = v++;
    dot.death_vertex = v++;
    diag.dots.push_back(dot);
  }
  diag.max_value = 100.0;
  diag.max_vertex = 0;
  return diag;
}

}  // namespace

TEST_CASE("self matching is the identity with weight one") {
  PersistenceDiagram diag = dots_diagram({{0, 2}, {1, 5}, {3, 9}});
  Rng rng(137);
  DiagramMatching m = sliced_matching(diag, diag, 0, 20, rng);
  REQUIRE(m.src_to_dst.size() == 3);
  for (int i = 0; i < 3; ++i) {
    REQUIRE(m.src_to_dst[i].size() == 1);
    CHECK(m.src_to_dst[i][0].first == i);
    CHECK(m.src_to_dst[i][0].second == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m.src_diagonal[i] == 0.0);
  }
}

TEST_CASE("close pair matches with near-unanimous weight") {
  // The pi/4 slice projects a dot exactly onto its own diagonal midpoint, so
  // a single slice may legitimately prefer the diagonal; every other slice
  // must pick the nearby destination dot.
  PersistenceDiagram src = dots_diagram({{0, 2}});
  PersistenceDiagram dst = dots_diagram({{0, 2.1}});
  Rng rng(139);
  DiagramMatching m = sliced_matching(src, dst, 0, 20, rng);
  REQUIRE(m.src_to_dst[0].size() == 1);
  CHECK(m.src_to_dst[0][0].first == 0);
  CHECK(m.src_to_dst[0][0].second >= 0.95);
  CHECK(m.src_diagonal[0] <= 0.05);
  CHECK(m.src_to_dst[0][0].second + m.src_diagonal[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("unmatched source dot goes to the diagonal") {
  PersistenceDiagram src = dots_diagram({{0, 2}});
  PersistenceDiagram dst = dots_diagram({});
  Rng rng(149);
  DiagramMatching m = sliced_matching(src, dst, 0, 20, rng);
  CHECK(m.src_to_dst[0].empty());
  CHECK(m.src_diagonal[0] == doctest::Approx(1.0));
}

TEST_CASE("weights per source dot sum to one") {
  PersistenceDiagram src = dots_diagram({{0, 4}, {1, 7}, {2, 3}});
  PersistenceDiagram dst = dots_diagram({{0.5, 4.2}, {2.5, 3.4}});
  Rng rng(151);
  DiagramMatching m = sliced_matching(src, dst, 0, 20, rng);
  for (std::size_t i = 0; i < m.src_to_dst.size(); ++i) {
    double sum = m.src_diagonal[i];
    for (auto [j, wgt] : m.src_to_dst[i]) {
      CHECK(j >= 0);
      CHECK(j < 2);
      sum += wgt;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("essential and other-dimension dots do not participate") {
  PersistenceDiagram src = dots_diagram({{0, 4}});
  Dot essential;
  essential.dim = 0;
  essential.birth = 1.0;
  essential.birth_vertex = 9;
  src.dots.push_back(essential);
  Dot other = src.dots[0];
  other.dim = 1;
  src.dots.push_back(other);

  PersistenceDiagram dst = dots_diagram({{0, 4}});
  Rng rng(157);
  DiagramMatching m = sliced_matching(src, dst, 0, 20, rng);
  CHECK(m.src_to_dst[0].size() == 1);
  CHECK(m.src_to_dst[1].empty());  // essential: no participation at all
  CHECK(m.src_diagonal[1] == 0.0);
  CHECK(m.src_to_dst[2].empty());  // wrong dimension
  CHECK(m.src_diagonal[2] == 0.0);
}

TEST_CASE("transfer_gradient moves weighted partials") {
  PersistenceDiagram src = dots_diagram({{0, 4}, {1, 7}});
  PersistenceDiagram dst = dots_diagram({{0, 4}});

  DiagramMatching m;
  m.hom_dim = 0;
  m.n_proj = 1;
  m.src_to_dst = {{{0, 0.6}}, {{0, 0.4}}};
  m.src_diagonal = {0.4, 0.6};

  DiagramGradient sg;
  sg.d_birth = {1.0, 2.0};
  sg.d_death = {-1.0, 3.0};

  DiagramGradient dg = transfer_gradient(sg, m, dst);
  REQUIRE(dg.d_birth.size() == 1);
  CHECK(dg.d_birth[0] == doctest::Approx(0.6 * 1.0 + 0.4 * 2.0));
  CHECK(dg.d_death[0] == doctest::Approx(0.6 * -1.0 + 0.4 * 3.0));
}

TEST_CASE("transfer_gradient with identity matching copies verbatim") {
  PersistenceDiagram diag = dots_diagram({{0, 2}, {1, 5}});
  Rng rng(163);
  DiagramMatching m = sliced_matching(diag, diag, 0, 12, rng);
  DiagramGradient sg;
  sg.d_birth = {0.25, -1.5};
  sg.d_death = {2.0, 0.75};
  DiagramGradient dg = transfer_gradient(sg, m, diag);
  for (int i = 0; i < 2; ++i) {
    CHECK(dg.d_birth[i] == doctest::Approx(sg.d_birth[i]).epsilon(1e-12));
    CHECK(dg.d_death[i] == doctest::Approx(sg.d_death[i]).epsilon(1e-12));
  }
}

TEST_CASE("transfer_gradient is linear in the source gradient") {
  PersistenceDiagram src = dots_diagram({{0, 4}, {1, 7}, {3, 5}});
  PersistenceDiagram dst = dots_diagram({{0.2, 4.1}, {1.2, 6.8}});
  Rng rng(167);
  DiagramMatching m = sliced_matching(src, dst, 0, 20, rng);

  DiagramGradient a;
  a.d_birth = {1, 2, 3};
  a.d_death = {4, 5, 6};
  DiagramGradient b;
  b.d_birth = {-2, 0, 1};
  b.d_death = {1, 1, -1};
  DiagramGradient combo;
  combo.d_birth = {0, 0, 0};
  combo.d_death = {0, 0, 0};
  for (int i = 0; i < 3; ++i) {
    combo.d_birth[i] = 2 * a.d_birth[i] + 3 * b.d_birth[i];
    combo.d_death[i] = 2 * a.d_death[i] + 3 * b.d_death[i];
  }
  DiagramGradient ta = transfer_gradient(a, m, dst);
  DiagramGradient tb = transfer_gradient(b, m, dst);
  DiagramGradient tc = transfer_gradient(combo, m, dst);
  for (std::size_t i = 0; i < ta.d_birth.size(); ++i) {
    CHECK(tc.d_birth[i] == doctest::Approx(2 * ta.d_birth[i] + 3 * tb.d_birth[i]).epsilon(1e-12));
    CHECK(tc.d_death[i] == doctest::Approx(2 * ta.d_death[i] + 3 * tb.d_death[i]).epsilon(1e-12));
  }
}

TEST_CASE("degenerate smear equals the plain pullback split by endpoint") {
  Rng field_rng(173);
  ScalarField f = testutil::separated_field(8, 8, field_rng);

  FunctionalSpec spec;
  spec.hom_dim = 0;
  spec.p = 1.0;
  spec.essentials = EssentialPolicy::exclude;  // keeps every dot projectable
  spec.endpoints = EndpointMask::both;

  DownsampleSpec down;
  down.patch = 1;

  Rng rng(179);
  SmearHeatmap heat = critical_smear(f, spec, down, 0.0, 1, 20, rng);
  CHECK(heat.sample_count == 1);

  // critical_smear tie-breaks its reference field internally; mirror that.
  PersistenceDiagram diag = diagram_of(make_generic(f));
  DiagramGradient dg = diagram_gradient(diag, spec);
  DiagramGradient births = dg, deaths = dg;
  std::fill(births.d_death.begin(), births.d_death.end(), 0.0);
  std::fill(deaths.d_birth.begin(), deaths.d_birth.end(), 0.0);
  PixelGradient expect_birth = pullback_gradient(births, diag);
  PixelGradient expect_death = pullback_gradient(deaths, diag);

  for (std::size_t i = 0; i < f.values().size(); ++i) {
    CHECK(heat.birth_heat[i] == doctest::Approx(expect_birth[i]).epsilon(1e-12));
    CHECK(heat.death_heat[i] == doctest::Approx(expect_death[i]).epsilon(1e-12));
  }
}

TEST_CASE("smear heatmaps are deterministic under a fixed seed") {
  ScalarField f = negated(gen_circle(20, 20, 31));
  FunctionalSpec spec;
  spec.hom_dim = 1;
  spec.region.life_min = 30.0;
  spec.essentials = EssentialPolicy::exclude;
  DownsampleSpec down;
  down.patch = 3;

  Rng a(191), b(191);
  SmearHeatmap ha = critical_smear(f, spec, down, 20.0, 16, 10, a);
  SmearHeatmap hb = critical_smear(f, spec, down, 20.0, 16, 10, b);
  for (std::size_t i = 0; i < ha.birth_heat.values().size(); ++i) {
    CHECK(ha.birth_heat[i] == hb.birth_heat[i]);
    CHECK(ha.death_heat[i] == hb.death_heat[i]);
  }
}
