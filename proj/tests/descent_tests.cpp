#include <cmath>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "stump/descent.hpp"
#include "stump/generators.hpp"

using namespace stump;

TEST_CASE("adam first and second steps with constant gradient") {
  AdamConfig cfg;
  cfg.lr = 0.05;
  AdamState state(1, 2, cfg);
  ScalarField field(1, 2, {10.0, -4.0});
  PixelGradient grad(1, 2, {3.0, -0.5});

  ScalarField before = field;
  adam_step(state, grad, field);
  // Bias-corrected first step: update = lr * g / (|g| + eps_hat) ~ lr * sign(g).
  CHECK(field[0] == doctest::Approx(before[0] - 0.05).epsilon(1e-6));
  CHECK(field[1] == doctest::Approx(before[1] + 0.05).epsilon(1e-6));

  ScalarField mid = field;
  adam_step(state, grad, field);
  // Closed form with constant g: m_hat = g, v_hat = g^2, so the second update
  // magnitude is again ~lr.
  CHECK(field[0] == doctest::Approx(mid[0] - 0.05).epsilon(1e-6));
  CHECK(field[1] == doctest::Approx(mid[1] + 0.05).epsilon(1e-6));
  CHECK(state.t == 2);
}

TEST_CASE("adam with zero gradient leaves the field unchanged") {
  AdamState state(2, 2);
  ScalarField field(2, 2, {1, 2, 3, 4});
  PixelGradient zero(2, 2, 0.0);
  for (int i = 0; i < 5; ++i) adam_step(state, zero, field);
  CHECK(field[0] == 1.0);
  CHECK(field[3] == 4.0);
}

TEST_CASE("run_descent with zero steps returns the input and empty log") {
  Rng rng(113);
  ScalarField start = testutil::uniform_field(8, 8, 0, 255, rng);
  StepConfig config;
  config.functional.hom_dim = 0;
  config.alpha = 0.5;
  RunResult result = run_descent(start, start, config, {}, Mode::stump, 0, 7);
  CHECK(result.log.empty());
  for (std::size_t i = 0; i < start.values().size(); ++i) CHECK(result.field[i] == start[i]);
}

TEST_CASE("fixed seed reproduces the whole trajectory") {
  ScalarField start = gen_blobs(16, 16, 5);
  StepConfig config;
  config.functional.hom_dim = 0;
  config.functional.p = 1.0;
  config.functional.region.life_min = 20.0;
  config.functional.essentials = EssentialPolicy::clamp_to_max;
  config.down.patch = 3;
  config.noise_eps = 10.0;
  config.alpha = 1.0 - 1.0 / 256.0;

  RunResult a = run_descent(start, start, config, {}, Mode::stump, 25, 99);
  RunResult b = run_descent(start, start, config, {}, Mode::stump, 25, 99);
  REQUIRE(a.log.size() == b.log.size());
  for (std::size_t i = 0; i < start.values().size(); ++i) CHECK(a.field[i] == b.field[i]);
  for (std::size_t s = 0; s < a.log.size(); ++s) {
    CHECK(a.log[s].topo_loss == b.log[s].topo_loss);
    CHECK(a.log[s].data_loss == b.log[s].data_loss);
    CHECK(a.log[s].total_loss == b.log[s].total_loss);
    CHECK(a.log[s].step == static_cast<long>(s) + 1);
  }
}

TEST_CASE("vanilla mode ignores patch and noise settings") {
  ScalarField start = gen_blobs(16, 16, 5);
  StepConfig config;
  config.functional.hom_dim = 0;
  config.functional.region.life_min = 20.0;
  config.functional.essentials = EssentialPolicy::clamp_to_max;
  config.down.patch = 4;      // forced back to 1 in vanilla mode
  config.noise_eps = 50.0;    // forced to 0
  config.alpha = 1.0;

  RunResult noisy = run_descent(start, start, config, {}, Mode::vanilla, 5, 1);
  config.down.patch = 1;
  config.noise_eps = 0.0;
  RunResult clean = run_descent(start, start, config, {}, Mode::vanilla, 5, 2);
  for (std::size_t i = 0; i < start.values().size(); ++i)
    CHECK(noisy.field[i] == clean.field[i]);  // seeds differ but nothing is drawn
}

TEST_CASE("sampled gradient with k=1 eps=0 equals the plain pullback chain") {
  Rng rng(127);
  ScalarField f = testutil::separated_field(8, 8, rng);
  FunctionalSpec spec;
  spec.hom_dim = 0;
  spec.p = 2.0;
  spec.essentials = EssentialPolicy::clamp_to_max;
  DownsampleSpec down;
  down.patch = 1;

  Rng step_rng(5);
  double topo = 0;
  PixelGradient g = sampled_topo_gradient(f, spec, down, 0.0, step_rng, &topo);

  // The sampled path tie-breaks the coarse field internally; mirror that.
  PersistenceDiagram diag = diagram_of(make_generic(f));
  PixelGradient expect = pullback_gradient(diagram_gradient(diag, spec), diag);
  CHECK(topo == doctest::Approx(wasserstein_norm(diag, spec)).epsilon(1e-12));
  for (std::size_t i = 0; i < g.values().size(); ++i)
    CHECK(g[i] == doctest::Approx(expect[i]).epsilon(1e-12));
}

TEST_CASE("data term pulls the field toward the reference") {
  // Adam moves ~lr per step for a constant-sign gradient, so a gap of 10
  // closes comfortably within 300 steps at lr 0.05.
  ScalarField start(6, 6, 10.0);
  ScalarField reference(6, 6, 0.0);
  StepConfig config;
  config.alpha = 0.0;  // pure data term
  config.down.patch = 1;
  RunResult result = run_descent(start, reference, config, {}, Mode::stump, 300, 3);
  double before = mse(start, reference);
  double after = mse(result.field, reference);
  CHECK(after < 0.05 * before);
}

TEST_CASE("superlevel data term compares the un-negated field") {
  ScalarField reference = gen_blobs(12, 12, 9);
  ScalarField start = negated(reference);
  StepConfig config;
  config.alpha = 0.0;
  config.negated = true;
  config.down.patch = 1;
  RunResult result = run_descent(start, reference, config, {}, Mode::stump, 50, 3);
  // Perfectly matched at the start: the data gradient is zero everywhere, so
  // nothing moves.
  for (std::size_t i = 0; i < start.values().size(); ++i)
    CHECK(result.field[i] == start[i]);
  CHECK(result.log.back().data_loss == 0.0);
}

TEST_CASE("gram_matrix and min_norm_weights") {
  auto make_grad = [](std::vector<double> v) { return PixelGradient(1, 4, std::move(v)); };

  SUBCASE("orthonormal set gives identity gram and uniform weights") {
    std::vector<PixelGradient> grads = {make_grad({1, 0, 0, 0}), make_grad({0, 1, 0, 0}),
                                        make_grad({0, 0, 1, 0})};
    auto gram = gram_matrix(grads);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(gram[i][j] == (i == j ? 1.0 : 0.0));

    MinNormResult res = min_norm_weights(grads);
    CHECK_FALSE(res.degenerate);
    for (double c : res.weights) CHECK(std::abs(c - 1.0 / 3.0) <= 1e-12);
  }

  SUBCASE("duplicated gradient gram") {
    std::vector<PixelGradient> grads = {make_grad({1, 2, 0, 0}), make_grad({1, 2, 0, 0})};
    auto gram = gram_matrix(grads);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) CHECK(gram[i][j] == 5.0);
  }

  SUBCASE("orthogonal norms 1 and 2 give weights 0.8 and 0.2") {
    std::vector<PixelGradient> grads = {make_grad({1, 0, 0, 0}), make_grad({0, 2, 0, 0})};
    MinNormResult res = min_norm_weights(grads);
    CHECK(std::abs(res.weights[0] - 0.8) <= 1e-10);
    CHECK(std::abs(res.weights[1] - 0.2) <= 1e-10);
  }

  SUBCASE("single gradient gets weight 1") {
    MinNormResult res = min_norm_weights({make_grad({3, 1, 0, 2})});
    REQUIRE(res.weights.size() == 1);
    CHECK(res.weights[0] == 1.0);
  }

  SUBCASE("all-zero gradients flagged degenerate with uniform weights") {
    MinNormResult res = min_norm_weights({make_grad({0, 0, 0, 0}), make_grad({0, 0, 0, 0})});
    CHECK(res.degenerate);
    CHECK(res.weights[0] == doctest::Approx(0.5));
    CHECK(res.weights[1] == doctest::Approx(0.5));
  }

  SUBCASE("non-diagonal gram beats uniform averaging") {
    std::vector<PixelGradient> grads = {make_grad({2, 1, 0, 0}), make_grad({1, 2, 0, 0}),
                                        make_grad({-1, 1, 3, 0})};
    MinNormResult res = min_norm_weights(grads);
    REQUIRE(res.weights.size() == 3);
    double sum = 0;
    for (double c : res.weights) {
      CHECK(c >= -1e-12);
      sum += c;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));

    auto objective = [&](const std::vector<double>& c) {
      double obj = 0;
      std::vector<double> combo(4, 0.0);
      for (std::size_t i = 0; i < grads.size(); ++i)
        for (int d = 0; d < 4; ++d) combo[d] += c[i] * grads[i][d];
      for (double x : combo) obj += x * x;
      return obj;
    };
    std::vector<double> uniform(3, 1.0 / 3.0);
    CHECK(objective(res.weights) <= objective(uniform) + 1e-12);

    // coarse simplex grid cross-check
    double best = 1e300;
    const int n = 100;
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j + i <= n; ++j) {
        std::vector<double> c = {i / double(n), j / double(n), (n - i - j) / double(n)};
        best = std::min(best, objective(c));
      }
    CHECK(objective(res.weights) <= best + 1e-6);
  }
}

TEST_CASE("collect_perturbed_gradients draws the requested count") {
  ScalarField f = gen_blobs(16, 16, 21);
  FunctionalSpec spec;
  spec.hom_dim = 0;
  spec.region.life_min = 20.0;
  spec.essentials = EssentialPolicy::clamp_to_max;
  DownsampleSpec down;
  down.patch = 3;
  Rng rng(131);
  auto grads = collect_perturbed_gradients(negated(f), spec, down, 25.0, 7, rng);
  CHECK(grads.size() == 7);
  for (const PixelGradient& g : grads) CHECK(g.same_shape(f));
}
