#include "stump/descent.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace stump {

void adam_step(AdamState& state, const PixelGradient& grad, ScalarField& field) {
  if (!grad.same_shape(field) || !state.m.same_shape(field)) {
    throw std::invalid_argument("adam_step: shape mismatch");
  }
  const AdamConfig& cfg = state.config;
  ++state.t;
  const double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(state.t));
  const double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(state.t));
  for (int i = 0; i < field.size(); ++i) {
    double g = grad[i];
    state.m[i] = cfg.beta1 * state.m[i] + (1.0 - cfg.beta1) * g;
    state.v[i] = cfg.beta2 * state.v[i] + (1.0 - cfg.beta2) * g * g;
    double m_hat = state.m[i] / bc1;
    double v_hat = state.v[i] / bc2;
    field[i] -= cfg.lr * m_hat / (std::sqrt(v_hat) + cfg.eps_hat);
  }
}

PixelGradient sampled_topo_gradient(const ScalarField& field, const FunctionalSpec& funcspec,
                                    const DownsampleSpec& downspec, double eps, Rng& rng,
                                    double* topo_loss) {
  ScalarField noisy = add_uniform_noise(field, eps, rng);
  Weighting w = sample_weighting(downspec, field.rows(), field.cols(), rng);
  ScalarField coarse = make_generic(downsample(noisy, w));
  PersistenceDiagram diag = compute_persistence(build_filtration(coarse));
  if (topo_loss) *topo_loss = wasserstein_norm(diag, funcspec);
  DiagramGradient dgrad = diagram_gradient(diag, funcspec);
  return compose_downsample_gradient(pullback_gradient(dgrad, diag), w);
}

namespace {

// Data term on the working field.  Under negation the loss is evaluated on
// the un-negated field, so the gradient picks up a factor of -1.
void add_data_term(const StepConfig& cfg, const ScalarField& field,
                   const ScalarField& reference, double* loss, PixelGradient* grad,
                   double scale) {
  ScalarField oriented = cfg.negated ? negated(field) : field;
  const double chain = cfg.negated ? -1.0 : 1.0;
  PixelGradient dgrad(field.rows(), field.cols());
  if (cfg.data_term == DataTerm::mse) {
    *loss = mse(oriented, reference);
    if (grad) dgrad = mse_gradient(oriented, reference);
  } else {
    *loss = binary_cross_entropy(oriented, reference);
    if (grad) dgrad = binary_cross_entropy_gradient(oriented, reference);
  }
  if (grad) {
    for (int i = 0; i < grad->size(); ++i) (*grad)[i] += scale * chain * dgrad[i];
  }
}

}  // namespace

StepRecord stump_step(ScalarField& field, const ScalarField& reference,
                      const StepConfig& config, AdamState& adam, Rng& rng) {
  auto t0 = std::chrono::steady_clock::now();
  StepRecord rec;

  PixelGradient total =
      sampled_topo_gradient(field, config.functional, config.down, config.noise_eps, rng,
                            &rec.topo_loss);
  if (config.alpha != 1.0) {
    for (int i = 0; i < total.size(); ++i) total[i] *= config.alpha;
    add_data_term(config, field, reference, &rec.data_loss, &total, 1.0 - config.alpha);
  } else {
    add_data_term(config, field, reference, &rec.data_loss, nullptr, 0.0);
  }
  rec.total_loss = mixed_loss(rec.topo_loss, rec.data_loss, config.alpha);

  adam_step(adam, total, field);
  rec.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  return rec;
}

RunResult run_descent(const ScalarField& start, const ScalarField& reference,
                      StepConfig config, const AdamConfig& adam_config, Mode mode,
                      long steps, std::uint64_t seed) {
  if (steps < 0) throw std::invalid_argument("run_descent: negative step budget");
  if (mode == Mode::vanilla) {
    config.down.patch = 1;
    config.noise_eps = 0.0;
  }
  Rng rng(seed);
  RunResult result{start, {}};
  result.log.reserve(static_cast<std::size_t>(steps));
  AdamState adam(start.rows(), start.cols(), adam_config);
  for (long s = 1; s <= steps; ++s) {
    StepRecord rec = stump_step(result.field, reference, config, adam, rng);
    rec.step = s;
    result.log.push_back(rec);
  }
  return result;
}

std::vector<std::vector<double>> gram_matrix(const std::vector<PixelGradient>& grads) {
  const std::size_t m = grads.size();
  for (const auto& g : grads) {
    if (!g.same_shape(grads.front())) throw std::invalid_argument("gram_matrix: shape mismatch");
  }
  std::vector<std::vector<double>> gram(m, std::vector<double>(m, 0.0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) {
      double acc = 0.0;
      for (int k = 0; k < grads[i].size(); ++k) acc += grads[i][k] * grads[j][k];
      gram[i][j] = acc;
      gram[j][i] = acc;
    }
  }
  return gram;
}

namespace {

// Euclidean projection onto the probability simplex (sort-based).
std::vector<double> project_simplex(std::vector<double> v) {
  std::vector<double> u = v;
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumulative = 0.0;
  double tau = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    cumulative += u[j];
    double candidate = (cumulative - 1.0) / static_cast<double>(j + 1);
    if (u[j] - candidate > 0.0) tau = candidate;
  }
  for (double& x : v) x = std::max(0.0, x - tau);
  return v;
}

double quadratic_objective(const std::vector<std::vector<double>>& gram,
                           const std::vector<double>& c) {
  double acc = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j) row += gram[i][j] * c[j];
    acc += c[i] * row;
  }
  return acc;
}

}  // namespace

MinNormResult min_norm_weights(const std::vector<PixelGradient>& grads) {
  const std::size_t m = grads.size();
  if (m == 0) throw std::invalid_argument("min_norm_weights: no gradients");
  auto gram = gram_matrix(grads);

  MinNormResult result;
  result.weights.assign(m, 1.0 / static_cast<double>(m));

  bool all_zero = true;
  bool diagonal = true;
  for (std::size_t i = 0; i < m; ++i) {
    if (gram[i][i] != 0.0) all_zero = false;
    for (std::size_t j = 0; j < m; ++j) {
      if (i != j && gram[i][j] != 0.0) diagonal = false;
    }
  }
  if (all_zero) {
    result.degenerate = true;
    return result;
  }
  if (diagonal) {
    // A zero gradient among nonzero ones is the min-norm point outright.
    for (std::size_t i = 0; i < m; ++i) {
      if (gram[i][i] == 0.0) {
        result.weights.assign(m, 0.0);
        result.weights[i] = 1.0;
        return result;
      }
    }
    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) total += 1.0 / gram[i][i];
    for (std::size_t i = 0; i < m; ++i) {
      result.weights[i] = (1.0 / gram[i][i]) / total;
    }
    return result;
  }

  // Projected gradient descent with the safe step 1 / (2 max row sum), an
  // upper bound on the Lipschitz constant of the gradient 2 G c.
  double max_row = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < m; ++j) row += std::abs(gram[i][j]);
    max_row = std::max(max_row, row);
  }
  const double step = 1.0 / (2.0 * max_row);
  std::vector<double>& c = result.weights;
  double objective = quadratic_objective(gram, c);
  std::vector<double> trial(m);
  for (long iter = 0; iter < 100000; ++iter) {
    for (std::size_t i = 0; i < m; ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < m; ++j) row += gram[i][j] * c[j];
      trial[i] = c[i] - step * 2.0 * row;
    }
    c = project_simplex(std::move(trial));
    trial.assign(m, 0.0);
    double next = quadratic_objective(gram, c);
    if (std::abs(objective - next) <= 1e-10) {
      objective = next;
      break;
    }
    objective = next;
  }
  return result;
}

std::vector<PixelGradient> collect_perturbed_gradients(const ScalarField& field,
                                                       const FunctionalSpec& funcspec,
                                                       const DownsampleSpec& downspec,
                                                       double eps, int count, Rng& rng) {
  if (count < 1) throw std::invalid_argument("collect_perturbed_gradients: count must be >= 1");
  std::vector<PixelGradient> grads;
  grads.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    grads.push_back(sampled_topo_gradient(field, funcspec, downspec, eps, rng));
  }
  return grads;
}

}  // namespace stump
