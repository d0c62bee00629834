#pragma once

#include <cstdint>
#include <vector>

#include "stump/backprop.hpp"
#include "stump/downsample.hpp"
#include "stump/field.hpp"
#include "stump/functional.hpp"
#include "stump/rng.hpp"

namespace stump {

struct AdamConfig {
  double lr = 0.05;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps_hat = 1e-8;
};

struct AdamState {
  AdamConfig config;
  long t = 0;
  ScalarField m;  // first-moment accumulator
  ScalarField v;  // second-moment accumulator

  AdamState(int rows, int cols, const AdamConfig& cfg = {})
      : config(cfg), m(rows, cols, 0.0), v(rows, cols, 0.0) {}
};

// Standard Adam with bias correction, updating field in place.
void adam_step(AdamState& state, const PixelGradient& grad, ScalarField& field);

enum class DataTerm { mse, bce };
enum class Mode { stump, vanilla };

// Per-step knobs of the descent loop.  `negated` marks a working field that
// is the negation of the data orientation (superlevel tasks); the data term
// is then evaluated on the un-negated field with the matching chain factor.
struct StepConfig {
  FunctionalSpec functional;
  DownsampleSpec down;
  double alpha = 1.0;
  double noise_eps = 0.0;
  DataTerm data_term = DataTerm::mse;
  bool negated = false;
};

struct StepRecord {
  long step = 0;
  double wall_ms = 0.0;
  double topo_loss = 0.0;  // coarse sampled value of the functional
  double data_loss = 0.0;
  double total_loss = 0.0;
};

// The single-sample topological gradient: noise, weighting, downsample,
// coarse diagram, pullback, composition back to source shape.  This is both
// the inner loop of stump_step and the Fig-5-style sampling protocol.
PixelGradient sampled_topo_gradient(const ScalarField& field, const FunctionalSpec& funcspec,
                                    const DownsampleSpec& downspec, double eps, Rng& rng,
                                    double* topo_loss = nullptr);

// One full iteration: sampled topological gradient mixed with the data-term
// gradient, then Adam.  The returned record's step index is left at zero for
// the caller to fill.
StepRecord stump_step(ScalarField& field, const ScalarField& reference,
                      const StepConfig& config, AdamState& adam, Rng& rng);

struct RunResult {
  ScalarField field;
  std::vector<StepRecord> log;
};

// Iterates stump_step for `steps` steps.  Vanilla mode forces patch = 1 and
// noise 0 but shares the same code path, so the two differ only in sampling.
RunResult run_descent(const ScalarField& start, const ScalarField& reference,
                      StepConfig config, const AdamConfig& adam_config, Mode mode,
                      long steps, std::uint64_t seed);

// ---- gradient-sampling (Clarke) diagnostics ----

// Pairwise inner products <g_i, g_j>.
std::vector<std::vector<double>> gram_matrix(const std::vector<PixelGradient>& grads);

struct MinNormResult {
  std::vector<double> weights;
  bool degenerate = false;  // all gradients zero: uniform weights returned
};

// Minimizes ||sum c_i g_i||^2 over the probability simplex.  Diagonal Gram
// matrices take the closed form c_i = ||g_i||^-2 / sum ||g_j||^-2; otherwise
// projected gradient descent (objective tolerance 1e-10, at most 1e5
// iterations).
MinNormResult min_norm_weights(const std::vector<PixelGradient>& grads);

// m independent draws of sampled_topo_gradient around `field`.
std::vector<PixelGradient> collect_perturbed_gradients(const ScalarField& field,
                                                       const FunctionalSpec& funcspec,
                                                       const DownsampleSpec& downspec,
                                                       double eps, int count, Rng& rng);

}  // namespace stump
