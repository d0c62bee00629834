#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stump/descent.hpp"
#include "stump/generators.hpp"
#include "stump/transfer.hpp"

namespace stump {

// High-level entry points shared by the command-line tool and the
// acceptance tests.  A RunConfig bundles everything needed to reproduce a
// descent run; presets fill in the per-task functional, orientation and
// sampling choices, and the caller may override individual fields.

enum class Task { custom, wells, circle, blobs, segmentation };

Task task_from_name(const std::string& name);
std::string task_name(Task task);

struct RunConfig {
  Task task = Task::custom;
  Mode mode = Mode::stump;
  std::string input;  // path to a field file; empty means generate from task
  int rows = 64;
  int cols = 64;
  std::uint64_t seed = 1;
  long steps = 10000;
  double alpha = -1.0;  // negative means the default 1 - 1/(rows*cols)
  double noise_eps = 0.0;
  DataTerm data_term = DataTerm::mse;
  bool superlevel = false;  // optimize the negated field internally
  FunctionalSpec functional;
  DownsampleSpec down;
  AdamConfig adam;
};

// Complete configuration for a task: functional, orientation, noise level,
// patch size and data term.  Custom returns the struct defaults.
RunConfig preset_run_config(Task task);

// Generates the task's start field, or loads config.input when set.
// The result is in data orientation (superlevel negation happens inside
// the run, not here).
ScalarField task_start_field(const RunConfig& config);

double resolve_alpha(const RunConfig& config);

struct RunArtifacts {
  ScalarField start_field;  // data orientation
  ScalarField final_field;  // data orientation
  PersistenceDiagram final_diagram;  // of the working-orientation final field
  std::vector<StepRecord> log;
};

RunArtifacts execute_run(const RunConfig& config);

std::string loss_log_to_csv(const std::vector<StepRecord>& log);

// Writes final.csv, final.png, diagram.csv and loss_log.csv into outdir
// (created if missing).
void write_run_outputs(const RunArtifacts& artifacts, const std::string& outdir);

// Budgeted head-to-head of the stochastic optimizer (p=1) against plain
// full-resolution descent (p=2) on the same start field.  Rows log the true
// full-resolution mixed loss at regular step milestones; wall_s counts
// optimization time only, evaluation excluded.
struct BenchConfig {
  RunConfig base;               // task, field, seed, functional baseline
  double budget_seconds = 180;  // per arm, ignored when max_steps > 0
  long max_steps = 0;           // > 0 runs a fixed step count (deterministic)
  long eval_every = 50;
};

struct BenchRow {
  std::string arm;  // "stump" or "vanilla"
  long step = 0;
  double wall_s = 0;
  double loss = 0;
  double pct_reduced = 0;  // 100 * (loss0 - loss) / |loss0|
};

struct BenchResult {
  std::vector<BenchRow> rows;
  double stump_final_pct = 0;
  double vanilla_final_pct = 0;
};

BenchResult execute_bench(const BenchConfig& config);

std::string bench_to_csv(const std::vector<BenchRow>& rows);

void write_bench_outputs(const BenchResult& result, const std::string& outdir);

// Critical-point smear visualization: repeated perturbed diagrams matched
// back to the reference diagram, gradients accumulated per pixel.
struct SmearConfig {
  RunConfig base;      // task, field, orientation, hom dim, patch size
  int samples = 1000;
  int projections = 20;
  double noise_eps = 50.0;
  double life_min = 30.0;  // visualization region, overrides the preset's
};

SmearHeatmap execute_smearvis(const SmearConfig& config);

// Writes heat_birth.csv, heat_death.csv and heat.png (birth and death maps
// min-max normalized and placed side by side) into outdir.
void write_smear_outputs(const SmearHeatmap& heat, const std::string& outdir);

}  // namespace stump
