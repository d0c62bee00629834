#include "stump/driver.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <utility>

#include "stump/persistence.hpp"

namespace stump {

namespace {

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::filesystem::path prepare_outdir(const std::string& outdir) {
  std::filesystem::path dir(outdir.empty() ? "." : outdir);
  std::filesystem::create_directories(dir);
  return dir;
}

double data_loss_of(const ScalarField& working, const ScalarField& reference,
                    const StepConfig& sc) {
  ScalarField oriented = sc.negated ? negated(working) : working;
  return sc.data_term == DataTerm::bce ? binary_cross_entropy(oriented, reference)
                                       : mse(oriented, reference);
}

// Full-resolution mixed loss of the current working field, used for bench
// milestones (the per-step log only sees the coarse sampled functional).
double true_total_loss(const ScalarField& working, const ScalarField& reference,
                       const StepConfig& sc) {
  double topo = wasserstein_norm(diagram_of(make_generic(working)), sc.functional);
  return mixed_loss(topo, data_loss_of(working, reference, sc), sc.alpha);
}

ScalarField normalized_0_255(const ScalarField& field) {
  double lo = field.min_value();
  double hi = field.max_value();
  ScalarField out(field.rows(), field.cols(), 0.0);
  if (hi > lo) {
    for (std::size_t i = 0; i < field.values().size(); ++i)
      out[i] = (field[i] - lo) / (hi - lo) * 255.0;
  }
  return out;
}

}  // namespace

Task task_from_name(const std::string& name) {
  if (name == "custom") return Task::custom;
  if (name == "wells") return Task::wells;
  if (name == "circle") return Task::circle;
  if (name == "blobs") return Task::blobs;
  if (name == "segmentation") return Task::segmentation;
  throw std::invalid_argument("unknown task: " + name);
}

std::string task_name(Task task) {
  switch (task) {
    case Task::custom: return "custom";
    case Task::wells: return "wells";
    case Task::circle: return "circle";
    case Task::blobs: return "blobs";
    case Task::segmentation: return "segmentation";
  }
  throw std::logic_error("bad task enum");
}

RunConfig preset_run_config(Task task) {
  RunConfig c;
  c.task = task;
  if (task == Task::custom) return c;

  c.down.patch = 5;
  c.down.measure = Measure::simplex_uniform;
  c.functional.p = 1.0;
  c.functional.region.life_min = 50.0;
  c.noise_eps = 50.0;
  c.data_term = DataTerm::mse;

  switch (task) {
    case Task::wells:
      // Raise a wall between the two basins: push the merge death upward.
      c.functional.hom_dim = 0;
      c.functional.sign = Sign::maximize;
      c.functional.endpoints = EndpointMask::deaths_only;
      c.functional.essentials = EssentialPolicy::clamp_to_max;
      c.superlevel = false;
      break;
    case Task::circle:
      // Make the bright loop appear earlier: superlevel dim-1 births.
      c.functional.hom_dim = 1;
      c.functional.sign = Sign::maximize;
      c.functional.endpoints = EndpointMask::births_only;
      c.functional.essentials = EssentialPolicy::exclude;
      c.superlevel = true;
      c.noise_eps = 100.0;
      break;
    case Task::blobs:
      // Merge the bright components: deepen the bridges (superlevel dim-0
      // deaths pulled down).
      c.functional.hom_dim = 0;
      c.functional.sign = Sign::minimize;
      c.functional.endpoints = EndpointMask::deaths_only;
      c.functional.essentials = EssentialPolicy::clamp_to_max;
      c.superlevel = true;
      break;
    case Task::segmentation:
      // Strengthen membrane loops in user-supplied probability images.
      c.functional.hom_dim = 1;
      c.functional.sign = Sign::maximize;
      c.functional.endpoints = EndpointMask::births_only;
      c.functional.essentials = EssentialPolicy::exclude;
      c.functional.region.life_min = 70.0;
      c.superlevel = false;
      c.noise_eps = 20.0;
      c.down.patch = 4;
      c.data_term = DataTerm::bce;
      break;
    case Task::custom:
      break;
  }
  return c;
}

ScalarField task_start_field(const RunConfig& config) {
  if (!config.input.empty()) return load_field(config.input);
  switch (config.task) {
    case Task::wells: return gen_double_well(config.rows, config.cols);
    case Task::circle: return gen_circle(config.rows, config.cols, config.seed);
    case Task::blobs: return gen_blobs(config.rows, config.cols, config.seed);
    case Task::segmentation:
      throw std::invalid_argument("segmentation task requires an input image");
    case Task::custom:
      throw std::invalid_argument("custom task requires an input field");
  }
  throw std::logic_error("bad task enum");
}

double resolve_alpha(const RunConfig& config) {
  if (config.alpha >= 0.0) return config.alpha;
  double pixels = static_cast<double>(config.rows) * config.cols;
  return 1.0 - 1.0 / pixels;
}

RunArtifacts execute_run(const RunConfig& config) {
  RunConfig cfg = config;
  ScalarField start = task_start_field(cfg);
  cfg.rows = start.rows();
  cfg.cols = start.cols();

  StepConfig sc;
  sc.functional = cfg.functional;
  sc.down = cfg.down;
  sc.alpha = resolve_alpha(cfg);
  sc.noise_eps = cfg.noise_eps;
  sc.data_term = cfg.data_term;
  sc.negated = cfg.superlevel;

  ScalarField working_start = cfg.superlevel ? negated(start) : start;
  RunResult result = run_descent(working_start, start, sc, cfg.adam, cfg.mode,
                                 cfg.steps, cfg.seed);

  RunArtifacts out{std::move(start),
                   cfg.superlevel ? negated(result.field) : result.field,
                   diagram_of(make_generic(result.field)), std::move(result.log)};
  return out;
}

std::string loss_log_to_csv(const std::vector<StepRecord>& log) {
  std::string csv = "step,wall_ms,topo_loss,data_loss,total_loss\n";
  for (const StepRecord& r : log) {
    csv += std::to_string(r.step);
    csv += ',';
    csv += num(r.wall_ms);
    csv += ',';
    csv += num(r.topo_loss);
    csv += ',';
    csv += num(r.data_loss);
    csv += ',';
    csv += num(r.total_loss);
    csv += '\n';
  }
  return csv;
}

void write_run_outputs(const RunArtifacts& artifacts, const std::string& outdir) {
  auto dir = prepare_outdir(outdir);
  write_text_file((dir / "final.csv").string(), field_to_csv(artifacts.final_field));
  save_field(artifacts.final_field, (dir / "final.png").string());
  write_text_file((dir / "diagram.csv").string(), diagram_to_csv(artifacts.final_diagram));
  write_text_file((dir / "loss_log.csv").string(), loss_log_to_csv(artifacts.log));
}

BenchResult execute_bench(const BenchConfig& config) {
  RunConfig cfg = config.base;
  ScalarField start = task_start_field(cfg);
  cfg.rows = start.rows();
  cfg.cols = start.cols();
  double alpha = resolve_alpha(cfg);

  BenchResult result;
  struct Arm {
    const char* name;
    Mode mode;
    double p;
  };
  const Arm arms[] = {{"stump", Mode::stump, 1.0}, {"vanilla", Mode::vanilla, 2.0}};

  for (const Arm& arm : arms) {
    StepConfig sc;
    sc.functional = cfg.functional;
    sc.functional.p = arm.p;
    sc.down = cfg.down;
    sc.alpha = alpha;
    sc.noise_eps = cfg.noise_eps;
    sc.data_term = cfg.data_term;
    sc.negated = cfg.superlevel;
    if (arm.mode == Mode::vanilla) {
      sc.down.patch = 1;
      sc.noise_eps = 0.0;
    }

    ScalarField working = cfg.superlevel ? negated(start) : start;
    AdamState adam(cfg.rows, cfg.cols, cfg.adam);
    Rng rng(cfg.seed);

    double loss0 = true_total_loss(working, start, sc);
    double denom = std::max(std::abs(loss0), 1e-300);
    auto push_row = [&](long step, double wall_s, double loss) {
      result.rows.push_back(
          {arm.name, step, wall_s, loss, 100.0 * (loss0 - loss) / denom});
    };
    push_row(0, 0.0, loss0);

    double wall_s = 0.0;
    long step = 0;
    long last_logged = 0;
    for (;;) {
      if (config.max_steps > 0) {
        if (step >= config.max_steps) break;
      } else if (wall_s >= config.budget_seconds) {
        break;
      }
      StepRecord rec = stump_step(working, start, sc, adam, rng);
      ++step;
      wall_s += rec.wall_ms / 1000.0;
      if (config.eval_every > 0 && step % config.eval_every == 0) {
        push_row(step, wall_s, true_total_loss(working, start, sc));
        last_logged = step;
      }
    }
    if (step != last_logged)
      push_row(step, wall_s, true_total_loss(working, start, sc));

    double final_pct = result.rows.back().pct_reduced;
    if (arm.mode == Mode::stump)
      result.stump_final_pct = final_pct;
    else
      result.vanilla_final_pct = final_pct;
  }
  return result;
}

std::string bench_to_csv(const std::vector<BenchRow>& rows) {
  std::string csv = "arm,step,wall_s,loss,pct_reduced\n";
  for (const BenchRow& r : rows) {
    csv += r.arm;
    csv += ',';
    csv += std::to_string(r.step);
    csv += ',';
    csv += num(r.wall_s);
    csv += ',';
    csv += num(r.loss);
    csv += ',';
    csv += num(r.pct_reduced);
    csv += '\n';
  }
  return csv;
}

void write_bench_outputs(const BenchResult& result, const std::string& outdir) {
  auto dir = prepare_outdir(outdir);
  write_text_file((dir / "bench.csv").string(), bench_to_csv(result.rows));
}

SmearHeatmap execute_smearvis(const SmearConfig& config) {
  RunConfig cfg = config.base;
  ScalarField start = task_start_field(cfg);
  ScalarField working = cfg.superlevel ? negated(start) : start;

  FunctionalSpec fs = cfg.functional;
  fs.endpoints = EndpointMask::both;  // both heat channels are visualized
  fs.region.life_min = config.life_min;

  Rng rng(cfg.seed);
  return critical_smear(working, fs, cfg.down, config.noise_eps, config.samples,
                        config.projections, rng);
}

void write_smear_outputs(const SmearHeatmap& heat, const std::string& outdir) {
  auto dir = prepare_outdir(outdir);
  write_text_file((dir / "heat_birth.csv").string(), field_to_csv(heat.birth_heat));
  write_text_file((dir / "heat_death.csv").string(), field_to_csv(heat.death_heat));

  ScalarField birth = normalized_0_255(heat.birth_heat);
  ScalarField death = normalized_0_255(heat.death_heat);
  int rows = birth.rows();
  int cols = birth.cols();
  ScalarField composite(rows, 2 * cols, 0.0);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      composite.at(r, c) = birth.at(r, c);
      composite.at(r, cols + c) = death.at(r, c);
    }
  save_field(composite, (dir / "heat.png").string());
}

}  // namespace stump
