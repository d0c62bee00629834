#include <cstdint>
#include <iostream>
#include <limits>
#include <string>

#include "CLI11.hpp"
#include "stump/driver.hpp"
#include "stump/persistence.hpp"

namespace {

using namespace stump;

// Raw option values as parsed; only options the user actually passed (on the
// command line or in a config file) override the task preset.
struct RawOpts {
  std::string task = "custom";
  std::string mode = "stump";
  std::string input;
  int rows = 64;
  int cols = 64;
  int size = 0;
  std::uint64_t seed = 1;
  long steps = 10000;
  double alpha = -1.0;
  double eps = 0.0;
  std::string data_term = "mse";
  double lr = 0.05;
  int patch = 1;
  std::string measure = "simplex";
  double p = 1.0;
  int hom_dim = 0;
  std::string sign = "minimize";
  std::string endpoints = "both";
  std::string essentials;
  double life_min = 0.0;
  double life_max = std::numeric_limits<double>::infinity();
  double birth_min = -std::numeric_limits<double>::infinity();
  double birth_max = std::numeric_limits<double>::infinity();
  std::string outdir = "out";
};

Measure measure_from_name(const std::string& name) {
  if (name == "center") return Measure::center;
  if (name == "vertex" || name == "vertex_uniform") return Measure::vertex_uniform;
  if (name == "simplex" || name == "simplex_uniform") return Measure::simplex_uniform;
  throw CLI::ValidationError("--measure", "unknown measure: " + name);
}

Sign sign_from_name(const std::string& name) {
  if (name == "minimize" || name == "min") return Sign::minimize;
  if (name == "maximize" || name == "max") return Sign::maximize;
  throw CLI::ValidationError("--sign", "unknown sign: " + name);
}

EndpointMask endpoints_from_name(const std::string& name) {
  if (name == "both") return EndpointMask::both;
  if (name == "births" || name == "births_only") return EndpointMask::births_only;
  if (name == "deaths" || name == "deaths_only") return EndpointMask::deaths_only;
  throw CLI::ValidationError("--endpoints", "unknown endpoint mask: " + name);
}

EssentialPolicy essentials_from_name(const std::string& name) {
  if (name == "exclude") return EssentialPolicy::exclude;
  if (name == "clamp" || name == "clamp_to_max") return EssentialPolicy::clamp_to_max;
  throw CLI::ValidationError("--essentials", "unknown essential policy: " + name);
}

DataTerm data_term_from_name(const std::string& name) {
  if (name == "mse") return DataTerm::mse;
  if (name == "bce") return DataTerm::bce;
  throw CLI::ValidationError("--data-term", "unknown data term: " + name);
}

void add_field_options(CLI::App* sub, RawOpts& raw) {
  sub->set_config("--config", "", "INI config file; flags override its values");
  sub->add_option("--task", raw.task, "Task preset: wells, circle, blobs, segmentation, custom");
  sub->add_option("--input", raw.input, "Input field (.png or .csv); overrides the generator");
  sub->add_option("--rows", raw.rows, "Generated field rows");
  sub->add_option("--cols", raw.cols, "Generated field cols");
  sub->add_option("--size", raw.size, "Square field size (sets rows and cols)");
  sub->add_option("--seed", raw.seed, "RNG seed; same seed gives bitwise-identical outputs");
}

void add_run_options(CLI::App* sub, RawOpts& raw) {
  sub->add_option("--steps", raw.steps, "Descent steps");
  sub->add_option("--alpha", raw.alpha, "Topological weight in [0,1]; default 1 - 1/pixels");
  sub->add_option("--eps", raw.eps, "Per-step uniform noise amplitude");
  sub->add_option("--data-term", raw.data_term, "Data fit: mse or bce");
  sub->add_option("--lr", raw.lr, "Adam learning rate");
  sub->add_option("--patch", raw.patch, "Downsampling patch size k (k x k)");
  sub->add_option("--measure", raw.measure, "Patch measure: center, vertex, simplex");
  sub->add_option("--p", raw.p, "Wasserstein exponent");
  sub->add_option("--hom-dim", raw.hom_dim, "Homology dimension: 0 or 1");
  sub->add_option("--sign", raw.sign, "minimize or maximize the functional");
  sub->add_option("--endpoints", raw.endpoints, "Gradient endpoints: both, births, deaths");
  sub->add_option("--essentials", raw.essentials, "Essential dots: exclude or clamp");
  sub->add_option("--life-min", raw.life_min, "Region: lifetime strictly above");
  sub->add_option("--life-max", raw.life_max, "Region: lifetime strictly below");
  sub->add_option("--birth-min", raw.birth_min, "Region: birth strictly above");
  sub->add_option("--birth-max", raw.birth_max, "Region: birth strictly below");
  sub->add_flag("--superlevel", "Optimize superlevel topology (negate internally)");
  sub->add_flag("--sublevel", "Optimize sublevel topology");
}

// Builds the effective RunConfig: task preset first, then explicit options.
RunConfig build_run_config(CLI::App* sub, const RawOpts& raw) {
  RunConfig cfg = preset_run_config(task_from_name(raw.task));
  cfg.input = raw.input;
  cfg.rows = raw.size > 0 ? raw.size : raw.rows;
  cfg.cols = raw.size > 0 ? raw.size : raw.cols;
  cfg.seed = raw.seed;

  auto given = [&](const std::string& name) {
    const CLI::Option* opt = sub->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  };

  if (given("--mode")) {
    if (raw.mode == "stump")
      cfg.mode = Mode::stump;
    else if (raw.mode == "vanilla")
      cfg.mode = Mode::vanilla;
    else
      throw CLI::ValidationError("--mode", "unknown mode: " + raw.mode);
  }
  if (given("--steps")) cfg.steps = raw.steps;
  if (given("--alpha")) cfg.alpha = raw.alpha;
  if (given("--eps")) cfg.noise_eps = raw.eps;
  if (given("--data-term")) cfg.data_term = data_term_from_name(raw.data_term);
  if (given("--lr")) cfg.adam.lr = raw.lr;
  if (given("--patch")) cfg.down.patch = raw.patch;
  if (given("--measure")) cfg.down.measure = measure_from_name(raw.measure);
  if (given("--p")) cfg.functional.p = raw.p;
  if (given("--hom-dim")) {
    cfg.functional.hom_dim = raw.hom_dim;
    if (!given("--essentials") && cfg.task == Task::custom)
      cfg.functional.essentials = default_essential_policy(raw.hom_dim);
  }
  if (given("--sign")) cfg.functional.sign = sign_from_name(raw.sign);
  if (given("--endpoints")) cfg.functional.endpoints = endpoints_from_name(raw.endpoints);
  if (given("--essentials")) cfg.functional.essentials = essentials_from_name(raw.essentials);
  if (given("--life-min")) cfg.functional.region.life_min = raw.life_min;
  if (given("--life-max")) cfg.functional.region.life_max = raw.life_max;
  if (given("--birth-min")) cfg.functional.region.birth_min = raw.birth_min;
  if (given("--birth-max")) cfg.functional.region.birth_max = raw.birth_max;
  if (given("--superlevel")) cfg.superlevel = true;
  if (given("--sublevel")) cfg.superlevel = false;
  return cfg;
}

int run_main(CLI::App* sub, const RawOpts& raw) {
  RunConfig cfg = build_run_config(sub, raw);
  RunArtifacts artifacts = execute_run(cfg);
  write_run_outputs(artifacts, raw.outdir);
  double final_loss = artifacts.log.empty() ? 0.0 : artifacts.log.back().total_loss;
  std::cout << "run finished: " << artifacts.log.size() << " steps, final total loss "
            << final_loss << ", outputs in " << raw.outdir << "\n";
  return 0;
}

int bench_main(CLI::App* sub, const RawOpts& raw, double budget_seconds, long max_steps,
               long eval_every) {
  BenchConfig bc;
  bc.base = build_run_config(sub, raw);
  bc.budget_seconds = budget_seconds;
  bc.max_steps = max_steps;
  bc.eval_every = eval_every;
  BenchResult result = execute_bench(bc);
  write_bench_outputs(result, raw.outdir);
  std::cout << "bench finished: stump " << result.stump_final_pct << "% vs vanilla "
            << result.vanilla_final_pct << "% loss reduction, outputs in " << raw.outdir
            << "\n";
  return 0;
}

int smearvis_main(CLI::App* sub, const RawOpts& raw, int samples, int projections,
                  double life_min) {
  SmearConfig sc;
  sc.base = build_run_config(sub, raw);
  sc.samples = samples;
  sc.projections = projections;
  sc.noise_eps = sub->count("--eps") ? raw.eps : 50.0;
  sc.life_min = life_min;
  SmearHeatmap heat = execute_smearvis(sc);
  write_smear_outputs(heat, raw.outdir);
  std::cout << "smearvis finished: " << heat.sample_count << " samples, outputs in "
            << raw.outdir << "\n";
  return 0;
}

int gen_main(const std::string& name, const RawOpts& raw, const std::string& out_path) {
  RunConfig cfg;
  cfg.task = task_from_name(name);
  cfg.rows = raw.size > 0 ? raw.size : raw.rows;
  cfg.cols = raw.size > 0 ? raw.size : raw.cols;
  cfg.seed = raw.seed;
  ScalarField field = task_start_field(cfg);
  save_field(field, out_path);
  std::cout << "wrote " << out_path << "\n";
  return 0;
}

int diagram_main(const RawOpts& raw, bool superlevel, const std::string& out_path) {
  if (raw.input.empty()) throw std::invalid_argument("diagram requires --input");
  ScalarField field = load_field(raw.input);
  if (superlevel) field = negated(field);
  PersistenceDiagram diag = diagram_of(field);
  if (out_path.empty())
    std::cout << diagram_to_csv(diag);
  else {
    save_diagram(diag, out_path);
    std::cout << "wrote " << out_path << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Topological optimization of 2D scalar fields"};
  app.require_subcommand(1);

  RawOpts raw;

  auto* run = app.add_subcommand("run", "Optimize a field against a topological loss");
  add_field_options(run, raw);
  add_run_options(run, raw);
  run->add_option("--mode", raw.mode, "stump (stochastic) or vanilla (full resolution)");
  run->add_option("--outdir", raw.outdir, "Output directory");

  auto* bench = app.add_subcommand("bench", "Stochastic vs full-resolution loss-vs-time");
  double budget_seconds = 180.0;
  long max_steps = 0;
  long eval_every = 50;
  add_field_options(bench, raw);
  add_run_options(bench, raw);
  bench->add_option("--budget-seconds", budget_seconds, "Wall budget per arm");
  bench->add_option("--max-steps", max_steps,
                    "Fixed step count per arm (overrides the wall budget)");
  bench->add_option("--eval-every", eval_every, "Full-loss milestone interval");
  bench->add_option("--outdir", raw.outdir, "Output directory");

  auto* smearvis = app.add_subcommand("smearvis", "Critical-point smear heatmaps");
  int samples = 1000;
  int projections = 20;
  double life_min = 30.0;
  add_field_options(smearvis, raw);
  add_run_options(smearvis, raw);
  smearvis->add_option("--samples", samples, "Number of perturbation samples");
  smearvis->add_option("--projections", projections, "Sliced-matching directions");
  smearvis->add_option("--smear-life-min", life_min, "Lifetime floor of visualized dots");
  smearvis->add_option("--outdir", raw.outdir, "Output directory");

  auto* gen = app.add_subcommand("gen", "Write a generated field to a file");
  std::string gen_name;
  std::string gen_out = "field.png";
  gen->add_option("name", gen_name, "Generator: wells, circle, blobs")->required();
  add_field_options(gen, raw);
  gen->add_option("--out", gen_out, "Output path (.png or .csv)");

  auto* diagram = app.add_subcommand("diagram", "Persistence diagram of an input field");
  std::string diagram_out;
  bool diagram_superlevel = false;
  add_field_options(diagram, raw);
  diagram->add_flag("--superlevel", diagram_superlevel, "Diagram of the negated field");
  diagram->add_option("--out", diagram_out, "Output CSV path (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return run_main(run, raw);
    if (bench->parsed()) return bench_main(bench, raw, budget_seconds, max_steps, eval_every);
    if (smearvis->parsed()) return smearvis_main(smearvis, raw, samples, projections, life_min);
    if (gen->parsed()) return gen_main(gen_name, raw, gen_out);
    if (diagram->parsed()) return diagram_main(raw, diagram_superlevel, diagram_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
