// sensorplace: scenario generation, evaluation, solving, sweeps and figures.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sensorplace/error.hpp"
#include "sensorplace/harness.hpp"
#include "sensorplace/io.hpp"
#include "sensorplace/problem.hpp"
#include "sensorplace/render.hpp"

namespace fs = std::filesystem;
using namespace sensorplace;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;

struct Options {
  std::string scenario;
  std::vector<std::string> algos;
  std::optional<std::uint64_t> seed;
  std::string seeds;
  std::optional<std::uint64_t> budget;
  std::string out;
  std::optional<double> threshold;
  std::optional<double> penalty;
  std::string config;
  bool point_penalty = false;
  bool no_render = false;
  // evaluate / render
  std::string genotype;
  std::optional<std::size_t> sensor_type;
  std::string from;
};

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    write_file(out, text);
  }
}

// Config file first, then command-line overrides. Algorithms are only
// required by the verbs that run them.
ExperimentConfig build_config(const Options& o, bool need_algorithms) {
  ExperimentConfig c;
  if (!o.config.empty()) {
    c = load_experiment_config(read_file(o.config));
  } else {
    c.seeds = parse_seed_range("2023..2052");
  }
  if (!o.scenario.empty()) c.scenario = parse_scenario_source(o.scenario);
  if (!o.algos.empty()) {
    c.algorithms.clear();
    for (const auto& a : o.algos) c.algorithms.push_back(preset_algorithm(a));
  }
  if (!o.seeds.empty()) c.seeds = parse_seed_range(o.seeds);
  if (o.seed) c.seeds = {*o.seed};
  if (o.budget) c.budget = *o.budget;
  if (o.threshold) c.detection.threshold = *o.threshold;
  if (o.penalty) c.penalty_unit = *o.penalty;
  if (o.point_penalty) c.penalty_mode = PenaltyMode::per_point;
  if (!o.out.empty()) c.output_dir = o.out;
  if (o.no_render) c.render = false;
  if (need_algorithms) {
    validate(c);
  } else {
    validate(c.detection);
    if (!(c.penalty_unit >= 0.0)) throw ValidationError("penalty must be non-negative");
  }
  return c;
}

int cmd_generate(const Options& o) {
  if (o.scenario.empty()) throw ValidationError("generate needs --scenario");
  emit(save_scenario(materialize(parse_scenario_source(o.scenario))), o.out);
  return kExitOk;
}

int cmd_evaluate(const Options& o) {
  const ExperimentConfig c = build_config(o, false);
  const Problem problem(materialize(c.scenario), c.fitness_options());
  const Genotype g = load_genotype(read_file(o.genotype));
  emit(save_report(problem.evaluate(g)), o.out);
  return kExitOk;
}

int cmd_solve(const Options& o) {
  ExperimentConfig c = build_config(o, true);
  if (c.algorithms.size() != 1) throw ValidationError("solve runs exactly one --algo");
  if (!o.seed) c.seeds = {c.seeds.front()};
  const ExperimentSummary s = run_experiment(c);
  const RunRecord& r = s.runs.front();
  if (!r.ok) {
    std::cerr << "sensorplace: " << r.algorithm << " seed " << r.seed << ": " << r.error << "\n";
    return kExitUsage;
  }
  std::cout << save_report(r.report);
  if (c.output_dir.empty()) std::cout << save_genotype(r.best);
  return kExitOk;
}

int cmd_bench(const Options& o) {
  const ExperimentConfig c = build_config(o, true);
  const ExperimentSummary s = run_experiment(c);
  std::cout << emit_summary_table(s);
  return kExitOk;
}

// From a bench/solve output directory: convergence plot plus coverage maps of
// the best successful run.
void render_artifacts(const Options& o) {
  const fs::path dir = o.from;
  const fs::path out = o.out.empty() ? dir : fs::path(o.out);
  fs::create_directories(out);
  const ExperimentConfig c = build_config({.threshold = o.threshold}, false);
  const Problem problem(load_scenario(read_file(dir / "scenario.json")), c.fitness_options());
  const auto runs = nlohmann::json::parse(read_file(dir / "runs.json")).at("runs");

  std::vector<std::pair<std::string, Trace>> traces;
  const nlohmann::json* best = nullptr;
  for (const auto& r : runs) {
    if (r.at("status") != "ok") continue;
    const std::string alg = r.at("algorithm").get<std::string>();
    bool seen = false;
    for (const auto& t : traces) seen = seen || t.first == alg;
    if (!seen) {
      traces.emplace_back(alg, parse_trace_csv(read_file(dir / r.at("trace").get<std::string>())));
    }
    if (!best || r.at("best_eur").get<double>() < best->at("best_eur").get<double>()) best = &r;
  }
  if (!traces.empty()) write_file(out / "convergence.svg", render_convergence(traces));
  write_file(out / "scenario.svg", render_scenario(problem.scenario()));
  if (!best) return;
  Genotype g;
  g.sensor_genes = best->at("sensor_genes").get<std::vector<std::uint32_t>>();
  g.angle_genes = best->at("angle_genes").get<std::vector<std::uint32_t>>();
  for (std::size_t i = 0; i < problem.num_sensor_types(); ++i) {
    write_file(out / ("coverage_" + std::to_string(i + 1) + ".svg"),
               render_coverage(problem, g, i));
  }
}

int cmd_render(const Options& o) {
  if (!o.from.empty()) {
    render_artifacts(o);
    return kExitOk;
  }
  if (o.scenario.empty()) throw ValidationError("render needs --from <dir> or --scenario");
  const ExperimentConfig c = build_config(o, false);
  const Problem problem(materialize(c.scenario), c.fitness_options());
  if (o.genotype.empty()) {
    emit(render_scenario(problem.scenario()), o.out);
    return kExitOk;
  }
  const std::size_t type = o.sensor_type.value_or(1);
  if (type < 1 || type > problem.num_sensor_types()) {
    throw ValidationError("--type must be between 1 and " +
                          std::to_string(problem.num_sensor_types()));
  }
  const Genotype g = load_genotype(read_file(o.genotype));
  emit(render_coverage(problem, g, type - 1), o.out);
  return kExitOk;
}

void add_scenario_flags(CLI::App& cmd, Options& o) {
  cmd.add_option("--scenario", o.scenario, "Scenario file or family:seed (small|medium|large)");
  cmd.add_option("--config", o.config, "Experiment config file");
  cmd.add_option("--threshold", o.threshold, "Detection threshold in (0, 1)");
  cmd.add_option("--penalty", o.penalty, "Penalty per unmet requirement (EUR)");
  cmd.add_flag("--point-penalty", o.point_penalty, "Charge per point instead of per pair");
}

void add_run_flags(CLI::App& cmd, Options& o) {
  add_scenario_flags(cmd, o);
  cmd.add_option("--algo", o.algos, "RA, GRASP_1, GRASP_2, EA or EA+RA")->delimiter(',');
  cmd.add_option("--seed", o.seed, "Single seed");
  cmd.add_option("--seeds", o.seeds, "Inclusive seed range a..b");
  cmd.add_option("--budget", o.budget, "Fitness evaluations per run");
  cmd.add_option("--out", o.out, "Output directory");
  cmd.add_flag("--no-render", o.no_render, "Skip SVG output");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-sensor placement with security levels"};
  app.require_subcommand(1);
  Options o;

  auto* generate = app.add_subcommand("generate", "Write a generated scenario");
  generate->add_option("--scenario", o.scenario, "family:seed")->required();
  generate->add_option("--out", o.out, "Output file (default stdout)");

  auto* evaluate = app.add_subcommand("evaluate", "Evaluate one genotype file");
  add_scenario_flags(*evaluate, o);
  evaluate->add_option("genotype", o.genotype, "Genotype file")->required();
  evaluate->add_option("--out", o.out, "Output file (default stdout)");

  auto* solve = app.add_subcommand("solve", "Run one algorithm with one seed");
  add_run_flags(*solve, o);

  auto* bench = app.add_subcommand("bench", "Run every algorithm over every seed");
  add_run_flags(*bench, o);

  auto* render = app.add_subcommand("render", "Draw scenarios, coverage and convergence");
  add_scenario_flags(*render, o);
  render->add_option("--from", o.from, "Artifact directory written by solve or bench");
  render->add_option("--genotype", o.genotype, "Genotype file for a coverage map");
  render->add_option("--type", o.sensor_type, "Sensor type (1-based) for the coverage map");
  render->add_option("--out", o.out, "Output file, or directory with --from");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*generate) return cmd_generate(o);
    if (*evaluate) return cmd_evaluate(o);
    if (*solve) return cmd_solve(o);
    if (*bench) return cmd_bench(o);
    return cmd_render(o);
  } catch (const InfeasibleScenario& e) {
    std::cerr << "sensorplace: infeasible scenario: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const ParseError& e) {
    std::cerr << "sensorplace: " << e.what();
    if (e.line() > 0) std::cerr << " (line " << e.line() << ", column " << e.column() << ")";
    std::cerr << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "sensorplace: " << e.what() << "\n";
    return kExitUsage;
  }
}
