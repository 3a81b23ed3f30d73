#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sensorplace/encoding.hpp"
#include "sensorplace/fitness.hpp"
#include "sensorplace/problem.hpp"
#include "sensorplace/scenario.hpp"
#include "sensorplace/scenario_generator.hpp"
#include "sensorplace/solvers.hpp"

namespace sensorplace {

// Statistics ---------------------------------------------------------------

struct SummaryStats {
  std::size_t count = 0;
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  /// Sample standard deviation (n - 1); 0 for a single sample.
  double std = 0.0;
};

SummaryStats summarize(std::span<const double> values);

// Algorithms -----------------------------------------------------------------

enum class AlgorithmKind { recursive, grasp, evolutionary };

struct AlgorithmSpec {
  std::string name;
  AlgorithmKind kind = AlgorithmKind::evolutionary;
  std::uint64_t recursive_iterations = 100'000;
  GraspConfig grasp;
  EAConfig ea;

  /// Whether running it requires the recursive construction.
  bool uses_construction() const;
};

/// Named configurations: "RA", "GRASP_1", "GRASP_2", "EA" (random
/// initialization) and "EA+RA" (hybrid initialization).
AlgorithmSpec preset_algorithm(std::string_view name);

// Experiment configuration -----------------------------------------------------

/// A scenario file, or a generated family instance.
struct ScenarioSource {
  std::optional<std::filesystem::path> path;
  ScenarioFamily family = ScenarioFamily::small;
  std::uint64_t seed = 2023;
  GeneratorOptions generator;
};

/// Accepts `family:seed` (e.g. `medium:2023`) or a path to a scenario file.
ScenarioSource parse_scenario_source(std::string_view text);
Scenario materialize(const ScenarioSource& source,
                     const SensorCatalog& catalog = default_catalog());

/// Inclusive `a..b`, or a single integer.
std::vector<std::uint64_t> parse_seed_range(std::string_view text);

struct ExperimentConfig {
  ScenarioSource scenario;
  std::vector<AlgorithmSpec> algorithms;
  std::vector<std::uint64_t> seeds;
  std::uint64_t budget = 100'000;
  DetectionParams detection;
  double penalty_unit = 1'000'000.0;
  PenaltyMode penalty_mode = PenaltyMode::per_pair;
  /// Empty: keep results in memory only.
  std::filesystem::path output_dir;
  /// Also write convergence and per-sensor coverage SVGs.
  bool render = true;

  FitnessOptions fitness_options() const { return {detection, penalty_unit, penalty_mode}; }
};

void validate(const ExperimentConfig& config);

/// Same document style as scenario files. Throws ParseError / ValidationError.
ExperimentConfig load_experiment_config(std::string_view text);

// Runs -----------------------------------------------------------------------

struct RunRecord {
  std::string algorithm;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  Genotype best;
  FitnessReport report;
  Trace trace;
  std::uint64_t evaluations = 0;
  double wall_seconds = 0.0;
};

/// Fresh budget and a fresh RNG seeded with `seed`.
RunRecord run_algorithm(const Problem& problem, const AlgorithmSpec& spec, std::uint64_t seed,
                        std::uint64_t budget);

struct AlgorithmSummary {
  std::string algorithm;
  SummaryStats stats;  ///< over successful runs
  std::size_t failed = 0;
};

struct ExperimentSummary {
  std::string scenario_name;
  std::vector<RunRecord> runs;  ///< algorithm-major, seeds in config order
  std::vector<AlgorithmSummary> per_algorithm;
};

/// Aggregates `runs` per algorithm, in first-appearance order.
std::vector<AlgorithmSummary> aggregate(std::span<const RunRecord> runs);

/// Runs every (algorithm, seed) cell and writes the artifacts when an output
/// directory is configured. Throws InfeasibleScenario before running when an
/// algorithm needs the construction and some requirement is uncoverable.
ExperimentSummary run_experiment(const ExperimentConfig& config);
ExperimentSummary run_experiment(const ExperimentConfig& config, const Problem& problem);

/// Writes summary.csv, runs.json, trace_<alg>_<seed>.csv, scenario.json and,
/// when `render` is set, convergence.svg and coverage_<type>.svg for the best
/// run. Wall-clock times go to timings.txt only, so every CSV/JSON artifact
/// is reproducible byte for byte.
void write_artifacts(const ExperimentConfig& config, const Problem& problem,
                     const ExperimentSummary& summary);

// Tabular output ------------------------------------------------------------------

/// Locale-independent shortest round-trip decimal.
std::string format_number(double value);

/// Header `scenario,algorithm,runs,failed,min_eur,max_eur,mean_eur,std_eur`.
std::string emit_summary_table(const ExperimentSummary& summary);
/// Header `evals,best_eur,mean_eur`.
std::string emit_trace_csv(const Trace& trace);
Trace parse_trace_csv(std::string_view text);
std::string emit_runs_json(const ExperimentSummary& summary);

/// File-name-safe form of an algorithm name (`EA+RA` -> `EA+RA`, spaces -> `_`).
std::string artifact_stem(std::string_view name);

}  // namespace sensorplace
