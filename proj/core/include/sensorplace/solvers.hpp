#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "sensorplace/encoding.hpp"
#include "sensorplace/error.hpp"
#include "sensorplace/fitness.hpp"
#include "sensorplace/problem.hpp"

namespace sensorplace {

/// Fitness-evaluation allowance of one run.
struct Budget {
  std::uint64_t max_evaluations = 100'000;
  std::uint64_t used = 0;

  bool exhausted() const { return used >= max_evaluations; }
  std::uint64_t remaining() const { return exhausted() ? 0 : max_evaluations - used; }
};

/// Evaluates `g` if the budget allows it, charging one evaluation.
std::optional<FitnessReport> try_evaluate(const Problem& problem, Budget& budget,
                                          const Genotype& g);

struct TracePoint {
  std::uint64_t evaluations = 0;
  double best_eur = 0.0;
  double mean_eur = 0.0;

  friend bool operator==(const TracePoint&, const TracePoint&) = default;
};
using Trace = std::vector<TracePoint>;

struct SolverResult {
  Genotype best;
  FitnessReport best_report;
  Trace trace;
  std::uint64_t evaluations = 0;
};

// Recursive constructive heuristic ------------------------------------------

/// Covers every required (point, type) pair by repeatedly picking a random
/// unmet pair and deploying that type at a random sensor point that covers it
/// alone. Does not consume budget. Throws InfeasibleScenario when some
/// required pair has no such sensor point. When requirements need different
/// orientations at one sensor point and no other point can serve them, no
/// genotype meets them all; the construction then returns its best attempt.
Genotype recursive_algorithm(const Problem& problem, Rng& rng);

/// Best of `iterations` independent constructions, each evaluated once.
SolverResult recursive_multistart(const Problem& problem, std::uint64_t iterations,
                                  Budget& budget, Rng& rng);

// Variation operators --------------------------------------------------------

enum class MoveKind { increase, decrease, randomize, zero };
inline constexpr std::array<MoveKind, 4> kMoveKinds{MoveKind::increase, MoveKind::decrease,
                                                    MoveKind::randomize, MoveKind::zero};

/// Sensor genes step by 1 (clamped), angle genes by 30 degrees (wrapped).
inline constexpr std::uint32_t kSensorStep = 1;
inline constexpr std::uint32_t kAngleStep = 30;

/// Applies `kind` at flat position `pos` (sensor genes first, then angles).
Genotype apply_move(Genotype g, MoveKind kind, std::size_t pos, std::size_t n_sen, Rng& rng);
/// Applies `kind` at a uniformly chosen position.
Genotype local_search_move(Genotype g, MoveKind kind, std::size_t n_sen, Rng& rng);

/// Uniform crossover: each gene comes from either parent with probability 1/2.
Genotype crossover(const Genotype& a, const Genotype& b, Rng& rng);

enum class MutationKind { replace, zero };
/// One position gets a fresh uniform value (replace) or 0 (zero).
Genotype apply_mutation(Genotype g, MutationKind kind, std::size_t pos, std::size_t n_sen,
                        Rng& rng);
/// Picks the kind with equal probability and the position uniformly.
Genotype mutate(Genotype g, std::size_t n_sen, Rng& rng);

// GRASP ----------------------------------------------------------------------

struct GraspConfig {
  std::uint64_t greedy_iterations = 100;
  std::uint64_t local_search_iterations = 1000;
};
void validate(const GraspConfig& config);

/// Called after every local-search step with the incumbent's report.
using IncumbentObserver = std::function<void(const FitnessReport&)>;

struct Incumbent {
  Genotype genotype;
  FitnessReport report;
};

/// Strict-improvement local search from `start` with uniformly chosen move
/// kinds. Stops after `steps` steps or when the budget runs out.
Incumbent local_search(const Problem& problem, Incumbent start, std::uint64_t steps,
                       Budget& budget, Rng& rng, const IncumbentObserver& observer = {});

/// One trace row per completed restart; `mean_eur` is the mean of the
/// restart bests so far.
SolverResult grasp(const Problem& problem, const GraspConfig& config, Budget& budget,
                   Rng& rng);

// Evolutionary algorithm -------------------------------------------------------

enum class InitMode { random_only, hybrid };

struct InitMix {
  double random = 0.33;
  double power_of_two = 0.33;
  double recursive = 0.34;
};

struct EAConfig {
  std::size_t population_size = 100;
  std::uint64_t generations = 1000;
  double mutation_prob = 0.7;
  double crossover_frac = 0.5;
  double survival_frac = 0.5;
  InitMix init_mix;
  InitMode init_mode = InitMode::hybrid;
  /// Probability that a power-of-two gene is left empty.
  double zero_prob = 0.5;
  /// 0 selects parents uniformly among survivors; k >= 2 runs a k-way
  /// tournament among them instead.
  std::size_t tournament_size = 0;
};
void validate(const EAConfig& config);

/// Number of survivors kept each generation: ceil(survival_frac * N).
std::size_t survivor_count(const EAConfig& config);

enum class InitSource { random, power_of_two, recursive };

struct EAResult : SolverResult {
  std::vector<InitSource> initial_sources;
  /// Totals of the initial population, in construction order.
  std::vector<double> initial_totals;
  /// For recursive individuals: whether the construction (before its
  /// perturbation) was feasible.
  std::vector<bool> initial_source_feasible;
  std::uint64_t generations_completed = 0;
};

/// Raised when the budget runs out before the initial population is fully
/// evaluated. Carries the best individual seen.
class PartialResult : public Error {
 public:
  PartialResult(Genotype best, FitnessReport report)
      : Error("budget exhausted before the first generation completed"),
        best_(std::move(best)),
        report_(std::move(report)) {}

  const Genotype& best() const { return best_; }
  const FitnessReport& report() const { return report_; }

 private:
  Genotype best_;
  FitnessReport report_;
};

/// Truncation-selection EA. One trace row after the initial population and
/// one per generation.
EAResult evolutionary_algorithm(const Problem& problem, const EAConfig& config,
                                Budget& budget, Rng& rng);

}  // namespace sensorplace
