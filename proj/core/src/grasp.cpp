#include "sensorplace/solvers.hpp"

namespace sensorplace {

void validate(const GraspConfig& config) {
  // local_search_iterations may be 0, which reduces GRASP to repeated
  // construction.
  if (config.greedy_iterations < 1) {
    throw ValidationError("GRASP greedy_iterations must be >= 1");
  }
}

Incumbent local_search(const Problem& problem, Incumbent current, std::uint64_t steps,
                       Budget& budget, Rng& rng, const IncumbentObserver& observer) {
  const std::size_t n_sen = problem.num_sensor_types();
  std::uniform_int_distribution<std::size_t> pick_kind(0, kMoveKinds.size() - 1);
  for (std::uint64_t step = 0; step < steps; ++step) {
    const MoveKind kind = kMoveKinds[pick_kind(rng)];
    Genotype candidate = local_search_move(current.genotype, kind, n_sen, rng);
    const auto report = try_evaluate(problem, budget, candidate);
    if (!report) break;
    if (report->total_eur < current.report.total_eur) {
      current.genotype = std::move(candidate);
      current.report = *report;
    }
    if (observer) observer(current.report);
  }
  return current;
}

SolverResult grasp(const Problem& problem, const GraspConfig& config, Budget& budget,
                   Rng& rng) {
  validate(config);
  SolverResult result;
  double sum = 0.0;
  std::uint64_t restarts = 0;
  const std::uint64_t start_used = budget.used;
  for (std::uint64_t r = 0; r < config.greedy_iterations && !budget.exhausted(); ++r) {
    Genotype built = recursive_algorithm(problem, rng);
    const auto report = try_evaluate(problem, budget, built);
    const Incumbent local = local_search(problem, {std::move(built), *report},
                                         config.local_search_iterations, budget, rng);
    ++restarts;
    sum += local.report.total_eur;
    if (restarts == 1 || local.report.total_eur < result.best_report.total_eur) {
      result.best = local.genotype;
      result.best_report = local.report;
    }
    result.trace.push_back({budget.used, result.best_report.total_eur,
                            sum / static_cast<double>(restarts)});
  }
  result.evaluations = budget.used - start_used;
  return result;
}

}  // namespace sensorplace
