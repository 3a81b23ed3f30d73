#include <algorithm>
#include <cmath>
#include <numeric>

#include "sensorplace/solvers.hpp"

namespace sensorplace {
namespace {

struct Individual {
  Genotype genotype;
  FitnessReport report;
};

double mean_total(const std::vector<Individual>& pop) {
  double sum = 0.0;
  for (const auto& ind : pop) sum += ind.report.total_eur;
  return sum / static_cast<double>(pop.size());
}

void sort_by_total(std::vector<Individual>& pop) {
  std::stable_sort(pop.begin(), pop.end(), [](const Individual& a, const Individual& b) {
    return a.report.total_eur < b.report.total_eur;
  });
}

}  // namespace

void validate(const EAConfig& c) {
  const auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (c.population_size < 2) throw ValidationError("population_size must be >= 2");
  if (!unit(c.mutation_prob)) throw ValidationError("mutation_prob must be in [0, 1]");
  if (!unit(c.crossover_frac) || !unit(c.survival_frac)) {
    throw ValidationError("crossover_frac and survival_frac must be in [0, 1]");
  }
  if (std::abs(c.crossover_frac - (1.0 - c.survival_frac)) > 1e-9) {
    throw ValidationError("crossover_frac must equal 1 - survival_frac");
  }
  if (!unit(c.zero_prob)) throw ValidationError("zero_prob must be in [0, 1]");
  const InitMix& m = c.init_mix;
  if (!unit(m.random) || !unit(m.power_of_two) || !unit(m.recursive) ||
      std::abs(m.random + m.power_of_two + m.recursive - 1.0) > 1e-9) {
    throw ValidationError("init_mix fractions must lie in [0, 1] and sum to 1");
  }
  if (c.tournament_size == 1) throw ValidationError("tournament_size must be 0 or >= 2");
}

std::size_t survivor_count(const EAConfig& c) {
  const auto n = static_cast<double>(c.population_size);
  const auto keep = static_cast<std::size_t>(std::ceil(c.survival_frac * n - 1e-9));
  return std::clamp<std::size_t>(keep, 1, c.population_size);
}

EAResult evolutionary_algorithm(const Problem& problem, const EAConfig& config,
                                Budget& budget, Rng& rng) {
  validate(config);
  const std::size_t n = config.population_size;
  const std::size_t n_sp = problem.num_sensor_points();
  const std::size_t n_sen = problem.num_sensor_types();
  const std::uint64_t start_used = budget.used;

  EAResult result;

  // Initial population. All random draws happen before any evaluation.
  std::size_t n_random = n / 2;
  std::size_t n_power = n - n_random;
  std::size_t n_recursive = 0;
  if (config.init_mode == InitMode::hybrid) {
    const auto share = [&](double f) {
      return static_cast<std::size_t>(std::floor(f * static_cast<double>(n) + 1e-9));
    };
    n_random = share(config.init_mix.random);
    n_power = std::min(share(config.init_mix.power_of_two), n - n_random);
    n_recursive = n - n_random - n_power;
  }

  std::vector<Genotype> initial;
  initial.reserve(n);
  for (std::size_t k = 0; k < n_random; ++k) {
    initial.push_back(sample_random(n_sp, n_sen, rng));
    result.initial_sources.push_back(InitSource::random);
    result.initial_source_feasible.push_back(false);
  }
  for (std::size_t k = 0; k < n_power; ++k) {
    initial.push_back(sample_power_of_two(n_sp, n_sen, rng, config.zero_prob));
    result.initial_sources.push_back(InitSource::power_of_two);
    result.initial_source_feasible.push_back(false);
  }
  for (std::size_t k = 0; k < n_recursive; ++k) {
    Genotype built = recursive_algorithm(problem, rng);
    // Construction checks share the coverage code but never the budget.
    const std::vector<double> miss = problem.miss_products(built);
    const double threshold = problem.options().detection.threshold;
    const bool feasible = std::all_of(
        problem.required_pairs().begin(), problem.required_pairs().end(),
        [&](std::uint32_t flat) { return 1.0 - miss[flat] >= threshold; });
    initial.push_back(mutate(std::move(built), n_sen, rng));
    result.initial_sources.push_back(InitSource::recursive);
    result.initial_source_feasible.push_back(feasible);
  }

  std::vector<Individual> pop;
  pop.reserve(n);
  const auto remember = [&](const Individual& ind) {
    if (result.evaluations == 0 || ind.report.total_eur < result.best_report.total_eur) {
      result.best = ind.genotype;
      result.best_report = ind.report;
    }
    ++result.evaluations;
  };
  for (Genotype& g : initial) {
    const auto report = try_evaluate(problem, budget, g);
    if (!report) {
      if (pop.empty()) throw PartialResult(Genotype(n_sp), FitnessReport{});
      throw PartialResult(result.best, result.best_report);
    }
    pop.push_back({std::move(g), *report});
    result.initial_totals.push_back(report->total_eur);
    remember(pop.back());
  }
  result.trace.push_back({budget.used, result.best_report.total_eur, mean_total(pop)});

  const std::size_t keep = survivor_count(config);
  std::bernoulli_distribution mutates(config.mutation_prob);
  std::uniform_int_distribution<std::size_t> any_survivor(0, keep - 1);
  const auto pick_parent = [&]() -> const Genotype& {
    if (config.tournament_size < 2) return pop[any_survivor(rng)].genotype;
    std::size_t best = any_survivor(rng);
    for (std::size_t t = 1; t < config.tournament_size; ++t) {
      best = std::min(best, any_survivor(rng));  // survivors are sorted
    }
    return pop[best].genotype;
  };

  for (std::uint64_t gen = 0; gen < config.generations && !budget.exhausted(); ++gen) {
    sort_by_total(pop);
    pop.resize(keep);

    std::vector<Genotype> offspring;
    offspring.reserve(n - keep);
    for (std::size_t k = keep; k < n; ++k) {
      const Genotype& a = pick_parent();
      const Genotype& b = pick_parent();
      Genotype child = crossover(a, b, rng);
      if (mutates(rng)) child = mutate(std::move(child), n_sen, rng);
      offspring.push_back(std::move(child));
    }
    for (Genotype& child : offspring) {
      const auto report = try_evaluate(problem, budget, child);
      if (!report) break;
      pop.push_back({std::move(child), *report});
      remember(pop.back());
    }
    result.trace.push_back({budget.used, result.best_report.total_eur, mean_total(pop)});
    ++result.generations_completed;
  }

  result.evaluations = budget.used - start_used;
  return result;
}

}  // namespace sensorplace
