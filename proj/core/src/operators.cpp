#include "sensorplace/solvers.hpp"

namespace sensorplace {

std::optional<FitnessReport> try_evaluate(const Problem& problem, Budget& budget,
                                          const Genotype& g) {
  if (budget.exhausted()) return std::nullopt;
  ++budget.used;
  return problem.evaluate(g);
}

Genotype apply_move(Genotype g, MoveKind kind, std::size_t pos, std::size_t n_sen, Rng& rng) {
  const std::uint32_t top = max_sensor_gene(n_sen);
  const bool sensor = g.is_sensor_position(pos);
  const std::uint32_t v = g.gene(pos);
  std::uint32_t out = v;
  switch (kind) {
    case MoveKind::increase:
      out = sensor ? std::min(v + kSensorStep, top) : (v + kAngleStep) % kAngleSteps;
      break;
    case MoveKind::decrease:
      out = sensor ? (v >= kSensorStep ? v - kSensorStep : 0u)
                   : (v + kAngleSteps - kAngleStep) % kAngleSteps;
      break;
    case MoveKind::randomize:
      out = sensor ? std::uniform_int_distribution<std::uint32_t>(0, top)(rng)
                   : std::uniform_int_distribution<std::uint32_t>(0, kAngleSteps - 1)(rng);
      break;
    case MoveKind::zero:
      out = 0;
      break;
  }
  g.set_gene(pos, out);
  return g;
}

Genotype local_search_move(Genotype g, MoveKind kind, std::size_t n_sen, Rng& rng) {
  const std::size_t pos = std::uniform_int_distribution<std::size_t>(0, g.size() - 1)(rng);
  return apply_move(std::move(g), kind, pos, n_sen, rng);
}

Genotype crossover(const Genotype& a, const Genotype& b, Rng& rng) {
  if (a.sensor_genes.size() != b.sensor_genes.size() ||
      a.angle_genes.size() != b.angle_genes.size()) {
    throw DimensionMismatch("crossover parents differ in length");
  }
  std::bernoulli_distribution coin(0.5);
  Genotype child = a;
  for (std::size_t pos = 0; pos < child.size(); ++pos) {
    if (coin(rng)) child.set_gene(pos, b.gene(pos));
  }
  return child;
}

Genotype apply_mutation(Genotype g, MutationKind kind, std::size_t pos, std::size_t n_sen,
                        Rng& rng) {
  return apply_move(std::move(g), kind == MutationKind::replace ? MoveKind::randomize
                                                                : MoveKind::zero,
                    pos, n_sen, rng);
}

Genotype mutate(Genotype g, std::size_t n_sen, Rng& rng) {
  const MutationKind kind =
      std::bernoulli_distribution(0.5)(rng) ? MutationKind::replace : MutationKind::zero;
  const std::size_t pos = std::uniform_int_distribution<std::size_t>(0, g.size() - 1)(rng);
  return apply_mutation(std::move(g), kind, pos, n_sen, rng);
}

}  // namespace sensorplace
