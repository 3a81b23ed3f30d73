#include <cstdint>
#include <limits>

#include "sensorplace/solvers.hpp"

namespace sensorplace {
namespace {

constexpr std::uint32_t kAbsent = std::numeric_limits<std::uint32_t>::max();

// Points still unmet for one sensor type, with O(1) random pick and removal.
class UnmetSet {
 public:
  explicit UnmetSet(std::size_t n_points) : slot_(n_points, kAbsent) {}

  void insert(std::uint32_t p) {
    slot_[p] = static_cast<std::uint32_t>(items_.size());
    items_.push_back(p);
  }
  void erase(std::uint32_t p) {
    const std::uint32_t at = slot_[p];
    if (at == kAbsent) return;
    items_[at] = items_.back();
    slot_[items_[at]] = at;
    items_.pop_back();
    slot_[p] = kAbsent;
  }
  bool empty() const { return items_.empty(); }
  std::uint32_t pick(Rng& rng) const {
    return items_[std::uniform_int_distribution<std::size_t>(0, items_.size() - 1)(rng)];
  }

 private:
  std::vector<std::uint32_t> items_;
  std::vector<std::uint32_t> slot_;
};

// Every pass but the last follows a forced reorientation, which is rare on
// lattice-like scenarios. Passes keep failing only when two requirements
// need different orientations at the same sensor point.
constexpr int kMaxPasses = 200;

}  // namespace

Genotype recursive_algorithm(const Problem& problem, Rng& rng) {
  if (const auto bad = problem.first_uncoverable()) {
    throw InfeasibleScenario(bad->first, bad->second);
  }
  const std::size_t n_sp = problem.num_sensor_points();
  const std::size_t n_surv = problem.num_surveillance_points();
  const std::size_t n_sen = problem.num_sensor_types();
  const SensorCatalog& catalog = problem.scenario().catalog;
  const GeometryTables& geo = problem.geometry();
  const double threshold = problem.options().detection.threshold;

  std::uint32_t directional_mask = 0;
  for (std::size_t i = 0; i < n_sen; ++i) {
    if (!catalog[i].omnidirectional()) directional_mask |= sensor_bit(i, n_sen);
  }

  Genotype g(n_sp);
  std::uniform_int_distribution<std::uint32_t> angle(0, kAngleSteps - 1);
  for (auto& a : g.angle_genes) a = angle(rng);

  std::vector<std::uint32_t> options;
  Genotype best;
  std::size_t best_unmet = SIZE_MAX;
  for (int pass = 0; pass < kMaxPasses; ++pass) {
    std::vector<double> miss = problem.miss_products(g);
    std::size_t unmet_pairs = 0;
    for (const std::uint32_t flat : problem.required_pairs()) {
      unmet_pairs += !(1.0 - miss[flat] >= threshold);
    }
    if (unmet_pairs < best_unmet) {
      best_unmet = unmet_pairs;
      best = g;
    }
    if (unmet_pairs == 0) return g;
    bool reoriented = false;

    for (std::size_t i = 0; i < n_sen && !reoriented; ++i) {
      const std::uint32_t bit = sensor_bit(i, n_sen);
      const SensorSpec& spec = catalog[i];
      UnmetSet unmet(n_surv);
      for (const std::uint32_t flat : problem.required_pairs()) {
        if (flat % n_sen == i && !(1.0 - miss[flat] >= threshold)) {
          unmet.insert(static_cast<std::uint32_t>(flat / n_sen));
        }
      }

      while (!unmet.empty()) {
        const std::uint32_t p = unmet.pick(rng);
        const auto candidates = problem.candidates(p, i);

        // Prefer points where the new sensor needs no turn, so that sensors
        // already deployed there keep their coverage.
        const auto faces_already = [&](std::uint32_t s) {
          return spec.omnidirectional() || geo.coincident(s, p) ||
                 angle_covered(g.angle_genes[s], spec.fov_deg, geo.bearing(s, p));
        };
        options.clear();
        for (const std::uint32_t s : candidates) {
          if (g.sensor_genes[s] & bit) continue;
          if ((g.sensor_genes[s] & directional_mask) == 0 || faces_already(s)) {
            options.push_back(s);
          }
        }
        bool forced = false;
        if (options.empty()) {
          options.assign(candidates.begin(), candidates.end());
          forced = true;
        }
        const std::uint32_t s =
            options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];

        const bool had_directional = (g.sensor_genes[s] & directional_mask) != 0;
        g.sensor_genes[s] |= bit;
        if (!faces_already(s)) {
          g.angle_genes[s] = problem.orientation_toward(s, p);
          if (forced && had_directional) {
            reoriented = true;  // other coverage may be gone; start a new pass
            break;
          }
        }
        problem.for_each_reached(s, i, g.angle_genes[s], [&](std::uint32_t j, double m) {
          double& slot = miss[j * n_sen + i];
          slot *= m;
          if (1.0 - slot >= threshold) unmet.erase(j);
        });
      }
    }
  }
  return best;
}

SolverResult recursive_multistart(const Problem& problem, std::uint64_t iterations,
                                  Budget& budget, Rng& rng) {
  SolverResult result;
  double sum = 0.0;
  std::uint64_t done = 0;
  for (std::uint64_t it = 0; it < iterations && !budget.exhausted(); ++it) {
    Genotype g = recursive_algorithm(problem, rng);
    const FitnessReport report = *try_evaluate(problem, budget, g);
    ++done;
    sum += report.total_eur;
    if (done == 1 || report.total_eur < result.best_report.total_eur) {
      result.best = std::move(g);
      result.best_report = report;
    }
    result.trace.push_back({budget.used, result.best_report.total_eur,
                            sum / static_cast<double>(done)});
  }
  result.evaluations = done;
  return result;
}

}  // namespace sensorplace
