#include "sensorplace/problem.hpp"

#include <cmath>

#include "sensorplace/error.hpp"

namespace sensorplace {

Problem::Problem(Scenario scenario, FitnessOptions options)
    : scenario_(std::move(scenario)), options_(options) {
  validate(scenario_);
  validate(options_.detection);
  geometry_ = build_geometry(scenario_);
  build_index();
}

Problem::Problem(Scenario scenario, GeometryTables geometry, FitnessOptions options)
    : scenario_(std::move(scenario)), geometry_(std::move(geometry)), options_(options) {
  validate(scenario_);
  validate(options_.detection);
  if (geometry_.dist.rows() != num_sensor_points() ||
      geometry_.dist.cols() != num_surveillance_points()) {
    throw DimensionMismatch("geometry tables do not match the scenario");
  }
  build_index();
}

void Problem::build_index() {
  const std::size_t n_sp = num_sensor_points();
  const std::size_t n_surv = num_surveillance_points();
  const std::size_t n_sen = num_sensor_types();
  const double threshold = options_.detection.threshold;

  for (std::size_t j = 0; j < n_surv; ++j) {
    for (std::size_t i = 0; i < n_sen; ++i) {
      if (scenario_.requirements(j, i)) {
        required_.push_back(static_cast<std::uint32_t>(j * n_sen + i));
      }
    }
  }

  reach_.assign(n_sp * n_sen, {});
  candidates_.assign(n_surv * n_sen, {});
  for (std::size_t s = 0; s < n_sp; ++s) {
    for (std::size_t i = 0; i < n_sen; ++i) {
      const SensorSpec& spec = scenario_.catalog[i];
      Reach& r = reach_[s * n_sen + i];
      for (std::size_t j = 0; j < n_surv; ++j) {
        if (!geometry_.visible(s, j)) continue;
        const double miss = 1.0 - detection_probability(geometry_.dist(s, j), spec.range_m,
                                                        options_.detection.steepness);
        const bool coincident = geometry_.coincident(s, j) != 0;
        if (!scenario_.requirements(j, i)) continue;
        if (miss < 1.0) {
          const ReachEntry e{static_cast<std::uint32_t>(j), geometry_.bearing(s, j), miss};
          (coincident ? r.coincident : r.by_bearing).push_back(e);
        }
        if (!(1.0 - miss >= threshold)) continue;
        if (!coincident && !spec.omnidirectional() &&
            !angle_covered(orientation_toward(s, j), spec.fov_deg, geometry_.bearing(s, j))) {
          continue;
        }
        candidates_[j * n_sen + i].push_back(static_cast<std::uint32_t>(s));
      }
      std::stable_sort(r.by_bearing.begin(), r.by_bearing.end(),
                       [](const ReachEntry& a, const ReachEntry& b) {
                         return a.bearing_deg < b.bearing_deg;
                       });
    }
  }
}

std::uint32_t Problem::orientation_toward(std::size_t sp, std::size_t point) const {
  if (geometry_.coincident(sp, point)) return 0;
  const auto deg = static_cast<std::uint32_t>(std::lround(geometry_.bearing(sp, point)));
  return deg % kAngleSteps;
}

std::optional<std::pair<std::size_t, std::size_t>> Problem::first_uncoverable() const {
  const std::size_t n_sen = num_sensor_types();
  for (const std::uint32_t flat : required_) {
    if (candidates_[flat].empty()) return std::pair{flat / n_sen, flat % n_sen};
  }
  return std::nullopt;
}

std::vector<double> Problem::miss_products(const Genotype& g) const {
  const std::size_t n_sen = num_sensor_types();
  validate(g, num_sensor_points(), n_sen);
  std::vector<double> miss(num_surveillance_points() * n_sen, 1.0);
  for (std::size_t s = 0; s < g.sensor_genes.size(); ++s) {
    const std::uint32_t gene = g.sensor_genes[s];
    if (gene == 0) continue;
    for (std::size_t i = 0; i < n_sen; ++i) {
      if (!(gene & sensor_bit(i, n_sen))) continue;
      for_each_reached(s, i, g.angle_genes[s], [&](std::uint32_t j, double m) {
        miss[j * n_sen + i] *= m;
      });
    }
  }
  return miss;
}

BoolMatrix Problem::coverage(const Genotype& g) const {
  validate(g, num_sensor_points(), num_sensor_types());
  return coverage_matrices(g, scenario_, geometry_, options_.detection).total;
}

FitnessReport Problem::evaluate(const Genotype& g) const {
  calls_.fetch_add(1, std::memory_order_relaxed);
  const std::size_t n_sen = num_sensor_types();
  const std::vector<double> miss = miss_products(g);
  const double threshold = options_.detection.threshold;

  std::vector<std::size_t> counts(n_sen, 0);
  for (const std::uint32_t gene : g.sensor_genes) {
    for (std::size_t i = 0; i < n_sen; ++i) {
      if (gene & sensor_bit(i, n_sen)) ++counts[i];
    }
  }

  std::size_t violations = 0;
  std::size_t last_point = SIZE_MAX;
  for (const std::uint32_t flat : required_) {
    if (1.0 - miss[flat] >= threshold) continue;
    if (options_.penalty_mode == PenaltyMode::per_pair) {
      ++violations;
    } else if (flat / n_sen != last_point) {
      last_point = flat / n_sen;
      ++violations;
    }
  }
  return make_report(counts, scenario_.catalog, violations, options_.penalty_unit);
}

}  // namespace sensorplace
