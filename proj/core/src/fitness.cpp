#include "sensorplace/fitness.hpp"

#include <cmath>

#include "sensorplace/error.hpp"

namespace sensorplace {

void validate(const DetectionParams& params) {
  if (!(std::isfinite(params.steepness) && params.steepness > 0.0)) {
    throw ValidationError("detection steepness must be positive");
  }
  if (!(params.threshold > 0.0 && params.threshold < 1.0)) {
    throw ValidationError("detection threshold must be in (0, 1)");
  }
}

double detection_probability(double d, double max_dist, double steepness) {
  // exp() saturates to +inf or 0, giving exactly 0 or 1 at the extremes.
  return 1.0 / (1.0 + std::exp(steepness * (d / max_dist - 1.0)));
}

double combined_detection(std::span<const double> probs) {
  double miss = 1.0;
  for (const double p : probs) miss *= 1.0 - p;
  return 1.0 - miss;
}

bool angle_covered(double orientation_deg, double fov_deg, double bearing_deg) {
  if (fov_deg >= 360.0) return true;
  return circular_distance_deg(orientation_deg, bearing_deg) <= fov_deg / 2.0;
}

CoverageMatrices coverage_matrices(const Genotype& g, const Scenario& scenario,
                                   const GeometryTables& geometry,
                                   const DetectionParams& params) {
  const std::size_t n_sp = scenario.num_sensor_points();
  const std::size_t n_surv = scenario.num_surveillance_points();
  const std::size_t n_sen = scenario.num_sensor_types();
  validate(g, n_sp, n_sen);
  if (geometry.dist.rows() != n_sp || geometry.dist.cols() != n_surv) {
    throw DimensionMismatch("geometry tables do not match the scenario");
  }

  CoverageMatrices m{BoolMatrix(n_surv, n_sen), BoolMatrix(n_surv, n_sen),
                     BoolMatrix(n_surv, n_sen), BoolMatrix(n_surv, n_sen),
                     Matrix<double>(n_surv, n_sen, 0.0)};
  Matrix<double> miss(n_surv, n_sen, 1.0);

  for (const Placement& p : decode(g, n_sen)) {
    const std::size_t i = p.sensor_type - 1;
    const SensorSpec& spec = scenario.catalog[i];
    for (std::size_t j = 0; j < n_surv; ++j) {
      const bool facing = geometry.coincident(p.sensor_point, j) ||
                          angle_covered(p.orientation_deg, spec.fov_deg,
                                        geometry.bearing(p.sensor_point, j));
      const bool seen = geometry.visible(p.sensor_point, j) != 0;
      if (facing) m.angle(j, i) = 1;
      if (seen) m.vision(j, i) = 1;
      if (facing && seen) {
        miss(j, i) *= 1.0 - detection_probability(geometry.dist(p.sensor_point, j),
                                                  spec.range_m, params.steepness);
      }
    }
  }

  for (std::size_t j = 0; j < n_surv; ++j) {
    for (std::size_t i = 0; i < n_sen; ++i) {
      const double pdt = 1.0 - miss(j, i);
      m.detection(j, i) = pdt;
      m.distance(j, i) = pdt >= params.threshold ? 1 : 0;
      m.total(j, i) = m.angle(j, i) & m.distance(j, i) & m.vision(j, i);
    }
  }
  return m;
}

FitnessReport make_report(std::span<const std::size_t> sensor_counts,
                          const SensorCatalog& catalog, std::size_t violations,
                          double penalty_unit) {
  FitnessReport r;
  r.sensor_counts.assign(sensor_counts.begin(), sensor_counts.end());
  for (std::size_t i = 0; i < sensor_counts.size(); ++i) {
    r.deployment_cost_eur += catalog[i].cost_eur * static_cast<double>(sensor_counts[i]);
  }
  r.violation_count = violations;
  r.penalty_eur = penalty_unit * static_cast<double>(violations);
  r.total_eur = r.deployment_cost_eur + r.penalty_eur;
  return r;
}

std::size_t count_violations(const BoolMatrix& requirements, const BoolMatrix& covered,
                             PenaltyMode mode) {
  std::size_t violations = 0;
  for (std::size_t j = 0; j < requirements.rows(); ++j) {
    std::size_t unmet = 0;
    for (std::size_t i = 0; i < requirements.cols(); ++i) {
      if (!violation_output(requirements(j, i) != 0, covered(j, i) != 0)) ++unmet;
    }
    violations += mode == PenaltyMode::per_pair ? unmet : (unmet > 0 ? 1 : 0);
  }
  return violations;
}

FitnessReport evaluate(const Genotype& g, const Scenario& scenario,
                       const GeometryTables& geometry, const FitnessOptions& options) {
  validate(options.detection);
  const CoverageMatrices m = coverage_matrices(g, scenario, geometry, options.detection);
  std::vector<std::size_t> counts(scenario.num_sensor_types(), 0);
  for (const Placement& p : decode(g, scenario.num_sensor_types())) {
    ++counts[p.sensor_type - 1];
  }
  return make_report(counts, scenario.catalog,
                     count_violations(scenario.requirements, m.total, options.penalty_mode),
                     options.penalty_unit);
}

}  // namespace sensorplace
