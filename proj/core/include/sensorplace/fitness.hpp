#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sensorplace/encoding.hpp"
#include "sensorplace/matrix.hpp"
#include "sensorplace/scenario.hpp"

namespace sensorplace {

/// Soft detection model: a sensor detects at distance d with probability
/// 1 / (1 + exp(steepness * (d / range - 1))), and a (point, type) pair is
/// distance-covered when the combined probability reaches `threshold`.
struct DetectionParams {
  double steepness = 10.5;
  double threshold = 0.5;

  friend bool operator==(const DetectionParams&, const DetectionParams&) = default;
};

void validate(const DetectionParams& params);

/// How unmet requirements are charged.
enum class PenaltyMode {
  per_pair,   ///< one unit per unmet (point, sensor type) pair
  per_point,  ///< one unit per point with any unmet requirement
};

struct FitnessOptions {
  DetectionParams detection;
  double penalty_unit = 1'000'000.0;
  PenaltyMode penalty_mode = PenaltyMode::per_pair;
};

double detection_probability(double d, double max_dist, double steepness);

/// 1 - prod(1 - p) over `probs`, multiplied in list order; 0 for an empty list.
double combined_detection(std::span<const double> probs);

/// Boundary-inclusive field-of-view test. Always true for fov >= 360.
bool angle_covered(double orientation_deg, double fov_deg, double bearing_deg);

/// Requirement truth table: false only when a point must be monitored (a)
/// and is not (b).
constexpr bool violation_output(bool required, bool monitored) {
  return !required || monitored;
}

/// Per-type coverage of every surveillance point, N_surv x N_sen.
struct CoverageMatrices {
  BoolMatrix angle;     ///< some deployed sensor of the type faces the point
  BoolMatrix distance;  ///< combined detection reaches the threshold
  BoolMatrix vision;    ///< some deployed sensor of the type sees the point
  BoolMatrix total;     ///< elementwise product of the three
  /// Combined detection probability over the sensors of the type that face
  /// and see the point.
  Matrix<double> detection;
};

/// Dense evaluation straight from the geometry tables.
CoverageMatrices coverage_matrices(const Genotype& g, const Scenario& scenario,
                                   const GeometryTables& geometry,
                                   const DetectionParams& params);

struct FitnessReport {
  double deployment_cost_eur = 0.0;
  std::size_t violation_count = 0;
  double penalty_eur = 0.0;
  double total_eur = 0.0;
  std::vector<std::size_t> sensor_counts;

  bool feasible() const { return violation_count == 0; }

  friend bool operator==(const FitnessReport&, const FitnessReport&) = default;
};

/// Counts sensors, charges each unmet requirement and sums into a report.
FitnessReport make_report(std::span<const std::size_t> sensor_counts,
                          const SensorCatalog& catalog, std::size_t violations,
                          double penalty_unit);

/// Number of unmet requirements under `mode`, given total coverage.
std::size_t count_violations(const BoolMatrix& requirements, const BoolMatrix& covered,
                             PenaltyMode mode);

/// One-shot evaluation through coverage_matrices. Solvers evaluate through
/// Problem, which indexes the geometry once.
FitnessReport evaluate(const Genotype& g, const Scenario& scenario,
                       const GeometryTables& geometry, const FitnessOptions& options);

}  // namespace sensorplace
