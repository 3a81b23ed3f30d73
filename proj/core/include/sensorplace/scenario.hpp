#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sensorplace/geometry.hpp"
#include "sensorplace/matrix.hpp"

namespace sensorplace {

/// One surveillance sensor model. Units: meters, degrees, EUR.
struct SensorSpec {
  std::string name;
  double range_m = 0.0;
  double fov_deg = 360.0;
  double cost_eur = 0.0;

  bool omnidirectional() const { return fov_deg >= 360.0; }

  friend bool operator==(const SensorSpec&, const SensorSpec&) = default;
};

/// Ordered sensor types. Position `i` (0-based) is sensor type `i + 1` and is
/// the bit identity used by the gene encoding.
struct SensorCatalog {
  static constexpr std::size_t kMaxSensors = 16;

  std::vector<SensorSpec> sensors;

  std::size_t size() const { return sensors.size(); }
  const SensorSpec& operator[](std::size_t i) const { return sensors[i]; }

  friend bool operator==(const SensorCatalog&, const SensorCatalog&) = default;
};

/// The five-sensor catalog used throughout the experiments: wide-angle camera,
/// narrow-angle camera, volumetric motion sensor, seismic detector, smoke
/// detector.
SensorCatalog default_catalog();

struct Scenario {
  std::string name;
  std::vector<Point2D> surveillance_points;
  std::vector<Point2D> sensor_points;
  std::vector<WallSegment> walls;
  /// N_surv x N_sen; requirements(j, i) == 1 iff point j must be monitored by
  /// sensor type i.
  BoolMatrix requirements;
  SensorCatalog catalog;

  std::size_t num_surveillance_points() const { return surveillance_points.size(); }
  std::size_t num_sensor_points() const { return sensor_points.size(); }
  std::size_t num_sensor_types() const { return catalog.size(); }

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Number of sensor types point `j` requires (its security level; 3 or more
/// is reported as-is).
std::size_t security_level(const Scenario& scenario, std::size_t j);

/// Throws ValidationError on an invalid spec.
void validate(const SensorSpec& spec);
/// Throws ValidationError / DimensionMismatch describing the first problem.
void validate(const Scenario& scenario);

/// Sensor-point x surveillance-point tables.
struct GeometryTables {
  Matrix<double> dist;
  /// Compass bearing from sensor point to surveillance point; 0 for
  /// coincident pairs.
  Matrix<double> bearing;
  BoolMatrix visible;
  /// 1 where the sensor point and surveillance point coincide. Such pairs are
  /// angle-covered by every orientation.
  BoolMatrix coincident;

  friend bool operator==(const GeometryTables&, const GeometryTables&) = default;
};

GeometryTables build_geometry(const Scenario& scenario);

}  // namespace sensorplace
