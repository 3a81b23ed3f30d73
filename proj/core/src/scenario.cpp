#include "sensorplace/scenario.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "sensorplace/error.hpp"

namespace sensorplace {

SensorCatalog default_catalog() {
  return SensorCatalog{{
      {"Wide-angle lens camera", 30.0, 180.0, 42.0},
      {"Narrow-angle lens camera", 60.0, 30.0, 112.0},
      {"Volumetric-motion sensor", 18.0, 90.0, 42.0},
      {"Seismic detector", 5.0, 360.0, 169.0},
      {"Smoke detector", 4.0, 360.0, 6.0},
  }};
}

std::size_t security_level(const Scenario& scenario, std::size_t j) {
  const auto row = scenario.requirements.row(j);
  return static_cast<std::size_t>(std::accumulate(row.begin(), row.end(), 0));
}

void validate(const SensorSpec& spec) {
  const std::string who = "sensor '" + spec.name + "': ";
  if (!(std::isfinite(spec.range_m) && spec.range_m > 0.0)) {
    throw ValidationError(who + "range_m must be positive");
  }
  if (!(spec.fov_deg > 0.0 && spec.fov_deg <= 360.0)) {
    throw ValidationError(who + "fov_deg must be in (0, 360]");
  }
  if (!(std::isfinite(spec.cost_eur) && spec.cost_eur >= 0.0)) {
    throw ValidationError(who + "cost_eur must be non-negative");
  }
}

void validate(const Scenario& s) {
  const std::size_t n_sen = s.catalog.size();
  if (n_sen < 1 || n_sen > SensorCatalog::kMaxSensors) {
    throw ValidationError("catalog must hold between 1 and 16 sensors");
  }
  for (const auto& spec : s.catalog.sensors) validate(spec);
  if (s.surveillance_points.empty()) {
    throw ValidationError("scenario needs at least one surveillance point");
  }
  if (s.sensor_points.empty()) {
    throw ValidationError("scenario needs at least one sensor point");
  }
  const auto finite = [](Point2D p) { return std::isfinite(p.x) && std::isfinite(p.y); };
  for (const auto& p : s.surveillance_points) {
    if (!finite(p)) throw ValidationError("non-finite surveillance point");
  }
  for (const auto& p : s.sensor_points) {
    if (!finite(p)) throw ValidationError("non-finite sensor point");
  }
  for (const auto& w : s.walls) {
    if (!finite(w.a) || !finite(w.b)) throw ValidationError("non-finite wall");
    if (w.a == w.b) throw ValidationError("wall with coincident endpoints");
  }
  if (s.requirements.rows() != s.surveillance_points.size() ||
      s.requirements.cols() != n_sen) {
    throw DimensionMismatch(
        "requirements is " + std::to_string(s.requirements.rows()) + "x" +
        std::to_string(s.requirements.cols()) + ", expected " +
        std::to_string(s.surveillance_points.size()) + "x" + std::to_string(n_sen));
  }
  for (const auto v : s.requirements.values()) {
    if (v > 1) throw ValidationError("requirements entries must be 0 or 1");
  }
}

GeometryTables build_geometry(const Scenario& s) {
  const std::size_t n_sp = s.sensor_points.size();
  const std::size_t n_surv = s.surveillance_points.size();
  GeometryTables g{Matrix<double>(n_sp, n_surv), Matrix<double>(n_sp, n_surv),
                   BoolMatrix(n_sp, n_surv), BoolMatrix(n_sp, n_surv)};
  for (std::size_t i = 0; i < n_sp; ++i) {
    const Point2D sp = s.sensor_points[i];
    for (std::size_t j = 0; j < n_surv; ++j) {
      const Point2D q = s.surveillance_points[j];
      if (sp == q) {
        g.dist(i, j) = 0.0;
        g.bearing(i, j) = 0.0;
        g.visible(i, j) = 1;
        g.coincident(i, j) = 1;
        continue;
      }
      g.dist(i, j) = distance(sp, q);
      g.bearing(i, j) = bearing(sp, q);
      g.visible(i, j) = line_of_sight(sp, q, s.walls) ? 1 : 0;
    }
  }
  return g;
}

}  // namespace sensorplace
