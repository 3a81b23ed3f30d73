#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "sensorplace/encoding.hpp"
#include "sensorplace/fitness.hpp"
#include "sensorplace/scenario.hpp"

namespace sensorplace {

/// A surveillance point that requires one sensor type and is reachable by it
/// from one sensor point.
struct ReachEntry {
  std::uint32_t point;
  double bearing_deg;
  /// 1 - P_D at this distance. Entries whose miss rounds to exactly 1 are not
  /// stored; they cannot change a product of misses.
  double miss;
};

/// Scenario, geometry and fitness options bundled with the per-(sensor point,
/// type) reach index used for fast evaluation. Immutable after construction
/// and safe to evaluate from several threads.
class Problem {
 public:
  Problem(Scenario scenario, FitnessOptions options = {});
  Problem(Scenario scenario, GeometryTables geometry, FitnessOptions options);

  Problem(const Problem&) = delete;
  Problem& operator=(const Problem&) = delete;

  const Scenario& scenario() const { return scenario_; }
  const GeometryTables& geometry() const { return geometry_; }
  const FitnessOptions& options() const { return options_; }
  std::size_t num_sensor_points() const { return scenario_.num_sensor_points(); }
  std::size_t num_surveillance_points() const { return scenario_.num_surveillance_points(); }
  std::size_t num_sensor_types() const { return scenario_.num_sensor_types(); }

  /// Fitness of `g`. Bit-identical to the free `evaluate`.
  FitnessReport evaluate(const Genotype& g) const;

  /// Number of evaluate() calls so far (instrumentation only).
  std::uint64_t evaluation_calls() const { return calls_.load(std::memory_order_relaxed); }

  /// Total coverage (N_surv x N_sen) of `g`, including pairs that are not
  /// required. Uses the dense path.
  BoolMatrix coverage(const Genotype& g) const;

  /// Product of misses per (point, type), row-major N_surv x N_sen. Only
  /// required pairs are tracked; every other entry is 1.
  std::vector<double> miss_products(const Genotype& g) const;

  /// Calls `fn(point, miss)` for every surveillance point requiring type
  /// `type0` (0-based) that a sensor of that type at `sensor_point` with the
  /// given orientation faces and sees with a non-negligible detection
  /// probability.
  template <typename Fn>
  void for_each_reached(std::size_t sensor_point, std::size_t type0,
                        std::uint32_t orientation_deg, Fn&& fn) const;

  /// Sensor points from which a single type-`type0` sensor, turned toward the
  /// point, covers surveillance point `point` on its own. Only indexed for
  /// required pairs; ascending.
  std::span<const std::uint32_t> candidates(std::size_t point, std::size_t type0) const {
    return candidates_[point * num_sensor_types() + type0];
  }

  /// Integer orientation that points sensor point `sp` at surveillance point
  /// `point`.
  std::uint32_t orientation_toward(std::size_t sp, std::size_t point) const;

  /// First required (point, type) pair with no candidate, if any.
  std::optional<std::pair<std::size_t, std::size_t>> first_uncoverable() const;

  /// Flat indices (point * N_sen + type) of required pairs.
  std::span<const std::uint32_t> required_pairs() const { return required_; }

 private:
  struct Reach {
    std::vector<ReachEntry> by_bearing;  // sorted by bearing, coincident pair excluded
    std::vector<ReachEntry> coincident;
  };

  void build_index();
  const Reach& reach(std::size_t sp, std::size_t type0) const {
    return reach_[sp * num_sensor_types() + type0];
  }

  Scenario scenario_;
  GeometryTables geometry_;
  FitnessOptions options_;
  std::vector<Reach> reach_;
  std::vector<std::vector<std::uint32_t>> candidates_;
  std::vector<std::uint32_t> required_;
  mutable std::atomic<std::uint64_t> calls_{0};
};

template <typename Fn>
void Problem::for_each_reached(std::size_t sensor_point, std::size_t type0,
                               std::uint32_t orientation_deg, Fn&& fn) const {
  const Reach& r = reach(sensor_point, type0);
  for (const ReachEntry& e : r.coincident) fn(e.point, e.miss);
  const double fov = scenario_.catalog[type0].fov_deg;
  const auto& list = r.by_bearing;
  if (fov >= 360.0) {
    for (const ReachEntry& e : list) fn(e.point, e.miss);
    return;
  }
  // Scan the bearing window with a small margin. Entries well inside it are
  // accepted directly; the exact field-of-view test decides near the edges.
  const double o = static_cast<double>(orientation_deg);
  const double half = fov / 2.0 + 1e-9;
  const double inner = fov / 2.0 - 1e-9;
  const double lo = o - half;
  const double hi = o + half;
  const auto scan = [&](double from, double to, double shift) {
    auto it = std::lower_bound(list.begin(), list.end(), from,
                               [](const ReachEntry& e, double v) { return e.bearing_deg < v; });
    for (; it != list.end() && it->bearing_deg <= to; ++it) {
      if (std::abs(it->bearing_deg + shift - o) < inner ||
          angle_covered(o, fov, it->bearing_deg)) {
        fn(it->point, it->miss);
      }
    }
  };
  if (lo < 0.0) {
    scan(lo + 360.0, 360.0, -360.0);
    scan(0.0, hi, 0.0);
  } else if (hi >= 360.0) {
    scan(lo, 360.0, 0.0);
    scan(0.0, hi - 360.0, 360.0);
  } else {
    scan(lo, hi, 0.0);
  }
}

}  // namespace sensorplace
