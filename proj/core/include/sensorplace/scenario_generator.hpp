#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include "sensorplace/scenario.hpp"

namespace sensorplace {

/// small: one 10x10 m room. medium: 5 of the 9 rooms of a 3x3 floor plan.
/// large: all 9 rooms.
enum class ScenarioFamily { small, medium, large };

/// Throws ValidationError for an unknown tag.
ScenarioFamily parse_family(std::string_view tag);
std::string to_string(ScenarioFamily family);

struct GeneratorOptions {
  /// Relative frequency of security levels 0, 1, 2 and 3.
  std::array<double, 4> level_weights{1.0, 1.0, 1.0, 1.0};
  /// Every k-th lattice point (in both axes) is a sensor point.
  int sensor_stride = 2;
  /// Also place sensor points next to walls, every k-th along the wall.
  bool wall_adjacent_sensors = true;
  /// Each room gets between 1 and this many point-free rectangles cut from
  /// its sides.
  int max_carved_regions = 2;
};

/// Room geometry shared by every family.
inline constexpr double kTileSize = 10.0;
inline constexpr int kTileLattice = 20;
inline constexpr double kLatticePitch = kTileSize / kTileLattice;

/// Deterministic in (family, seed, catalog, options).
Scenario generate_scenario(ScenarioFamily family, std::uint64_t seed,
                           const SensorCatalog& catalog,
                           const GeneratorOptions& options = {});

}  // namespace sensorplace
