#include "sensorplace/scenario_generator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "sensorplace/error.hpp"

namespace sensorplace {
namespace {

constexpr int kGrid = 3;  // floor plans are 3x3 rooms

struct Tile {
  int tx = 0;
  int ty = 0;
  friend bool operator==(const Tile&, const Tile&) = default;
};

struct Rect {
  int x0, y0, x1, y1;  // whole meters, tile-local
};

std::vector<Tile> choose_tiles(ScenarioFamily family, std::mt19937_64& rng) {
  std::vector<Tile> tiles;
  switch (family) {
    case ScenarioFamily::small:
      tiles.push_back({0, 0});
      break;
    case ScenarioFamily::large:
      for (int ty = 0; ty < kGrid; ++ty)
        for (int tx = 0; tx < kGrid; ++tx) tiles.push_back({tx, ty});
      break;
    case ScenarioFamily::medium: {
      // Grow a connected set of five rooms from a random seed room.
      std::uniform_int_distribution<int> cell(0, kGrid - 1);
      tiles.push_back({cell(rng), cell(rng)});
      while (tiles.size() < 5) {
        std::vector<Tile> frontier;
        for (const Tile& t : tiles) {
          const Tile around[] = {{t.tx + 1, t.ty}, {t.tx - 1, t.ty}, {t.tx, t.ty + 1},
                                 {t.tx, t.ty - 1}};
          for (const Tile& n : around) {
            if (n.tx < 0 || n.ty < 0 || n.tx >= kGrid || n.ty >= kGrid) continue;
            if (std::find(tiles.begin(), tiles.end(), n) != tiles.end()) continue;
            if (std::find(frontier.begin(), frontier.end(), n) != frontier.end()) continue;
            frontier.push_back(n);
          }
        }
        std::uniform_int_distribution<std::size_t> pick(0, frontier.size() - 1);
        tiles.push_back(frontier[pick(rng)]);
      }
      break;
    }
  }
  std::sort(tiles.begin(), tiles.end(), [](const Tile& a, const Tile& b) {
    return a.ty != b.ty ? a.ty < b.ty : a.tx < b.tx;
  });
  return tiles;
}

// A rectangle of 2-4 m per side flush against one side of the room.
Rect carve_rect(std::mt19937_64& rng) {
  const int size = static_cast<int>(kTileSize);
  std::uniform_int_distribution<int> extent(2, 4);
  std::uniform_int_distribution<int> side(0, 3);
  const int w = extent(rng);
  const int h = extent(rng);
  switch (side(rng)) {
    case 0: {  // left
      const int y0 = std::uniform_int_distribution<int>(0, size - h)(rng);
      return {0, y0, w, y0 + h};
    }
    case 1: {  // right
      const int y0 = std::uniform_int_distribution<int>(0, size - h)(rng);
      return {size - w, y0, size, y0 + h};
    }
    case 2: {  // bottom
      const int x0 = std::uniform_int_distribution<int>(0, size - w)(rng);
      return {x0, 0, x0 + w, h};
    }
    default: {  // top
      const int x0 = std::uniform_int_distribution<int>(0, size - w)(rng);
      return {x0, size - h, x0 + w, size};
    }
  }
}

double point_segment_distance(Point2D p, const WallSegment& w) {
  const double dx = w.b.x - w.a.x;
  const double dy = w.b.y - w.a.y;
  const double len2 = dx * dx + dy * dy;
  double t = ((p.x - w.a.x) * dx + (p.y - w.a.y) * dy) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return distance(p, {w.a.x + t * dx, w.a.y + t * dy});
}

}  // namespace

ScenarioFamily parse_family(std::string_view tag) {
  if (tag == "small") return ScenarioFamily::small;
  if (tag == "medium") return ScenarioFamily::medium;
  if (tag == "large") return ScenarioFamily::large;
  throw ValidationError("invalid scenario family '" + std::string(tag) +
                        "' (expected small, medium or large)");
}

std::string to_string(ScenarioFamily family) {
  switch (family) {
    case ScenarioFamily::small: return "small";
    case ScenarioFamily::medium: return "medium";
    case ScenarioFamily::large: return "large";
  }
  return "unknown";
}

Scenario generate_scenario(ScenarioFamily family, std::uint64_t seed,
                           const SensorCatalog& catalog,
                           const GeneratorOptions& options) {
  const auto& weights = options.level_weights;
  if (std::any_of(weights.begin(), weights.end(),
                  [](double w) { return !(std::isfinite(w) && w >= 0.0); }) ||
      std::accumulate(weights.begin(), weights.end(), 0.0) <= 0.0) {
    throw ValidationError("level_weights must be non-negative and not all zero");
  }
  if (options.sensor_stride < 1) throw ValidationError("sensor_stride must be >= 1");
  if (options.max_carved_regions < 0) {
    throw ValidationError("max_carved_regions must be >= 0");
  }
  if (catalog.size() < 1 || catalog.size() > SensorCatalog::kMaxSensors) {
    throw ValidationError("catalog must hold between 1 and 16 sensors");
  }

  std::mt19937_64 rng(seed);
  const std::vector<Tile> tiles = choose_tiles(family, rng);
  const auto occupied = [&](int tx, int ty) {
    return std::find(tiles.begin(), tiles.end(), Tile{tx, ty}) != tiles.end();
  };

  const int span = (family == ScenarioFamily::small ? 1 : kGrid);
  const int cells = span * static_cast<int>(kTileSize);  // 1 m cells per side
  std::vector<std::uint8_t> carved(static_cast<std::size_t>(cells * cells), 0);

  Scenario s;
  s.name = to_string(family) + "-" + std::to_string(seed);
  s.catalog = catalog;

  for (const Tile& t : tiles) {
    const double ox = t.tx * kTileSize;
    const double oy = t.ty * kTileSize;
    const int n_rects =
        options.max_carved_regions == 0
            ? 0
            : std::uniform_int_distribution<int>(1, options.max_carved_regions)(rng);
    for (int r = 0; r < n_rects; ++r) {
      const Rect rect = carve_rect(rng);
      for (int cy = rect.y0; cy < rect.y1; ++cy)
        for (int cx = rect.x0; cx < rect.x1; ++cx)
          carved[static_cast<std::size_t>((t.ty * 10 + cy) * cells + t.tx * 10 + cx)] = 1;
      // Edges inside the room become walls; edges on the room boundary are
      // covered by the room walls below.
      const auto add = [&](double ax, double ay, double bx, double by) {
        s.walls.push_back({{ox + ax, oy + ay}, {ox + bx, oy + by}});
      };
      const int size = static_cast<int>(kTileSize);
      if (rect.x0 > 0) add(rect.x0, rect.y0, rect.x0, rect.y1);
      if (rect.x1 < size) add(rect.x1, rect.y0, rect.x1, rect.y1);
      if (rect.y0 > 0) add(rect.x0, rect.y0, rect.x1, rect.y0);
      if (rect.y1 < size) add(rect.x0, rect.y1, rect.x1, rect.y1);
    }

    // Room sides: exterior walls toward empty space, partition walls with a
    // 2 m doorway toward an occupied neighbour (emitted once per shared side).
    std::uniform_int_distribution<int> door(1, 7);
    const double x0 = ox, x1 = ox + kTileSize, y0 = oy, y1 = oy + kTileSize;
    const auto side = [&](bool neighbour, bool owner, Point2D a, Point2D b) {
      if (!neighbour) {
        s.walls.push_back({a, b});
        return;
      }
      if (!owner) return;
      const double o = door(rng);
      const double dx = (b.x - a.x) / kTileSize;
      const double dy = (b.y - a.y) / kTileSize;
      s.walls.push_back({a, {a.x + dx * o, a.y + dy * o}});
      s.walls.push_back({{a.x + dx * (o + 2), a.y + dy * (o + 2)}, b});
    };
    side(occupied(t.tx - 1, t.ty), false, {x0, y0}, {x0, y1});
    side(occupied(t.tx + 1, t.ty), true, {x1, y0}, {x1, y1});
    side(occupied(t.tx, t.ty - 1), false, {x0, y0}, {x1, y0});
    side(occupied(t.tx, t.ty + 1), true, {x0, y1}, {x1, y1});
  }

  const int k = options.sensor_stride;
  const int lattice = span * kTileLattice;
  for (int gy = 0; gy < lattice; ++gy) {
    for (int gx = 0; gx < lattice; ++gx) {
      if (!occupied(gx / kTileLattice, gy / kTileLattice)) continue;
      const int cx = gx / 2;
      const int cy = gy / 2;
      if (carved[static_cast<std::size_t>(cy * cells + cx)]) continue;
      const Point2D p{kLatticePitch / 2 + kLatticePitch * gx,
                      kLatticePitch / 2 + kLatticePitch * gy};
      s.surveillance_points.push_back(p);
      bool sensor = gx % k == 0 && gy % k == 0;
      if (!sensor && options.wall_adjacent_sensors && (gx % k == 0 || gy % k == 0)) {
        sensor = std::any_of(s.walls.begin(), s.walls.end(), [&](const WallSegment& w) {
          return point_segment_distance(p, w) <= kLatticePitch / 2 + 1e-9;
        });
      }
      if (sensor) s.sensor_points.push_back(p);
    }
  }

  const std::size_t n_sen = catalog.size();
  s.requirements = BoolMatrix(s.surveillance_points.size(), n_sen, 0);
  std::discrete_distribution<int> level(weights.begin(), weights.end());
  std::vector<std::size_t> types(n_sen);
  for (std::size_t j = 0; j < s.surveillance_points.size(); ++j) {
    const auto want = std::min<std::size_t>(static_cast<std::size_t>(level(rng)), n_sen);
    std::iota(types.begin(), types.end(), std::size_t{0});
    std::shuffle(types.begin(), types.end(), rng);
    for (std::size_t m = 0; m < want; ++m) s.requirements(j, types[m]) = 1;
  }
  return s;
}

}  // namespace sensorplace
