#include "sensorplace/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "sensorplace/error.hpp"

namespace sensorplace {
namespace {

// Segment parameters within this distance of 0 or 1 count as touching an
// endpoint of the sight line.
constexpr double kParamEps = 1e-9;

double cross(double ax, double ay, double bx, double by) {
  return ax * by - ay * bx;
}

bool lex_less(Point2D p, Point2D q) {
  return p.x < q.x || (p.x == q.x && p.y < q.y);
}

bool blocks(Point2D a, Point2D b, const WallSegment& wall) {
  constexpr double kSlack = 1e-9;
  if (std::max(wall.a.x, wall.b.x) < std::min(a.x, b.x) - kSlack ||
      std::min(wall.a.x, wall.b.x) > std::max(a.x, b.x) + kSlack ||
      std::max(wall.a.y, wall.b.y) < std::min(a.y, b.y) - kSlack ||
      std::min(wall.a.y, wall.b.y) > std::max(a.y, b.y) + kSlack) {
    return false;
  }

  const double rx = b.x - a.x;
  const double ry = b.y - a.y;
  const double sx = wall.b.x - wall.a.x;
  const double sy = wall.b.y - wall.a.y;
  const double qx = wall.a.x - a.x;
  const double qy = wall.a.y - a.y;
  const double len2 = rx * rx + ry * ry;

  const double denom = cross(rx, ry, sx, sy);
  if (denom * denom > 1e-24 * len2 * (sx * sx + sy * sy)) {
    const double t = cross(qx, qy, sx, sy) / denom;
    const double u = cross(qx, qy, rx, ry) / denom;
    if (u < -kParamEps || u > 1.0 + kParamEps) return false;
    return t > kParamEps && t < 1.0 - kParamEps;
  }

  // Parallel. Only a collinear wall can interfere.
  const double off = cross(rx, ry, qx, qy);
  if (off * off > 1e-24 * len2 * std::max(1.0, qx * qx + qy * qy)) {
    return false;
  }
  double tc = (qx * rx + qy * ry) / len2;
  double td = ((wall.b.x - a.x) * rx + (wall.b.y - a.y) * ry) / len2;
  if (tc > td) std::swap(tc, td);
  const double lo = std::max(tc, 0.0);
  const double hi = std::min(td, 1.0);
  return lo <= hi && hi > kParamEps && lo < 1.0 - kParamEps;
}

}  // namespace

double distance(Point2D a, Point2D b) { return std::hypot(b.x - a.x, b.y - a.y); }

double bearing(Point2D from, Point2D to) {
  const double dx = to.x - from.x;
  const double dy = to.y - from.y;
  if (dx == 0.0 && dy == 0.0) {
    throw DegenerateBearing("bearing between coincident points");
  }
  double deg = std::atan2(dx, dy) * (180.0 / std::numbers::pi);
  if (deg < 0.0) deg += 360.0;
  if (deg >= 360.0) deg -= 360.0;
  return deg;
}

bool line_of_sight(Point2D a, Point2D b, std::span<const WallSegment> walls) {
  if (a == b) return true;
  // Canonical orientation keeps the predicate exactly symmetric.
  if (lex_less(b, a)) std::swap(a, b);
  return std::none_of(walls.begin(), walls.end(),
                      [&](const WallSegment& w) { return blocks(a, b, w); });
}

double circular_distance_deg(double a, double b) {
  double d = std::fmod(std::abs(a - b), 360.0);
  return d > 180.0 ? 360.0 - d : d;
}

}  // namespace sensorplace
