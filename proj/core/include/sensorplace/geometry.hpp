#pragma once

#include <span>

namespace sensorplace {

struct Point2D {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2D&, const Point2D&) = default;
};

/// Opaque wall between two distinct endpoints.
struct WallSegment {
  Point2D a;
  Point2D b;

  friend bool operator==(const WallSegment&, const WallSegment&) = default;
};

/// Euclidean distance in meters.
double distance(Point2D a, Point2D b);

/// Compass bearing from `from` to `to` in degrees, clockwise from +y ("up"),
/// normalized to [0, 360). Throws DegenerateBearing for coincident points.
double bearing(Point2D from, Point2D to);

/// True iff the segment between `a` and `b` crosses none of `walls`.
/// Contact that happens only at `a` or `b` themselves does not block; a wall
/// lying along the sight line does.
bool line_of_sight(Point2D a, Point2D b, std::span<const WallSegment> walls);

/// Smallest angle between two compass directions, in [0, 180].
double circular_distance_deg(double a, double b);

}  // namespace sensorplace
