#pragma once

namespace elda {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Axis-aligned box, top-left corner plus size. Coordinates are real-valued
/// pixels; w and h must be positive for a box to be usable.
struct BoundingBox {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;

  Point center() const { return {x + 0.5 * w, y + 0.5 * h}; }
  double area() const { return (w > 0.0 && h > 0.0) ? w * h : 0.0; }
};

inline BoundingBox box_from_center(Point c, double w, double h) {
  return {c.x - 0.5 * w, c.y - 0.5 * h, w, h};
}

} // namespace elda
