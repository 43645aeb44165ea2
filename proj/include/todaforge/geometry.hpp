#pragma once

#include <cmath>

namespace todaforge {

struct Point2 {
  double x = 0, y = 0;
};

inline double norm2(Point2 p) { return p.x * p.x + p.y * p.y; }
inline double norm(Point2 p) { return std::sqrt(norm2(p)); }
inline double dist(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

/// Area of the intersection of the disk of radius r centered at (cx, cy)
/// with the rectangle [x0,x1] x [y0,y1]. Closed form, exact up to roundoff.
double disk_rect_area(double cx, double cy, double r, double x0, double x1, double y0, double y1);

}  // namespace todaforge
