#include "todaforge/geometry.hpp"

#include <algorithm>
#include <vector>

namespace todaforge {

namespace {

// Antiderivative of sqrt(r^2 - y^2).
double circ(double r, double y) {
  y = std::clamp(y, -r, r);
  return 0.5 * (y * std::sqrt(std::max(0.0, r * r - y * y)) + r * r * std::asin(std::clamp(y / r, -1.0, 1.0)));
}

}  // namespace

double disk_rect_area(double cx, double cy, double r, double x0, double x1, double y0, double y1) {
  if (r <= 0 || x0 >= x1 || y0 >= y1) return 0;
  const double X0 = x0 - cx, X1 = x1 - cx, Y0 = y0 - cy, Y1 = y1 - cy;
  const double ylo = std::max(Y0, -r), yhi = std::min(Y1, r);
  if (ylo >= yhi) return 0;
  if (X0 >= r || X1 <= -r) return 0;

  // Breakpoints where the active min/max branch of the strip width changes.
  std::vector<double> ys{ylo, yhi};
  auto add_cross = [&](double xx) {
    if (std::abs(xx) < r) {
      const double yc = std::sqrt(r * r - xx * xx);
      for (double y : {-yc, yc})
        if (y > ylo && y < yhi) ys.push_back(y);
    }
  };
  add_cross(X0);
  add_cross(X1);
  std::sort(ys.begin(), ys.end());

  double area = 0;
  for (size_t k = 0; k + 1 < ys.size(); ++k) {
    const double a = ys[k], b = ys[k + 1];
    if (b - a < 1e-15 * r) continue;
    const double m = 0.5 * (a + b);
    const double w = std::sqrt(std::max(0.0, r * r - m * m));
    const double hi = std::min(X1, w), lo = std::max(X0, -w);
    if (hi <= lo) continue;
    const double int_hi = (X1 <= w) ? X1 * (b - a) : circ(r, b) - circ(r, a);
    const double int_lo = (X0 >= -w) ? X0 * (b - a) : -(circ(r, b) - circ(r, a));
    area += int_hi - int_lo;
  }
  return std::max(area, 0.0);
}

}  // namespace todaforge
