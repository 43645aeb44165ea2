#include "todaforge/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace todaforge {

namespace {

constexpr double kPi = std::numbers::pi;

// Distance from a point to the closest point of a rectangle.
double rect_point_dist(double px, double py, double x0, double x1, double y0, double y1) {
  const double dx = std::max({x0 - px, 0.0, px - x1});
  const double dy = std::max({y0 - py, 0.0, py - y1});
  return std::hypot(dx, dy);
}

void add_patch_nodes(FieldGrid& grid, int patch_index) {
  const PatchInfo& patch = grid.patches[static_cast<size_t>(patch_index)];
  const double rho = patch.radius;
  const int n_theta = std::max(12, static_cast<int>(std::ceil(2 * kPi * rho / grid.h)));
  const double dtheta = 2 * kPi / n_theta;

  // Geometric grading toward the center; the innermost disk is tiny so the
  // weakly singular weights lose no noticeable mass there.
  const double q = 0.7;
  std::vector<double> radii{rho};
  while (radii.back() > rho * 1e-6) radii.push_back(radii.back() * q);

  for (size_t k = 0; k + 1 < radii.size(); ++k) {
    const double r_out = radii[k], r_in = radii[k + 1];
    const double w = 0.5 * (r_out * r_out - r_in * r_in) * dtheta;
    const double r_mid = 0.5 * (r_out + r_in);
    for (int j = 0; j < n_theta; ++j) {
      const double th = (j + 0.5) * dtheta;
      GridNode node;
      node.pos = {patch.center.x + r_mid * std::cos(th), patch.center.y + r_mid * std::sin(th)};
      node.weight = w;
      node.cell_radius = std::sqrt(w / kPi);
      node.region = patch_index;
      grid.nodes.push_back(node);
    }
  }
  // Innermost disk, split into sectors; nodes sit at half its radius so the
  // center itself is never a node.
  const double r0 = radii.back();
  const double w0 = 0.5 * r0 * r0 * dtheta;
  for (int j = 0; j < n_theta; ++j) {
    const double th = (j + 0.5) * dtheta;
    GridNode node;
    node.pos = {patch.center.x + 0.5 * r0 * std::cos(th), patch.center.y + 0.5 * r0 * std::sin(th)};
    node.weight = w0;
    node.cell_radius = std::sqrt(w0 / kPi);
    node.region = patch_index;
    grid.nodes.push_back(node);
  }
}

}  // namespace

double FieldGrid::total_weight() const {
  double s = 0;
  for (const GridNode& n : nodes) s += n.weight;
  return s;
}

FieldGrid build_grid(const std::vector<Point2>& points, double R, double resolution) {
  if (!(resolution > 0)) throw std::invalid_argument("build_grid: resolution must be positive");
  double max_p = 0;
  for (Point2 p : points) max_p = std::max(max_p, norm(p));
  if (!(R > 2 * max_p + 1))
    throw std::invalid_argument("build_grid: truncation radius must exceed 2*max|p|+1");

  FieldGrid grid;
  grid.R = R;
  grid.h = 1.0 / resolution;

  // Patch radii: capped at 1, kept pairwise disjoint and inside the disk.
  for (size_t l = 0; l < points.size(); ++l) {
    double rho = std::min(1.0, 0.9 * (R - norm(points[l])));
    bool shrunk = false;
    for (size_t k = 0; k < points.size(); ++k) {
      if (k == l) continue;
      const double cap = 0.45 * dist(points[l], points[k]);
      if (cap < rho) {
        rho = cap;
        shrunk = true;
      }
    }
    if (!(rho > 0)) throw std::invalid_argument("build_grid: coincident singular points");
    grid.patches.push_back(PatchInfo{points[l], rho, shrunk});
    if (shrunk)
      grid.notes.push_back("patch " + std::to_string(l + 1) + " radius shrunk to " + std::to_string(rho) +
                           " to keep patches disjoint");
  }

  // Background lattice over [-R, R]^2, cell boundaries aligned with 0.
  grid.nx = 2 * static_cast<int>(std::ceil(R / grid.h));
  grid.x_min = -0.5 * grid.nx * grid.h;
  grid.cell_node.assign(static_cast<size_t>(grid.nx) * grid.nx, -1);
  grid.cell_clean.assign(static_cast<size_t>(grid.nx) * grid.nx, 0);

  const double h = grid.h;
  for (int iy = 0; iy < grid.nx; ++iy) {
    for (int ix = 0; ix < grid.nx; ++ix) {
      const double x0 = grid.x_min + ix * h, x1 = x0 + h;
      const double y0 = grid.x_min + iy * h, y1 = y0 + h;
      const double cx = 0.5 * (x0 + x1), cy = 0.5 * (y0 + y1);

      const double corner_r = std::max({std::hypot(x0, y0), std::hypot(x0, y1), std::hypot(x1, y0),
                                        std::hypot(x1, y1)});
      if (rect_point_dist(0, 0, x0, x1, y0, y1) >= R) continue;

      bool touches_patch = false;
      bool inside_patch = false;
      for (const PatchInfo& patch : grid.patches) {
        if (rect_point_dist(patch.center.x, patch.center.y, x0, x1, y0, y1) < patch.radius)
          touches_patch = true;
        const double far = std::max({dist(patch.center, {x0, y0}), dist(patch.center, {x0, y1}),
                                     dist(patch.center, {x1, y0}), dist(patch.center, {x1, y1})});
        if (far <= patch.radius) inside_patch = true;
      }
      if (inside_patch) continue;

      GridNode node;
      node.pos = {cx, cy};
      node.region = -1;
      bool clean = false;
      if (corner_r <= R && !touches_patch) {
        node.weight = h * h;
        clean = true;
      } else {
        double w = disk_rect_area(0, 0, R, x0, x1, y0, y1);
        for (const PatchInfo& patch : grid.patches)
          w -= disk_rect_area(patch.center.x, patch.center.y, patch.radius, x0, x1, y0, y1);
        if (w <= 1e-12 * h * h) continue;
        node.weight = w;
        // Keep the node inside the represented region.
        const double cr = std::hypot(cx, cy);
        if (cr >= R) {
          const double s = (R - 0.3 * h) / cr;
          node.pos = {cx * s, cy * s};
        }
        for (const PatchInfo& patch : grid.patches) {
          const double d = dist(node.pos, patch.center);
          if (d < patch.radius) {
            const double push = (patch.radius + 0.3 * h) / std::max(d, 1e-12);
            node.pos = {patch.center.x + (node.pos.x - patch.center.x) * push,
                        patch.center.y + (node.pos.y - patch.center.y) * push};
          }
        }
      }
      node.cell_radius = std::sqrt(node.weight / kPi);
      const int id = static_cast<int>(grid.nodes.size());
      grid.nodes.push_back(node);
      grid.cell_node[static_cast<size_t>(iy) * grid.nx + ix] = id;
      grid.cell_clean[static_cast<size_t>(iy) * grid.nx + ix] = clean ? 1 : 0;
    }
  }

  for (int l = 0; l < static_cast<int>(grid.patches.size()); ++l) add_patch_nodes(grid, l);

  const double total = grid.total_weight();
  const double target = kPi * R * R;
  if (std::abs(total - target) > 1e-9 * target)
    throw std::logic_error("build_grid: quadrature weights do not sum to the disk area");
  return grid;
}

}  // namespace todaforge
