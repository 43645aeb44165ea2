#pragma once

#include "todaforge/geometry.hpp"

#include <string>
#include <vector>

namespace todaforge {

struct GridNode {
  Point2 pos;
  double weight = 0;       // quadrature weight (area represented by the node)
  double cell_radius = 0;  // radius of the equal-area disk, used for the
                           // analytic treatment of the log kernel diagonal
  int region = -1;         // -1 background, otherwise patch index
};

struct PatchInfo {
  Point2 center;
  double radius = 0;
  bool shrunk = false;  // radius reduced to keep patches disjoint
};

/// Quadrature mesh on the disk of radius R: graded polar patches around each
/// singular point (geometric radial grading toward the center) plus a
/// quasi-uniform Cartesian background covering the rest of the disk exactly.
/// Weights are positive and sum to pi R^2 up to roundoff. Patch centers are
/// never nodes.
struct FieldGrid {
  double R = 0;
  double h = 0;  // background cell size
  std::vector<GridNode> nodes;
  std::vector<PatchInfo> patches;
  std::vector<std::string> notes;

  // Background lattice bookkeeping (finite differences, neighbor lookup).
  int nx = 0;
  double x_min = 0;
  std::vector<int> cell_node;            // nx*nx, node index or -1
  std::vector<unsigned char> cell_clean; // full square cell with centered node

  int node_at(int ix, int iy) const {
    if (ix < 0 || iy < 0 || ix >= nx || iy >= nx) return -1;
    return cell_node[static_cast<size_t>(iy) * nx + ix];
  }
  bool clean_at(int ix, int iy) const {
    if (ix < 0 || iy < 0 || ix >= nx || iy >= nx) return false;
    return cell_clean[static_cast<size_t>(iy) * nx + ix] != 0;
  }

  double total_weight() const;
};

/// resolution = background cells per unit length. Requires
/// R > 2 max|p| + 1. Patch radii default to min(1, 0.45 * nearest-neighbor
/// distance); shrinks are recorded in notes.
FieldGrid build_grid(const std::vector<Point2>& points, double R, double resolution);

}  // namespace todaforge
