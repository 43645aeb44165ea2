#pragma once

#include "todaforge/geometry.hpp"
#include "todaforge/grid.hpp"

#include <vector>

namespace todaforge {

/// Smooth reference profile, equal to -log|x| for |x| >= 1 exactly and a
/// polynomial in |x|^2 inside the unit disk (the two pieces match to fourth
/// order across the circle).
double reference_profile(Point2 x);

/// Singular weights at the grid nodes:
///   k[i]    = prod_l |x - p_l|^(-2 beta[i][l])
///   kbar[i] = k[i] * exp(2 beta_total[i] * u0)
/// kbar decays like |x|^-4 at infinity by construction.
struct WeightField {
  std::vector<std::vector<double>> k;
  std::vector<std::vector<double>> kbar;
};

WeightField build_weight_field(const FieldGrid& grid, const std::vector<Point2>& points,
                               const std::vector<std::vector<double>>& beta,
                               const std::vector<double>& beta_total);

/// Spread of kbar * |x|^4 over the outer annulus [0.8 R, R]; the sampled
/// decay check passes when max/min stays below the given factor.
struct DecaySpread {
  double spread = 0;
  bool ok = false;
};

DecaySpread weight_decay_check(const FieldGrid& grid, const WeightField& field, int component,
                               double max_spread = 4.0);

}  // namespace todaforge
