#include "todaforge/fields.hpp"

#include <cmath>
#include <stdexcept>

namespace todaforge {

double reference_profile(Point2 x) {
  const double t = norm2(x);
  if (t >= 1.0) return -0.5 * std::log(t);
  const double u = t - 1.0;
  const double p = u * (1 + u * (-0.5 + u * (1.0 / 3.0 + u * (-0.25))));
  return -0.5 * p;
}

WeightField build_weight_field(const FieldGrid& grid, const std::vector<Point2>& points,
                               const std::vector<std::vector<double>>& beta,
                               const std::vector<double>& beta_total) {
  const size_t n = beta.size();
  if (beta_total.size() != n) throw std::invalid_argument("weight field: beta_total size mismatch");
  for (const auto& row : beta)
    if (row.size() != points.size()) throw std::invalid_argument("weight field: beta column mismatch");

  WeightField f;
  f.k.assign(n, std::vector<double>(grid.nodes.size()));
  f.kbar.assign(n, std::vector<double>(grid.nodes.size()));
  for (size_t s = 0; s < grid.nodes.size(); ++s) {
    const Point2 x = grid.nodes[s].pos;
    const double u0 = reference_profile(x);
    for (size_t i = 0; i < n; ++i) {
      double log_k = 0;
      for (size_t l = 0; l < points.size(); ++l) {
        const double d = dist(x, points[l]);
        if (d <= 0) throw std::logic_error("weight field: node coincides with a singular point");
        log_k -= 2 * beta[i][l] * std::log(d);
      }
      f.k[i][s] = std::exp(log_k);
      f.kbar[i][s] = std::exp(log_k + 2 * beta_total[i] * u0);
    }
  }
  return f;
}

DecaySpread weight_decay_check(const FieldGrid& grid, const WeightField& field, int component,
                               double max_spread) {
  double lo = 0, hi = 0;
  bool first = true;
  for (size_t s = 0; s < grid.nodes.size(); ++s) {
    const double r = norm(grid.nodes[s].pos);
    if (r < 0.8 * grid.R) continue;
    const double v = field.kbar[static_cast<size_t>(component)][s] * r * r * r * r;
    if (first) {
      lo = hi = v;
      first = false;
    } else {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  DecaySpread out;
  if (first || lo <= 0) return out;
  out.spread = hi / lo;
  out.ok = out.spread < max_spread;
  return out;
}

}  // namespace todaforge
