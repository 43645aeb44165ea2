#include "todaforge/pohozaev.hpp"

#include "todaforge/cartan.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace todaforge {

namespace {

std::vector<Rat> symmetrizing_weights(LieAlgebraType algebra) {
  const int n = algebra.rank;
  std::vector<Rat> w(n, rat_of(1));
  switch (algebra.family) {
    case LieFamily::B:
      w[n - 1] = rat_of(2);
      break;
    case LieFamily::C:
      for (int i = 0; i < n - 1; ++i) w[i] = rat_of(2);
      break;
    case LieFamily::F:
      w[2] = rat_of(2);
      w[3] = rat_of(2);
      break;
    case LieFamily::G:
      w[0] = rat_of(3);
      break;
    default:
      break;  // A, D, E: already symmetric
  }
  return w;
}

PohozaevForm form_from(LieAlgebraType algebra, const RatMatrix& coeff, std::vector<Rat> weight) {
  const int n = coeff.rows();
  PohozaevForm form;
  form.algebra = algebra;
  form.weight = std::move(weight);
  form.q = RatMatrix(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) form.q.at(i, j) = form.weight[i] * coeff.at(i, j) / 2;

  if (form.q != form.q.transpose())
    throw std::logic_error("pohozaev form: weighted matrix is not symmetric");
  if (!is_positive_definite(form.q))
    throw std::logic_error("pohozaev form: quadratic form is not positive definite");

  form.qd.assign(n, std::vector<double>(n));
  form.wd.resize(n);
  for (int i = 0; i < n; ++i) {
    form.wd[i] = rat_double(form.weight[i]);
    for (int j = 0; j < n; ++j) form.qd[i][j] = rat_double(form.q.at(i, j));
  }
  return form;
}

}  // namespace

PohozaevForm build_pohozaev_form(LieAlgebraType algebra) {
  validate_algebra(algebra);
  return form_from(algebra, build_cartan(algebra).as_rational(), symmetrizing_weights(algebra));
}

void validate(const LocalMassVector& masses) {
  validate_algebra(masses.algebra);
  const size_t n = static_cast<size_t>(masses.algebra.rank);
  if (masses.sigma.size() != n || masses.mu.size() != n)
    throw std::invalid_argument("local mass vector: dimension mismatch");
  for (double s : masses.sigma)
    if (!(s >= 0)) throw std::invalid_argument("local mass vector: sigma must be nonnegative");
  for (double m : masses.mu)
    if (!(m > 0 && m <= 1)) throw std::invalid_argument("local mass vector: mu must lie in (0,1]");
}

double residual(const PohozaevForm& form, std::span<const double> sigma, std::span<const double> mu) {
  const int n = form.n();
  if (static_cast<int>(sigma.size()) != n || static_cast<int>(mu.size()) != n)
    throw std::invalid_argument("residual: dimension mismatch");
  double lhs = 0, rhs = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) lhs += sigma[i] * form.qd[i][j] * sigma[j];
    rhs += form.wd[i] * mu[i] * sigma[i];
  }
  return lhs - rhs;
}

double residual(const PohozaevForm& form, const LocalMassVector& masses) {
  return residual(form, masses.sigma, masses.mu);
}

namespace {

struct SolveContext {
  const PohozaevForm& form;
  std::span<const double> mu;
  std::vector<double> base;   // pinned values, free coordinates zeroed
  std::vector<int> free_idx;  // coordinates left free
  std::vector<double> hi;
  double step;
  double root_tol;

  double eval(std::span<const double> free_vals) const {
    std::vector<double> sigma = base;
    for (size_t k = 0; k < free_idx.size(); ++k) sigma[static_cast<size_t>(free_idx[k])] = free_vals[k];
    return residual(form, sigma, mu);
  }

  std::vector<double> assemble(std::span<const double> free_vals) const {
    std::vector<double> sigma = base;
    for (size_t k = 0; k < free_idx.size(); ++k) sigma[static_cast<size_t>(free_idx[k])] = free_vals[k];
    return sigma;
  }
};

// Projected Newton on the residual level set, restricted to the free
// coordinates; negatives are clamped to the admissible face each step. The
// gradient is the exact one of the quadratic.
bool polish(const SolveContext& ctx, std::vector<double>& free_vals) {
  const size_t f = free_vals.size();
  const int n = ctx.form.n();
  for (int it = 0; it < 80; ++it) {
    const double r = ctx.eval(free_vals);
    if (std::abs(r) < ctx.root_tol) {
      for (size_t k = 0; k < f; ++k)
        if (free_vals[k] > ctx.hi[static_cast<size_t>(ctx.free_idx[k])] + 1e-9) return false;
      return true;
    }
    const std::vector<double> sigma = ctx.assemble(free_vals);
    std::vector<double> grad(f);
    for (size_t k = 0; k < f; ++k) {
      const int row = ctx.free_idx[k];
      double g = -ctx.form.wd[static_cast<size_t>(row)] * ctx.mu[static_cast<size_t>(row)];
      for (int j = 0; j < n; ++j) g += 2 * ctx.form.qd[static_cast<size_t>(row)][static_cast<size_t>(j)] * sigma[static_cast<size_t>(j)];
      grad[k] = g;
    }
    // Active set: coordinates pinned at the face whose step would leave the
    // admissible cone contribute nothing to the direction.
    std::vector<bool> active(f, true);
    for (size_t pass = 0; pass <= f; ++pass) {
      double g2 = 0;
      for (size_t k = 0; k < f; ++k)
        if (active[k]) g2 += grad[k] * grad[k];
      if (g2 < 1e-30) return false;
      bool blocked = false;
      for (size_t k = 0; k < f; ++k)
        if (active[k] && free_vals[k] == 0.0 && -r * grad[k] / g2 < 0) {
          active[k] = false;
          blocked = true;
        }
      if (!blocked) {
        for (size_t k = 0; k < f; ++k)
          if (active[k]) free_vals[k] = std::max(free_vals[k] - r * grad[k] / g2, 0.0);
        break;
      }
    }
  }
  return false;
}

// Roots of the quadratic t -> eval(t) along a single free coordinate or a
// fixed direction. Coefficients are recovered from three evaluations.
void quadratic_roots(double r0, double r1, double r2, std::vector<double>& out) {
  const double a = (r2 - 2 * r1 + r0) / 2;
  const double b = r1 - r0 - a;
  const double c = r0;
  out.clear();
  if (std::abs(a) < 1e-14) {
    if (std::abs(b) > 1e-14) out.push_back(-c / b);
    return;
  }
  const double disc = b * b - 4 * a * c;
  if (disc < 0) return;
  const double sd = std::sqrt(disc);
  // numerically stable pair
  const double q = -(b + (b >= 0 ? sd : -sd)) / 2;
  out.push_back(q / a);
  if (std::abs(q) > 1e-300) out.push_back(c / q);
}

void push_root(std::vector<std::vector<double>>& roots, std::vector<double> sigma) {
  roots.push_back(std::move(sigma));
}

void solve_one_free(const SolveContext& ctx, MassSolveResult& res) {
  const double hi = ctx.hi[static_cast<size_t>(ctx.free_idx[0])];
  std::vector<double> cand;
  {
    std::vector<double> r;
    const double r0 = ctx.eval(std::vector<double>{0.0});
    const double r1 = ctx.eval(std::vector<double>{1.0});
    const double r2 = ctx.eval(std::vector<double>{2.0});
    quadratic_roots(r0, r1, r2, r);
    cand = std::move(r);
  }
  for (double t : cand) {
    if (!(t >= -1e-9 && t <= hi + 1e-9)) continue;
    std::vector<double> fv{std::max(t, 0.0)};
    if (polish(ctx, fv)) res.roots.push_back(ctx.assemble(fv));
  }
}

void solve_two_free(const SolveContext& ctx, MassSolveResult& res) {
  const double hx = ctx.hi[static_cast<size_t>(ctx.free_idx[0])];
  const double hy = ctx.hi[static_cast<size_t>(ctx.free_idx[1])];
  const double s = ctx.step;
  const int nx = static_cast<int>(std::ceil(hx / s));
  const int ny = static_cast<int>(std::ceil(hy / s));

  // residual at cell corners, one row at a time
  std::vector<double> prev(static_cast<size_t>(ny) + 1), cur(static_cast<size_t>(ny) + 1);
  for (int j = 0; j <= ny; ++j) prev[static_cast<size_t>(j)] = ctx.eval(std::vector<double>{0.0, std::min(j * s, hy)});

  std::vector<std::vector<double>> found;
  for (int i = 1; i <= nx; ++i) {
    const double x = std::min(i * s, hx);
    for (int j = 0; j <= ny; ++j) cur[static_cast<size_t>(j)] = ctx.eval(std::vector<double>{x, std::min(j * s, hy)});
    for (int j = 1; j <= ny; ++j) {
      const double c00 = prev[static_cast<size_t>(j - 1)], c01 = prev[static_cast<size_t>(j)];
      const double c10 = cur[static_cast<size_t>(j - 1)], c11 = cur[static_cast<size_t>(j)];
      const double lo = std::min(std::min(c00, c01), std::min(c10, c11));
      const double hi2 = std::max(std::max(c00, c01), std::max(c10, c11));
      if (!(lo <= ctx.root_tol && hi2 >= -ctx.root_tol)) continue;
      std::vector<double> fv{std::min((i - 0.5) * s, hx), std::min((j - 0.5) * s, hy)};
      if (polish(ctx, fv)) {
        found.push_back(ctx.assemble(fv));
      } else {
        res.unresolved.push_back(UnresolvedCell{ctx.assemble(std::vector<double>{(i - 1) * s, (j - 1) * s})});
      }
    }
    std::swap(prev, cur);
  }

  std::sort(found.begin(), found.end());
  for (const auto& r : found) {
    bool keep = true;
    for (const auto& k : res.roots) {
      double d = 0;
      for (size_t q = 0; q < r.size(); ++q) d = std::max(d, std::abs(r[q] - k[q]));
      if (d < s / 2) {
        keep = false;
        break;
      }
    }
    if (keep) res.roots.push_back(r);
  }
  res.sample_density = s;
}

// Directions on the free-coordinate simplex at integer resolution; along each
// direction the restricted identity is a scalar quadratic solved exactly.
void solve_many_free(const SolveContext& ctx, int resolution, MassSolveResult& res) {
  const size_t f = ctx.free_idx.size();
  std::vector<int> comp(f, 0);
  std::vector<std::vector<double>> found;

  auto handle_direction = [&](const std::vector<int>& k) {
    std::vector<double> dir(f);
    double norm = 0;
    for (size_t q = 0; q < f; ++q) {
      dir[q] = static_cast<double>(k[q]);
      norm += dir[q] * dir[q];
    }
    norm = std::sqrt(norm);
    for (double& d : dir) d /= norm;

    auto at_t = [&](double t) {
      std::vector<double> fv(f);
      for (size_t q = 0; q < f; ++q) fv[q] = t * dir[q];
      return fv;
    };
    std::vector<double> roots;
    quadratic_roots(ctx.eval(at_t(0)), ctx.eval(at_t(1)), ctx.eval(at_t(2)), roots);
    for (double t : roots) {
      if (!(t >= -1e-9)) continue;
      std::vector<double> fv = at_t(std::max(t, 0.0));
      bool inside = true;
      for (size_t q = 0; q < f; ++q)
        if (fv[q] > ctx.hi[static_cast<size_t>(ctx.free_idx[q])] + 1e-9) inside = false;
      if (inside && polish(ctx, fv)) found.push_back(ctx.assemble(fv));
    }
  };

  // enumerate nonnegative integer compositions of `resolution` into f parts
  std::vector<int> k(f, 0);
  k[0] = resolution;
  while (true) {
    handle_direction(k);
    // next composition in colex order
    size_t idx = 0;
    while (idx + 1 < f && k[idx] == 0) ++idx;
    if (idx + 1 >= f) break;
    const int take = k[idx];
    k[idx] = 0;
    k[0] = take - 1;
    k[idx + 1] += 1;
  }

  std::sort(found.begin(), found.end());
  const double dedupe = 1.0 / std::max(1, resolution);
  for (const auto& r : found) {
    bool keep = true;
    for (const auto& kept : res.roots) {
      double d = 0;
      for (size_t q = 0; q < r.size(); ++q) d = std::max(d, std::abs(r[q] - kept[q]));
      if (d < dedupe / 2) {
        keep = false;
        break;
      }
    }
    if (keep) res.roots.push_back(r);
  }
  res.sample_density = dedupe;
}

}  // namespace

MassSolveResult solve_masses(const PohozaevForm& form, std::span<const double> mu,
                             const MassSolveOptions& options) {
  const int n = form.n();
  if (static_cast<int>(mu.size()) != n) throw std::invalid_argument("solve_masses: mu dimension mismatch");
  for (double m : mu)
    if (!(m > 0 && m <= 1)) throw std::invalid_argument("solve_masses: mu must lie in (0,1]");

  SolveContext ctx{form, mu, std::vector<double>(static_cast<size_t>(n), 0.0), {}, {}, options.step,
                   options.root_tol};
  ctx.hi.assign(static_cast<size_t>(n), 5.0);
  if (!options.box_hi.empty()) {
    if (static_cast<int>(options.box_hi.size()) != n)
      throw std::invalid_argument("solve_masses: box dimension mismatch");
    ctx.hi = options.box_hi;
  }
  if (!options.pinned.empty() && static_cast<int>(options.pinned.size()) != n)
    throw std::invalid_argument("solve_masses: pin dimension mismatch");

  bool pins_allow_zero = true;
  for (int i = 0; i < n; ++i) {
    std::optional<double> pin =
        options.pinned.empty() ? std::nullopt : options.pinned[static_cast<size_t>(i)];
    if (pin) {
      if (!(*pin >= 0)) throw std::invalid_argument("solve_masses: pinned values must be nonnegative");
      ctx.base[static_cast<size_t>(i)] = *pin;
      if (*pin != 0) pins_allow_zero = false;
    } else {
      ctx.free_idx.push_back(i);
    }
  }

  MassSolveResult res;
  if (pins_allow_zero) res.roots.emplace_back(static_cast<size_t>(n), 0.0);

  const size_t f = ctx.free_idx.size();
  if (f == 0) {
    if (std::abs(ctx.eval({})) < options.root_tol) {
      std::vector<double> sigma = ctx.base;
      if (!res.roots.empty() && sigma == res.roots.front()) {
        // zero vector already present
      } else {
        push_root(res.roots, std::move(sigma));
      }
    }
  } else if (f == 1) {
    solve_one_free(ctx, res);
  } else if (f == 2) {
    solve_two_free(ctx, res);
  } else {
    solve_many_free(ctx, options.direction_resolution, res);
  }

  // drop duplicates of the zero vector produced by the generic paths
  std::sort(res.roots.begin(), res.roots.end());
  res.roots.erase(std::unique(res.roots.begin(), res.roots.end(),
                              [](const auto& a, const auto& b) {
                                double d = 0;
                                for (size_t q = 0; q < a.size(); ++q) d = std::max(d, std::abs(a[q] - b[q]));
                                return d < 1e-12;
                              }),
                  res.roots.end());
  return res;
}

DichotomyResult dichotomy_check(const PohozaevForm& form, const LocalMassVector& masses, double slack,
                                double residual_tol) {
  validate(masses);
  if (masses.algebra != form.algebra) throw std::invalid_argument("dichotomy_check: algebra mismatch");
  double sum = 0;
  for (double s : masses.sigma) sum += s;
  if (sum <= slack) throw std::invalid_argument("dichotomy_check: sigma == 0 is excluded");
  if (std::abs(residual(form, masses)) > residual_tol)
    throw std::invalid_argument("dichotomy_check: input is not a root of the identity");

  for (int i = 0; i < form.n(); ++i)
    if (masses.sigma[static_cast<size_t>(i)] >= masses.mu[static_cast<size_t>(i)] - slack)
      return DichotomyResult{true, i + 1};
  return DichotomyResult{false, 0};
}

RatMatrix f4_symmetrized_matrix() {
  RatMatrix m(4, 4);
  const int num[16] = {4, -2, 0, 0, -2, 4, -2, 0, 0, -2, 2, -1, 0, 0, -1, 2};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m.at(i, j) = rat_of(num[i * 4 + j], 2);
  return m;
}

std::vector<double> f4_field_offsets() {
  const double half_log2 = 0.5 * std::log(2.0);
  return {0.0, 0.0, half_log2, half_log2};
}

std::vector<double> f4_symmetrize_masses(std::span<const double> sigma) {
  if (sigma.size() != 4) throw std::invalid_argument("f4_symmetrize_masses: expected 4 components");
  return {sigma[0], sigma[1], 2 * sigma[2], 2 * sigma[3]};
}

PohozaevForm f4_symmetrized_form() {
  const LieAlgebraType f4 = make_algebra(LieFamily::F, 4);
  return form_from(f4, f4_symmetrized_matrix(), std::vector<Rat>(4, rat_of(1)));
}

}  // namespace todaforge
