#include "todaforge/conditions.hpp"

#include <stdexcept>

namespace todaforge {

void validate(const SingularityData& data) {
  const int n = data.n(), m = data.m();
  if (n == 0) throw std::invalid_argument("singularity data: no components");
  for (const auto& row : data.beta)
    if (static_cast<int>(row.size()) != m)
      throw std::invalid_argument("singularity data: ragged exponent matrix");
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < m; ++l) {
      const Rat& v = data.beta[i][l];
      if (v < 0 || v >= 1)
        throw std::invalid_argument("exponent beta[" + std::to_string(i + 1) + "][" +
                                    std::to_string(l + 1) + "] outside [0,1)");
    }
  if (!data.points.empty()) {
    if (static_cast<int>(data.points.size()) != m)
      throw std::invalid_argument("singularity data: point count does not match exponent columns");
    for (size_t a = 0; a < data.points.size(); ++a)
      for (size_t b = a + 1; b < data.points.size(); ++b)
        if (data.points[a].x == data.points[b].x && data.points[a].y == data.points[b].y)
          throw std::invalid_argument("singular points must be pairwise distinct");
  }
}

ExponentSummary summarize(const SingularityData& data, LieAlgebraType algebra) {
  validate(data);
  if (algebra.rank != data.n())
    throw std::invalid_argument("summarize: algebra rank does not match exponent rows");
  ExponentSummary out{algebra, {}, {}};
  out.beta_total.resize(data.n());
  for (int i = 0; i < data.n(); ++i) {
    Rat s = 0;
    for (const Rat& v : data.beta[i]) s += v;
    out.beta_total[i] = rat_of(2) - s;
  }
  out.beta_bar = mat_vec(inverse_closed_form(algebra).c, out.beta_total);
  return out;
}

ExistenceReport check_existence_condition(const SingularityData& data, LieAlgebraType algebra) {
  ExistenceReport rep;
  rep.summary = summarize(data, algebra);
  const int n = data.n(), m = data.m();
  const RatMatrix inv = inverse_closed_form(algebra).c;

  std::vector<Rat> row_sum(n);  // sum_j c_ij
  std::vector<Rat> mixed(n);    // sum_j sum_s c_ij beta[j][s]
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      row_sum[i] += inv.at(i, j);
      Rat bs = 0;
      for (const Rat& v : data.beta[j]) bs += v;
      mixed[i] += inv.at(i, j) * bs;
    }

  rep.condition_direct.assign(n, std::vector<bool>(m, false));
  rep.condition_mass.assign(n, std::vector<bool>(m, false));
  rep.all_pairs = true;
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < m; ++l) {
      const bool direct = rat_of(2) * row_sum[i] - 1 + data.beta[i][l] < mixed[i];
      const bool mass = rep.summary.beta_bar[i] < rat_of(1) - data.beta[i][l];
      if (direct != mass)
        throw std::logic_error("existence condition: the two per-pair forms disagree");
      rep.condition_direct[i][l] = direct;
      rep.condition_mass[i][l] = mass;
      if (!direct && rep.all_pairs) {
        rep.first_fail_i = i;
        rep.first_fail_l = l;
      }
      rep.all_pairs = rep.all_pairs && direct;
    }

  rep.beta_positive.resize(n);
  rep.beta_bar_positive.resize(n);
  rep.all_beta_positive = true;
  for (int i = 0; i < n; ++i) {
    rep.beta_positive[i] = rep.summary.beta_total[i] > 0;
    rep.beta_bar_positive[i] = rep.summary.beta_bar[i] > 0;
    rep.all_beta_positive = rep.all_beta_positive && rep.beta_positive[i];
  }
  rep.verdict = rep.all_pairs && rep.all_beta_positive;
  return rep;
}

TroyanovReport check_troyanov(const std::vector<Rat>& gamma) {
  if (gamma.empty()) throw std::invalid_argument("troyanov: need at least one exponent");
  Rat total = 0;
  for (const Rat& g : gamma) {
    if (!(g > 0 && g < 1)) throw std::invalid_argument("troyanov: exponents must lie in (0,1)");
    total += g;
  }

  Rat min_gap = rat_of(1);  // min{1, min_l (1 - gamma_l)}
  for (const Rat& g : gamma) {
    Rat gap = rat_of(1) - g;
    if (gap < min_gap) min_gap = gap;
  }
  const Rat deficit = rat_of(2) - total;
  TroyanovReport rep;
  rep.window_form = deficit > 0 && deficit < rat_of(2) * min_gap;

  rep.sum_form = total < 2;
  for (const Rat& g : gamma) rep.sum_form = rep.sum_form && (total - g > g);

  if (rep.window_form != rep.sum_form)
    throw std::logic_error("troyanov: the two printed forms disagree");
  rep.verdict = rep.window_form;
  return rep;
}

LtReport check_lt_condition(const SingularityData& data) {
  validate(data);
  const int n = data.n(), m = data.m();
  LtReport rep;
  rep.table.assign(n, std::vector<bool>(m, false));
  rep.verdict = true;

  std::vector<Rat> row_sum(n);
  for (int i = 0; i < n; ++i)
    for (const Rat& v : data.beta[i]) row_sum[i] += v;
  std::vector<Rat> col_max(m);
  for (int l = 0; l < m; ++l)
    for (int i = 0; i < n; ++i) col_max[l] = std::max(col_max[l], data.beta[i][l]);

  for (int i = 0; i < n; ++i)
    for (int l = 0; l < m; ++l) {
      const bool ok = row_sum[i] - data.beta[i][l] > col_max[l];
      rep.table[i][l] = ok;
      rep.verdict = rep.verdict && ok;
    }
  return rep;
}

AssumptionDCheck check_assumption_d(const AssumptionDParams& p) {
  const int n = p.n;
  if (n < 2) throw std::invalid_argument("assumption D: rank must be >= 2");
  if (static_cast<int>(p.b.size()) != 4 * n + 2)
    throw std::invalid_argument("assumption D: expected 4n+1 values");

  AssumptionDCheck c;
  c.in_range = true;
  for (int k = 1; k <= 4 * n + 1; ++k) c.in_range = c.in_range && p.at(k) > 0 && p.at(k) < 1;

  Rat head = 0;
  for (int k = 1; k <= 5; ++k) head += p.at(k);
  c.d1 = head == 2 && p.at(2) == p.at(3) && p.at(2) < p.at(1) / 2 && p.at(4) == p.at(5) &&
         rat_of(2) * p.at(1) + p.at(4) < 2;

  c.d2 = true;
  c.d3 = true;
  for (int l = 2; l <= n; ++l) {
    Rat block = 0;
    for (int i = 1; i <= 4; ++i) block += p.at(4 * l - 3 + i);
    c.d2 = c.d2 && block == 2;
    c.d3 = c.d3 && p.at(4 * l - 2) == p.at(4 * l - 1) && p.at(4 * l - 1) == p.at(4 * l);
  }

  c.d4 = true;
  const Rat cap = rat_of(1, 400);
  for (int i = 1; i <= n; ++i) c.d4 = c.d4 && rat_of(n) * rat_of(n) * p.at(4 * i + 1) < cap;

  c.d5 = p.at(4) == p.at(9);

  c.edge_sums_straddle_one = p.at(4) + p.at(1) > 1 && p.at(4) + p.at(2) < 1;
  c.tails_below_fiftieth = true;
  for (int i = 1; i <= n; ++i)
    c.tails_below_fiftieth = c.tails_below_fiftieth && p.at(4 * i + 1) < rat_of(1, 50);
  return c;
}

AssumptionDParams generate_assumption_d(int n, const Rat& epsilon) {
  if (n < 2) throw std::invalid_argument("generate_assumption_d: rank must be >= 2");
  if (!(epsilon > 0)) throw std::invalid_argument("generate_assumption_d: epsilon must be positive");
  if (!(rat_of(n) * rat_of(n) * epsilon < rat_of(1, 400)))
    throw std::invalid_argument("generate_assumption_d: epsilon too large, (d4) requires n^2*epsilon < 1/400");

  AssumptionDParams p;
  p.n = n;
  p.epsilon = epsilon;
  p.b.assign(static_cast<size_t>(4 * n + 2), Rat(0));
  auto set = [&](int k, Rat v) { p.b[static_cast<size_t>(k)] = std::move(v); };

  const Rat e3 = epsilon / 3;
  set(1, rat_of(1) - 2 * e3);
  set(2, rat_of(1, 2) - 2 * e3);
  set(3, rat_of(1, 2) - 2 * e3);
  set(4, epsilon);
  set(5, epsilon);
  for (int l = 2; l <= n; ++l) {
    const Rat block = rat_of(2, 3) - e3;
    set(4 * l - 2, block);
    set(4 * l - 1, block);
    set(4 * l, block);
    set(4 * l + 1, epsilon);
  }

  const AssumptionDCheck chk = check_assumption_d(p);
  if (!chk.all() || !chk.edge_sums_straddle_one || !chk.tails_below_fiftieth)
    throw std::logic_error("generate_assumption_d: generated family failed its own constraints");
  return p;
}

SingularityData layout_beta_from_d(const AssumptionDParams& p) {
  const AssumptionDCheck chk = check_assumption_d(p);
  if (!chk.all()) throw std::invalid_argument("layout_beta_from_d: parameters violate (d1)-(d5)");
  const int n = p.n, m = 3 * n + 1;
  SingularityData data;
  data.beta.assign(n, std::vector<Rat>(m, Rat(0)));
  for (int l = 1; l <= 4; ++l) data.beta[0][l - 1] = p.at(l);
  for (int i = 2; i <= n; ++i)
    for (int l = 1; l <= 3; ++l) data.beta[i - 1][3 * i - 2 + l - 1] = p.at(4 * i - 3 + l);
  return data;
}

AssumptionD1Check check_assumption_d1(const std::vector<Rat>& b) {
  if (b.size() != 7) throw std::invalid_argument("assumption D1: expected exactly 7 values");
  auto at = [&](int k) -> const Rat& { return b[static_cast<size_t>(k - 1)]; };

  AssumptionD1Check c;
  c.in_range = true;
  for (const Rat& v : b) c.in_range = c.in_range && v > 0 && v < 1;

  Rat head = at(1) + at(2) + at(3) + at(4) + at(4);
  c.d6 = head == 2 && rat_of(2) * at(1) + at(4) < 2;
  Rat tail = at(5) + at(6) + at(7) + at(4);
  c.d7 = tail == 2 && at(5) == at(6) && at(6) == at(7);
  c.d8 = at(2) == at(3) && at(2) < at(1) / 2 && at(4) < rat_of(1, 1000);
  c.verdict = c.in_range && c.d6 && c.d7 && c.d8;
  return c;
}

}  // namespace todaforge
