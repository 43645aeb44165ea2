#pragma once

#include "todaforge/algebra.hpp"
#include "todaforge/cartan.hpp"
#include "todaforge/geometry.hpp"
#include "todaforge/rational.hpp"

#include <vector>

namespace todaforge {

/// Problem instance: singular points p_l and the exponent matrix beta[i][l],
/// one row per system component, one column per point. Exponents live in
/// [0,1). Point positions are optional (condition checks never use them);
/// when supplied they must be pairwise distinct and match the column count.
struct SingularityData {
  std::vector<Point2> points;
  std::vector<std::vector<Rat>> beta;

  int n() const { return static_cast<int>(beta.size()); }
  int m() const { return beta.empty() ? 0 : static_cast<int>(beta.front().size()); }
};

void validate(const SingularityData& data);

/// Derived exponents: beta_total[i] = 2 - sum_l beta[i][l], and
/// beta_bar = (inverse Cartan matrix) * beta_total, all exact.
struct ExponentSummary {
  LieAlgebraType algebra;
  std::vector<Rat> beta_total;
  std::vector<Rat> beta_bar;
};

ExponentSummary summarize(const SingularityData& data, LieAlgebraType algebra);

/// Existence condition report. Two equivalent per-pair forms are evaluated
/// and cross-checked in exact arithmetic:
///   direct:    2*sum_j c_ij - 1 + beta[i][l] < sum_j sum_s c_ij beta[j][s]
///   mass form: beta_bar[i] < 1 - beta[i][l]
/// The overall verdict additionally requires beta_total[i] > 0 for every i
/// (each row sum below 2); that is what makes the rank-1 case coincide with
/// the Troyanov condition and the rank-2 case with the two-part inequality
/// form checked in the tests. The report also carries beta_bar positivity,
/// which is implied by the verdict.
struct ExistenceReport {
  ExponentSummary summary;
  std::vector<std::vector<bool>> condition_direct;  // n x m
  std::vector<std::vector<bool>> condition_mass;    // n x m, equals condition_direct
  std::vector<bool> beta_positive;                  // beta_total[i] > 0
  std::vector<bool> beta_bar_positive;              // beta_bar[i] > 0
  bool all_pairs = false;
  bool all_beta_positive = false;
  bool verdict = false;
  int first_fail_i = -1;  // first failing pair, -1 when none (row index)
  int first_fail_l = -1;
};

ExistenceReport check_existence_condition(const SingularityData& data, LieAlgebraType algebra);

/// Classical cone-metric existence condition for the scalar case, in both
/// printed forms; the two are asserted to agree:
///   window form:  0 < 2 - sum(gamma) < 2 min{1, min(1 - gamma_l)}
///   sum form:     sum(gamma) < 2 and sum_{l != j} gamma_l > gamma_j for all j
struct TroyanovReport {
  bool verdict = false;
  bool window_form = false;
  bool sum_form = false;
};

TroyanovReport check_troyanov(const std::vector<Rat>& gamma);

/// Row-dominance condition: for every (i,l),
///   sum_{s != l} beta[i][s] > max_i beta[i][l]  (column max over all rows).
struct LtReport {
  std::vector<std::vector<bool>> table;
  bool verdict = false;
};

LtReport check_lt_condition(const SingularityData& data);

/// Non-existence exponent family of length 4n+1. Constraints (d1)-(d5):
///   (d1) sum_{i=1..5} b_i = 2, b_2 = b_3 < b_1/2, b_4 = b_5, 2 b_1 + b_4 < 2
///   (d2) sum_{i=1..4} b_{4l-3+i} = 2 for l = 2..n
///   (d3) b_{4l-2} = b_{4l-1} = b_{4l} for l = 2..n
///   (d4) n^2 b_{4i+1} < 1/400 for i = 1..n
///   (d5) b_4 = b_9
struct AssumptionDParams {
  int n = 0;
  Rat epsilon;
  std::vector<Rat> b;  // 1-based values stored at [1..4n+1]; b[0] unused

  const Rat& at(int k) const { return b[static_cast<size_t>(k)]; }
};

struct AssumptionDCheck {
  bool d1 = false, d2 = false, d3 = false, d4 = false, d5 = false;
  bool in_range = false;  // every b_k in (0,1)
  // Derived facts that every valid family must satisfy.
  bool edge_sums_straddle_one = false;  // b_4 + b_1 > 1 and b_4 + b_2 < 1
  bool tails_below_fiftieth = false;    // b_{4i+1} < 1/50 for i = 1..n
  bool all() const { return in_range && d1 && d2 && d3 && d4 && d5; }
};

AssumptionDCheck check_assumption_d(const AssumptionDParams& params);

/// Builds the epsilon-parameterized family
///   b_1 = 1 - 2e/3, b_2 = b_3 = 1/2 - 2e/3, b_4 = b_5 = e,
///   b_{4l-2} = b_{4l-1} = b_{4l} = 2/3 - e/3, b_{4l+1} = e  (l = 2..n),
/// verifying (d1)-(d5) and the derived facts after construction.
/// Requires n >= 2 and epsilon < 1/(400 n^2); rejection names (d4).
AssumptionDParams generate_assumption_d(int n, const Rat& epsilon);

/// Exponent layout for the non-existence family: n rows, 3n+1 columns,
///   beta[1][l] = b_l for l = 1..4,
///   beta[i][3i-2+l] = b_{4i-3+l} for i = 2..n, l = 1,2,3,
/// zero elsewhere. Point positions are left unset.
SingularityData layout_beta_from_d(const AssumptionDParams& params);

/// Rank-2 variant of the family, a 7-vector with constraints:
///   (d6) b_1+b_2+b_3+b_4 + b_4 = 2 and 2 b_1 + b_4 < 2
///   (d7) b_5+b_6+b_7 + b_4 = 2 and b_5 = b_6 = b_7
///   (d8) b_2 = b_3 < b_1/2 and b_4 < 1/1000
struct AssumptionD1Check {
  bool d6 = false, d7 = false, d8 = false;
  bool in_range = false;
  bool verdict = false;
};

AssumptionD1Check check_assumption_d1(const std::vector<Rat>& b);  // b.size() == 7

}  // namespace todaforge
