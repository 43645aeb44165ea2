#pragma once

#include "todaforge/algebra.hpp"
#include "todaforge/ratmat.hpp"

#include <optional>
#include <span>
#include <vector>

namespace todaforge {

/// Quadratic local-mass identity of one algebra type, in the form
///   sigma^T Q sigma = sum_i weight_i * mu_i * sigma_i.
/// Q = (1/2) * diag(weight) * CartanMatrix, where the weights are the
/// smallest positive integers making the product symmetric:
///   A/D/E: all 1;  B: (1,..,1,2);  C: (2,..,2,1);  F4: (1,1,2,2);  G2: (3,1).
/// Q is checked symmetric and positive definite at construction.
struct PohozaevForm {
  LieAlgebraType algebra;
  RatMatrix q;
  std::vector<Rat> weight;
  // double mirrors of q and weight, for the numeric paths
  std::vector<std::vector<double>> qd;
  std::vector<double> wd;

  int n() const { return q.rows(); }
};

PohozaevForm build_pohozaev_form(LieAlgebraType algebra);

/// Candidate blow-up masses sigma with reference weights mu in (0,1].
/// Convention for the weights: at a singular point p_l take
/// mu_i = 1 - beta[i][l], away from the points mu_i = 1.
struct LocalMassVector {
  LieAlgebraType algebra;
  std::vector<double> sigma;
  std::vector<double> mu;
};

void validate(const LocalMassVector& masses);

/// Left side minus right side of the identity; zero iff sigma is a root.
double residual(const PohozaevForm& form, std::span<const double> sigma, std::span<const double> mu);
double residual(const PohozaevForm& form, const LocalMassVector& masses);

struct MassSolveOptions {
  std::vector<std::optional<double>> pinned;  // fix sigma_i; empty = all free
  std::vector<double> box_hi;                 // per-coordinate upper bounds; empty = 5.0 each
  double step = 1e-2;                         // subdivision / sampling step
  double root_tol = 1e-9;                     // |residual| after polishing
  int direction_resolution = 12;              // simplex grid for >= 3 free coordinates
};

struct UnresolvedCell {
  std::vector<double> corner;  // lower corner of the cell whose polish failed
};

struct MassSolveResult {
  std::vector<std::vector<double>> roots;  // lexicographically sorted, includes sigma = 0
                                           // whenever the pins allow it
  std::vector<UnresolvedCell> unresolved;
  double sample_density = 0;  // spacing of the returned sample along curves/surfaces
};

/// Nonnegative solutions of the identity on the constraint box.
/// One free coordinate: the exact roots of the scalar quadratic, polished.
/// Two free coordinates: the root curve, sampled by cell subdivision at
/// `step` plus Newton polishing; cells that flag a sign change but fail to
/// polish are reported, never dropped. Three or more free coordinates: the
/// root surface sampled along a deterministic grid of directions through
/// the origin of the free subspace (the restricted identity is a scalar
/// quadratic along each direction).
MassSolveResult solve_masses(const PohozaevForm& form, std::span<const double> mu,
                             const MassSolveOptions& options = {});

struct DichotomyResult {
  bool holds = false;
  int witness = 0;  // 1-based index with sigma_i >= mu_i - slack; 0 when none
};

/// For a nonzero root of the identity there must be an index with
/// sigma_i >= mu_i. `slack` absorbs the polishing error of numeric roots.
/// Rejects sigma == 0 and inputs that are not roots within `residual_tol`.
DichotomyResult dichotomy_check(const PohozaevForm& form, const LocalMassVector& masses,
                                double slack = 1e-6, double residual_tol = 1e-6);

// --- F4 symmetrization -----------------------------------------------------
//
// Shifting the last two field components by (1/2) log 2 turns the F4 system
// into one with a symmetric coefficient matrix; at the mass level the shift
// doubles the last two local masses. The F4 identity above is exactly the
// pullback of the symmetric-form identity under that substitution.

/// Symmetric coefficient matrix of the shifted F4 system.
RatMatrix f4_symmetrized_matrix();

/// Per-component field offsets of the shift: (0, 0, log2/2, log2/2).
std::vector<double> f4_field_offsets();

/// Mass-level substitution: (s1, s2, s3, s4) -> (s1, s2, 2 s3, 2 s4).
std::vector<double> f4_symmetrize_masses(std::span<const double> sigma);

/// Identity of the shifted system: Q = M/2 with unit weights.
PohozaevForm f4_symmetrized_form();

}  // namespace todaforge
