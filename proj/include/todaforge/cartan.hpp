#pragma once

#include "todaforge/algebra.hpp"
#include "todaforge/ratmat.hpp"

#include <vector>

namespace todaforge {

/// Cartan matrix of a simple Lie algebra: integer entries, diagonal 2,
/// off-diagonal entries in {0, -1, -2, -3}.
struct CartanMatrix {
  LieAlgebraType algebra;
  std::vector<std::vector<int>> a;

  int n() const { return static_cast<int>(a.size()); }
  RatMatrix as_rational() const;
};

/// Inverse of a Cartan matrix, held as exact rationals. Built from the
/// closed forms (min/max formula for A, case formulas for B/C/D, fixed
/// tables for the exceptional types), never by numeric inversion.
struct InverseCartanMatrix {
  LieAlgebraType algebra;
  RatMatrix c;

  int n() const { return c.rows(); }
};

CartanMatrix build_cartan(LieAlgebraType algebra);

InverseCartanMatrix inverse_closed_form(LieAlgebraType algebra);

struct InverseVerification {
  bool identity_ok = false;   // cartan * inverse == I, exact arithmetic
  bool bound_ok = false;      // 0 < c_ij < 4n for every entry
  Rat max_deviation;          // largest |(cartan*inverse - I)_ij|
  int deviation_row = -1;     // row/col of the max deviation entry
  int deviation_col = -1;
};

/// Multiplies the pair exactly and checks the identity together with the
/// entry bound 0 < c_ij < 4n. Throws on dimension mismatch.
InverseVerification verify_inverse(const CartanMatrix& cartan, const InverseCartanMatrix& inverse);

}  // namespace todaforge
