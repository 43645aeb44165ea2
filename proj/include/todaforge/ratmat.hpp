#pragma once

#include "todaforge/rational.hpp"

#include <vector>

namespace todaforge {

/// Dense matrix of exact rationals. Sized for Lie-algebra ranks, not for
/// large-scale linear algebra.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(int rows, int cols) : rows_(rows), cols_(cols), e_(static_cast<size_t>(rows) * cols) {}

  static RatMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rat& at(int i, int j) { return e_[static_cast<size_t>(i) * cols_ + j]; }
  const Rat& at(int i, int j) const { return e_[static_cast<size_t>(i) * cols_ + j]; }

  RatMatrix operator*(const RatMatrix& rhs) const;
  RatMatrix transpose() const;

  bool operator==(const RatMatrix& rhs) const;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Rat> e_;
};

std::vector<Rat> mat_vec(const RatMatrix& m, const std::vector<Rat>& v);

/// Exact positive-definiteness test for a symmetric rational matrix
/// (symmetric Gaussian elimination, all pivots > 0).
bool is_positive_definite(const RatMatrix& m);

}  // namespace todaforge
