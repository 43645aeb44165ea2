#pragma once

#include "todaforge/ratmat.hpp"

#include <stdexcept>

// Test-side oracle: Gauss-Jordan inversion with pivot search in exact
// rational arithmetic. Deliberately independent of the closed-form tables it
// is used to check.
inline todaforge::RatMatrix invert_gauss(const todaforge::RatMatrix& a) {
  using todaforge::Rat;
  using todaforge::RatMatrix;
  if (a.rows() != a.cols()) throw std::invalid_argument("invert_gauss: square matrix required");
  const int n = a.rows();
  RatMatrix w = a;
  RatMatrix inv = RatMatrix::identity(n);
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (w.at(r, col) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) throw std::invalid_argument("invert_gauss: singular matrix");
    if (pivot != col)
      for (int j = 0; j < n; ++j) {
        swap(w.at(pivot, j), w.at(col, j));
        swap(inv.at(pivot, j), inv.at(col, j));
      }
    const Rat p = w.at(col, col);
    for (int j = 0; j < n; ++j) {
      w.at(col, j) /= p;
      inv.at(col, j) /= p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const Rat f = w.at(r, col);
      if (f == 0) continue;
      for (int j = 0; j < n; ++j) {
        w.at(r, j) -= f * w.at(col, j);
        inv.at(r, j) -= f * inv.at(col, j);
      }
    }
  }
  return inv;
}
