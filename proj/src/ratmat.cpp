#include "todaforge/ratmat.hpp"

#include <stdexcept>

namespace todaforge {

RatMatrix RatMatrix::identity(int n) {
  RatMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

RatMatrix RatMatrix::operator*(const RatMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
  RatMatrix out(rows_, rhs.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Rat& a = at(i, k);
      if (a == 0) continue;
      for (int j = 0; j < rhs.cols_; ++j) out.at(i, j) += a * rhs.at(k, j);
    }
  return out;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix out(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
  return out;
}

bool RatMatrix::operator==(const RatMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) return false;
  for (size_t k = 0; k < e_.size(); ++k)
    if (e_[k] != rhs.e_[k]) return false;
  return true;
}

std::vector<Rat> mat_vec(const RatMatrix& m, const std::vector<Rat>& v) {
  if (static_cast<int>(v.size()) != m.cols()) throw std::invalid_argument("mat_vec: dimension mismatch");
  std::vector<Rat> out(m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out[i] += m.at(i, j) * v[j];
  return out;
}

bool is_positive_definite(const RatMatrix& m) {
  if (m.rows() != m.cols()) return false;
  RatMatrix w = m;
  const int n = w.rows();
  for (int k = 0; k < n; ++k) {
    if (w.at(k, k) <= 0) return false;
    for (int i = k + 1; i < n; ++i) {
      Rat f = w.at(i, k) / w.at(k, k);
      for (int j = k; j < n; ++j) w.at(i, j) -= f * w.at(k, j);
    }
  }
  return true;
}

}  // namespace todaforge
