#include "relaynet/complex_matrix.hpp"

#include <algorithm>
#include <cmath>

#include "relaynet/errors.hpp"
#include "relaynet/kernels.hpp"

namespace relaynet {

CMatrix::CMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InvalidArgument("ragged matrix initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::conj_transpose() const {
  CMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = std::conj((*this)(r, c));
  return t;
}

CMatrix CMatrix::transpose() const {
  CMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool CMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

double CMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

CMatrix multiply(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) throw InvalidArgument("matrix product dimension mismatch");
  const CMatrix bt = b.transpose();
  CMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) = kernels::dotu(a.row(i), bt.row(j));
  return out;
}

CMatrix identity_plus_gram(const CMatrix& a) {
  const std::size_t n = a.rows();
  CMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    g(i, i) = 1.0 + kernels::norm_sq(a.row(i));
    for (std::size_t j = 0; j < i; ++j) {
      // (A A^H)_ij = sum_k A_ik conj(A_jk)
      const Complex v = kernels::dotc(a.row(j), a.row(i));
      g(i, j) = v;
      g(j, i) = std::conj(v);
    }
  }
  return g;
}

}  // namespace relaynet
