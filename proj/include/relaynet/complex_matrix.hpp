#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace relaynet {

using Complex = std::complex<double>;

// Dense row-major complex matrix. Rows are contiguous so they can be handed
// to the vector kernels directly.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols);
  // Row-major nested initializer; every row must have the same length.
  CMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static CMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Complex> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Complex> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::span<const Complex> data() const noexcept { return data_; }

  CMatrix conj_transpose() const;
  CMatrix transpose() const;

  bool all_finite() const;
  double max_abs() const;

  friend bool operator==(const CMatrix&, const CMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

// A * B
CMatrix multiply(const CMatrix& a, const CMatrix& b);

// I + A A^H (rows(A) x rows(A)), Hermitian by construction.
CMatrix identity_plus_gram(const CMatrix& a);

}  // namespace relaynet
