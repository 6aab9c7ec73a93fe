#pragma once

// Complex Hermitian linear algebra for MIMO capacities and the
// principal-submatrix characteristic-polynomial identity.

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "relaynet/complex_matrix.hpp"
#include "relaynet/network.hpp"

namespace relaynet {

// n_r x n_t channel matrix: rows are receive antennas, columns transmitters.
class MimoChannel {
 public:
  // Throws InvalidArgument on an empty shape or non-finite entries.
  explicit MimoChannel(CMatrix h);

  std::size_t num_rx() const noexcept { return h_.rows(); }
  std::size_t num_tx() const noexcept { return h_.cols(); }
  const CMatrix& matrix() const noexcept { return h_; }

 private:
  CMatrix h_;
};

// coeffs[j] is the coefficient of x^j.
struct RealPolynomial {
  std::vector<double> coeffs;

  std::size_t degree() const noexcept { return coeffs.empty() ? 0 : coeffs.size() - 1; }
  double operator()(double x) const;
  double max_abs_coeff() const;
};

// Sorted, duplicate-free 0-based indices.
class IndexSet {
 public:
  IndexSet() = default;
  // Sorts the input; duplicates are rejected.
  explicit IndexSet(std::vector<std::size_t> indices);
  IndexSet(std::initializer_list<std::size_t> indices)
      : IndexSet(std::vector<std::size_t>(indices)) {}

  // {0, 1, ..., n-1}
  static IndexSet range(std::size_t n);

  std::size_t size() const noexcept { return idx_.size(); }
  bool empty() const noexcept { return idx_.empty(); }
  std::size_t operator[](std::size_t k) const { return idx_[k]; }
  auto begin() const noexcept { return idx_.begin(); }
  auto end() const noexcept { return idx_.end(); }
  const std::vector<std::size_t>& indices() const noexcept { return idx_; }

  friend bool operator==(const IndexSet&, const IndexSet&) = default;
  friend auto operator<=>(const IndexSet&, const IndexSet&) = default;

 private:
  std::vector<std::size_t> idx_;
};

// log2 det(I + H H^H) of an arbitrary (possibly empty) matrix; empty blocks
// contribute 0 bits.
double log2_det_identity_plus_gram(const CMatrix& h);

// log2 det(I_{n_r} + H H^H).
CapacityBits mimo_capacity(const MimoChannel& h);

// Rows `rx` and columns `tx` of H.
CMatrix select_submatrix(const CMatrix& h, const IndexSet& rx, const IndexSet& tx);

// det(x I - A), monic of degree n, for Hermitian A (symmetrized first).
RealPolynomial char_poly(const CMatrix& a);

// A restricted to rows and columns in `indices`.
CMatrix principal_submatrix(const CMatrix& a, const IndexSet& indices);

// e_k(values); e_0 = 1.
double elementary_symmetric(const std::vector<double>& values, std::size_t k);

// m-th formal derivative.
RealPolynomial poly_derivative(const RealPolynomial& p, std::size_t m);

// Eigenvalues of a Hermitian matrix in ascending order (cyclic Jacobi on the
// real 2n x 2n embedding). Used by the identity checker.
std::vector<double> hermitian_eigenvalues(const CMatrix& a);

struct SubmatrixIdentityReport {
  std::size_t n = 0;
  std::size_t k = 0;
  // (n-k)! * sum_{|S|=k} rho_S  and  rho^{(n-k)}
  RealPolynomial lhs;
  RealPolynomial rhs;
  double poly_residual = 0.0;  // max |lhs_j - rhs_j|
  double poly_scale = 0.0;     // 1 + max coefficient magnitude of lhs, rhs
  // sum_{|S|=k} (-1)^k [x^0] rho_S  (= sum of k x k principal minors)
  // against e_k of the eigenvalues.
  double minor_sum = 0.0;
  double eigen_symmetric = 0.0;
  double scalar_residual = 0.0;
  double scalar_scale = 0.0;  // 1 + |e_k|

  double poly_relative() const { return poly_residual / poly_scale; }
  double scalar_relative() const { return scalar_residual / scalar_scale; }
};

inline constexpr std::size_t kMaxIdentityDimension = 12;

// Enumerates every k-subset; n is capped at kMaxIdentityDimension.
SubmatrixIdentityReport verify_submatrix_identity(const CMatrix& a, std::size_t k);

// Calls f(const std::vector<std::size_t>&) for each k-subset of [0, n) in
// lexicographic order.
template <class F>
void for_each_combination(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return;
  std::vector<std::size_t> c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = i;
  while (true) {
    f(static_cast<const std::vector<std::size_t>&>(c));
    std::size_t i = k;
    while (i > 0 && c[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return;
    ++c[i - 1];
    for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
  }
}

double binomial(std::size_t n, std::size_t k);

}  // namespace relaynet
