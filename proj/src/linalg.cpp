#include "relaynet/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "relaynet/errors.hpp"
#include "relaynet/kernels.hpp"

namespace relaynet {

MimoChannel::MimoChannel(CMatrix h) : h_(std::move(h)) {
  if (h_.rows() < 1 || h_.cols() < 1) throw InvalidArgument("MIMO channel needs at least one antenna per side");
  if (!h_.all_finite()) throw InvalidArgument("MIMO channel entries must be finite");
}

double RealPolynomial::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double RealPolynomial::max_abs_coeff() const {
  double m = 0.0;
  for (double c : coeffs) m = std::max(m, std::abs(c));
  return m;
}

IndexSet::IndexSet(std::vector<std::size_t> indices) : idx_(std::move(indices)) {
  std::sort(idx_.begin(), idx_.end());
  if (std::adjacent_find(idx_.begin(), idx_.end()) != idx_.end()) {
    throw InvalidArgument("index set contains duplicates");
  }
}

IndexSet IndexSet::range(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return IndexSet(std::move(v));
}

double log2_det_identity_plus_gram(const CMatrix& h) {
  if (h.empty()) return 0.0;
  // det(I + H H^H) = det(I + H^H H) = |det R|^2 for the QR factorization of
  // [H; I]. Householder QR on the stacked matrix avoids forming the Gram
  // matrix, which loses the small directions when gains span many orders of
  // magnitude. Columns are stored as rows of `m` so the kernels see
  // contiguous data; the narrower side of H gives the columns.
  const bool by_cols = h.cols() <= h.rows();
  const std::size_t c = by_cols ? h.cols() : h.rows();
  const std::size_t r = by_cols ? h.rows() : h.cols();
  CMatrix m(c, r + c);
  for (std::size_t j = 0; j < c; ++j) {
    for (std::size_t i = 0; i < r; ++i) m(j, i) = by_cols ? h(i, j) : h(j, i);
    m(j, r + j) = 1.0;
  }
  double log_det = 0.0;
  std::vector<Complex> v;
  for (std::size_t k = 0; k < c; ++k) {
    const auto x = m.row(k).subspan(k);
    const double s = kernels::norm_sq(x);  // >= 1 thanks to the identity block
    log_det += std::log2(s);
    if (k + 1 == c) break;
    const double x0_abs = std::abs(x[0]);
    const Complex phase = x0_abs > 0.0 ? x[0] / x0_abs : Complex{1.0, 0.0};
    v.assign(x.begin(), x.end());
    v[0] += phase * std::sqrt(s);
    const double vn = 2.0 * (s + x0_abs * std::sqrt(s));
    for (std::size_t j = k + 1; j < c; ++j) {
      const auto y = m.row(j).subspan(k);
      const Complex f = 2.0 * kernels::dotc(v, y) / vn;
      for (std::size_t i = 0; i < y.size(); ++i) y[i] -= f * v[i];
    }
  }
  return log_det;
}

CapacityBits mimo_capacity(const MimoChannel& h) {
  return CapacityBits(log2_det_identity_plus_gram(h.matrix()));
}

CMatrix select_submatrix(const CMatrix& h, const IndexSet& rx, const IndexSet& tx) {
  if (!rx.empty() && rx.indices().back() >= h.rows()) throw InvalidArgument("row index out of range");
  if (!tx.empty() && tx.indices().back() >= h.cols()) throw InvalidArgument("column index out of range");
  CMatrix out(rx.size(), tx.size());
  for (std::size_t r = 0; r < rx.size(); ++r)
    for (std::size_t c = 0; c < tx.size(); ++c) out(r, c) = h(rx[r], tx[c]);
  return out;
}

namespace {

CMatrix symmetrized(const CMatrix& a) {
  if (!a.is_square()) throw InvalidArgument("matrix must be square");
  CMatrix s(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) s(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
  return s;
}

RealPolynomial char_poly_hermitian(const CMatrix& a) {
  // Faddeev-LeVerrier: M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k) / k.
  const std::size_t n = a.rows();
  RealPolynomial p;
  p.coeffs.assign(n + 1, 0.0);
  p.coeffs[n] = 1.0;
  CMatrix am(n, n);  // A * M_{k-1}, with M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    CMatrix m = am;
    for (std::size_t i = 0; i < n; ++i) m(i, i) += p.coeffs[n - k + 1];
    am = multiply(a, m);
    double trace = 0.0;
    for (std::size_t i = 0; i < n; ++i) trace += am(i, i).real();
    p.coeffs[n - k] = -trace / static_cast<double>(k);
  }
  return p;
}

}  // namespace

RealPolynomial char_poly(const CMatrix& a) { return char_poly_hermitian(symmetrized(a)); }

CMatrix principal_submatrix(const CMatrix& a, const IndexSet& indices) {
  if (!a.is_square()) throw InvalidArgument("principal submatrix of a non-square matrix");
  if (indices.empty()) throw InvalidArgument("principal submatrix needs a nonempty index set");
  if (indices.indices().back() >= a.rows()) throw InvalidArgument("principal submatrix index out of range");
  return select_submatrix(a, indices, indices);
}

double elementary_symmetric(const std::vector<double>& values, std::size_t k) {
  if (k > values.size()) throw InvalidArgument("elementary symmetric order exceeds the number of values");
  // e[j] after processing x_1..x_i; e_j <- e_j + x_i e_{j-1}
  std::vector<double> e(k + 1, 0.0);
  e[0] = 1.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = std::min(k, i + 1); j >= 1; --j) e[j] += values[i] * e[j - 1];
  }
  return e[k];
}

RealPolynomial poly_derivative(const RealPolynomial& p, std::size_t m) {
  RealPolynomial d = p;
  for (std::size_t step = 0; step < m; ++step) {
    if (d.coeffs.size() <= 1) return RealPolynomial{{0.0}};
    std::vector<double> next(d.coeffs.size() - 1);
    for (std::size_t j = 1; j < d.coeffs.size(); ++j) next[j - 1] = static_cast<double>(j) * d.coeffs[j];
    d.coeffs = std::move(next);
  }
  return d;
}

std::vector<double> hermitian_eigenvalues(const CMatrix& a_in) {
  const CMatrix a = symmetrized(a_in);
  const std::size_t n = a.rows();
  const std::size_t m = 2 * n;
  // [[Re A, -Im A], [Im A, Re A]] is real symmetric with each eigenvalue of A
  // appearing twice.
  std::vector<double> s(m * m);
  auto at = [&](std::size_t i, std::size_t j) -> double& { return s[i * m + j]; };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Complex z = a(i, j);
      at(i, j) = z.real();
      at(i + n, j + n) = z.real();
      at(i, j + n) = -z.imag();
      at(i + n, j) = z.imag();
    }
  }
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0, total = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        total += at(i, j) * at(i, j);
        if (i != j) off += at(i, j) * at(i, j);
      }
    }
    if (off <= 1e-30 * total || off == 0.0) break;
    for (std::size_t p = 0; p + 1 < m; ++p) {
      for (std::size_t q = p + 1; q < m; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (std::size_t k = 0; k < m; ++k) {
          const double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - sn * akq;
          at(k, q) = sn * akp + c * akq;
        }
        for (std::size_t k = 0; k < m; ++k) {
          const double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - sn * aqk;
          at(q, k) = sn * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> diag(m);
  for (std::size_t i = 0; i < m; ++i) diag[i] = at(i, i);
  std::sort(diag.begin(), diag.end());
  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = 0.5 * (diag[2 * i] + diag[2 * i + 1]);
  return eig;
}

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return std::round(r);
}

SubmatrixIdentityReport verify_submatrix_identity(const CMatrix& a_in, std::size_t k) {
  const CMatrix a = symmetrized(a_in);
  const std::size_t n = a.rows();
  if (n > kMaxIdentityDimension) {
    throw LimitExceeded("submatrix identity check is capped at n <= " + std::to_string(kMaxIdentityDimension));
  }
  if (k < 1 || k > n) throw InvalidArgument("subset size k must satisfy 1 <= k <= n");

  SubmatrixIdentityReport rep;
  rep.n = n;
  rep.k = k;
  rep.rhs = poly_derivative(char_poly_hermitian(a), n - k);

  double factorial = 1.0;
  for (std::size_t i = 2; i <= n - k; ++i) factorial *= static_cast<double>(i);

  std::vector<double> sum(k + 1, 0.0);
  const double sign = (k % 2 == 0) ? 1.0 : -1.0;
  for_each_combination(n, k, [&](const std::vector<std::size_t>& subset) {
    const RealPolynomial rho = char_poly_hermitian(principal_submatrix(a, IndexSet(subset)));
    for (std::size_t j = 0; j <= k; ++j) sum[j] += rho.coeffs[j];
    rep.minor_sum += sign * rho.coeffs[0];
  });
  rep.lhs.coeffs.resize(k + 1);
  for (std::size_t j = 0; j <= k; ++j) rep.lhs.coeffs[j] = factorial * sum[j];

  for (std::size_t j = 0; j <= k; ++j) {
    rep.poly_residual = std::max(rep.poly_residual, std::abs(rep.lhs.coeffs[j] - rep.rhs.coeffs[j]));
  }
  rep.poly_scale = 1.0 + std::max(rep.lhs.max_abs_coeff(), rep.rhs.max_abs_coeff());

  rep.eigen_symmetric = elementary_symmetric(hermitian_eigenvalues(a), k);
  rep.scalar_residual = std::abs(rep.minor_sum - rep.eigen_symmetric);
  rep.scalar_scale = 1.0 + std::abs(rep.eigen_symmetric);
  return rep;
}

}  // namespace relaynet
