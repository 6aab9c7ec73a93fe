#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <random>

#include "oracles.hpp"
#include "relaynet/errors.hpp"
#include "relaynet/experiments.hpp"
#include "relaynet/linalg.hpp"

using namespace relaynet;

namespace {

CMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, double scale) {
  std::normal_distribution<double> g(0.0, scale);
  CMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = {g(rng), g(rng)};
  return m;
}

}  // namespace

TEST_CASE("log-det matches an SVD oracle") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    const std::size_t r = 1 + t % 6, c = 1 + (t / 6) % 6;
    const double scale = std::pow(10.0, (t % 5) - 2.0);
    const CMatrix h = random_matrix(rng, r, c, scale);
    const double want = oracle::log2det(h);
    CHECK(log2_det_identity_plus_gram(h) == doctest::Approx(want).epsilon(1e-10).scale(1.0));
  }
  CHECK(log2_det_identity_plus_gram(CMatrix(0, 3)) == 0.0);
}

TEST_CASE("log-det of parallel and rank-one channels") {
  CHECK(log2_det_identity_plus_gram(CMatrix::identity(4)) == 4.0);
  CMatrix ones(3, 2);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 2; ++j) ones(i, j) = {0.5, 0.0};
  CHECK(log2_det_identity_plus_gram(ones) == doctest::Approx(std::log2(1.0 + 0.25 * 6)));
  // strong links far beyond unit scale stay finite
  CMatrix big(2, 2);
  big(0, 0) = {1e12, 0.0};
  big(1, 0) = {1e12, 0.0};
  big(1, 1) = {1.0, 0.0};
  CHECK(std::isfinite(log2_det_identity_plus_gram(big)));
  CHECK(log2_det_identity_plus_gram(big) == doctest::Approx(oracle::log2det(big)).epsilon(1e-9));
}

TEST_CASE("mimo capacity and submatrix selection") {
  std::mt19937_64 rng(12);
  const CMatrix h = random_matrix(rng, 3, 4, 1.0);
  const MimoChannel ch(h);
  CHECK(ch.num_rx() == 3);
  CHECK(ch.num_tx() == 4);
  CHECK(mimo_capacity(ch).bits() == doctest::Approx(oracle::log2det(h)));
  const CMatrix s = select_submatrix(h, IndexSet{0, 2}, IndexSet{1, 3});
  CHECK(s.rows() == 2);
  CHECK(s(1, 0) == h(2, 1));
  CHECK(s(0, 1) == h(0, 3));
  CHECK_THROWS(select_submatrix(h, IndexSet{3}, IndexSet{0}));
  CHECK_THROWS(IndexSet{1, 1});
  CHECK(IndexSet{3, 1}.indices() == std::vector<std::size_t>{1, 3});
}

TEST_CASE("characteristic polynomial roots are the Eigen eigenvalues") {
  for (std::size_t n = 1; n <= 7; ++n) {
    const CMatrix a = random_hermitian(n, 5, n);
    const RealPolynomial p = char_poly(a);
    REQUIRE(p.degree() == n);
    CHECK(p.coeffs.back() == 1.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(oracle::to_eigen(a));
    // monic expansion of prod (x - lambda_i)
    std::vector<double> want{1.0};
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      std::vector<double> next(want.size() + 1, 0.0);
      for (std::size_t j = 0; j < want.size(); ++j) {
        next[j + 1] += want[j];
        next[j] -= es.eigenvalues()(i) * want[j];
      }
      want = next;
    }
    for (std::size_t j = 0; j <= n; ++j) CHECK(p.coeffs[j] == doctest::Approx(want[j]).epsilon(1e-9).scale(1.0));
    const auto ev = hermitian_eigenvalues(a);
    REQUIRE(ev.size() == n);
    for (std::size_t i = 0; i < n; ++i) CHECK(ev[i] == doctest::Approx(es.eigenvalues()(i)).epsilon(1e-10).scale(1.0));
  }
}

TEST_CASE("polynomial helpers") {
  const RealPolynomial p{{1.0, -3.0, 0.0, 2.0}};  // 2x^3 - 3x + 1
  CHECK(p(2.0) == 11.0);
  CHECK(poly_derivative(p, 1).coeffs == std::vector<double>{-3.0, 0.0, 6.0});
  CHECK(poly_derivative(p, 3).coeffs == std::vector<double>{12.0});
  CHECK(poly_derivative(p, 5).coeffs == std::vector<double>{0.0});
  CHECK(elementary_symmetric({1.0, 2.0, 3.0}, 0) == 1.0);
  CHECK(elementary_symmetric({1.0, 2.0, 3.0}, 2) == 11.0);
  CHECK(elementary_symmetric({1.0, 2.0, 3.0}, 3) == 6.0);
  CHECK_THROWS(elementary_symmetric({1.0, 2.0}, 3));
  CHECK(binomial(5, 2) == 10.0);
  CHECK(binomial(20, 10) == 184756.0);
  CHECK(binomial(3, 4) == 0.0);
}

TEST_CASE("combinations are lexicographic") {
  std::vector<std::vector<std::size_t>> seen;
  for_each_combination(4, 2, [&](const std::vector<std::size_t>& c) { seen.push_back(c); });
  CHECK(seen == std::vector<std::vector<std::size_t>>{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  std::size_t count = 0;
  for_each_combination(6, 0, [&](const auto&) { ++count; });
  CHECK(count == 1);
}

TEST_CASE("principal submatrix identity on definite and indefinite matrices") {
  for (std::size_t n = 1; n <= 6; ++n) {
    for (std::size_t t = 0; t < 4; ++t) {
      const CMatrix a = random_hermitian(n, 17, t);
      for (std::size_t k = 1; k <= n; ++k) {
        const auto rep = verify_submatrix_identity(a, k);
        CHECK(rep.poly_relative() <= 1e-8);
        CHECK(rep.scalar_relative() <= 1e-8);
      }
    }
  }
  // diag(1, -2): the 1x1 minors sum to -1 = e_1
  CMatrix d(2, 2);
  d(0, 0) = {1.0, 0.0};
  d(1, 1) = {-2.0, 0.0};
  const auto rep = verify_submatrix_identity(d, 1);
  CHECK(rep.minor_sum == doctest::Approx(-1.0));
  CHECK(rep.eigen_symmetric == doctest::Approx(-1.0));
  CHECK_THROWS_AS(verify_submatrix_identity(CMatrix(13, 13), 1), LimitExceeded);
  CHECK_THROWS(verify_submatrix_identity(d, 3));
}
