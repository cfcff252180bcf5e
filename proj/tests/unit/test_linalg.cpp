#include <cmath>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "nodal/error.hpp"
#include "nodal/linalg.hpp"
#include "oracles.hpp"

using namespace nodal;

namespace {

double orthogonality_error(const Matrix& q) {
  double worst = 0.0;
  for (std::size_t a = 0; a < q.cols(); ++a)
    for (std::size_t b = 0; b < q.cols(); ++b) {
      double s = 0.0;
      for (std::size_t i = 0; i < q.rows(); ++i) s += q(i, a) * q(i, b);
      worst = std::max(worst, std::abs(s - (a == b ? 1.0 : 0.0)));
    }
  return worst;
}

double reconstruction_error(const Matrix& a, const Svd& d) {
  Matrix us = d.u;
  for (std::size_t i = 0; i < us.rows(); ++i)
    for (std::size_t k = 0; k < us.cols(); ++k) us(i, k) *= d.sigma[k];
  const Matrix back = multiply(us, d.v.transposed());
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      s += (a(i, j) - back(i, j)) * (a(i, j) - back(i, j));
  return std::sqrt(s);
}

Matrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  return testing_support::to_matrix(oracle::random_points(rng, rows, cols));
}

}  // namespace

TEST_CASE("svd of the identity") {
  const Svd d = svd(Matrix::identity(3));
  REQUIRE(d.sigma.size() == 3);
  for (double s : d.sigma) CHECK(s == doctest::Approx(1.0));
}

TEST_CASE("svd of a diagonal matrix sorts singular values") {
  Matrix a(2, 2);
  a(0, 0) = 3;
  a(1, 1) = 4;
  const Svd d = svd(a);
  CHECK(d.sigma[0] == doctest::Approx(4.0));
  CHECK(d.sigma[1] == doctest::Approx(3.0));
  CHECK(reconstruction_error(a, d) < 1e-12);
}

TEST_CASE("svd singular values match eigenvalues of A^T A") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = random_matrix(rng, 8, 5);
    oracle::Dense ata(5, std::vector<double>(5, 0.0));
    for (std::size_t p = 0; p < 5; ++p)
      for (std::size_t q = 0; q < 5; ++q)
        for (std::size_t i = 0; i < 8; ++i) ata[p][q] += a(i, p) * a(i, q);
    const auto ev = oracle::symmetric_eigenvalues(ata);
    const Svd d = svd(a);
    REQUIRE(d.sigma.size() == 5);
    for (std::size_t k = 0; k < 5; ++k)
      CHECK(std::abs(d.sigma[k] - std::sqrt(std::max(ev[k], 0.0))) < 1e-8);
  }
}

TEST_CASE("svd handles wide and rank-deficient matrices") {
  std::mt19937_64 rng(5);
  // Rank 2 matrix, 4 x 7.
  const Matrix left = random_matrix(rng, 4, 2);
  const Matrix right = random_matrix(rng, 2, 7);
  const Matrix a = multiply(left, right);
  const Svd d = svd(a);
  CHECK(d.u.rows() == 4);
  CHECK(d.u.cols() == 4);
  CHECK(d.v.rows() == 7);
  CHECK(d.v.cols() == 4);
  CHECK(d.sigma[2] < 1e-12 * d.sigma[0]);
  CHECK(orthogonality_error(d.u) < 1e-9);
  CHECK(orthogonality_error(d.v) < 1e-9);
  CHECK(reconstruction_error(a, d) < 1e-10 * frobenius_norm(a));

  const Svd zero = svd(Matrix(3, 2));
  CHECK(zero.sigma == std::vector<double>{0.0, 0.0});
  CHECK(orthogonality_error(zero.u) < 1e-12);
}

TEST_CASE("svd rejects non-finite input") {
  Matrix a(2, 2, 1.0);
  a(1, 0) = std::nan("");
  try {
    svd(a);
    FAIL("expected a numeric error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNumeric);
  }
}

TEST_CASE("svd reports the sweep count when the budget runs out") {
  std::mt19937_64 rng(9);
  const Matrix a = random_matrix(rng, 12, 12);
  SvdOptions tight;
  tight.max_sweeps = 1;
  try {
    svd(a, tight);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.sweeps() == 1);
    CHECK(e.code() == ErrorCode::kConvergence);
  }
}

TEST_CASE("svd property: reconstruction and orthogonality on random shapes") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> dim(1, 30);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix a = random_matrix(rng, dim(rng), dim(rng));
    const Svd d = svd(a);
    REQUIRE(std::is_sorted(d.sigma.rbegin(), d.sigma.rend()));
    CHECK(orthogonality_error(d.u) < 1e-9);
    CHECK(orthogonality_error(d.v) < 1e-9);
    CHECK(reconstruction_error(a, d) <= 1e-8 * frobenius_norm(a));
  }
}
