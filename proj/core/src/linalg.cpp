#include "nodal/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "nodal/error.hpp"

namespace nodal {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::leading_columns(std::size_t k) const {
  k = std::min(k, cols_);
  Matrix out(rows_, k);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < k; ++j) out(i, j) = (*this)(i, j);
  return out;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows())
    throw Error(ErrorCode::kInvalidArgument, "matrix shapes do not conform");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

double frobenius_norm(const Matrix& a) {
  double s = 0.0;
  for (double x : a.data()) s += x * x;
  return std::sqrt(s);
}

namespace {

using Column = std::vector<double>;

double dot(const Column& a, const Column& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void rotate(Column& p, Column& q, double c, double s) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double x = p[i];
    const double y = q[i];
    p[i] = c * x - s * y;
    q[i] = s * x + c * y;
  }
}

// Replaces the columns flagged in `missing` by unit vectors orthogonal to
// every other column.
void complete_basis(std::vector<Column>& cols, const std::vector<bool>& missing) {
  const std::size_t m = cols.empty() ? 0 : cols[0].size();
  std::vector<std::size_t> done;
  for (std::size_t j = 0; j < cols.size(); ++j)
    if (!missing[j]) done.push_back(j);

  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (!missing[j]) continue;
    Column best;
    double best_norm = -1.0;
    for (std::size_t e = 0; e < m; ++e) {
      Column cand(m, 0.0);
      cand[e] = 1.0;
      for (int pass = 0; pass < 2; ++pass)
        for (std::size_t k : done) {
          const double proj = dot(cand, cols[k]);
          for (std::size_t i = 0; i < m; ++i) cand[i] -= proj * cols[k][i];
        }
      const double norm = std::sqrt(dot(cand, cand));
      if (norm > best_norm) {
        best_norm = norm;
        best = std::move(cand);
      }
      if (best_norm > 0.7) break;
    }
    for (double& x : best) x /= best_norm;
    cols[j] = std::move(best);
    done.push_back(j);
  }
}

// Hestenes iteration on a tall (m >= n) matrix given by its columns.
Svd tall_svd(std::vector<Column> work, std::size_t m, const SvdOptions& options,
             double frob) {
  const std::size_t n = work.size();
  std::vector<Column> v(n, Column(n, 0.0));
  for (std::size_t j = 0; j < n; ++j) v[j][j] = 1.0;

  const double eps = std::numeric_limits<double>::epsilon();
  const double negligible = (eps * frob) * (eps * frob);

  int sweep = 0;
  for (;; ++sweep) {
    double max_off = 0.0;
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        const Column& up = work[p];
        const Column& uq = work[q];
        for (std::size_t i = 0; i < m; ++i) {
          alpha += up[i] * up[i];
          beta += uq[i] * uq[i];
          gamma += up[i] * uq[i];
        }
        if (alpha <= negligible || beta <= negligible || gamma == 0.0)
          continue;
        const double off = std::abs(gamma) / std::sqrt(alpha * beta);
        max_off = std::max(max_off, off);
        if (off <= options.tolerance) continue;
        if (sweep >= options.max_sweeps) continue;

        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) /
                         (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        rotate(work[p], work[q], c, s);
        rotate(v[p], v[q], c, s);
        rotated = true;
      }
    }
    if (!rotated) {
      if (max_off > options.tolerance) throw ConvergenceError(sweep, max_off);
      break;
    }
  }

  std::vector<double> sigma(n);
  for (std::size_t j = 0; j < n; ++j) sigma[j] = std::sqrt(dot(work[j], work[j]));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return sigma[a] > sigma[b];
  });

  const double sigma_max = n ? sigma[order[0]] : 0.0;
  const double zero_tol =
      std::max(eps * frob, static_cast<double>(std::max(m, n)) * eps * sigma_max);
  std::vector<Column> ucols(n);
  std::vector<bool> missing(n, false);
  Svd result;
  result.sigma.resize(n);
  result.v = Matrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = order[k];
    result.sigma[k] = sigma[j];
    for (std::size_t i = 0; i < n; ++i) result.v(i, k) = v[j][i];
    ucols[k] = std::move(work[j]);
    if (sigma[j] <= zero_tol || sigma[j] == 0.0) {
      missing[k] = true;
    } else {
      for (double& x : ucols[k]) x /= sigma[j];
    }
  }
  complete_basis(ucols, missing);
  result.u = Matrix(m, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < m; ++i) result.u(i, k) = ucols[k][i];
  result.sweeps = sweep;
  return result;
}

}  // namespace

Svd svd(const Matrix& a, const SvdOptions& options) {
  for (double x : a.data())
    if (!std::isfinite(x))
      throw Error(ErrorCode::kNumeric, "SVD input contains non-finite values");
  if (a.rows() == 0 || a.cols() == 0)
    throw Error(ErrorCode::kInvalidArgument, "SVD of an empty matrix");

  const bool wide = a.rows() < a.cols();
  const std::size_t m = wide ? a.cols() : a.rows();
  const std::size_t n = wide ? a.rows() : a.cols();
  std::vector<Column> cols(n, Column(m));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (wide) {
        cols[i][j] = a(i, j);
      } else {
        cols[j][i] = a(i, j);
      }
    }

  Svd result = tall_svd(std::move(cols), m, options, frobenius_norm(a));
  if (wide) std::swap(result.u, result.v);
  return result;
}

}  // namespace nodal
