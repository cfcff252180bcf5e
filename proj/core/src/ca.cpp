#include "nodal/ca.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "json.hpp"
#include "nodal/error.hpp"

namespace nodal {

CAResult analyze(const ContingencyMatrix& matrix, const CAOptions& options) {
  const std::size_t rows = matrix.rows();
  const std::size_t cols = matrix.cols();
  const auto& r = matrix.row_masses();
  const auto& c = matrix.col_masses();
  const auto n = static_cast<double>(matrix.grand_total());

  Matrix residuals(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      const double p = static_cast<double>(matrix(i, j)) / n;
      const double e = r[i] * c[j];
      residuals(i, j) = (p - e) / std::sqrt(e);
    }

  const Svd dec = svd(residuals, options.svd);

  std::size_t rank = 0;
  const double sigma1 = dec.sigma.empty() ? 0.0 : dec.sigma[0];
  // The trivial axis is exactly zero, so the rank never exceeds
  // min(I, J) - 1; anything beyond that is rounding noise.
  const std::size_t rank_cap = std::min(rows, cols) - 1;
  if (sigma1 > options.absolute_cutoff) {
    while (rank < dec.sigma.size() && rank < rank_cap &&
           dec.sigma[rank] >= options.relative_cutoff * sigma1)
      ++rank;
  }

  CAResult result;
  result.analysis_id = matrix.fingerprint();
  result.row_masses = r;
  result.col_masses = c;
  result.row_labels = matrix.row_labels();
  result.col_labels = matrix.col_labels();
  result.singular_values.assign(dec.sigma.begin(), dec.sigma.begin() + rank);
  for (double s : result.singular_values) result.inertias.push_back(s * s);
  result.total_inertia =
      std::accumulate(result.inertias.begin(), result.inertias.end(), 0.0);

  result.row_coords = Matrix(rows, rank);
  result.col_coords = Matrix(cols, rank);
  for (std::size_t k = 0; k < rank; ++k) {
    const double s = dec.sigma[k];
    for (std::size_t i = 0; i < rows; ++i)
      result.row_coords(i, k) = dec.u(i, k) * s / std::sqrt(r[i]);
    for (std::size_t j = 0; j < cols; ++j)
      result.col_coords(j, k) = dec.v(j, k) * s / std::sqrt(c[j]);

    // Largest-magnitude row coordinate is made positive.
    std::size_t arg = 0;
    for (std::size_t i = 1; i < rows; ++i)
      if (std::abs(result.row_coords(i, k)) > std::abs(result.row_coords(arg, k)))
        arg = i;
    if (result.row_coords(arg, k) < 0.0) {
      for (std::size_t i = 0; i < rows; ++i) result.row_coords(i, k) *= -1.0;
      for (std::size_t j = 0; j < cols; ++j) result.col_coords(j, k) *= -1.0;
    }
  }
  return result;
}

std::vector<double> inertia_percentages(const CAResult& result) {
  if (result.rank() == 0 || result.total_inertia <= 0.0)
    throw Error(ErrorCode::kZeroInertia,
                "table has zero inertia; no factor axes");
  std::vector<double> pct;
  pct.reserve(result.rank());
  for (double l : result.inertias) pct.push_back(100.0 * l / result.total_inertia);
  return pct;
}

Matrix project_rows(const CAResult& result, std::size_t k) {
  if (k < 1 || k > result.rank())
    throw Error(ErrorCode::kOutOfRange,
                "projection dimension " + std::to_string(k) +
                    " outside [1, " + std::to_string(result.rank()) + "]");
  return result.row_coords.leading_columns(k);
}

SupplementaryPoint project_supplementary(const CAResult& result,
                                         std::span<const double> profile) {
  const std::size_t cols = result.col_coords.rows();
  if (profile.size() != cols)
    throw Error(ErrorCode::kInvalidArgument,
                "profile has " + std::to_string(profile.size()) +
                    " entries, analysis has " + std::to_string(cols) +
                    " columns");
  double total = 0.0;
  for (double w : profile) {
    if (!std::isfinite(w) || w < 0.0)
      throw Error(ErrorCode::kNumeric, "profile entries must be finite and >= 0");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw Error(ErrorCode::kInvalidArgument, "profile does not sum to 1");

  SupplementaryPoint point;
  point.analysis_id = result.analysis_id;
  point.coords.assign(result.rank(), 0.0);
  const double floor = result.rank() ? 1e-10 * result.singular_values[0] : 0.0;
  for (std::size_t k = 0; k < result.rank(); ++k) {
    const double sigma = result.singular_values[k];
    if (!(sigma > floor)) {
      point.skipped_axes.push_back(k);
      continue;
    }
    double acc = 0.0;
    for (std::size_t j = 0; j < cols; ++j)
      acc += profile[j] * result.col_coords(j, k);
    point.coords[k] = acc / sigma;
  }
  return point;
}

double euclidean(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

namespace {

nlohmann::ordered_json points_json(const Matrix& coords,
                                   const std::vector<std::string>& labels,
                                   const std::vector<double>& masses) {
  auto arr = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < coords.rows(); ++i) {
    nlohmann::ordered_json p;
    p["label"] = labels[i];
    p["mass"] = masses[i];
    auto row = coords.row(i);
    p["coords"] = std::vector<double>(row.begin(), row.end());
    arr.push_back(std::move(p));
  }
  return arr;
}

}  // namespace

std::string to_json(const CAResult& result) {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["analysis_id"] = result.analysis_id;
  j["rank"] = result.rank();
  j["singular_values"] = result.singular_values;
  j["total_inertia"] = result.total_inertia;
  j["inertia_percentages"] = result.rank() ? inertia_percentages(result)
                                           : std::vector<double>{};
  j["rows"] = points_json(result.row_coords, result.row_labels, result.row_masses);
  j["columns"] =
      points_json(result.col_coords, result.col_labels, result.col_masses);
  return j.dump(2);
}

}  // namespace nodal
