#pragma once

// Correspondence Analysis of a contingency table.
//
// With P = counts / n and marginals r, c the engine decomposes the matrix
// of standardized residuals S_ij = (P_ij - r_i c_j) / sqrt(r_i c_j) and
// reports principal coordinates: rows D_r^{-1/2} U Sigma, columns
// D_c^{-1/2} V Sigma. Euclidean distance between row points in the full
// space equals the chi-squared distance between row profiles.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "nodal/corpus.hpp"
#include "nodal/linalg.hpp"

namespace nodal {

struct CAOptions {
  SvdOptions svd;
  // Axes with sigma_k < relative_cutoff * sigma_1 are dropped.
  double relative_cutoff = 1e-10;
  // Below this sigma_1 the table is treated as independent (R = 0).
  double absolute_cutoff = 1e-12;
};

struct CAResult {
  std::string analysis_id;  // fingerprint of the analysed table
  std::vector<double> singular_values;
  std::vector<double> inertias;  // squared singular values
  double total_inertia = 0.0;
  Matrix row_coords;  // I x R principal coordinates
  Matrix col_coords;  // J x R principal coordinates
  std::vector<double> row_masses;
  std::vector<double> col_masses;
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;

  std::size_t rank() const noexcept { return singular_values.size(); }
};

/// Never throws kZeroInertia: a table of proportional rows yields R = 0.
CAResult analyze(const ContingencyMatrix& matrix, const CAOptions& options = {});

/// Percentage of total inertia per axis. Throws Error(kZeroInertia) if R = 0.
std::vector<double> inertia_percentages(const CAResult& result);

/// Leading k columns of the row coordinates; 1 <= k <= R.
Matrix project_rows(const CAResult& result, std::size_t k);

struct SupplementaryPoint {
  std::string analysis_id;
  std::vector<double> coords;             // length R
  std::vector<std::size_t> skipped_axes;  // sigma too small; coordinate is 0
};

/// Transition formula f_k = (1/sigma_k) sum_j profile_j G_jk. The profile must
/// have J nonnegative entries summing to one.
SupplementaryPoint project_supplementary(const CAResult& result,
                                         std::span<const double> profile);

/// Euclidean distance between two coordinate rows.
double euclidean(std::span<const double> a, std::span<const double> b);

std::string to_json(const CAResult& result);

}  // namespace nodal
